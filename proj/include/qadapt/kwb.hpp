// Copyright 2026 The qadapt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>

#include "qadapt/ecbasis.hpp"

namespace qadapt {

// KWB v1: plain-text basis definition. Lines `alpha <v>`, `alphabar <v>`,
// `beta <v>`, `betabar <v>`, `sign <+1|-1>`, then one
// `term <r> <rbar> <s> <sbar> <mu>` per basis function; `#` starts a comment.

BasisSet read_kwb(std::istream& in);
BasisSet read_kwb_file(const std::string& path);

void write_kwb(std::ostream& out, const BasisSet& bs);
void write_kwb_file(const std::string& path, const BasisSet& bs);

/// FNV-1a hash of the canonical re-serialization, recorded in HAMX metadata
/// so outputs can be traced back to the generating basis.
std::string kwb_hash(const BasisSet& bs);

}  // namespace qadapt
