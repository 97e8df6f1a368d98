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
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qadapt {

// HAMX v1: plain-text Hamiltonian container, diffable and round-trip exact
// (all decimals carry 17 significant digits). Layout:
//
//   # comments anywhere
//   HAMX 1
//   n <N>            dimension of the operative H block
//   qubits <q>       qubit count after power-of-two padding
//   R <bohr>
//   sym <label>
//   nraw <M>         (optional) dimension of the raw S / HRAW blocks
//   kept <i...>      (optional) original indices surviving orthonormalization
//   S                (optional) M lower-triangle rows of the raw overlap
//   HRAW             (optional) M lower-triangle rows of the raw Hamiltonian
//   H                N lower-triangle rows of the operative Hamiltonian
//                    (the orthonormalized form when written by hamgen)

struct HamxFile {
  int n = 0;
  int qubits = 0;
  double internuclear_distance = 0.0;
  std::string symmetry;
  Eigen::MatrixXd hamiltonian;                 // the H block
  std::optional<Eigen::MatrixXd> raw_overlap;  // S block
  std::optional<Eigen::MatrixXd> raw_hamiltonian;  // HRAW block
  std::vector<int> kept;
  std::vector<std::string> comments;  // written back as leading '#' lines
};

HamxFile read_hamx(std::istream& in);
HamxFile read_hamx_file(const std::string& path);

void write_hamx(std::ostream& out, const HamxFile& file);
void write_hamx_file(const std::string& path, const HamxFile& file);

}  // namespace qadapt
