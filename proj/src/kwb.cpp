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

#include "qadapt/kwb.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "qadapt/textio.hpp"

namespace qadapt {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    if (tok.front() == '#') break;  // comment to end of line
    tokens.push_back(tok);
  }
  return tokens;
}

}  // namespace

BasisSet read_kwb(std::istream& in) {
  BasisSet bs;
  bs.terms.clear();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::string& key = tokens[0];
    auto need = [&](std::size_t count) {
      if (tokens.size() != count + 1) {
        throw ParseError("'" + key + "' expects " + std::to_string(count) +
                             " value(s)",
                         line_no);
      }
    };
    if (key == "alpha") {
      need(1);
      bs.alpha = parse_double(tokens[1], line_no);
    } else if (key == "alphabar") {
      need(1);
      bs.alphabar = parse_double(tokens[1], line_no);
    } else if (key == "beta") {
      need(1);
      bs.beta = parse_double(tokens[1], line_no);
    } else if (key == "betabar") {
      need(1);
      bs.betabar = parse_double(tokens[1], line_no);
    } else if (key == "sign") {
      need(1);
      const long sign = parse_long(tokens[1], line_no);
      if (sign != 1 && sign != -1) {
        throw ParseError("sign must be +1 or -1", line_no);
      }
      bs.spin_sign = static_cast<int>(sign);
    } else if (key == "term") {
      need(5);
      BasisTerm t;
      t.r = static_cast<int>(parse_long(tokens[1], line_no));
      t.rbar = static_cast<int>(parse_long(tokens[2], line_no));
      t.s = static_cast<int>(parse_long(tokens[3], line_no));
      t.sbar = static_cast<int>(parse_long(tokens[4], line_no));
      t.mu = static_cast<int>(parse_long(tokens[5], line_no));
      bs.terms.push_back(t);
    } else {
      throw ParseError("unknown directive '" + key + "'", line_no);
    }
  }
  bs.validate();
  return bs;
}

BasisSet read_kwb_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open basis file: " + path);
  }
  return read_kwb(in);
}

void write_kwb(std::ostream& out, const BasisSet& bs) {
  out << "alpha " << format_double17(bs.alpha) << "\n";
  out << "alphabar " << format_double17(bs.alphabar) << "\n";
  out << "beta " << format_double17(bs.beta) << "\n";
  out << "betabar " << format_double17(bs.betabar) << "\n";
  out << "sign " << (bs.spin_sign > 0 ? "+1" : "-1") << "\n";
  for (const auto& t : bs.terms) {
    out << "term " << t.r << " " << t.rbar << " " << t.s << " " << t.sbar
        << " " << t.mu << "\n";
  }
}

void write_kwb_file(const std::string& path, const BasisSet& bs) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write basis file: " + path);
  }
  write_kwb(out, bs);
}

std::string kwb_hash(const BasisSet& bs) {
  std::ostringstream os;
  write_kwb(os, bs);
  const std::string text = os.str();
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string(buf);
}

}  // namespace qadapt
