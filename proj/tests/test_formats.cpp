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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "qadapt/hamx.hpp"
#include "qadapt/kwb.hpp"
#include "qadapt/textio.hpp"

using namespace qadapt;
using namespace qadapt::testing;

TEST_CASE("doubles survive the 17-digit text round trip") {
  SplitMix64 rng(401);
  for (int trial = 0; trial < 200; ++trial) {
    const double v = rng.uniform(-1.0, 1.0) *
                     std::pow(10.0, rng.uniform(-12.0, 3.0));
    const std::string text = format_double17(v);
    CHECK(parse_double(text, 1) == v);
  }
}

TEST_CASE("kwb round trip and validation") {
  std::istringstream in(
      "# comment line\n"
      "alpha 0.95\n"
      "alphabar 0.95  # trailing comment\n"
      "beta 0\n"
      "betabar 0\n"
      "sign +1\n"
      "term 1 0 2 0 1\n"
      "term 0 0 0 0 0\n");
  const BasisSet bs = read_kwb(in);
  CHECK(bs.alpha == 0.95);
  CHECK(bs.spin_sign == 1);
  REQUIRE(bs.terms.size() == 2);
  CHECK(bs.terms[0].r == 1);
  CHECK(bs.terms[0].s == 2);
  CHECK(bs.terms[0].mu == 1);

  std::ostringstream out;
  write_kwb(out, bs);
  std::istringstream back(out.str());
  const BasisSet again = read_kwb(back);
  CHECK(again.alpha == bs.alpha);
  CHECK(again.terms == bs.terms);
  CHECK(kwb_hash(again) == kwb_hash(bs));
}

TEST_CASE("kwb rejects bad input with line numbers") {
  std::istringstream bad_sign(
      "alpha 1\nalphabar 1\nbeta 0\nbetabar 0\nsign 2\nterm 0 0 0 0 0\n");
  CHECK_THROWS_AS(read_kwb(bad_sign), ParseError);
  try {
    std::istringstream again(
        "alpha 1\nalphabar 1\nbeta 0\nbetabar 0\nsign 2\nterm 0 0 0 0 0\n");
    read_kwb(again);
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
  }

  std::istringstream bad_exponent(
      "alpha 1\nalphabar 1\nbeta 0\nbetabar 0\nsign +1\nterm 9 0 0 0 0\n");
  CHECK_THROWS_AS(read_kwb(bad_exponent), std::invalid_argument);
}

TEST_CASE("hamx round trip is bit exact") {
  SplitMix64 rng(409);
  HamxFile file;
  file.n = 5;
  file.qubits = 3;
  file.internuclear_distance = 1.4;
  file.symmetry = "singlet";
  file.hamiltonian = random_symmetric(5, rng);
  file.raw_overlap = random_symmetric(7, rng);
  file.raw_hamiltonian = random_symmetric(7, rng);
  file.kept = {0, 1, 2, 4, 6};
  file.comments = {"round trip fixture"};

  std::ostringstream out;
  write_hamx(out, file);
  std::istringstream in(out.str());
  const HamxFile back = read_hamx(in);

  CHECK(back.n == file.n);
  CHECK(back.qubits == file.qubits);
  CHECK(back.internuclear_distance == file.internuclear_distance);
  CHECK(back.symmetry == file.symmetry);
  CHECK(back.kept == file.kept);
  CHECK(back.hamiltonian == file.hamiltonian);  // bitwise

  REQUIRE(back.raw_overlap.has_value());
  REQUIRE(back.raw_hamiltonian.has_value());
  CHECK(*back.raw_overlap == *file.raw_overlap);
  CHECK(*back.raw_hamiltonian == *file.raw_hamiltonian);
}

TEST_CASE("hamx parse errors carry line numbers") {
  std::istringstream missing_header("n 2\nH\n1\n0 1\n");
  CHECK_THROWS_AS(read_hamx(missing_header), ParseError);

  std::istringstream short_row(
      "HAMX 1\nn 2\nqubits 1\nR 0\nsym none\nH\n1\n2\n");
  try {
    read_hamx(short_row);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line() == 8);
  }

  std::istringstream bad_number(
      "HAMX 1\nn 2\nqubits 1\nR 0\nsym none\nH\n1\n2 x\n");
  CHECK_THROWS_AS(read_hamx(bad_number), ParseError);
}

TEST_CASE("hamx optional blocks may be absent") {
  std::istringstream in(
      "# minimal file\nHAMX 1\nn 2\nqubits 2\nR 1.4\nsym singlet\nH\n"
      "1.5\n0.25 -0.75\n");
  const HamxFile file = read_hamx(in);
  CHECK(file.n == 2);
  CHECK_FALSE(file.raw_overlap.has_value());
  CHECK(file.hamiltonian(1, 0) == 0.25);
  CHECK(file.hamiltonian(0, 1) == 0.25);
}
