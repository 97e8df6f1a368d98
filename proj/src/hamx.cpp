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

#include "qadapt/hamx.hpp"

#include <fstream>
#include <sstream>

#include "qadapt/textio.hpp"

namespace qadapt {

namespace {

struct Lines {
  std::vector<std::vector<std::string>> tokens;  // per line, comments stripped
  std::vector<int> numbers;                      // original line numbers
};

Lines tokenize_all(std::istream& in) {
  Lines out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::string> tokens;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) {
      if (tok.front() == '#') break;
      tokens.push_back(tok);
    }
    if (tokens.empty()) continue;
    out.tokens.push_back(std::move(tokens));
    out.numbers.push_back(line_no);
  }
  return out;
}

Eigen::MatrixXd read_triangle(const Lines& lines, std::size_t& cursor,
                              int dim) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (cursor >= lines.tokens.size()) {
      throw ParseError("unexpected end of file inside matrix block",
                       lines.numbers.empty() ? 0 : lines.numbers.back());
    }
    const auto& row = lines.tokens[cursor];
    const int line_no = lines.numbers[cursor];
    ++cursor;
    if (static_cast<int>(row.size()) != i + 1) {
      throw ParseError("matrix row " + std::to_string(i + 1) + " expects " +
                           std::to_string(i + 1) + " entries",
                       line_no);
    }
    for (int j = 0; j <= i; ++j) {
      const double v = parse_double(row[static_cast<std::size_t>(j)], line_no);
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

void write_triangle(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      if (j) out << ' ';
      out << format_double17(m(i, j));
    }
    out << '\n';
  }
}

}  // namespace

HamxFile read_hamx(std::istream& in) {
  const Lines lines = tokenize_all(in);
  if (lines.tokens.empty()) throw ParseError("empty HAMX file", 1);

  HamxFile file;
  std::size_t cursor = 0;
  int nraw = 0;
  bool have_h = false;

  if (lines.tokens[0].size() != 2 || lines.tokens[0][0] != "HAMX" ||
      lines.tokens[0][1] != "1") {
    throw ParseError("expected header 'HAMX 1'", lines.numbers[0]);
  }
  ++cursor;

  while (cursor < lines.tokens.size()) {
    const auto& tokens = lines.tokens[cursor];
    const int line_no = lines.numbers[cursor];
    const std::string& key = tokens[0];
    ++cursor;

    if (key == "n" && tokens.size() == 2) {
      file.n = static_cast<int>(parse_long(tokens[1], line_no));
    } else if (key == "qubits" && tokens.size() == 2) {
      file.qubits = static_cast<int>(parse_long(tokens[1], line_no));
    } else if (key == "R" && tokens.size() == 2) {
      file.internuclear_distance = parse_double(tokens[1], line_no);
    } else if (key == "sym" && tokens.size() == 2) {
      file.symmetry = tokens[1];
    } else if (key == "nraw" && tokens.size() == 2) {
      nraw = static_cast<int>(parse_long(tokens[1], line_no));
    } else if (key == "kept") {
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        file.kept.push_back(static_cast<int>(parse_long(tokens[i], line_no)));
      }
    } else if (key == "S" && tokens.size() == 1) {
      if (nraw <= 0) throw ParseError("S block requires a prior nraw", line_no);
      file.raw_overlap = read_triangle(lines, cursor, nraw);
    } else if (key == "HRAW" && tokens.size() == 1) {
      if (nraw <= 0) {
        throw ParseError("HRAW block requires a prior nraw", line_no);
      }
      file.raw_hamiltonian = read_triangle(lines, cursor, nraw);
    } else if (key == "H" && tokens.size() == 1) {
      if (file.n <= 0) throw ParseError("H block requires a prior n", line_no);
      file.hamiltonian = read_triangle(lines, cursor, file.n);
      have_h = true;
    } else {
      throw ParseError("unknown directive '" + key + "'", line_no);
    }
  }

  if (file.n <= 0) throw ParseError("missing 'n' header", 1);
  if (file.qubits <= 0) throw ParseError("missing 'qubits' header", 1);
  if (!have_h) throw ParseError("missing H block", 1);
  return file;
}

HamxFile read_hamx_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open HAMX file: " + path);
  return read_hamx(in);
}

void write_hamx(std::ostream& out, const HamxFile& file) {
  for (const auto& comment : file.comments) out << "# " << comment << '\n';
  out << "HAMX 1\n";
  out << "n " << file.n << '\n';
  out << "qubits " << file.qubits << '\n';
  out << "R " << format_double17(file.internuclear_distance) << '\n';
  out << "sym " << (file.symmetry.empty() ? "none" : file.symmetry) << '\n';
  if (file.raw_overlap || file.raw_hamiltonian) {
    const Eigen::Index nraw = file.raw_overlap ? file.raw_overlap->rows()
                                               : file.raw_hamiltonian->rows();
    out << "nraw " << nraw << '\n';
  }
  if (!file.kept.empty()) {
    out << "kept";
    for (int k : file.kept) out << ' ' << k;
    out << '\n';
  }
  if (file.raw_overlap) {
    out << "S\n";
    write_triangle(out, *file.raw_overlap);
  }
  if (file.raw_hamiltonian) {
    out << "HRAW\n";
    write_triangle(out, *file.raw_hamiltonian);
  }
  out << "H\n";
  write_triangle(out, file.hamiltonian);
}

void write_hamx_file(const std::string& path, const HamxFile& file) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write HAMX file: " + path);
  write_hamx(out, file);
}

}  // namespace qadapt
