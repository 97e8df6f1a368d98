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

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qadapt/adapt.hpp"
#include "qadapt/ecbasis.hpp"
#include "qadapt/encode.hpp"
#include "qadapt/hamx.hpp"
#include "qadapt/kwb.hpp"
#include "qadapt/pool.hpp"
#include "qadapt/textio.hpp"

namespace fs = std::filesystem;
using namespace qadapt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;

/// Everything a `run` invocation needs, gathered from the command line.
struct RunManifest {
  std::vector<std::string> hamx_paths;
  std::string outdir = ".";
  int states = 1;
  double grad_tol = 1e-6;
  double bfgs_tol = 1e-7;
  int max_iters = 0;  // 0: 2 * 2^n
  std::uint64_t seed = 1;
  int jobs = 1;
  bool strict = false;
};

struct HamgenOptions {
  std::string basis_path;
  std::string outdir = ".";
  double r_start = 1.4;
  double r_stop = 1.4;
  double r_step = 0.1;
  int grid_level = 0;
  int jobs = 1;
};

std::vector<double> expand_grid(double start, double stop, double step) {
  std::vector<double> grid;
  if (step <= 0.0) return grid;
  for (double r = start; r <= stop + 1e-12; r += step) grid.push_back(r);
  return grid;
}

int qubits_for_dim(int dim) {
  int q = 2;
  while ((1 << q) < dim) ++q;
  return q;
}

std::string r_tag(double r) {
  std::ostringstream os;
  os << r;
  std::string tag = os.str();
  for (char& c : tag) {
    if (c == '.') c = 'p';
    if (c == '-') c = 'm';
  }
  return tag;
}

int run_hamgen(const HamgenOptions& opt) {
  const std::vector<double> grid_r =
      expand_grid(opt.r_start, opt.r_stop, opt.r_step);
  if (grid_r.empty()) {
    std::cerr << "error: empty R grid\n";
    return kExitUsage;
  }
  const BasisSet basis = read_kwb_file(opt.basis_path);
  if (basis.has_duplicate_terms()) {
    std::cerr << "warning: duplicate basis terms; orthonormalization will "
                 "drop the redundant ones\n";
  }
  fs::create_directories(opt.outdir);
  const std::string basis_hash = kwb_hash(basis);

  int failures = 0;
  const bool outer_parallel = grid_r.size() > 1 && opt.jobs > 1;
  const int inner_threads = outer_parallel ? 1 : std::max(1, opt.jobs);

  std::vector<std::string> logs(grid_r.size());
  std::atomic<std::size_t> next{0};
  std::atomic<int> failed{0};

  auto work = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= grid_r.size()) break;
      const double r = grid_r[idx];
      std::ostringstream log;
      try {
        const GeometryConfig geom{r};
        const QuadratureGrid grid = QuadratureGrid::create(opt.grid_level, basis);
        const EcMatrices m = ec_matrices(basis, grid, geom, inner_threads);
        const OrthonormalizedBasis ortho =
            gram_schmidt_orthonormalize(m.hamiltonian, m.overlap);

        HamxFile file;
        file.n = static_cast<int>(ortho.kept.size());
        file.qubits = qubits_for_dim(file.n);
        file.internuclear_distance = r;
        file.symmetry = basis.spin_sign > 0 ? "singlet" : "triplet";
        file.hamiltonian = ortho.hamiltonian;
        file.raw_overlap = m.overlap;
        file.raw_hamiltonian = m.hamiltonian;
        file.kept = ortho.kept;
        file.comments = {"generated by qadapt hamgen",
                         "grid_level " + std::to_string(opt.grid_level),
                         "basis_hash " + basis_hash};
        const fs::path out =
            fs::path(opt.outdir) / ("R" + r_tag(r) + ".hamx");
        write_hamx_file(out.string(), file);
        log << out.string() << ": n " << file.n << " of "
            << basis.terms.size() << " terms kept, qubits " << file.qubits;
        if (!ortho.dropped.empty()) {
          log << " (dropped";
          for (int d : ortho.dropped) log << ' ' << d;
          log << ")";
        }
      } catch (const std::exception& e) {
        log << "R = " << r << " failed: " << e.what();
        failed.fetch_add(1);
      }
      logs[idx] = log.str();
    }
  };

  if (outer_parallel) {
    std::vector<std::thread> pool;
    const int workers =
        std::min<int>(opt.jobs, static_cast<int>(grid_r.size()));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  } else {
    work();
  }
  for (const auto& line : logs) std::cout << line << "\n";
  failures = failed.load();
  if (failures == static_cast<int>(grid_r.size())) return kExitError;
  return kExitOk;
}

struct StateRow {
  double r;
  int state;
  double energy;
  double ed_energy;
  double abs_err;
  int iterations;
  bool converged;
};

int run_adapt(const RunManifest& manifest) {
  if (manifest.hamx_paths.empty()) {
    std::cerr << "error: no HAMX inputs\n";
    return kExitUsage;
  }
  fs::create_directories(manifest.outdir);

  AdaptConfig cfg;
  cfg.grad_threshold = manifest.grad_tol;
  cfg.bfgs_tol = manifest.bfgs_tol;
  cfg.max_iterations = manifest.max_iters;

  // Pools per qubit count are built (and certified) once up front so worker
  // scheduling cannot affect the outputs.
  std::vector<HamxFile> inputs;
  inputs.reserve(manifest.hamx_paths.size());
  for (const auto& path : manifest.hamx_paths) {
    inputs.push_back(read_hamx_file(path));
  }
  // Effective qubit count per input: at least the declared padding target,
  // at least what the dimension needs, and never below the 2-qubit pool
  // minimum.
  auto effective_qubits = [](const HamxFile& file) {
    return std::max(std::max(2, file.qubits), qubits_for_dim(file.n));
  };
  std::vector<int> qubit_counts;
  for (const auto& file : inputs) {
    const int q = effective_qubits(file);
    if (std::find(qubit_counts.begin(), qubit_counts.end(), q) ==
        qubit_counts.end()) {
      qubit_counts.push_back(q);
    }
  }
  std::sort(qubit_counts.begin(), qubit_counts.end());
  std::vector<OperatorPool> pools;
  for (int q : qubit_counts) {
    pools.push_back(minimal_pool(q, 10, manifest.seed));
  }
  auto pool_for = [&](int q) -> const OperatorPool& {
    for (std::size_t i = 0; i < qubit_counts.size(); ++i) {
      if (qubit_counts[i] == q) return pools[i];
    }
    throw std::logic_error("pool lookup failed");
  };

  std::vector<std::vector<StateRow>> rows(inputs.size());
  std::vector<std::string> errors(inputs.size());
  std::atomic<std::size_t> next{0};

  auto work = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= inputs.size()) break;
      const HamxFile& file = inputs[idx];
      try {
        HamiltonianMatrix h(file.hamiltonian,
                            {file.internuclear_distance, file.symmetry, ""});
        const int q = effective_qubits(file);
        const HamiltonianMatrix padded = pad_to_power_of_two(h, 1 << q);
        const std::vector<AdaptResult> states =
            vqd_run(padded, pool_for(q), cfg, manifest.states);

        const fs::path stem =
            fs::path(manifest.hamx_paths[idx]).stem();
        for (std::size_t k = 0; k < states.size(); ++k) {
          const AdaptResult& res = states[k];
          rows[idx].push_back({file.internuclear_distance,
                               static_cast<int>(k), res.final_energy,
                               res.ed_target,
                               std::abs(res.final_energy - res.ed_target),
                               static_cast<int>(res.trace.size()),
                               res.converged});
          // Per-state convergence trace.
          const fs::path trace_path =
              fs::path(manifest.outdir) /
              (stem.string() + "_state" + std::to_string(k) + ".csv");
          std::ofstream trace(trace_path);
          trace << "iter,op_string,grad_norm,energy_ha,err_vs_ed_ha\n";
          for (const auto& row : res.trace) {
            trace << row.iteration << ',' << row.op.text() << ','
                  << format_double17(row.grad_norm) << ','
                  << format_double17(row.energy) << ','
                  << format_double17(row.err_vs_ed) << '\n';
          }
        }
      } catch (const std::exception& e) {
        errors[idx] = e.what();
      }
    }
  };

  const int workers = std::clamp<int>(manifest.jobs, 1,
                                      static_cast<int>(inputs.size()));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (!errors[i].empty()) {
      std::cerr << manifest.hamx_paths[i] << ": " << errors[i] << "\n";
      return kExitError;
    }
  }

  const fs::path curves_path = fs::path(manifest.outdir) / "curves.csv";
  std::ofstream curves(curves_path);
  curves << "R_bohr,state_index,energy_ha,ed_energy_ha,abs_err_ha,iterations,"
            "converged\n";
  bool all_converged = true;
  for (const auto& file_rows : rows) {
    for (const auto& row : file_rows) {
      curves << format_double17(row.r) << ',' << row.state << ','
             << format_double17(row.energy) << ','
             << format_double17(row.ed_energy) << ','
             << format_double17(row.abs_err) << ',' << row.iterations << ','
             << (row.converged ? "true" : "false") << '\n';
      all_converged = all_converged && row.converged;
    }
  }
  std::cout << curves_path.string() << "\n";
  if (manifest.strict && !all_converged) return kExitError;
  return kExitOk;
}

int run_ed(const std::string& path) {
  const HamxFile file = read_hamx_file(path);
  HamiltonianMatrix h(file.hamiltonian,
                      {file.internuclear_distance, file.symmetry, ""});
  const EigenResult ed = exact_diagonalize(h);
  const int pad_dim = 1 << std::max(2, file.qubits);
  const int pad_count = pad_dim > h.dim() ? pad_dim - h.dim() : 0;
  const double pad = padding_level(h);

  // The padded block is decoupled, so its levels are exactly the padding
  // value; merge them into the physical spectrum for printing.
  int physical = 0, padded = 0;
  while (physical < h.dim() || padded < pad_count) {
    const bool take_physical =
        physical < h.dim() &&
        (padded >= pad_count || ed.eigenvalues(physical) <= pad);
    if (take_physical) {
      std::cout << format_double17(ed.eigenvalues(physical)) << "\n";
      ++physical;
    } else {
      std::cout << format_double17(pad) << " pad\n";
      ++padded;
    }
  }
  return kExitOk;
}

int run_pool_verify(int qubits, int trials, std::uint64_t seed) {
  try {
    const OperatorPool pool = minimal_pool(qubits, trials, seed);
    std::cout << "family " << pool.family << "\n";
    std::cout << "members " << pool.members.size() << "\n";
    std::cout << "closure_dim " << pool.closure_dim << "\n";
    std::cout << "pass\n";
    return kExitOk;
  } catch (const std::runtime_error& e) {
    std::cout << "fail: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive variational eigensolver pipeline for explicitly "
               "correlated H2 Hamiltonians"};
  app.require_subcommand(1);

  HamgenOptions hamgen;
  auto* cmd_hamgen = app.add_subcommand(
      "hamgen", "Generate HAMX Hamiltonian files over an R grid");
  cmd_hamgen->add_option("--basis", hamgen.basis_path, "KWB v1 basis file")
      ->required();
  cmd_hamgen->add_option("--outdir", hamgen.outdir, "Output directory");
  cmd_hamgen->add_option("--r-start", hamgen.r_start, "Grid start (bohr)");
  cmd_hamgen->add_option("--r-stop", hamgen.r_stop, "Grid stop (bohr)");
  cmd_hamgen->add_option("--r-step", hamgen.r_step, "Grid step (bohr)");
  cmd_hamgen->add_option("--grid-level", hamgen.grid_level,
                         "Quadrature refinement level");
  cmd_hamgen->add_option("--jobs", hamgen.jobs, "Worker threads");

  RunManifest manifest;
  auto* cmd_run = app.add_subcommand(
      "run", "Run ADAPT/VQD on HAMX files and emit curves + traces");
  cmd_run->add_option("inputs", manifest.hamx_paths, "HAMX files")
      ->required();
  cmd_run->add_option("--outdir", manifest.outdir, "Output directory");
  cmd_run->add_option("--states", manifest.states, "Number of states (g)")
      ->check(CLI::PositiveNumber);
  cmd_run->add_option("--grad-tol", manifest.grad_tol,
                      "ADAPT gradient-norm threshold (Ha)");
  cmd_run->add_option("--bfgs-tol", manifest.bfgs_tol, "BFGS tolerance");
  cmd_run->add_option("--max-iters", manifest.max_iters,
                      "Iteration cap (0: 2*2^n)");
  cmd_run->add_option("--seed", manifest.seed, "Seed for pool verification");
  cmd_run->add_option("--jobs", manifest.jobs, "Worker threads");
  cmd_run->add_flag("--strict", manifest.strict,
                    "Exit nonzero when any state fails to converge");

  std::string ed_path;
  auto* cmd_ed = app.add_subcommand("ed", "Print the exact spectrum of a HAMX file");
  cmd_ed->add_option("file", ed_path, "HAMX file")->required();

  auto* cmd_pool = app.add_subcommand("pool", "Operator pool utilities");
  cmd_pool->require_subcommand(1);
  int pool_qubits = 2;
  int pool_trials = 10;
  std::uint64_t pool_seed = 1;
  auto* cmd_pool_verify =
      cmd_pool->add_subcommand("verify", "Certify the minimal pool");
  cmd_pool_verify->add_option("--qubits", pool_qubits, "Qubit count")
      ->required();
  cmd_pool_verify->add_option("--trials", pool_trials, "Random targets");
  cmd_pool_verify->add_option("--seed", pool_seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cmd_hamgen->parsed()) return run_hamgen(hamgen);
    if (cmd_run->parsed()) return run_adapt(manifest);
    if (cmd_ed->parsed()) return run_ed(ed_path);
    if (cmd_pool->parsed() && cmd_pool_verify->parsed()) {
      return run_pool_verify(pool_qubits, pool_trials, pool_seed);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}
