#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fockcc/ccsystem.hpp"
#include "fockcc/multipoly.hpp"

namespace fockcc {

struct TrackerConfig {
  double initial_step = 0.05;
  double min_step = 1e-7;
  double newton_tol = 1e-12;
  int max_corrector_iters = 3;
  double divergence_cutoff = 1e8;
  double dedup_tol = 1e-8;     // relative
  double real_tol = 1e-6;      // max imaginary part
  double residual_keep = 1e-9;
  int stall_limit = 5;         // monodromy loops without growth
  int grow_after = 4;          // successes before the step grows 1.5x
  long long bezout_limit = 3000;  // path budget before switching to monodromy
  int max_loops = 400;         // monodromy safety cap
  int threads = 0;             // 0 = hardware concurrency
};

struct Solution {
  std::vector<std::complex<double>> x;
  double residual = 0.0;
  double condition = 0.0;
  bool is_real = false;
};

struct SolutionSet {
  std::vector<Solution> points;
  long long finite = 0;
  long long real_count = 0;
  long long diverged = 0;
  long long failed = 0;

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

enum class NewtonStatus { Converged, Singular, NoConverge };

/// Newton iteration at fixed parameters until the step norm drops below
/// newton_tol (relative) or the iteration cap; rank-deficient Jacobians are
/// flagged, with the point retained.
NewtonStatus newton_refine(const CompiledSystem& sys,
                           const std::vector<std::complex<double>>& params,
                           std::vector<std::complex<double>>& x,
                           const TrackerConfig& cfg, int max_iters = 50);

/// Bezout-count continuation from the start system {x_i^{d_i} = gamma c_i}
/// along (1-s) target + s gamma start, with endpoint refinement,
/// deduplication and real classification.
SolutionSet total_degree_solve(const CompiledSystem& sys,
                               const std::vector<std::complex<double>>& params,
                               const TrackerConfig& cfg, std::uint64_t seed);

/// Populates the solution set of the parameterized family by tracking known
/// solutions around random triangular loops through parameter space, then
/// carries the full set to the target parameters.
SolutionSet monodromy_solve(const CompiledSystem& sys,
                            const std::vector<std::complex<double>>& target_params,
                            const std::vector<std::complex<double>>& seed_params,
                            const std::vector<std::complex<double>>& seed_point,
                            const TrackerConfig& cfg, std::uint64_t seed);

/// Number of finite solutions of the hyperplane-slice system; equals the
/// degree of the variety.
long long variety_degree(const LevelSet& sigma, int d, int n,
                         std::uint64_t seed, const TrackerConfig& cfg);

struct CCDegreeReport {
  long long ccdeg = -1;
  bool consensus = false;
  std::string method;  // "eigenproblem" | "total-degree" | "monodromy"
  std::vector<long long> per_seed_counts;
  std::vector<long long> per_seed_real;  // varies across seeds; informational
  long long dim = 0;
  double seconds = 0.0;

  nlohmann::json to_json() const;
};

/// Solves the CC equations for generic symmetric Hamiltonians drawn from
/// the given seeds and reports the consensus solution count. Linear level
/// sets dispatch to the exact eigenproblem; small Bezout numbers to
/// total-degree continuation; everything else to monodromy.
CCDegreeReport cc_degree(int d, int n, const LevelSet& sigma,
                         const TrackerConfig& cfg,
                         const std::vector<std::uint64_t>& seeds);

}  // namespace fockcc
