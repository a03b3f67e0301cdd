#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lpomega/charpoly.hpp"
#include "lpomega/interlace.hpp"
#include "lpomega/models.hpp"
#include "lpomega/omega.hpp"

namespace lpomega {

/// Shared configuration for the experiment runners. Tolerances and schedules
/// default to the values the acceptance suite pins.
struct ExperimentConfig {
  std::string experiment;  // thm32 | thm44 | airy | bound
  OmegaPoint omega;
  EnsembleSpec ensemble;
  std::vector<int> n_schedule;
  int trials = 50;
  double radius = 2.0;
  std::uint64_t seed = 1;
  int threads = 0;          // 0 = hardware concurrency
  double bound_pairs_scale = 1.0;  // alpha/gamma scale of the random pair generator
  std::complex<double> probe_z{1.0, 0.0};  // airy: distributional probe point

  void validate() const;
};

/// Raw coordinate estimates of a limit point (not an OmegaPoint: the medians
/// of independent coordinates need not satisfy the delta domination exactly).
struct OmegaEstimate {
  std::vector<double> alpha_plus;
  std::vector<double> alpha_minus;
  double gamma1 = 0.0;
  double delta = 0.0;
};

struct ConvergenceReport {
  std::vector<int> n_values;
  std::vector<double> q25, q50, q75;           // sup-distance quantiles over trials
  std::vector<std::vector<double>> per_trial;  // [trial][schedule index]
  OmegaEstimate omega_estimate;
  bool median_decreasing = false;
  double trial_decrease_fraction = 0.0;  // fraction of trials with last < first
  bool pass = false;
};

/// Corner-coupled convergence of rescaled characteristic polynomials of the
/// ergodic matrix model toward the target LP function.
ConvergenceReport run_theorem32(const ExperimentConfig& config);

/// Across-row stabilization of rescaled characteristic polynomials along a
/// sampled interlacing array with a consistent-family top row.
ConvergenceReport run_theorem44(const ExperimentConfig& config);

struct AiryReport {
  std::vector<int> n_values;
  std::vector<double> gamma1_median;     // sum 1/y_i, negative and growing
  std::vector<double> delta_median;      // sum 1/y_i^2
  std::vector<double> probe_ks;          // KS between consecutive-N probe samples
  double fitted_exponent = 0.0;          // slope of log(-gamma1 median) vs log N
  double delta_top_octave_drift = 0.0;   // relative drift over the last doubling
  bool renorm_at_zero_exact = false;     // P_N(0) == 1 for every sample
  bool pass = false;
};

AiryReport run_airy(const ExperimentConfig& config);

struct BoundViolation {
  OmegaPoint w, wt;
  std::complex<double> z;
  double lhs = 0.0, rhs = 0.0;
};

struct BoundSweepReport {
  int pairs = 0;
  int grid_points = 0;
  double max_slack = 0.0;  // max over pairs and z of lhs / rhs
  std::vector<BoundViolation> violations;
  bool pass = false;
};

/// Random-pair sweep of the quantitative two-point bound, in both argument
/// orders.
BoundSweepReport run_bound_sweep(const ExperimentConfig& config);

/// The pair generator used by the sweep (exposed for tests).
OmegaPoint random_finite_omega(RngStream& rng, double scale = 1.0);

}  // namespace lpomega
