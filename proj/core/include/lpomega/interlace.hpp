#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "lpomega/omega.hpp"
#include "lpomega/rng.hpp"

namespace lpomega {

/// Rows x^(1) < x^(2) < ... (in the interlacing order), row k of length k.
struct InterlacingArray {
  std::vector<WeylVector> rows;

  int height() const { return static_cast<int>(rows.size()); }
  const WeylVector& row(int n) const { return rows.at(static_cast<std::size_t>(n) - 1); }
  /// Exact interlacing check (tolerance 0); solver output satisfies it up to
  /// the bisection tolerance, tests pass an explicit slack.
  bool interlaced(double slack = 0.0) const;
};

/// Whether x (length N) interlaces y (length N+1): y1 >= x1 >= y2 >= ... >= yN+1.
bool interlaces(const WeylVector& x, const WeylVector& y, double slack = 0.0);

/// One corners-kernel step: draw Dirichlet(beta/2) weights d and return the
/// N nonincreasing roots of z -> sum_j d_j prod_{k != j} (z - y_k).
/// A y-value of multiplicity m contributes itself as a root m-1 times; the
/// remaining roots are bracketed between consecutive distinct values and
/// found by bisection on a sign-tracked log-space evaluation.
WeylVector apply_kernel(const WeylVector& y, double beta, RngStream& rng);

/// Top-down array sampling: row M is `top`, each next row from apply_kernel.
InterlacingArray sample_array(const WeylVector& top, double beta, RngStream& rng);

/// Two-sample comparison between direct size-N samples and kernel-projected
/// size-(N+1) samples of a family: z-score of the statistic's means and a
/// two-sample KS test.
struct ConsistencyReport {
  std::string statistic;
  int n = 0;
  int trials = 0;
  double mean_direct = 0.0;
  double mean_projected = 0.0;
  double z_score = 0.0;
  double ks_stat = 0.0;
  double ks_pvalue = 1.0;

  bool consistent(double z_threshold = 3.0, double p_threshold = 0.01) const {
    return std::abs(z_score) <= z_threshold && ks_pvalue >= p_threshold;
  }
};

using FamilySampler = std::function<WeylVector(int n, RngStream& rng)>;
using SpectrumStatistic = std::function<double(const WeylVector&)>;

ConsistencyReport consistency_test(const FamilySampler& family, double beta, int n, int trials,
                                   const SpectrumStatistic& statistic,
                                   const std::string& statistic_name, const RngStream& rng);

}  // namespace lpomega
