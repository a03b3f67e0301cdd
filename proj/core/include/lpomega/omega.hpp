#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace lpomega {

/// Ordered point configuration: entries x1 >= x2 >= ... >= xN.
/// Monotonicity is checked exactly (no tolerance); every sampler in this
/// library emits sorted output, so a violation is a bug, not noise.
class WeylVector {
 public:
  WeylVector() = default;
  explicit WeylVector(std::vector<double> entries);

  int size() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }
  double operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& entries() const { return entries_; }
  std::span<const double> span() const { return entries_; }

  double sum() const;
  double sum_sq() const;

 private:
  std::vector<double> entries_;
};

/// A point of the LP parameter space: two nonincreasing nonnegative zero
/// sequences (stored as finite truncations), the linear coefficient gamma1
/// and the quadratic mass delta. tail_eps bounds the squared mass of the
/// discarded tail, and gamma2() = delta - sum of squared alphas is computed
/// with the same summation kernel used at construction, so points built by
/// embed_weyl have gamma2 exactly zero.
class OmegaPoint {
 public:
  OmegaPoint();  // identity point: all zeros
  OmegaPoint(std::vector<double> alpha_plus, std::vector<double> alpha_minus,
             double gamma1, double delta, double tail_eps = 0.0);

  static OmegaPoint identity() { return OmegaPoint(); }

  const std::vector<double>& alpha_plus() const { return alpha_plus_; }
  const std::vector<double>& alpha_minus() const { return alpha_minus_; }
  double gamma1() const { return gamma1_; }
  double delta() const { return delta_; }
  double tail_eps() const { return tail_eps_; }

  double alpha_sq_mass() const;        // sum of squares of both stored sequences
  double gamma2() const;               // delta - alpha_sq_mass()
  double alpha_max() const;            // max(alpha1+, alpha1-), 0 if both empty
  double alpha_tail_max() const;       // upper bound for any discarded alpha
  bool is_identity() const;

 private:
  std::vector<double> alpha_plus_;
  std::vector<double> alpha_minus_;
  double gamma1_ = 0.0;
  double delta_ = 0.0;
  double tail_eps_ = 0.0;
};

/// Shared summation kernel for the squared alpha mass. embed_weyl and
/// OmegaPoint::gamma2 both go through here, which is what makes the embedded
/// gamma2 an exact zero rather than a rounding residue.
double alpha_sq_mass(std::span<const double> alpha_plus, std::span<const double> alpha_minus);

/// Weyl-chamber embedding: alpha_i+ = max(x_i, 0), alpha_i- = max(-x_{N-i+1}, 0),
/// gamma1 = sum alpha+ - sum alpha-, delta = squared alpha mass. Trailing zeros
/// of the alpha sequences are trimmed.
OmegaPoint embed_weyl(const WeylVector& x);

/// O-V convergence diagnostics for a finite sequence of rescaled rows.
/// True limits cannot be observed at desk scale; convergence is declared via
/// Cauchy residuals (max successive difference) over the last `window` rows.
struct OVOptions {
  int index_cap = 8;  // how many alpha coordinates to track (clamped to data)
  int window = 5;     // rows entering the residuals
};

struct OVReport {
  std::vector<double> alpha_plus_limit;   // last-row estimates, candidate limits
  std::vector<double> alpha_minus_limit;
  double gamma1_limit = 0.0;
  double delta_limit = 0.0;
  double alpha_residual = std::numeric_limits<double>::infinity();
  double gamma1_residual = std::numeric_limits<double>::infinity();
  double delta_residual = std::numeric_limits<double>::infinity();
  double tol = 0.0;
  bool converged = false;
};

OVReport ov_diagnose(const std::vector<WeylVector>& seq,
                     const std::function<double(int)>& rescale, double tol,
                     const OVOptions& opts = {});

/// l^3 distance between nonnegative sequences, aligned by index with
/// zero-padding of the shorter one.
double l3_distance(std::span<const double> a, std::span<const double> b);

}  // namespace lpomega
