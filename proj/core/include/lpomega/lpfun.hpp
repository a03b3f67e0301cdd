#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "lpomega/omega.hpp"

namespace lpomega {

/// Thrown by eval_lp when the requested absolute tolerance cannot be met by
/// the stored truncation; carries the bound that is achievable.
class ToleranceError : public std::runtime_error {
 public:
  ToleranceError(const std::string& msg, double achievable_bound)
      : std::runtime_error(msg), achievable(achievable_bound) {}
  double achievable;
};

/// Modified power sums p~_1 = gamma1, p~_2 = delta,
/// p~_k = sum (alpha_i+)^k + (-1)^k sum (alpha_i-)^k for k >= 3.
struct PowerSums {
  std::vector<double> values;  // values[k-1] holds p~_k
  double at(int k) const { return values.at(static_cast<std::size_t>(k) - 1); }
  int order() const { return static_cast<int>(values.size()); }
};

PowerSums power_sums(const OmegaPoint& w, int k_max);

/// Evaluate the LP function
///   E(z) = exp(-gamma1 z - gamma2/2 z^2)
///          prod (1 - z a+_i) e^{z a+_i}  prod (1 + z a-_i) e^{-z a-_i}
/// over the stored truncation. Factors with |z alpha| >= 1/2 are multiplied
/// directly (they may cross zeros); smaller ones accumulate the series
/// log((1-u)e^u) = -sum_{k>=2} u^k/k. The discarded tail contributes at most
/// `eps` in absolute value or a ToleranceError is thrown.
std::complex<double> eval_lp(const OmegaPoint& w, std::complex<double> z, double eps = 1e-10);

/// Taylor coefficients c_0..c_j of E via the logarithmic recursion
/// j c_j = -sum_{i=1..j} p~_i c_{j-i}.
std::vector<double> taylor_coeffs(const OmegaPoint& w, int j_max);

/// Same coefficients by literal enumeration of all (m_1, ..., m_j) with
/// m_1 + 2 m_2 + ... + j m_j = j. Exponential cost; independent oracle for
/// taylor_coeffs. j_max <= 20.
std::vector<double> taylor_coeffs_partition(const OmegaPoint& w, int j_max);

/// Principal-value product: partial products over zeros with alpha > R^-2
/// along the given threshold schedule. Valid as a representation of E only
/// when gamma2 = 0; the diagnostics expose the partial principal-value sums
/// so the gamma1 condition can be checked by the caller.
struct PvDiagnostics {
  std::vector<double> thresholds;                       // the R schedule
  std::vector<std::complex<double>> partial_products;   // one per R
  std::vector<double> pv_sums;                          // sum alpha+ - sum alpha- above cutoff
  double gamma1_gap = 0.0;                              // |last pv sum - gamma1|
  bool gamma1_consistent = false;
};

struct PvResult {
  std::complex<double> value;  // last partial product
  PvDiagnostics diagnostics;
};

PvResult pv_eval(const OmegaPoint& w, std::complex<double> z,
                 const std::vector<double>& r_schedule);

/// Order-r regularized determinant of the diagonal operator with the given
/// (signed, finite) spectrum: prod (1 - z l) exp(sum_{j=1..r-1} (z l)^j / j).
std::complex<double> det_reg(std::span<const double> spectrum, int r, std::complex<double> z);

/// Higher-order parameter point: alphas as in OmegaPoint plus delta_1..delta_r
/// with delta_r dominating the r-th power mass of the alphas. r = 2 reduces to
/// OmegaPoint with delta_1 = gamma1, delta_2 = delta.
class HigherOmegaPoint {
 public:
  HigherOmegaPoint(std::vector<double> alpha_plus, std::vector<double> alpha_minus,
                   std::vector<double> deltas);

  const std::vector<double>& alpha_plus() const { return alpha_plus_; }
  const std::vector<double>& alpha_minus() const { return alpha_minus_; }
  const std::vector<double>& deltas() const { return deltas_; }
  int order() const { return static_cast<int>(deltas_.size()); }

 private:
  std::vector<double> alpha_plus_, alpha_minus_, deltas_;
};

/// exp(-sum_j delta_j z^j / j) det_{r+1}(I - zA) for the diagonal operator A
/// with eigenvalues alpha+ and -alpha-.
std::complex<double> eval_higher(const HigherOmegaPoint& w, std::complex<double> z);

/// The absolute constant of the quantitative bound; e(2 + ln 3).
double default_bound_constant();

/// Right-hand side of the two-point uniform bound
///   |E_w(z) - E_wt(z)| <= e^{|g1||z| + 5 d |z|^2} (e^{|g1-g1~||z| + |d-d~|/2 |z|^2} - 1)
///     + |z| (sum |a+ - a~+|^3 + |a- - a~-|^3)^{1/3}
///         e^{|g1~||z| + d~/2 |z|^2 + L (|z|(sqrt d + sqrt d~) + 1)^3}.
double quantitative_bound(const OmegaPoint& w, const OmegaPoint& wt, std::complex<double> z,
                          double bound_constant = default_bound_constant());

}  // namespace lpomega
