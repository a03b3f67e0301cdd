#include "lpomega/lpfun.hpp"

#include <algorithm>
#include <cmath>

namespace lpomega {

namespace {

using cplx = std::complex<double>;

constexpr double kHeadThreshold = 0.5;    // |z alpha| above this: direct factor
constexpr double kFoldHi = 1e150;         // product accumulator renorm bounds
constexpr double kFoldLo = 1e-150;

// Running product with log folding, so intermediate products can span far
// more than the double range. The final value is exp(log_acc) * prod.
struct FoldedProduct {
  cplx prod{1.0, 0.0};
  cplx log_acc{0.0, 0.0};

  void mul(cplx f) {
    prod *= f;
    const double m = std::abs(prod);
    if (m == 0.0) return;
    if (m > kFoldHi || m < kFoldLo) {
      log_acc += std::log(prod);
      prod = {1.0, 0.0};
    }
  }

  void add_log(cplx l) { log_acc += l; }

  cplx value() const {
    if (prod == cplx{0.0, 0.0}) return {0.0, 0.0};
    return std::exp(log_acc + std::log(prod));
  }
};

// log((1 - u) e^u) = -sum_{k>=2} u^k / k, for |u| < 1 (used with |u| <= 1/2).
cplx log_one_minus_times_exp(cplx u) {
  cplx term = u * u;         // u^k
  cplx s = term / 2.0;
  for (int k = 3; k < 200; ++k) {
    term *= u;
    const cplx inc = term / static_cast<double>(k);
    s += inc;
    if (std::abs(inc) < 1e-20 * (1.0 + std::abs(s))) break;
  }
  return -s;
}

void accumulate_factor(FoldedProduct& acc, cplx u) {
  // One factor (1 - u) e^u.
  if (std::abs(u) >= kHeadThreshold) {
    acc.add_log(u);
    acc.mul(cplx{1.0, 0.0} - u);
  } else {
    acc.add_log(log_one_minus_times_exp(u));
  }
}

}  // namespace

PowerSums power_sums(const OmegaPoint& w, int k_max) {
  if (k_max < 1) throw std::invalid_argument("power_sums: k_max must be >= 1");
  PowerSums ps;
  ps.values.resize(static_cast<std::size_t>(k_max), 0.0);
  ps.values[0] = w.gamma1();
  if (k_max >= 2) ps.values[1] = w.delta();
  for (int k = 3; k <= k_max; ++k) {
    double s = 0.0;
    for (double a : w.alpha_plus()) s += std::pow(a, k);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    for (double a : w.alpha_minus()) s += sign * std::pow(a, k);
    ps.values[static_cast<std::size_t>(k) - 1] = s;
  }
  return ps;
}

std::complex<double> eval_lp(const OmegaPoint& w, std::complex<double> z, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eval_lp: eps must be > 0");
  const double az = std::abs(z);

  FoldedProduct acc;
  acc.add_log(-w.gamma1() * z - 0.5 * w.gamma2() * z * z);
  for (double a : w.alpha_plus()) accumulate_factor(acc, z * a);
  for (double a : w.alpha_minus()) accumulate_factor(acc, -z * a);
  const cplx result = acc.value();

  if (w.tail_eps() > 0.0) {
    // Each discarded factor satisfies |log((1-u)e^u)| <= |u|^2 / (2(1-|u|)).
    const double u_max = az * w.alpha_tail_max();
    double log_err = std::numeric_limits<double>::infinity();
    if (u_max < 1.0) log_err = az * az * w.tail_eps() / (2.0 * (1.0 - u_max));
    const double abs_err = std::abs(result) * std::expm1(log_err);
    if (!(abs_err <= eps)) {
      throw ToleranceError("eval_lp: requested tolerance unattainable for stored tail",
                           abs_err);
    }
  }
  return result;
}

std::vector<double> taylor_coeffs(const OmegaPoint& w, int j_max) {
  if (j_max < 0) throw std::invalid_argument("taylor_coeffs: j_max must be >= 0");
  std::vector<double> c(static_cast<std::size_t>(j_max) + 1, 0.0);
  c[0] = 1.0;
  if (j_max == 0) return c;
  const PowerSums ps = power_sums(w, j_max);
  for (int j = 1; j <= j_max; ++j) {
    double s = 0.0;
    for (int i = 1; i <= j; ++i) s += ps.at(i) * c[static_cast<std::size_t>(j - i)];
    c[static_cast<std::size_t>(j)] = -s / static_cast<double>(j);
  }
  return c;
}

namespace {

// Sum over all m_i >= 0 with sum_i i*m_i = remaining, parts of size >= i.
double partition_sum(const PowerSums& ps, int i, int remaining, double weight) {
  if (remaining == 0) return weight;
  if (i > remaining) return 0.0;
  double total = 0.0;
  // m_i = 0:
  total += partition_sum(ps, i + 1, remaining, weight);
  // m_i >= 1: multiply (-p_i)^{m_i} / (m_i! i^{m_i}) incrementally.
  double f = weight;
  const double p = ps.at(i);
  for (int m = 1; m * i <= remaining; ++m) {
    f *= -p / (static_cast<double>(m) * static_cast<double>(i));
    total += partition_sum(ps, i + 1, remaining - m * i, f);
  }
  return total;
}

}  // namespace

std::vector<double> taylor_coeffs_partition(const OmegaPoint& w, int j_max) {
  if (j_max < 0) throw std::invalid_argument("taylor_coeffs_partition: j_max must be >= 0");
  if (j_max > 20) {
    throw std::invalid_argument("taylor_coeffs_partition: j_max > 20 (enumeration blowup)");
  }
  std::vector<double> c(static_cast<std::size_t>(j_max) + 1, 0.0);
  c[0] = 1.0;  // the empty partition
  if (j_max == 0) return c;
  const PowerSums ps = power_sums(w, j_max);
  for (int j = 1; j <= j_max; ++j) {
    c[static_cast<std::size_t>(j)] = partition_sum(ps, 1, j, 1.0);
  }
  return c;
}

PvResult pv_eval(const OmegaPoint& w, std::complex<double> z,
                 const std::vector<double>& r_schedule) {
  if (r_schedule.empty()) throw std::invalid_argument("pv_eval: empty threshold schedule");
  for (std::size_t i = 0; i < r_schedule.size(); ++i) {
    if (!(r_schedule[i] > 0.0) || (i > 0 && !(r_schedule[i] > r_schedule[i - 1]))) {
      throw std::invalid_argument("pv_eval: schedule must be positive and increasing");
    }
  }
  const double g2_tol = 1e-12 * std::max(1.0, w.delta());
  if (std::abs(w.gamma2()) > g2_tol) {
    throw std::domain_error("pv_eval: representation requires gamma2 = 0");
  }

  PvResult out;
  out.diagnostics.thresholds = r_schedule;

  const auto& ap = w.alpha_plus();
  const auto& am = w.alpha_minus();
  std::size_t ip = 0, im = 0;  // already-included prefix ends (sequences nonincreasing)
  FoldedProduct acc;
  double pv_sum = 0.0;
  for (double r : r_schedule) {
    const double cutoff = 1.0 / (r * r);
    while (ip < ap.size() && ap[ip] > cutoff) {
      acc.mul(cplx{1.0, 0.0} - z * ap[ip]);
      pv_sum += ap[ip];
      ++ip;
    }
    while (im < am.size() && am[im] > cutoff) {
      acc.mul(cplx{1.0, 0.0} + z * am[im]);
      pv_sum -= am[im];
      ++im;
    }
    out.diagnostics.partial_products.push_back(acc.value());
    out.diagnostics.pv_sums.push_back(pv_sum);
  }
  out.value = out.diagnostics.partial_products.back();
  out.diagnostics.gamma1_gap = std::abs(pv_sum - w.gamma1());
  out.diagnostics.gamma1_consistent =
      out.diagnostics.gamma1_gap <= 1e-9 * std::max(1.0, std::abs(w.gamma1()));
  return out;
}

std::complex<double> det_reg(std::span<const double> spectrum, int r, std::complex<double> z) {
  if (r < 2) throw std::invalid_argument("det_reg: order must be >= 2");
  FoldedProduct acc;
  for (double lambda : spectrum) {
    if (!std::isfinite(lambda)) throw std::invalid_argument("det_reg: non-finite eigenvalue");
    const cplx u = z * lambda;
    cplx expo = u;  // sum_{j=1..r-1} u^j / j
    cplx upow = u;
    for (int j = 2; j < r; ++j) {
      upow *= u;
      expo += upow / static_cast<double>(j);
    }
    acc.add_log(expo);
    acc.mul(cplx{1.0, 0.0} - u);
  }
  return acc.value();
}

HigherOmegaPoint::HigherOmegaPoint(std::vector<double> alpha_plus,
                                   std::vector<double> alpha_minus,
                                   std::vector<double> deltas)
    : alpha_plus_(std::move(alpha_plus)),
      alpha_minus_(std::move(alpha_minus)),
      deltas_(std::move(deltas)) {
  const int r = static_cast<int>(deltas_.size());
  if (r < 2) throw std::invalid_argument("HigherOmegaPoint: order must be >= 2");
  auto check = [](const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!(v[i] >= 0.0) || (i > 0 && !(v[i - 1] >= v[i]))) {
        throw std::invalid_argument(
            "HigherOmegaPoint: alpha sequences must be nonincreasing and >= 0");
      }
    }
  };
  check(alpha_plus_);
  check(alpha_minus_);
  double mass_r = 0.0;
  for (double a : alpha_plus_) mass_r += std::pow(a, r);
  for (double a : alpha_minus_) mass_r += std::pow(a, r);
  if (!(mass_r <= deltas_.back())) {
    throw std::invalid_argument("HigherOmegaPoint: delta_r must dominate the r-power mass");
  }
}

std::complex<double> eval_higher(const HigherOmegaPoint& w, std::complex<double> z) {
  const int r = w.order();
  cplx pre{0.0, 0.0};
  cplx zpow{1.0, 0.0};
  for (int j = 1; j <= r; ++j) {
    zpow *= z;
    pre -= w.deltas()[static_cast<std::size_t>(j) - 1] * zpow / static_cast<double>(j);
  }
  std::vector<double> spectrum;
  spectrum.reserve(w.alpha_plus().size() + w.alpha_minus().size());
  for (double a : w.alpha_plus()) spectrum.push_back(a);
  for (double a : w.alpha_minus()) spectrum.push_back(-a);
  return std::exp(pre) * det_reg(spectrum, r + 1, z);
}

double default_bound_constant() { return std::exp(1.0) * (2.0 + std::log(3.0)); }

double quantitative_bound(const OmegaPoint& w, const OmegaPoint& wt, std::complex<double> z,
                          double bound_constant) {
  if (!(bound_constant > 0.0)) {
    throw std::invalid_argument("quantitative_bound: constant must be > 0");
  }
  const double az = std::abs(z);
  const double g1 = w.gamma1(), g1t = wt.gamma1();
  const double d = w.delta(), dt = wt.delta();

  const double term1 = std::exp(std::abs(g1) * az + 5.0 * d * az * az) *
                       std::expm1(std::abs(g1 - g1t) * az + 0.5 * std::abs(d - dt) * az * az);

  double ell3_cubed = 0.0;
  auto add_cubes = [&ell3_cubed](std::span<const double> a, std::span<const double> b) {
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      const double x = std::abs((i < a.size() ? a[i] : 0.0) - (i < b.size() ? b[i] : 0.0));
      ell3_cubed += x * x * x;
    }
  };
  add_cubes(w.alpha_plus(), wt.alpha_plus());
  add_cubes(w.alpha_minus(), wt.alpha_minus());
  const double ell3 = std::cbrt(ell3_cubed);

  const double cube = az * (std::sqrt(d) + std::sqrt(dt)) + 1.0;
  const double term2 =
      az * ell3 *
      std::exp(std::abs(g1t) * az + 0.5 * dt * az * az + bound_constant * cube * cube * cube);
  return term1 + term2;
}

}  // namespace lpomega
