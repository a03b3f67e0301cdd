#include "lpomega/omega.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lpomega {

namespace {

bool nonincreasing(std::span<const double> v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i - 1] >= v[i])) return false;  // also rejects NaN
  }
  return true;
}

bool nonneg_nonincreasing(std::span<const double> v) {
  if (!nonincreasing(v)) return false;
  return v.empty() || v.back() >= 0.0;
}

void trim_trailing_zeros(std::vector<double>& v) {
  while (!v.empty() && v.back() == 0.0) v.pop_back();
}

}  // namespace

WeylVector::WeylVector(std::vector<double> entries) : entries_(std::move(entries)) {
  for (double e : entries_) {
    if (!std::isfinite(e)) throw std::invalid_argument("WeylVector: non-finite entry");
  }
  if (!nonincreasing(entries_)) {
    throw std::invalid_argument("WeylVector: entries must be nonincreasing");
  }
}

double WeylVector::sum() const {
  double s = 0.0;
  for (double e : entries_) s += e;
  return s;
}

double WeylVector::sum_sq() const {
  double s = 0.0;
  for (double e : entries_) s += e * e;
  return s;
}

double alpha_sq_mass(std::span<const double> alpha_plus, std::span<const double> alpha_minus) {
  double s = 0.0;
  for (double a : alpha_plus) s += a * a;
  for (double a : alpha_minus) s += a * a;
  return s;
}

OmegaPoint::OmegaPoint() = default;

OmegaPoint::OmegaPoint(std::vector<double> alpha_plus, std::vector<double> alpha_minus,
                       double gamma1, double delta, double tail_eps)
    : alpha_plus_(std::move(alpha_plus)),
      alpha_minus_(std::move(alpha_minus)),
      gamma1_(gamma1),
      delta_(delta),
      tail_eps_(tail_eps) {
  if (!std::isfinite(gamma1_) || !std::isfinite(delta_)) {
    throw std::invalid_argument("OmegaPoint: non-finite gamma1/delta");
  }
  if (!nonneg_nonincreasing(alpha_plus_) || !nonneg_nonincreasing(alpha_minus_)) {
    throw std::invalid_argument("OmegaPoint: alpha sequences must be nonincreasing and >= 0");
  }
  if (!(tail_eps_ >= 0.0)) throw std::invalid_argument("OmegaPoint: tail_eps must be >= 0");
  if (!(delta_ >= 0.0)) throw std::invalid_argument("OmegaPoint: delta must be >= 0");
  trim_trailing_zeros(alpha_plus_);
  trim_trailing_zeros(alpha_minus_);
  if (lpomega::alpha_sq_mass(alpha_plus_, alpha_minus_) > delta_) {
    throw std::invalid_argument("OmegaPoint: sum of squared alphas exceeds delta");
  }
}

double OmegaPoint::alpha_sq_mass() const {
  return lpomega::alpha_sq_mass(alpha_plus_, alpha_minus_);
}

double OmegaPoint::gamma2() const { return delta_ - alpha_sq_mass(); }

double OmegaPoint::alpha_max() const {
  const double p = alpha_plus_.empty() ? 0.0 : alpha_plus_.front();
  const double m = alpha_minus_.empty() ? 0.0 : alpha_minus_.front();
  return std::max(p, m);
}

double OmegaPoint::alpha_tail_max() const {
  // Sequences are nonincreasing, so a discarded alpha is at most the last
  // stored value; with nothing stored, at most sqrt(tail_eps).
  double bound = std::sqrt(tail_eps_);
  if (!alpha_plus_.empty()) bound = std::min(bound, alpha_plus_.back());
  if (!alpha_minus_.empty()) bound = std::min(bound, alpha_minus_.back());
  return bound;
}

bool OmegaPoint::is_identity() const {
  return alpha_plus_.empty() && alpha_minus_.empty() && gamma1_ == 0.0 && delta_ == 0.0 &&
         tail_eps_ == 0.0;
}

OmegaPoint embed_weyl(const WeylVector& x) {
  const int n = x.size();
  std::vector<double> ap, am;
  ap.reserve(static_cast<std::size_t>(n));
  am.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ap.push_back(std::max(x[i], 0.0));
  for (int i = 0; i < n; ++i) am.push_back(std::max(-x[n - 1 - i], 0.0));
  trim_trailing_zeros(ap);
  trim_trailing_zeros(am);

  double sum_plus = 0.0, sum_minus = 0.0;
  for (double a : ap) sum_plus += a;
  for (double a : am) sum_minus += a;
  const double gamma1 = sum_plus - sum_minus;
  const double delta = alpha_sq_mass(ap, am);
  return OmegaPoint(std::move(ap), std::move(am), gamma1, delta, 0.0);
}

OVReport ov_diagnose(const std::vector<WeylVector>& seq,
                     const std::function<double(int)>& rescale, double tol,
                     const OVOptions& opts) {
  if (seq.empty()) throw std::invalid_argument("ov_diagnose: empty sequence");
  if (!(tol >= 0.0)) throw std::invalid_argument("ov_diagnose: tol must be >= 0");

  int min_len = seq.front().size();
  for (const auto& row : seq) min_len = std::min(min_len, row.size());
  const int cap = std::max(0, std::min(opts.index_cap, min_len));  // clamp, not an error

  struct Embedded {
    std::vector<double> ap, am;
    double g1, d;
  };
  std::vector<Embedded> emb;
  emb.reserve(seq.size());
  for (const auto& row : seq) {
    const int n = row.size();
    const double factor = rescale(n);
    if (!(factor > 0.0)) throw std::invalid_argument("ov_diagnose: rescale factor must be > 0");
    std::vector<double> scaled(row.entries());
    for (double& e : scaled) e *= factor;
    const OmegaPoint w = embed_weyl(WeylVector(std::move(scaled)));
    Embedded e;
    e.ap.assign(static_cast<std::size_t>(cap), 0.0);
    e.am.assign(static_cast<std::size_t>(cap), 0.0);
    for (int i = 0; i < cap; ++i) {
      if (i < static_cast<int>(w.alpha_plus().size())) e.ap[static_cast<std::size_t>(i)] = w.alpha_plus()[static_cast<std::size_t>(i)];
      if (i < static_cast<int>(w.alpha_minus().size())) e.am[static_cast<std::size_t>(i)] = w.alpha_minus()[static_cast<std::size_t>(i)];
    }
    e.g1 = w.gamma1();
    e.d = w.delta();
    emb.push_back(std::move(e));
  }

  OVReport rep;
  rep.tol = tol;
  rep.alpha_plus_limit = emb.back().ap;
  rep.alpha_minus_limit = emb.back().am;
  rep.gamma1_limit = emb.back().g1;
  rep.delta_limit = emb.back().d;

  if (emb.size() < 2) return rep;  // residuals stay at the +inf sentinel

  const std::size_t window = static_cast<std::size_t>(std::max(2, opts.window));
  const std::size_t first = emb.size() > window ? emb.size() - window : 0;
  double ra = 0.0, rg = 0.0, rd = 0.0;
  for (std::size_t k = first + 1; k < emb.size(); ++k) {
    for (int i = 0; i < cap; ++i) {
      ra = std::max(ra, std::abs(emb[k].ap[static_cast<std::size_t>(i)] - emb[k - 1].ap[static_cast<std::size_t>(i)]));
      ra = std::max(ra, std::abs(emb[k].am[static_cast<std::size_t>(i)] - emb[k - 1].am[static_cast<std::size_t>(i)]));
    }
    rg = std::max(rg, std::abs(emb[k].g1 - emb[k - 1].g1));
    rd = std::max(rd, std::abs(emb[k].d - emb[k - 1].d));
  }
  rep.alpha_residual = ra;
  rep.gamma1_residual = rg;
  rep.delta_residual = rd;
  rep.converged = ra <= tol && rg <= tol && rd <= tol;
  return rep;
}

double l3_distance(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = std::max(a.size(), b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ai = i < a.size() ? a[i] : 0.0;
    const double bi = i < b.size() ? b[i] : 0.0;
    const double d = std::abs(ai - bi);
    s += d * d * d;
  }
  return std::cbrt(s);
}

}  // namespace lpomega
