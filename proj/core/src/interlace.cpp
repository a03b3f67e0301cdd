#include "lpomega/interlace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lpomega/stats.hpp"

namespace lpomega {

namespace {

constexpr double kTieCollapse = 1e-13;   // gaps below this (times span) become ties
constexpr double kBisectWidth = 1e-14;   // width stop (times span)
constexpr int kBisectIters = 60;

struct Group {
  double value = 0.0;
  int multiplicity = 0;
  double weight = 0.0;  // summed Dirichlet weight
};

// Sign of q(z) = sum_i w_i prod_{l != i} (z - v_l) at z strictly between two
// distinct v's, via max-normalized log magnitudes with exact sign tracking.
int reduced_poly_sign(const std::vector<Group>& groups, double z) {
  const std::size_t g = groups.size();
  std::vector<double> logmag(g);
  std::vector<int> sign(g);
  double lmax = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g; ++i) {
    double lm = std::log(groups[i].weight);
    int s = 1;
    for (std::size_t l = 0; l < g; ++l) {
      if (l == i) continue;
      const double d = z - groups[l].value;
      lm += std::log(std::abs(d));
      if (d < 0.0) s = -s;
    }
    logmag[i] = lm;
    sign[i] = s;
    lmax = std::max(lmax, lm);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < g; ++i) acc += sign[i] * std::exp(logmag[i] - lmax);
  return acc > 0.0 ? 1 : (acc < 0.0 ? -1 : 0);
}

double bisect_root(const std::vector<Group>& groups, std::size_t upper_index, double span) {
  // Interval (v_{i+1}, v_i); sign of q at the v_i end is (-1)^i for 0-based i.
  double hi = groups[upper_index].value;
  double lo = groups[upper_index + 1].value;
  const int sign_hi = (upper_index % 2 == 0) ? 1 : -1;
  const double width_stop = kBisectWidth * span;
  for (int it = 0; it < kBisectIters && hi - lo > width_stop; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval exhausted in floating point
    const int s = reduced_poly_sign(groups, mid);
    if (s == 0) return mid;
    if (s == sign_hi) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

bool interlaces(const WeylVector& x, const WeylVector& y, double slack) {
  if (x.size() + 1 != y.size()) return false;
  for (int m = 0; m < x.size(); ++m) {
    if (!(y[m] + slack >= x[m] && x[m] >= y[m + 1] - slack)) return false;
  }
  return true;
}

bool InterlacingArray::interlaced(double slack) const {
  for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
    if (!interlaces(rows[k], rows[k + 1], slack)) return false;
  }
  return true;
}

WeylVector apply_kernel(const WeylVector& y, double beta, RngStream& rng) {
  if (!(beta > 0.0)) throw std::invalid_argument("apply_kernel: beta must be > 0");
  const int np1 = y.size();
  if (np1 < 2) throw std::invalid_argument("apply_kernel: need at least 2 points");
  for (double v : y.entries()) {
    if (!std::isfinite(v)) throw std::invalid_argument("apply_kernel: non-finite input");
  }
  const int n = np1 - 1;

  // Dirichlet(beta/2, ..., beta/2) weights, drawn in index order.
  std::vector<double> d(static_cast<std::size_t>(np1));
  double total = 0.0;
  for (double& v : d) {
    v = std::max(rng.gamma(0.5 * beta), std::numeric_limits<double>::min());
    total += v;
  }
  for (double& v : d) v /= total;

  // Collapse near-ties and group: a value of multiplicity m is itself a root
  // of multiplicity m-1, and the groups' summed weights drive the reduced
  // distinct-value polynomial.
  const double span = y[0] - y[np1 - 1];
  const double tie_gap = kTieCollapse * span;
  std::vector<Group> groups;
  for (int j = 0; j < np1; ++j) {
    if (!groups.empty() && groups.back().value - y[j] <= tie_gap) {
      groups.back().multiplicity += 1;
      groups.back().weight += d[static_cast<std::size_t>(j)];
    } else {
      groups.push_back({y[j], 1, d[static_cast<std::size_t>(j)]});
    }
  }

  std::vector<double> roots;
  roots.reserve(static_cast<std::size_t>(n));
  for (const Group& g : groups) {
    for (int m = 1; m < g.multiplicity; ++m) roots.push_back(g.value);
  }
  for (std::size_t i = 0; i + 1 < groups.size(); ++i) {
    roots.push_back(bisect_root(groups, i, span));
  }
  if (static_cast<int>(roots.size()) != n) {
    throw std::runtime_error("apply_kernel: root count mismatch (bracketing bug)");
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return WeylVector(std::move(roots));
}

InterlacingArray sample_array(const WeylVector& top, double beta, RngStream& rng) {
  const int m = top.size();
  if (m < 1) throw std::invalid_argument("sample_array: empty top row");
  InterlacingArray arr;
  arr.rows.assign(static_cast<std::size_t>(m), WeylVector());
  arr.rows[static_cast<std::size_t>(m) - 1] = top;
  for (int k = m; k >= 2; --k) {
    arr.rows[static_cast<std::size_t>(k) - 2] =
        apply_kernel(arr.rows[static_cast<std::size_t>(k) - 1], beta, rng);
  }
  return arr;
}

ConsistencyReport consistency_test(const FamilySampler& family, double beta, int n, int trials,
                                   const SpectrumStatistic& statistic,
                                   const std::string& statistic_name, const RngStream& rng) {
  if (trials < 100) throw std::invalid_argument("consistency_test: need at least 100 trials");
  if (n < 1) throw std::invalid_argument("consistency_test: n must be >= 1");

  std::vector<double> direct(static_cast<std::size_t>(trials));
  std::vector<double> projected(static_cast<std::size_t>(trials));
  parallel_for(trials, 0, [&](int t) {
    RngStream sub_d = rng.substream(mix64(0xd12ec7, static_cast<std::uint64_t>(t)));
    direct[static_cast<std::size_t>(t)] = statistic(family(n, sub_d));
    RngStream sub_p = rng.substream(mix64(0x1279ec7, static_cast<std::uint64_t>(t)));
    const WeylVector up = family(n + 1, sub_p);
    projected[static_cast<std::size_t>(t)] = statistic(apply_kernel(up, beta, sub_p));
  });

  ConsistencyReport rep;
  rep.statistic = statistic_name;
  rep.n = n;
  rep.trials = trials;
  rep.mean_direct = mean(direct);
  rep.mean_projected = mean(projected);
  const double se = std::sqrt(variance(direct) / trials + variance(projected) / trials);
  rep.z_score = se > 0.0 ? (rep.mean_direct - rep.mean_projected) / se : 0.0;
  rep.ks_stat = ks_statistic(direct, projected);
  rep.ks_pvalue = ks_two_sample_pvalue(rep.ks_stat, direct.size(), projected.size());
  return rep;
}

}  // namespace lpomega
