#include "lpomega/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lpomega/lpfun.hpp"
#include "lpomega/stats.hpp"

namespace lpomega {

namespace {

using cplx = std::complex<double>;

std::vector<cplx> eval_on_grid(const OmegaPoint& w, const DiskGrid& grid, double eps) {
  std::vector<cplx> out;
  out.reserve(grid.points.size());
  for (const cplx& z : grid.points) out.push_back(eval_lp(w, z, eps));
  return out;
}

std::vector<cplx> rescaled_on_grid(const WeylVector& x, const DiskGrid& grid) {
  std::vector<cplx> out;
  out.reserve(grid.points.size());
  for (const cplx& z : grid.points) out.push_back(rescaled_charpoly(x, z));
  return out;
}

void quantiles_over_trials(const std::vector<std::vector<double>>& per_trial,
                           std::size_t schedule_size, std::vector<double>& q25,
                           std::vector<double>& q50, std::vector<double>& q75) {
  for (std::size_t k = 0; k < schedule_size; ++k) {
    std::vector<double> col;
    col.reserve(per_trial.size());
    for (const auto& row : per_trial) col.push_back(row[k]);
    q25.push_back(quantile(col, 0.25));
    q50.push_back(quantile(col, 0.50));
    q75.push_back(quantile(col, 0.75));
  }
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

double fraction_last_below_first(const std::vector<std::vector<double>>& per_trial) {
  if (per_trial.empty()) return 0.0;
  int hits = 0;
  for (const auto& row : per_trial) {
    if (row.back() < row.front()) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(per_trial.size());
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("ExperimentConfig: trials must be >= 1");
  if (!(radius > 0.0)) throw std::invalid_argument("ExperimentConfig: radius must be > 0");
  if (n_schedule.empty()) throw std::invalid_argument("ExperimentConfig: empty N schedule");
  for (std::size_t i = 0; i < n_schedule.size(); ++i) {
    if (n_schedule[i] < 1 || (i > 0 && n_schedule[i] <= n_schedule[i - 1])) {
      throw std::invalid_argument("ExperimentConfig: N schedule must be strictly increasing");
    }
  }
}

ConvergenceReport run_theorem32(const ExperimentConfig& config) {
  config.validate();
  const DiskGrid grid = DiskGrid::standard(config.radius);
  const std::vector<cplx> target = eval_on_grid(config.omega, grid, 1e-10);
  const int n_max = config.n_schedule.back();
  const RngStream root(config.seed);

  ConvergenceReport rep;
  rep.n_values = config.n_schedule;
  rep.per_trial.assign(static_cast<std::size_t>(config.trials), {});

  std::vector<OmegaEstimate> estimates(static_cast<std::size_t>(config.trials));
  parallel_for(config.trials, config.threads, [&](int t) {
    const RngStream sub = root.substream(static_cast<std::uint64_t>(t));
    // One matrix per trial; the schedule's corners share its randomness, so a
    // trial's trajectory is the coupled (almost-sure flavored) object.
    const HermitianMatrix h = sample_ergodic(config.omega, n_max, 0, sub);
    std::vector<double>& dists = rep.per_trial[static_cast<std::size_t>(t)];
    dists.reserve(config.n_schedule.size());
    for (int n : config.n_schedule) {
      const WeylVector x = eigenvalues(n == n_max ? h : h.corner(n));
      dists.push_back(sup_distance(rescaled_on_grid(x, grid), target));
      if (n == n_max) {
        std::vector<double> scaled(x.entries());
        for (double& v : scaled) v /= static_cast<double>(n);
        const OmegaPoint w = embed_weyl(WeylVector(std::move(scaled)));
        OmegaEstimate& est = estimates[static_cast<std::size_t>(t)];
        est.alpha_plus = w.alpha_plus();
        est.alpha_minus = w.alpha_minus();
        est.gamma1 = w.gamma1();
        est.delta = w.delta();
      }
    }
  });

  quantiles_over_trials(rep.per_trial, config.n_schedule.size(), rep.q25, rep.q50, rep.q75);

  // Coordinate-wise medians of the embedded largest-N rows.
  const std::size_t cap = 4;
  for (std::size_t i = 0; i < cap; ++i) {
    std::vector<double> ap, am;
    for (const auto& e : estimates) {
      ap.push_back(i < e.alpha_plus.size() ? e.alpha_plus[i] : 0.0);
      am.push_back(i < e.alpha_minus.size() ? e.alpha_minus[i] : 0.0);
    }
    rep.omega_estimate.alpha_plus.push_back(median(std::move(ap)));
    rep.omega_estimate.alpha_minus.push_back(median(std::move(am)));
  }
  {
    std::vector<double> g1, d;
    for (const auto& e : estimates) {
      g1.push_back(e.gamma1);
      d.push_back(e.delta);
    }
    rep.omega_estimate.gamma1 = median(std::move(g1));
    rep.omega_estimate.delta = median(std::move(d));
  }

  rep.median_decreasing = strictly_decreasing(rep.q50);
  rep.trial_decrease_fraction = fraction_last_below_first(rep.per_trial);
  rep.pass = rep.median_decreasing && rep.trial_decrease_fraction >= 0.8;
  return rep;
}

ConvergenceReport run_theorem44(const ExperimentConfig& config) {
  config.validate();
  if (config.n_schedule.size() < 2) {
    throw std::invalid_argument("run_theorem44: need at least two rows to difference");
  }
  const DiskGrid grid = DiskGrid::standard(config.radius);
  const int top_n = config.n_schedule.back();
  const RngStream root(config.seed);

  ConvergenceReport rep;
  rep.n_values = config.n_schedule;
  rep.per_trial.assign(static_cast<std::size_t>(config.trials), {});

  parallel_for(config.trials, config.threads, [&](int t) {
    RngStream sub = root.substream(static_cast<std::uint64_t>(t));
    EnsembleSpec top_spec = config.ensemble;
    top_spec.n = top_n;
    const WeylVector top = sample_spectrum(top_spec, sub);
    const InterlacingArray arr = sample_array(top, config.ensemble.beta, sub);

    // Sup-differences between consecutive scheduled rows (rescaled by row size).
    std::vector<std::vector<cplx>> values;
    for (int n : config.n_schedule) values.push_back(rescaled_on_grid(arr.row(n), grid));
    std::vector<double>& diffs = rep.per_trial[static_cast<std::size_t>(t)];
    for (std::size_t k = 1; k < values.size(); ++k) {
      diffs.push_back(sup_distance(values[k - 1], values[k]));
    }
  });

  quantiles_over_trials(rep.per_trial, config.n_schedule.size() - 1, rep.q25, rep.q50, rep.q75);
  rep.median_decreasing = strictly_decreasing(rep.q50);
  rep.trial_decrease_fraction = fraction_last_below_first(rep.per_trial);
  rep.pass = rep.median_decreasing;
  return rep;
}

AiryReport run_airy(const ExperimentConfig& config) {
  config.validate();
  const double beta = config.ensemble.beta;
  const RngStream root(config.seed);

  AiryReport rep;
  rep.n_values = config.n_schedule;
  rep.renorm_at_zero_exact = true;

  std::vector<std::vector<double>> g1(config.n_schedule.size()),
      dl(config.n_schedule.size());
  std::vector<std::vector<double>> probe(config.n_schedule.size());
  for (std::size_t k = 0; k < config.n_schedule.size(); ++k) {
    const int n = config.n_schedule[k];
    g1[k].resize(static_cast<std::size_t>(config.trials));
    dl[k].resize(static_cast<std::size_t>(config.trials));
    probe[k].resize(static_cast<std::size_t>(config.trials));
    std::vector<int> zero_flags(static_cast<std::size_t>(config.trials), 0);
    parallel_for(config.trials, config.threads, [&, n, k](int t) {
      RngStream sub = root.substream(
          mix64(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(t)));
      // Resample on an exact zero edge point (probability-zero event).
      for (;;) {
        const WeylVector x = sample_gbe(n, beta, sub);
        std::vector<double> y;
        y.reserve(static_cast<std::size_t>(n));
        const double edge_scale = 2.0 * std::pow(static_cast<double>(n), 2.0 / 3.0);
        bool zero = false;
        for (double xi : x.entries()) {
          const double yi = edge_scale * (xi - 1.0);
          if (yi == 0.0) {
            zero = true;
            break;
          }
          y.push_back(yi);
        }
        if (zero) continue;
        double s1 = 0.0, s2 = 0.0;
        for (double yi : y) {
          s1 += 1.0 / yi;
          s2 += 1.0 / (yi * yi);
        }
        g1[k][static_cast<std::size_t>(t)] = s1;
        dl[k][static_cast<std::size_t>(t)] = s2;
        const WeylVector yv(std::move(y));  // x is ordered, so y is too
        probe[k][static_cast<std::size_t>(t)] = std::abs(airy_renorm(yv, n, config.probe_z));
        zero_flags[static_cast<std::size_t>(t)] =
            airy_renorm(yv, n, cplx{0.0, 0.0}) == cplx{1.0, 0.0} ? 1 : 0;
        break;
      }
    });
    for (int flag : zero_flags) {
      if (flag == 0) rep.renorm_at_zero_exact = false;
    }
    rep.gamma1_median.push_back(median(g1[k]));
    rep.delta_median.push_back(median(dl[k]));
  }

  for (std::size_t k = 1; k < probe.size(); ++k) {
    rep.probe_ks.push_back(ks_statistic(probe[k - 1], probe[k]));
  }

  std::vector<double> log_n, log_g;
  for (std::size_t k = 0; k < config.n_schedule.size(); ++k) {
    if (rep.gamma1_median[k] < 0.0) {
      log_n.push_back(std::log(static_cast<double>(config.n_schedule[k])));
      log_g.push_back(std::log(-rep.gamma1_median[k]));
    }
  }
  if (log_n.size() >= 2) rep.fitted_exponent = linear_fit(log_n, log_g).slope;

  const std::size_t last = config.n_schedule.size() - 1;
  rep.delta_top_octave_drift =
      std::abs(rep.delta_median[last] - rep.delta_median[last - 1]) /
      std::max(1e-300, std::abs(rep.delta_median[last - 1]));

  rep.pass = rep.renorm_at_zero_exact && rep.fitted_exponent >= 0.23 &&
             rep.fitted_exponent <= 0.43 && rep.delta_top_octave_drift < 0.10;
  return rep;
}

OmegaPoint random_finite_omega(RngStream& rng, double scale) {
  const int np = static_cast<int>(rng.uniform01() * 4.0);  // 0..3 stored alphas per sign
  const int nm = static_cast<int>(rng.uniform01() * 4.0);
  std::vector<double> ap, am;
  for (int i = 0; i < np; ++i) ap.push_back(scale * rng.uniform01());
  for (int i = 0; i < nm; ++i) am.push_back(scale * rng.uniform01());
  std::sort(ap.begin(), ap.end(), std::greater<>());
  std::sort(am.begin(), am.end(), std::greater<>());
  const double gamma1 = scale * (2.0 * rng.uniform01() - 1.0);
  const double delta = alpha_sq_mass(ap, am) + scale * rng.uniform01();
  return OmegaPoint(std::move(ap), std::move(am), gamma1, delta);
}

BoundSweepReport run_bound_sweep(const ExperimentConfig& config) {
  config.validate();
  const DiskGrid grid = DiskGrid::standard(config.radius);
  const RngStream root(config.seed);

  BoundSweepReport rep;
  rep.pairs = config.trials;
  rep.grid_points = static_cast<int>(grid.points.size());

  std::vector<double> slack(static_cast<std::size_t>(config.trials), 0.0);
  std::vector<std::vector<BoundViolation>> violations(static_cast<std::size_t>(config.trials));
  parallel_for(config.trials, config.threads, [&](int t) {
    RngStream sub = root.substream(static_cast<std::uint64_t>(t));
    const OmegaPoint w = random_finite_omega(sub, config.bound_pairs_scale);
    const OmegaPoint wt = random_finite_omega(sub, config.bound_pairs_scale);
    double worst = 0.0;
    for (const cplx& z : grid.points) {
      const double lhs = std::abs(eval_lp(w, z) - eval_lp(wt, z));
      // Both argument orders admit the bound.
      for (const double rhs : {quantitative_bound(w, wt, z), quantitative_bound(wt, w, z)}) {
        if (lhs > rhs * (1.0 + 1e-12) + 1e-15) {
          violations[static_cast<std::size_t>(t)].push_back({w, wt, z, lhs, rhs});
        }
        if (rhs > 0.0) worst = std::max(worst, lhs / rhs);
      }
    }
    slack[static_cast<std::size_t>(t)] = worst;
  });

  for (int t = 0; t < config.trials; ++t) {
    rep.max_slack = std::max(rep.max_slack, slack[static_cast<std::size_t>(t)]);
    for (auto& v : violations[static_cast<std::size_t>(t)]) rep.violations.push_back(v);
  }
  rep.pass = rep.violations.empty();
  return rep;
}

}  // namespace lpomega
