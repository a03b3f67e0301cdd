#include "lpomega/models.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lpomega {

namespace {

using cplx = std::complex<double>;

// Field tags for the counter-based entry draws.
constexpr std::uint64_t kTagGue = 0x6755;
constexpr std::uint64_t kTagXiPlus = 0x58492b;
constexpr std::uint64_t kTagXiMinus = 0x58492d;

WeylVector sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return WeylVector(std::move(v));
}

}  // namespace

HermitianMatrix::HermitianMatrix(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("HermitianMatrix: size must be >= 1");
  data_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), cplx{0.0, 0.0});
}

HermitianMatrix HermitianMatrix::from_entries(int n, std::vector<cplx> row_major) {
  HermitianMatrix h(n);
  if (row_major.size() != h.data_.size()) {
    throw std::invalid_argument("HermitianMatrix: entry count mismatch");
  }
  double scale = 0.0;
  for (const cplx& v : row_major) scale = std::max(scale, std::abs(v));
  const double tol = 1e-12 * std::max(1.0, scale);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const cplx a = row_major[static_cast<std::size_t>(i) * n + j];
      const cplx b = row_major[static_cast<std::size_t>(j) * n + i];
      if (std::abs(a - std::conj(b)) > tol) {
        throw std::invalid_argument("HermitianMatrix: input is not Hermitian");
      }
    }
  }
  h.data_ = std::move(row_major);
  // Symmetrize exactly so downstream code can rely on the invariant.
  for (int i = 0; i < n; ++i) {
    h.data_[static_cast<std::size_t>(i) * n + i] = cplx{h(i, i).real(), 0.0};
    for (int j = i + 1; j < n; ++j) {
      h.data_[static_cast<std::size_t>(j) * n + i] = std::conj(h(i, j));
    }
  }
  return h;
}

void HermitianMatrix::set(int i, int j, cplx v) {
  if (i == j) v = cplx{v.real(), 0.0};
  data_[static_cast<std::size_t>(i) * n_ + j] = v;
  data_[static_cast<std::size_t>(j) * n_ + i] = std::conj(v);
}

HermitianMatrix HermitianMatrix::corner(int m) const {
  if (m < 1 || m > n_) throw std::invalid_argument("corner: bad size");
  HermitianMatrix h(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      h.data_[static_cast<std::size_t>(i) * m + j] = (*this)(i, j);
    }
  }
  return h;
}

std::string to_string(ModelTag tag) {
  switch (tag) {
    case ModelTag::Gue: return "gue";
    case ModelTag::Ergodic: return "ergodic";
    case ModelTag::Gbe: return "gbe";
    case ModelTag::Laguerre: return "laguerre";
    case ModelTag::InvLaguerre: return "inv-laguerre";
    case ModelTag::HpCayley: return "hp-cayley";
    case ModelTag::LoggasHp: return "loggas-hp";
    case ModelTag::LoggasIl: return "loggas-il";
  }
  throw std::logic_error("to_string: bad ModelTag");
}

ModelTag model_tag_from_string(const std::string& name) {
  if (name == "gue") return ModelTag::Gue;
  if (name == "ergodic") return ModelTag::Ergodic;
  if (name == "gbe") return ModelTag::Gbe;
  if (name == "laguerre") return ModelTag::Laguerre;
  if (name == "inv-laguerre") return ModelTag::InvLaguerre;
  if (name == "hp-cayley") return ModelTag::HpCayley;
  if (name == "loggas-hp") return ModelTag::LoggasHp;
  if (name == "loggas-il") return ModelTag::LoggasIl;
  throw std::invalid_argument("unknown model: " + name);
}

void EnsembleSpec::validate() const {
  if (n < 1) throw std::invalid_argument("EnsembleSpec: n must be >= 1");
  if (!(beta > 0.0)) throw std::invalid_argument("EnsembleSpec: beta must be > 0");
  if (model == ModelTag::Laguerre || model == ModelTag::InvLaguerre ||
      model == ModelTag::LoggasIl) {
    if (!(eta > -1.0)) throw std::invalid_argument("EnsembleSpec: eta must be > -1");
  }
  if (model == ModelTag::LoggasHp) {
    if (!(s.real() > -0.5)) throw std::invalid_argument("EnsembleSpec: Re(s) must be > -1/2");
  }
  if (model == ModelTag::Ergodic && k_trunc > 0) {
    const std::size_t support =
        std::max(omega.alpha_plus().size(), omega.alpha_minus().size());
    if (static_cast<std::size_t>(k_trunc) < support) {
      throw std::invalid_argument("EnsembleSpec: k_trunc below alpha support");
    }
  }
  if (mcmc_steps < 1) throw std::invalid_argument("EnsembleSpec: mcmc_steps must be >= 1");
}

HermitianMatrix sample_gue(int n, const RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_gue: n must be >= 1");
  HermitianMatrix h(n);
  for (int i = 0; i < n; ++i) {
    h.set(i, i, RngStream::field_gaussian(rng.field_key(kTagGue, static_cast<std::uint64_t>(i),
                                                        static_cast<std::uint64_t>(i))));
    for (int j = i + 1; j < n; ++j) {
      h.set(i, j,
            RngStream::field_complex_gaussian(rng.field_key(
                kTagGue, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j))));
    }
  }
  return h;
}

HermitianMatrix sample_ergodic(const OmegaPoint& w, int n, int k_trunc, const RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_ergodic: n must be >= 1");
  const std::size_t support = std::max(w.alpha_plus().size(), w.alpha_minus().size());
  if (k_trunc > 0 && static_cast<std::size_t>(k_trunc) < support) {
    throw std::invalid_argument("sample_ergodic: k_trunc below the stored alpha support");
  }

  const double g2 = w.gamma2();
  const double sqrt_g2 = std::sqrt(std::max(0.0, g2));

  // xi rows for every perturbation term, from the counter field: the size-n
  // draws are prefixes of larger ones, so corners project exactly.
  auto xi_row = [&rng, n](std::uint64_t tag, std::size_t k) {
    std::vector<cplx> row(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      row[static_cast<std::size_t>(i)] = RngStream::field_complex_gaussian(
          rng.field_key(tag, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(i)));
    }
    return row;
  };
  std::vector<std::vector<cplx>> xi_plus, xi_minus;
  for (std::size_t k = 0; k < w.alpha_plus().size(); ++k) xi_plus.push_back(xi_row(kTagXiPlus, k));
  for (std::size_t k = 0; k < w.alpha_minus().size(); ++k) xi_minus.push_back(xi_row(kTagXiMinus, k));

  HermitianMatrix h(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      cplx v = (i == j) ? cplx{w.gamma1(), 0.0} : cplx{0.0, 0.0};
      if (sqrt_g2 > 0.0) {
        const cplx g = (i == j)
                           ? cplx{RngStream::field_gaussian(rng.field_key(
                                      kTagGue, static_cast<std::uint64_t>(i),
                                      static_cast<std::uint64_t>(i))),
                                  0.0}
                           : RngStream::field_complex_gaussian(
                                 rng.field_key(kTagGue, static_cast<std::uint64_t>(i),
                                               static_cast<std::uint64_t>(j)));
        v += sqrt_g2 * g;
      }
      for (std::size_t k = 0; k < xi_plus.size(); ++k) {
        cplx t = xi_plus[k][static_cast<std::size_t>(i)] *
                 std::conj(xi_plus[k][static_cast<std::size_t>(j)]);
        if (i == j) t -= 1.0;
        v += w.alpha_plus()[k] * t;
      }
      for (std::size_t k = 0; k < xi_minus.size(); ++k) {
        cplx t = xi_minus[k][static_cast<std::size_t>(i)] *
                 std::conj(xi_minus[k][static_cast<std::size_t>(j)]);
        if (i == j) t -= 1.0;
        v -= w.alpha_minus()[k] * t;
      }
      h.set(i, j, v);
    }
  }
  return h;
}

std::pair<OmegaPoint, HermitianMatrix> sample_mixture(
    const std::function<OmegaPoint(RngStream&)>& nu, int n, int k_trunc, const RngStream& rng) {
  RngStream omega_stream = rng.substream(0x6d6978);
  const OmegaPoint w = nu(omega_stream);
  return {w, sample_ergodic(w, n, k_trunc, rng.substream(0x486d61))};
}

WeylVector eigenvalues(const HermitianMatrix& h) {
  const int n = h.size();
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = h(i, j);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalues: solver did not converge");
  }
  std::vector<double> ev(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = solver.eigenvalues()(n - 1 - i);
  return WeylVector(std::move(ev));
}

WeylVector tridiagonal_eigenvalues(std::span<const double> diag,
                                   std::span<const double> offdiag) {
  const int n = static_cast<int>(diag.size());
  if (n < 1 || offdiag.size() + 1 != diag.size()) {
    throw std::invalid_argument("tridiagonal_eigenvalues: bad band sizes");
  }
  Eigen::VectorXd d(n), e(std::max(0, n - 1));
  for (int i = 0; i < n; ++i) d(i) = diag[static_cast<std::size_t>(i)];
  for (int i = 0; i + 1 < n; ++i) e(i) = offdiag[static_cast<std::size_t>(i)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("tridiagonal_eigenvalues: solver did not converge");
  }
  std::vector<double> ev(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = solver.eigenvalues()(n - 1 - i);
  return WeylVector(std::move(ev));
}

WeylVector sample_gbe(int n, double beta, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_gbe: n must be >= 1");
  if (!(beta > 0.0)) throw std::invalid_argument("sample_gbe: beta must be > 0");
  std::vector<double> diag(static_cast<std::size_t>(n));
  std::vector<double> off(static_cast<std::size_t>(std::max(0, n - 1)));
  for (int i = 0; i < n; ++i) diag[static_cast<std::size_t>(i)] = std::sqrt(2.0) * rng.gaussian();
  for (int i = 0; i + 1 < n; ++i) off[static_cast<std::size_t>(i)] = rng.chi(beta * (n - 1 - i));
  WeylVector ev = tridiagonal_eigenvalues(diag, off);
  const double scale = 1.0 / (2.0 * std::sqrt(beta * static_cast<double>(n)));
  std::vector<double> x(ev.entries());
  for (double& v : x) v *= scale;
  return WeylVector(std::move(x));
}

WeylVector sample_laguerre(int n, double beta, double eta, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_laguerre: n must be >= 1");
  if (!(beta > 0.0)) throw std::invalid_argument("sample_laguerre: beta must be > 0");
  if (!(eta > -1.0)) throw std::invalid_argument("sample_laguerre: eta must be > -1");
  const double a = eta + 1.0 + 0.5 * beta * (n - 1);
  std::vector<double> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(std::max(0, n - 1)));
  for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = rng.chi(2.0 * a - beta * i);
  for (int i = 0; i + 1 < n; ++i) e[static_cast<std::size_t>(i)] = rng.chi(beta * (n - 1 - i));
  // Tridiagonal of B B^T for the lower-bidiagonal model B.
  std::vector<double> diag(static_cast<std::size_t>(n)), off(static_cast<std::size_t>(std::max(0, n - 1)));
  for (int i = 0; i < n; ++i) {
    const double prev = i > 0 ? e[static_cast<std::size_t>(i) - 1] : 0.0;
    diag[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(i)] + prev * prev;
  }
  for (int i = 0; i + 1 < n; ++i) {
    off[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(i)] * e[static_cast<std::size_t>(i)];
  }
  WeylVector ev = tridiagonal_eigenvalues(diag, off);
  std::vector<double> x(ev.entries());
  for (double& v : x) v *= 0.5;
  return WeylVector(std::move(x));
}

WeylVector invert_laguerre(const WeylVector& x) {
  std::vector<double> y;
  y.reserve(static_cast<std::size_t>(x.size()));
  for (double v : x.entries()) {
    if (!(v > 0.0)) throw std::domain_error("invert_laguerre: entries must be > 0");
    y.push_back(2.0 / v);
  }
  return sorted_desc(std::move(y));
}

WeylVector sample_hp_cayley(int n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_hp_cayley: n must be >= 1");
  for (std::uint64_t attempt = 0;; ++attempt) {
    RngStream sub = rng.substream(mix64(0x485043, attempt));
    Eigen::MatrixXcd g(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) g(i, j) = sub.complex_gaussian();
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
      const cplx rjj = r(j, j);
      const double m = std::abs(rjj);
      const cplx phase = m > 0.0 ? rjj / m : cplx{1.0, 0.0};
      q.col(j) *= phase;  // Haar phase fix: make the R diagonal positive
    }
    // H = i (I + U)(I - U)^{-1}, Hermitian since U is unitary.
    Eigen::MatrixXcd iu = Eigen::MatrixXcd::Identity(n, n) - q;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(iu);
    Eigen::MatrixXcd h = cplx{0.0, 1.0} *
                         ((Eigen::MatrixXcd::Identity(n, n) + q) * lu.inverse());
    h = 0.5 * (h + h.adjoint()).eval();
    if (!h.allFinite()) continue;  // U had an eigenvalue at 1; resample

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) continue;
    std::vector<double> ev(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = solver.eigenvalues()(n - 1 - i);
    return WeylVector(std::move(ev));
  }
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_vandermonde(std::span<const double> x, double beta) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double gap = std::abs(x[i] - x[j]);
      if (gap == 0.0) return kNegInf;
      s += std::log(gap);
    }
  }
  return beta * s;
}

}  // namespace

double log_density_hp_unordered(std::span<const double> x, cplx s, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("log_density_hp: beta must be > 0");
  if (!(s.real() > -0.5)) throw std::invalid_argument("log_density_hp: Re(s) must be > -1/2");
  const double n = static_cast<double>(x.size());
  // Real form of (1+ix)^{-s-c}(1-ix)^{-conj(s)-c} with c = beta(N-1)/2 + 1.
  const double c = s.real() + 0.5 * beta * (n - 1.0) + 1.0;
  double lp = 0.0;
  for (double xi : x) {
    if (!std::isfinite(xi)) return kNegInf;
    lp += -c * std::log1p(xi * xi) + 2.0 * s.imag() * std::atan(xi);
  }
  const double lv = log_vandermonde(x, beta);
  return lv == kNegInf ? kNegInf : lp + lv;
}

double log_density_il_unordered(std::span<const double> x, double eta, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("log_density_il: beta must be > 0");
  if (!(eta > -1.0)) throw std::invalid_argument("log_density_il: eta must be > -1");
  const double n = static_cast<double>(x.size());
  const double power = -eta - (n - 1.0) * beta - 2.0;
  double lp = 0.0;
  for (double xi : x) {
    if (!(xi > 0.0) || !std::isfinite(xi)) return kNegInf;
    lp += power * std::log(xi) - 2.0 / xi;
  }
  const double lv = log_vandermonde(x, beta);
  return lv == kNegInf ? kNegInf : lp + lv;
}

double log_density_hp(const WeylVector& x, cplx s, double beta) {
  return log_density_hp_unordered(x.span(), s, beta);
}

double log_density_il(const WeylVector& x, double eta, double beta) {
  return log_density_il_unordered(x.span(), eta, beta);
}

namespace {

// One Metropolis sweep; returns the number of accepted moves. logp is kept
// in sync with x.
int metropolis_sweep(const LogDensity& logdensity, std::vector<double>& x, double& logp,
                     double step, RngStream& rng) {
  int accepted = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double old = x[i];
    x[i] = old + step * rng.gaussian();
    const double proposed = logdensity(x);
    const double log_ratio = proposed - logp;
    if (log_ratio >= 0.0 || std::log(rng.uniform01()) < log_ratio) {
      logp = proposed;
      ++accepted;
    } else {
      x[i] = old;
    }
  }
  return accepted;
}

std::vector<double> mcmc_init(const LogDensity& logdensity, int n, RngStream& rng) {
  // Find a starting point with finite density; positive-orthant targets
  // reject x <= 0, so retry from a few spread-out configurations.
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<double> x(static_cast<std::size_t>(n));
    const double scale = 0.5 * (1 << std::min(attempt / 10, 6));
    for (double& v : x) v = scale * (1.0 + rng.uniform01());
    if (std::isfinite(logdensity(x))) return x;
    for (double& v : x) v = scale * rng.gaussian();
    if (std::isfinite(logdensity(x))) return x;
  }
  throw std::runtime_error("mcmc: could not find a point of finite density");
}

}  // namespace

McmcResult mcmc_loggas(const LogDensity& logdensity, int n, long steps, double step_scale,
                       RngStream& rng) {
  if (n < 1) throw std::invalid_argument("mcmc_loggas: n must be >= 1");
  if (steps < 1) throw std::invalid_argument("mcmc_loggas: steps must be >= 1");
  const double step = step_scale > 0.0 ? step_scale : 0.25;

  std::vector<double> x = mcmc_init(logdensity, n, rng);
  double logp = logdensity(x);
  long accepted = 0;
  const long window = std::max<long>(100, steps / 10);
  long window_accepted = 0;
  for (long sweep = 0; sweep < steps; ++sweep) {
    const int acc = metropolis_sweep(logdensity, x, logp, step, rng);
    accepted += acc;
    window_accepted += acc;
    if ((sweep + 1) % window == 0) {
      if (window_accepted == 0) {
        throw std::runtime_error("mcmc_loggas: zero acceptance over a full window; step too large");
      }
      window_accepted = 0;
    }
  }
  McmcResult out;
  out.state = sorted_desc(std::move(x));
  out.acceptance_rate =
      static_cast<double>(accepted) / (static_cast<double>(steps) * static_cast<double>(n));
  return out;
}

std::vector<WeylVector> mcmc_collect(const LogDensity& logdensity, int n, int count,
                                     long burnin, int thin, double step_scale, RngStream& rng) {
  if (count < 1) throw std::invalid_argument("mcmc_collect: count must be >= 1");
  if (thin < 1) throw std::invalid_argument("mcmc_collect: thin must be >= 1");
  const double step = step_scale > 0.0 ? step_scale : 0.25;
  std::vector<double> x = mcmc_init(logdensity, n, rng);
  double logp = logdensity(x);
  for (long sweep = 0; sweep < burnin; ++sweep) metropolis_sweep(logdensity, x, logp, step, rng);
  std::vector<WeylVector> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    for (int sweep = 0; sweep < thin; ++sweep) metropolis_sweep(logdensity, x, logp, step, rng);
    out.push_back(sorted_desc(std::vector<double>(x)));
  }
  return out;
}

WeylVector sample_spectrum(const EnsembleSpec& spec, RngStream& rng) {
  spec.validate();
  switch (spec.model) {
    case ModelTag::Gue:
      return eigenvalues(sample_gue(spec.n, rng));
    case ModelTag::Ergodic:
      return eigenvalues(sample_ergodic(spec.omega, spec.n, spec.k_trunc, rng));
    case ModelTag::Gbe:
      return sample_gbe(spec.n, spec.beta, rng);
    case ModelTag::Laguerre:
      return sample_laguerre(spec.n, spec.beta, spec.eta, rng);
    case ModelTag::InvLaguerre:
      return invert_laguerre(sample_laguerre(spec.n, spec.beta, spec.eta, rng));
    case ModelTag::HpCayley:
      return sample_hp_cayley(spec.n, rng);
    case ModelTag::LoggasHp: {
      const auto target = [&spec](std::span<const double> x) {
        return log_density_hp_unordered(x, spec.s, spec.beta);
      };
      return mcmc_loggas(target, spec.n, spec.mcmc_steps, spec.mcmc_step_scale, rng).state;
    }
    case ModelTag::LoggasIl: {
      const auto target = [&spec](std::span<const double> x) {
        return log_density_il_unordered(x, spec.eta, spec.beta);
      };
      return mcmc_loggas(target, spec.n, spec.mcmc_steps, spec.mcmc_step_scale, rng).state;
    }
  }
  throw std::logic_error("sample_spectrum: bad ModelTag");
}

}  // namespace lpomega
