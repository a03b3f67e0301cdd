#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "lpomega/omega.hpp"
#include "lpomega/rng.hpp"

namespace lpomega {

/// Dense Hermitian matrix. Writes go through set(), which mirrors the
/// conjugate entry, so the invariant H[i][j] = conj(H[j][i]) holds by
/// construction.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(int n);
  static HermitianMatrix from_entries(int n, std::vector<std::complex<double>> row_major);

  int size() const { return n_; }
  std::complex<double> operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                 static_cast<std::size_t>(j)];
  }
  void set(int i, int j, std::complex<double> v);

  HermitianMatrix corner(int m) const;
  const std::vector<std::complex<double>>& data() const { return data_; }

 private:
  int n_ = 0;
  std::vector<std::complex<double>> data_;
};

enum class ModelTag { Gue, Ergodic, Gbe, Laguerre, InvLaguerre, HpCayley, LoggasHp, LoggasIl };

std::string to_string(ModelTag tag);
ModelTag model_tag_from_string(const std::string& name);

/// Which measure to sample, with its parameters. validate() enforces the
/// parameter domains (beta > 0, eta > -1, Re(s) > -1/2, n >= 1).
struct EnsembleSpec {
  ModelTag model = ModelTag::Gue;
  int n = 1;
  double beta = 2.0;
  double eta = 0.0;
  std::complex<double> s{0.0, 0.0};
  OmegaPoint omega;      // Ergodic
  int k_trunc = 0;       // Ergodic: truncation of the alpha sums (0 = stored support)
  long mcmc_steps = 10000;
  double mcmc_step_scale = 0.0;  // 0 = heuristic default

  void validate() const;
};

/// GUE with E[G_ii^2] = 1 and E|G_ij|^2 = 1. Entries come from the stream's
/// counter-based field, so the m x m corner of a size-n draw equals the
/// size-m draw under the same stream.
HermitianMatrix sample_gue(int n, const RngStream& rng);

/// The explicit ergodic matrix: gamma1 on the diagonal, sqrt(gamma2) GUE
/// noise, plus rank-one +/- alpha_k (xi xi* - I) perturbations. The k-sums
/// run over the stored alpha support; k_trunc below the support is an error.
HermitianMatrix sample_ergodic(const OmegaPoint& w, int n, int k_trunc, const RngStream& rng);

/// Mixture draw: omega ~ nu, then the ergodic matrix at that omega. Both are
/// returned so experiments can condition on omega.
std::pair<OmegaPoint, HermitianMatrix> sample_mixture(
    const std::function<OmegaPoint(RngStream&)>& nu, int n, int k_trunc, const RngStream& rng);

/// Ordered (nonincreasing) eigenvalues of a Hermitian matrix.
WeylVector eigenvalues(const HermitianMatrix& h);

/// Eigenvalues of a real symmetric tridiagonal matrix, nonincreasing.
WeylVector tridiagonal_eigenvalues(std::span<const double> diag,
                                   std::span<const double> offdiag);

/// Gaussian beta-ensemble with density ~ exp(-beta N sum x^2) |Vandermonde|^beta,
/// sampled through the Dumitriu-Edelman tridiagonal model. The empirical
/// spectrum concentrates on [-1, 1].
WeylVector sample_gbe(int n, double beta, RngStream& rng);

/// Laguerre beta-ensemble with weight x^eta e^{-x} per point, via the
/// bidiagonal model. invert_laguerre maps x -> 2/x (sorted), landing on the
/// inverse-Laguerre family.
WeylVector sample_laguerre(int n, double beta, double eta, RngStream& rng);
WeylVector invert_laguerre(const WeylVector& x);

/// Hua-Pickrell at (beta = 2, s = 0): eigenvalues of i(I+U)(I-U)^{-1} for
/// Haar unitary U (QR of complex Ginibre with phase fix).
WeylVector sample_hp_cayley(int n, RngStream& rng);

/// Unnormalized log-densities of the general-beta Hua-Pickrell and
/// inverse-Laguerre families. Out-of-domain points (ties, nonpositive
/// coordinates for IL) give -infinity.
double log_density_hp(const WeylVector& x, std::complex<double> s, double beta);
double log_density_il(const WeylVector& x, double eta, double beta);
double log_density_hp_unordered(std::span<const double> x, std::complex<double> s, double beta);
double log_density_il_unordered(std::span<const double> x, double eta, double beta);

using LogDensity = std::function<double(std::span<const double>)>;

struct McmcResult {
  WeylVector state;
  double acceptance_rate = 0.0;
};

/// Random-walk Metropolis over unordered coordinates with per-coordinate
/// Gaussian proposals; `steps` full sweeps; the final state is sorted into
/// the Weyl chamber. Throws if a full window of sweeps accepts nothing.
McmcResult mcmc_loggas(const LogDensity& logdensity, int n, long steps, double step_scale,
                       RngStream& rng);

/// Chain harvest: burn-in, then collect `count` states thinned by `thin`
/// sweeps. Convenience wrapper over the same chain as mcmc_loggas.
std::vector<WeylVector> mcmc_collect(const LogDensity& logdensity, int n, int count,
                                     long burnin, int thin, double step_scale, RngStream& rng);

/// Dispatcher used by the CLI `sample` subcommand.
WeylVector sample_spectrum(const EnsembleSpec& spec, RngStream& rng);

}  // namespace lpomega
