#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "lpomega/lpfun.hpp"
#include "lpomega/omega.hpp"

using namespace lpomega;
using cplx = std::complex<double>;

namespace {

OmegaPoint random_embedded(std::mt19937_64& gen, int max_n = 12, double scale = 2.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  const int n = 1 + static_cast<int>(gen() % static_cast<unsigned>(max_n));
  std::vector<double> x(static_cast<std::size_t>(n));
  for (double& v : x) v = u(gen);
  std::sort(x.begin(), x.end(), std::greater<>());
  return embed_weyl(WeylVector(std::move(x)));
}

// Sequence alpha_k = 1/k for k <= K on both sides, gamma1 = 0, gamma2 = 0:
// the truncated sine product. tail_eps certifies the discarded squared mass.
OmegaPoint sine_product_point(int k_max) {
  std::vector<double> a(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) a[static_cast<std::size_t>(k) - 1] = 1.0 / k;
  const double mass = alpha_sq_mass(a, a);
  const double k = k_max;
  // Euler-Maclaurin tail of 2 * sum_{j>K} j^-2.
  const double tail = 2.0 * (1.0 / k - 1.0 / (2.0 * k * k) + 1.0 / (6.0 * k * k * k));
  return OmegaPoint(a, a, 0.0, mass, tail);
}

// sum_{j>K} 1/j^2 by Euler-Maclaurin, accurate far below the test tolerances.
double zeta2_tail(int k_max) {
  const double k = k_max;
  return 1.0 / k - 1.0 / (2.0 * k * k) + 1.0 / (6.0 * k * k * k);
}

cplx sinc_pi(cplx z) {
  if (z == cplx{0.0, 0.0}) return {1.0, 0.0};
  const cplx pz = std::numbers::pi * z;
  return std::sin(pz) / pz;
}

// Coefficients of prod (1 - z x_i) by convolution; independent of the
// power-sum route used by taylor_coeffs.
std::vector<double> poly_coeffs(const WeylVector& x, int j_max) {
  std::vector<double> c{1.0};
  for (double xi : x.entries()) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k] += c[k];
      next[k + 1] -= c[k] * xi;
    }
    c = std::move(next);
  }
  c.resize(static_cast<std::size_t>(j_max) + 1, 0.0);
  return c;
}

}  // namespace

TEST_CASE("eval_lp hits the root of an embedded single point exactly") {
  const OmegaPoint w = embed_weyl(WeylVector({2.0}));
  CHECK(eval_lp(w, cplx{0.5, 0.0}) == cplx{0.0, 0.0});
  CHECK(std::abs(eval_lp(w, cplx{0.25, 0.0}) - cplx{0.5, 0.0}) < 1e-15);
}

TEST_CASE("eval_lp of the identity point is 1 everywhere") {
  const OmegaPoint id = OmegaPoint::identity();
  for (const cplx z : {cplx{0.0, 0.0}, cplx{3.0, -2.0}, cplx{-100.0, 5.0}}) {
    CHECK(eval_lp(id, z) == cplx{1.0, 0.0});
  }
}

TEST_CASE("eval_lp pure Gaussian factor") {
  // gamma1 = 1, delta = 1 with empty alphas: E(z) = exp(-z - z^2/2).
  const OmegaPoint w({}, {}, 1.0, 1.0);
  const cplx v = eval_lp(w, cplx{1.0, 0.0});
  CHECK(std::abs(v - std::exp(-1.5)) < 1e-15);
  CHECK(std::abs(v.real() - 0.2231301601484298) < 1e-15);
}

TEST_CASE("sine product: truncated evaluation with analytic tail compensation") {
  const int k_max = 100000;
  const OmegaPoint w = sine_product_point(k_max);
  const double tail = zeta2_tail(k_max);
  for (const cplx z : {cplx{0.5, 0.0}, cplx{1.5, 0.7}, cplx{-0.3, 1.2}, cplx{2.0, 0.0}}) {
    const cplx approx = eval_lp(w, z, 1e-3) * std::exp(-z * z * tail);
    CHECK(std::abs(approx - sinc_pi(z)) < 1e-7);
  }
  // z = 0.5 target is 2/pi.
  const cplx at_half = eval_lp(w, cplx{0.5, 0.0}, 1e-3) *
                       std::exp(-cplx{0.25, 0.0} * tail);
  CHECK(std::abs(at_half.real() - 2.0 / std::numbers::pi) < 1e-8);
  CHECK(std::abs(at_half.real() - 0.6366197723675814) < 1e-8);
}

TEST_CASE("eval_lp reports unattainable tolerance with the achievable bound") {
  const OmegaPoint w = sine_product_point(1000);
  CHECK_THROWS_AS(eval_lp(w, cplx{1.0, 0.0}, 1e-12), ToleranceError);
  try {
    eval_lp(w, cplx{1.0, 0.0}, 1e-12);
  } catch (const ToleranceError& e) {
    CHECK(e.achievable > 1e-12);
    CHECK(e.achievable < 1e-1);
    CHECK_NOTHROW(eval_lp(w, cplx{1.0, 0.0}, e.achievable * 2.0));
  }
}

TEST_CASE("power sums of embedded points") {
  const double a = 1.3;
  const PowerSums ps = power_sums(embed_weyl(WeylVector({a})), 6);
  for (int k = 1; k <= 6; ++k) CHECK(ps.at(k) == doctest::Approx(std::pow(a, k)).epsilon(1e-14));

  const PowerSums pq = power_sums(embed_weyl(WeylVector({1.0, -1.0})), 4);
  CHECK(pq.at(1) == 0.0);
  CHECK(pq.at(2) == 2.0);
  CHECK(pq.at(3) == 0.0);
  CHECK(pq.at(4) == 2.0);

  const PowerSums pid = power_sums(OmegaPoint::identity(), 5);
  for (int k = 1; k <= 5; ++k) CHECK(pid.at(k) == 0.0);
}

TEST_CASE("power sum domination bound") {
  std::mt19937_64 gen(7);
  for (int t = 0; t < 50; ++t) {
    const OmegaPoint w = random_embedded(gen);
    const PowerSums ps = power_sums(w, 8);
    CHECK(ps.at(2) >= 0.0);
    const double a1 = w.alpha_max();
    for (int k = 3; k <= 8; ++k) {
      CHECK(std::abs(ps.at(k)) <= ps.at(2) * std::pow(a1, k - 2) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("taylor coefficients: c1 = -gamma1 and the j = 2 cancellation") {
  std::mt19937_64 gen(11);
  for (int t = 0; t < 20; ++t) {
    const OmegaPoint w = random_embedded(gen);
    const auto c = taylor_coeffs(w, 3);
    CHECK(c[0] == 1.0);
    CHECK(c[1] == -w.gamma1());
  }
  // gamma1 = 1, delta = 1, no alphas: c2 = (gamma1^2 - delta)/2 = 0.
  const auto c = taylor_coeffs(OmegaPoint({}, {}, 1.0, 1.0), 4);
  CHECK(c[2] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(c[1] == -1.0);
}

TEST_CASE("taylor coefficients of an embedded single point terminate") {
  const double a = 0.8;
  const auto c = taylor_coeffs(embed_weyl(WeylVector({a})), 8);
  CHECK(c[0] == 1.0);
  CHECK(c[1] == doctest::Approx(-a).epsilon(1e-15));
  for (int j = 2; j <= 8; ++j) CHECK(std::abs(c[static_cast<std::size_t>(j)]) < 1e-14);
}

TEST_CASE("partition enumeration agrees with the recursion") {
  std::mt19937_64 gen(13);
  for (int t = 0; t < 100; ++t) {
    const OmegaPoint w = random_embedded(gen);
    const auto a = taylor_coeffs(w, 12);
    const auto b = taylor_coeffs_partition(w, 12);
    for (std::size_t j = 0; j < a.size(); ++j) {
      CHECK(std::abs(a[j] - b[j]) <= 1e-9 * std::max(1.0, std::abs(a[j])));
    }
  }
  CHECK(taylor_coeffs_partition(OmegaPoint::identity(), 6) ==
        std::vector<double>{1, 0, 0, 0, 0, 0, 0});
  CHECK(taylor_coeffs_partition(OmegaPoint::identity(), 0) == std::vector<double>{1});
  CHECK_THROWS_AS(taylor_coeffs_partition(OmegaPoint::identity(), 21), std::invalid_argument);
}

TEST_CASE("taylor coefficients match the direct polynomial expansion") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + static_cast<int>(gen() % 8);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = u(gen);
    std::sort(x.begin(), x.end(), std::greater<>());
    const WeylVector xv(x);
    const auto via_power_sums = taylor_coeffs(embed_weyl(xv), 12);
    const auto via_convolution = poly_coeffs(xv, 12);
    for (std::size_t j = 0; j < via_power_sums.size(); ++j) {
      CHECK(std::abs(via_power_sums[j] - via_convolution[j]) <=
            1e-8 * std::max(1.0, std::abs(via_convolution[j])));
    }
  }
}

TEST_CASE("pv_eval: sine product partial products approach sinc") {
  const OmegaPoint w = sine_product_point(100000);
  const std::vector<double> schedule{2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 316.0};
  const cplx z{0.5, 0.0};
  const PvResult pv = pv_eval(w, z, schedule);
  const double tail = zeta2_tail(100000);
  const cplx compensated = pv.value * std::exp(-z * z * tail);
  CHECK(std::abs(compensated.real() - 2.0 / std::numbers::pi) < 1e-5);
  CHECK(pv.diagnostics.gamma1_consistent);  // symmetric alphas: pv sums vanish
  for (double s : pv.diagnostics.pv_sums) CHECK(std::abs(s) < 1e-10);
  // Partial products improve along the schedule.
  const auto& prods = pv.diagnostics.partial_products;
  CHECK(std::abs(prods.front() - sinc_pi(z)) > std::abs(prods.back() - sinc_pi(z)));
}

TEST_CASE("pv_eval on a finite embedded point reaches the exact product") {
  const WeylVector x({1.5, 0.5, -0.75});
  const OmegaPoint w = embed_weyl(x);
  const cplx z{0.8, 0.3};
  // Once R^-2 < min |x_i| every factor is included.
  const PvResult pv = pv_eval(w, z, {1.0, 2.0, 10.0});
  cplx direct{1.0, 0.0};
  for (double xi : x.entries()) direct *= (cplx{1.0, 0.0} - z * xi);
  CHECK(std::abs(pv.value - direct) < 1e-14);
  CHECK(pv.diagnostics.gamma1_consistent);
}

TEST_CASE("pv_eval flags a principal-value mismatch without failing") {
  // alpha+ = (1), gamma1 = 0: the pv sums converge to 1 != 0.
  const OmegaPoint w({1.0}, {}, 0.0, 1.0);
  const PvResult pv = pv_eval(w, cplx{0.25, 0.0}, {1.0, 4.0});
  CHECK(!pv.diagnostics.gamma1_consistent);
  CHECK(pv.diagnostics.gamma1_gap == doctest::Approx(1.0));
  CHECK(std::abs(pv.value - cplx{0.75, 0.0}) < 1e-15);
}

TEST_CASE("pv_eval rejects gamma2 != 0") {
  const OmegaPoint w({}, {}, 0.0, 1.0);  // pure Gaussian mass
  CHECK_THROWS_AS(pv_eval(w, cplx{0.1, 0.0}, {1.0}), std::domain_error);
}

TEST_CASE("det_reg basics") {
  CHECK(det_reg(std::vector<double>{}, 3, cplx{2.0, 1.0}) == cplx{1.0, 0.0});
  const double lambda = 0.7;
  const cplx z{0.9, -0.4};
  const cplx u = z * lambda;
  const cplx expected = (cplx{1.0, 0.0} - u) * std::exp(u + 0.5 * u * u);
  CHECK(std::abs(det_reg(std::vector<double>{lambda}, 3, z) - expected) < 1e-14);
  CHECK_THROWS_AS(det_reg(std::vector<double>{1.0}, 1, z), std::invalid_argument);
}

TEST_CASE("det2 factorization reproduces eval_lp") {
  // E(z) = det2(I - zA) * exp(-gamma1 z - gamma2*/2 z^2), gamma2* = delta - sum lambda^2.
  std::mt19937_64 gen(19);
  for (int t = 0; t < 40; ++t) {
    const OmegaPoint w = random_embedded(gen);
    std::vector<double> spectrum;
    for (double a : w.alpha_plus()) spectrum.push_back(a);
    for (double a : w.alpha_minus()) spectrum.push_back(-a);
    double sq = 0.0;
    for (double s : spectrum) sq += s * s;
    const double gamma2_star = w.delta() - sq;
    for (const cplx z : {cplx{0.4, 0.2}, cplx{-1.1, 0.9}, cplx{2.0, -1.5}}) {
      const cplx lhs = det_reg(spectrum, 2, z) *
                       std::exp(-w.gamma1() * z - 0.5 * gamma2_star * z * z);
      const cplx rhs = eval_lp(w, z);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("eval_higher reduces to eval_lp at order 2") {
  std::mt19937_64 gen(23);
  for (int t = 0; t < 30; ++t) {
    const OmegaPoint w = random_embedded(gen);
    const HigherOmegaPoint h(w.alpha_plus(), w.alpha_minus(), {w.gamma1(), w.delta()});
    for (const cplx z : {cplx{0.5, 0.0}, cplx{-0.8, 1.1}, cplx{1.7, -0.6}}) {
      const cplx a = eval_higher(h, z);
      const cplx b = eval_lp(w, z);
      CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b)));
    }
  }
}

TEST_CASE("eval_higher prefactor-only and zero cases") {
  const HigherOmegaPoint zero({}, {}, {0.0, 0.0});
  CHECK(eval_higher(zero, cplx{1.4, -2.0}) == cplx{1.0, 0.0});

  // r = 3, deltas = (0, 0, 3): E(1) = exp(-3/3) = 1/e.
  const HigherOmegaPoint h({}, {}, {0.0, 0.0, 3.0});
  CHECK(std::abs(eval_higher(h, cplx{1.0, 0.0}) - std::exp(-1.0)) < 1e-15);

  CHECK_THROWS_AS(HigherOmegaPoint({2.0}, {}, {0.0, 0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(HigherOmegaPoint({}, {}, {1.0}), std::invalid_argument);
}

TEST_CASE("quantitative bound: identical pair gives zero") {
  std::mt19937_64 gen(29);
  const OmegaPoint w = random_embedded(gen);
  CHECK(quantitative_bound(w, w, cplx{1.3, -0.4}) == 0.0);
}

TEST_CASE("default bound constant is e(2 + ln 3)") {
  const double expected = std::exp(1.0) * (2.0 + std::log(3.0));
  CHECK(default_bound_constant() == expected);
  CHECK(default_bound_constant() == doctest::Approx(8.4229).epsilon(1e-4));
}

TEST_CASE("bound dominates the true difference on random pairs") {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const OmegaPoint w = random_embedded(gen, 6, 1.0);
    const OmegaPoint wt = random_embedded(gen, 6, 1.0);
    for (int k = 0; k < 8; ++k) {
      const double r = 2.0 * u(gen);
      const double th = 2.0 * std::numbers::pi * u(gen);
      const cplx z{r * std::cos(th), r * std::sin(th)};
      const double lhs = std::abs(eval_lp(w, z) - eval_lp(wt, z));
      CHECK(lhs <= quantitative_bound(w, wt, z) * (1.0 + 1e-12) + 1e-15);
      CHECK(lhs <= quantitative_bound(wt, w, z) * (1.0 + 1e-12) + 1e-15);
      ++checked;
    }
  }
  CHECK(checked == 1600);
}

TEST_CASE("growth bound |E| <= exp(K(|z| + 4|z|^2))") {
  std::mt19937_64 gen(37);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const OmegaPoint w = random_embedded(gen);
    const double k = std::max(std::abs(w.gamma1()), w.delta());
    for (int p = 0; p < 10; ++p) {
      const double r = 3.0 * u(gen);
      const double th = 2.0 * std::numbers::pi * u(gen);
      const cplx z{r * std::cos(th), r * std::sin(th)};
      CHECK(std::abs(eval_lp(w, z)) <=
            std::exp(k * (r + 4.0 * r * r)) * (1.0 + 1e-10) + 1e-12);
    }
  }
}

TEST_CASE("positive-zero subclass form") {
  // alpha- = 0, gamma2 = 0, sum alpha+ <= gamma1:
  // E(z) = exp((-gamma1 + sum alpha+) z) prod (1 - z alpha_i+).
  const std::vector<double> ap{1.0, 0.5, 0.25};
  double sum = 0.0, mass = 0.0;
  for (double a : ap) {
    sum += a;
    mass += a * a;
  }
  const double gamma1 = sum + 0.7;
  const OmegaPoint w(ap, {}, gamma1, mass);
  REQUIRE(w.gamma2() == 0.0);
  for (const cplx z : {cplx{0.3, 0.1}, cplx{-1.2, 0.4}, cplx{2.0, -2.0}}) {
    cplx expect = std::exp((-gamma1 + sum) * z);
    for (double a : ap) expect *= (cplx{1.0, 0.0} - z * a);
    const cplx got = eval_lp(w, z);
    CHECK(std::abs(got - expect) <= 1e-10 * std::max(1.0, std::abs(expect)));
  }
}

TEST_CASE("continuity in the parameter space with the bound as majorant") {
  // omega_N -> omega coordinate-wise; sup over |z| <= 2 of the difference
  // vanishes and is majorized by the quantitative bound via the l3 lemma.
  const OmegaPoint limit({1.0}, {0.5}, 0.25, 1.5);
  double prev_sup = 1e300;
  for (int n = 2; n <= 512; n *= 4) {
    const double eps_n = 1.0 / n;
    const OmegaPoint wn({1.0 + eps_n, eps_n}, {0.5 + eps_n}, 0.25 + eps_n,
                        1.5 + 6.0 * eps_n);
    double sup = 0.0, sup_bound = 0.0;
    for (int k = 0; k < 32; ++k) {
      const double th = 2.0 * std::numbers::pi * k / 32.0;
      const cplx z{2.0 * std::cos(th), 2.0 * std::sin(th)};
      sup = std::max(sup, std::abs(eval_lp(wn, z) - eval_lp(limit, z)));
      sup_bound = std::max(sup_bound, quantitative_bound(wn, limit, z));
    }
    CHECK(sup <= sup_bound * (1.0 + 1e-12));
    CHECK(sup < prev_sup);
    prev_sup = sup;
  }
  CHECK(prev_sup < 1e-2);
}

TEST_CASE("swap symmetry: exchanging the alpha roles mirrors the argument") {
  std::mt19937_64 gen(41);
  for (int t = 0; t < 30; ++t) {
    const OmegaPoint w = random_embedded(gen);
    const OmegaPoint swapped(w.alpha_minus(), w.alpha_plus(), -w.gamma1(), w.delta());
    for (const cplx z : {cplx{0.7, 0.2}, cplx{-1.3, 1.0}}) {
      const cplx a = eval_lp(swapped, z);
      const cplx b = eval_lp(w, -z);
      CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
    }
  }
}
