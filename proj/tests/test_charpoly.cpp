#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include "lpomega/charpoly.hpp"
#include "lpomega/lpfun.hpp"
#include "lpomega/omega.hpp"

using namespace lpomega;
using cplx = std::complex<double>;

TEST_CASE("disk grid layout") {
  const DiskGrid g = DiskGrid::standard(2.5);
  CHECK(g.points.size() > 64);
  bool has_zero = false, has_plus = false, has_minus = false;
  for (const cplx& p : g.points) {
    CHECK(std::abs(p) <= 2.5 * (1.0 + 1e-12));
    if (p == cplx{0.0, 0.0}) has_zero = true;
    if (p == cplx{2.5, 0.0}) has_plus = true;
    if (p == cplx{-2.5, 0.0}) has_minus = true;
  }
  CHECK(has_zero);
  CHECK(has_plus);
  CHECK(has_minus);
  CHECK_THROWS_AS(DiskGrid::standard(0.0), std::invalid_argument);
}

TEST_CASE("charpoly_eval basics") {
  CHECK(charpoly_eval(WeylVector({1.0, -1.0}), cplx{2.0, 0.0}) == cplx{-3.0, 0.0});
  CHECK(charpoly_eval(WeylVector({3.0, 1.0, -7.0}), cplx{0.0, 0.0}) == cplx{1.0, 0.0});
  CHECK(charpoly_eval(WeylVector({2.0}), cplx{0.5, 0.0}) == cplx{0.0, 0.0});
  CHECK(charpoly_eval(WeylVector({}), cplx{5.0, 5.0}) == cplx{1.0, 0.0});
}

TEST_CASE("rescaled charpoly basics and the classical limit") {
  {
    std::vector<double> x(50, 0.0);
    x[0] = 50.0;
    CHECK(rescaled_charpoly(WeylVector(std::move(x)), cplx{1.0, 0.0}) == cplx{0.0, 0.0});
  }
  CHECK(rescaled_charpoly(WeylVector({4.0, 2.0}), cplx{0.0, 0.0}) == cplx{1.0, 0.0});

  // all-ones: (1 - 1/N)^N -> 1/e; compare against both routes.
  const int n = 20000;
  const WeylVector ones(std::vector<double>(static_cast<std::size_t>(n), 1.0));
  const cplx v = rescaled_charpoly(ones, cplx{1.0, 0.0});
  CHECK(std::abs(v - std::exp(-1.0)) < 1e-4);
  const OmegaPoint limit({}, {}, 1.0, 0.0);  // E(z) = exp(-z)
  CHECK(std::abs(v - eval_lp(limit, cplx{1.0, 0.0})) < 1e-4);
}

TEST_CASE("renormalized charpoly algebra") {
  const WeylVector x({1.4, -0.3});
  const cplx z{0.7, 0.4};
  CHECK(renormalized_charpoly(x, 0.0, 0.0, z) == charpoly_eval(x, z));
  CHECK(renormalized_charpoly(x, 3.0, -2.0, cplx{0.0, 0.0}) == cplx{1.0, 0.0});

  const double a = 1.1, g = 0.4;
  const cplx got = renormalized_charpoly(WeylVector({a}), -a + g, 0.0, z);
  const cplx expect = (cplx{1.0, 0.0} - a * z) * std::exp((a - g) * z);
  CHECK(std::abs(got - expect) < 1e-14);
}

TEST_CASE("renormalization at the full first moment reproduces det2") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 40; ++t) {
    const int n = 1 + static_cast<int>(gen() % 10);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = u(gen);
    std::sort(x.begin(), x.end(), std::greater<>());
    const WeylVector xv(x);
    const double sum = xv.sum();
    for (const cplx z : {cplx{0.4, 0.1}, cplx{-0.9, 0.8}}) {
      // prod (1 - z x_i) e^{z x_i} two ways.
      const cplx lhs = renormalized_charpoly(xv, -sum, 0.0, z);
      const cplx rhs = det_reg(xv.span(), 2, z);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("airy renormalization") {
  CHECK(airy_renorm(WeylVector({3.0, -1.0}), 2, cplx{0.0, 0.0}) == cplx{1.0, 0.0});

  // single y = -1 at N = 1: (1 + z) e^{-z}; at z = 1 that is 2/e.
  const cplx v = airy_renorm(WeylVector({-1.0}), 1, cplx{1.0, 0.0});
  CHECK(std::abs(v - 2.0 * std::exp(-1.0)) < 1e-15);

  CHECK_THROWS_AS(airy_renorm(WeylVector({1.0, 0.0}), 2, cplx{1.0, 0.0}), std::domain_error);

  // Derivative at zero: c1 of the renormalized polynomial is
  // -(sum 1/y_i + N^{1/3}); probe by central finite differences.
  const WeylVector y({2.0, -1.0, -3.0});
  const int n = 3;
  double recip_sum = 0.0;
  for (double yi : y.entries()) recip_sum += 1.0 / yi;
  const double h = 1e-6;
  const cplx dp = airy_renorm(y, n, cplx{h, 0.0});
  const cplx dm = airy_renorm(y, n, cplx{-h, 0.0});
  const double deriv = ((dp - dm) / (2.0 * h)).real();
  CHECK(deriv == doctest::Approx(-(recip_sum + std::cbrt(3.0))).epsilon(1e-8));
}

TEST_CASE("sup_distance basics") {
  const DiskGrid g = DiskGrid::standard(2.0);
  const auto zero = [](cplx) { return cplx{0.0, 0.0}; };
  const auto one = [](cplx) { return cplx{1.0, 0.0}; };
  const auto ident = [](cplx z) { return z; };
  CHECK(sup_distance(one, one, g) == 0.0);
  CHECK(sup_distance(zero, one, g) == 1.0);
  CHECK(sup_distance(ident, zero, g) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("master identity: rescaled charpoly equals the embedded LP function") {
  std::mt19937_64 gen(101);
  const DiskGrid grid = DiskGrid::standard(5.0);
  for (int t = 0; t < 25; ++t) {
    const int n = 2 + static_cast<int>(gen() % 199);
    std::uniform_real_distribution<double> u(-static_cast<double>(n), static_cast<double>(n));
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = u(gen);
    std::sort(x.begin(), x.end(), std::greater<>());
    const WeylVector xv(x);
    std::vector<double> scaled(x);
    for (double& v : scaled) v /= static_cast<double>(n);
    const OmegaPoint w = embed_weyl(WeylVector(std::move(scaled)));

    const double d = sup_distance_rel(
        [&xv](cplx z) { return rescaled_charpoly(xv, z); },
        [&w](cplx z) { return eval_lp(w, z); }, grid);
    CHECK(d <= 1e-10);
  }
}

TEST_CASE("roots of the rescaled polynomial track the embedded alphas") {
  // x^(N)/N -> (1/2, 1/3, 0, ...): the roots of Psi_N(z/N) nearest 2 and 3
  // are N/x_1, N/x_2 and converge at rate O(1/N).
  double prev2 = 1e300, prev3 = 1e300;
  for (int n = 8; n <= 512; n *= 2) {
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    x[0] = n * (0.5 + 1.0 / n);
    x[1] = n * (1.0 / 3.0 - 1.0 / n);
    const WeylVector xv(std::move(x));
    // roots of prod(1 - z x_i / N) are N / x_i.
    const double root2 = n / xv[0];
    const double root3 = n / xv[1];
    const double e2 = std::abs(root2 - 2.0);
    const double e3 = std::abs(root3 - 3.0);
    CHECK(e2 < prev2);
    CHECK(e3 < prev3);
    prev2 = e2;
    prev3 = e3;
    // and the polynomial indeed vanishes there
    CHECK(std::abs(rescaled_charpoly(xv, cplx{root2, 0.0})) < 1e-12);
  }
  CHECK(prev2 < 1e-2);
  CHECK(prev3 < 1e-1);
}
