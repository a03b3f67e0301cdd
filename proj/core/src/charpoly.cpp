#include "lpomega/charpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lpomega {

namespace {

using cplx = std::complex<double>;

cplx tree_product(std::vector<cplx>& f) {
  if (f.empty()) return {1.0, 0.0};
  std::size_t n = f.size();
  while (n > 1) {
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) f[i] = f[2 * i] * f[2 * i + 1];
    if (n % 2 == 1) {
      f[half] = f[n - 1];
      n = half + 1;
    } else {
      n = half;
    }
  }
  return f[0];
}

}  // namespace

DiskGrid DiskGrid::standard(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("DiskGrid: radius must be > 0");
  DiskGrid g;
  g.radius = radius;
  constexpr int kBoundary = 64;
  constexpr int kLattice = 17;
  g.points.reserve(kBoundary + kLattice * kLattice);
  for (int k = 0; k < kBoundary; ++k) {
    const double t = 2.0 * std::numbers::pi * k / kBoundary;
    g.points.emplace_back(radius * std::cos(t), radius * std::sin(t));
  }
  const double step = 2.0 * radius / (kLattice - 1);
  for (int i = 0; i < kLattice; ++i) {
    for (int j = 0; j < kLattice; ++j) {
      const cplx p{-radius + i * step, -radius + j * step};
      if (std::abs(p) <= radius) g.points.push_back(p);
    }
  }
  return g;
}

std::complex<double> charpoly_eval(const WeylVector& x, std::complex<double> z) {
  std::vector<cplx> factors;
  factors.reserve(static_cast<std::size_t>(x.size()));
  for (double xi : x.entries()) factors.push_back(cplx{1.0, 0.0} - z * xi);
  return tree_product(factors);
}

std::complex<double> rescaled_charpoly(const WeylVector& x, std::complex<double> z) {
  if (x.empty()) return {1.0, 0.0};
  return charpoly_eval(x, z / static_cast<double>(x.size()));
}

std::complex<double> renormalized_charpoly(const WeylVector& x, double c1, double c2,
                                           std::complex<double> z) {
  return charpoly_eval(x, z) * std::exp(-c1 * z - 0.5 * c2 * z * z);
}

std::complex<double> airy_renorm(const WeylVector& y, int n, std::complex<double> z) {
  std::vector<double> recip;
  recip.reserve(static_cast<std::size_t>(y.size()));
  for (double yi : y.entries()) {
    if (yi == 0.0) throw std::domain_error("airy_renorm: zero edge point");
    recip.push_back(1.0 / yi);
  }
  std::sort(recip.begin(), recip.end(), std::greater<>());
  const double c1 = std::cbrt(static_cast<double>(n));
  return renormalized_charpoly(WeylVector(std::move(recip)), c1, 0.0, z);
}

double sup_distance(const ComplexMap& f, const ComplexMap& g, const DiskGrid& grid) {
  double m = 0.0;
  for (const cplx& z : grid.points) m = std::max(m, std::abs(f(z) - g(z)));
  return m;
}

double sup_distance(std::span<const std::complex<double>> f,
                    std::span<const std::complex<double>> g) {
  if (f.size() != g.size()) throw std::invalid_argument("sup_distance: size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] - g[i]));
  return m;
}

double sup_distance_rel(const ComplexMap& f, const ComplexMap& g, const DiskGrid& grid) {
  double m = 0.0;
  for (const cplx& z : grid.points) {
    const cplx fv = f(z), gv = g(z);
    const double scale = std::max({1.0, std::abs(fv), std::abs(gv)});
    m = std::max(m, std::abs(fv - gv) / scale);
  }
  return m;
}

}  // namespace lpomega
