#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "lpomega/omega.hpp"

namespace lpomega {

/// Finite sample of the closed disk used to stand in for "uniformly on
/// compact sets": 64 equally spaced boundary points plus a 17x17 lattice
/// clipped to the disk. Always contains 0, +radius and -radius.
struct DiskGrid {
  double radius = 1.0;
  std::vector<std::complex<double>> points;

  static DiskGrid standard(double radius);
};

/// prod (1 - z x_i), accumulated as a balanced tree to keep rounding growth
/// logarithmic in N.
std::complex<double> charpoly_eval(const WeylVector& x, std::complex<double> z);

/// charpoly_eval at z / N with N = length(x).
std::complex<double> rescaled_charpoly(const WeylVector& x, std::complex<double> z);

/// charpoly_eval(x, z) * exp(-c1 z - c2 z^2 / 2).
std::complex<double> renormalized_charpoly(const WeylVector& x, double c1, double c2,
                                           std::complex<double> z);

/// Edge-renormalized polynomial prod (1 - z / y_i) e^{-N^{1/3} z} for already
/// edge-rescaled points y (none may be zero).
std::complex<double> airy_renorm(const WeylVector& y, int n, std::complex<double> z);

using ComplexMap = std::function<std::complex<double>(std::complex<double>)>;

/// max over grid points of |f - g|.
double sup_distance(const ComplexMap& f, const ComplexMap& g, const DiskGrid& grid);
double sup_distance(std::span<const std::complex<double>> f,
                    std::span<const std::complex<double>> g);

/// max over grid points of |f - g| / max(1, |f|, |g|); the mixed
/// absolute/relative form used where values span many orders of magnitude.
double sup_distance_rel(const ComplexMap& f, const ComplexMap& g, const DiskGrid& grid);

}  // namespace lpomega
