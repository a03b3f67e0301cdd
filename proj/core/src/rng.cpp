#include "lpomega/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lpomega {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix64(std::uint64_t a, std::uint64_t b) { return mix64(mix64(a) ^ b); }
std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix64(mix64(a, b) ^ c);
}
std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  return mix64(mix64(a, b, c) ^ d);
}

namespace {

inline double u01_from_bits(std::uint64_t x) {
  // 53-bit mantissa, shifted into (0, 1].
  return (static_cast<double>(x >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(mix64(seed, stream)) {}

RngStream RngStream::substream(std::uint64_t k) const {
  return RngStream(seed_, mix64(stream_, 0x5b57e4a9d3c2b1f0ULL, k));
}

std::uint64_t RngStream::next_u64() { return engine_(); }

double RngStream::uniform01() { return u01_from_bits(next_u64()); }

double RngStream::gaussian() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_gauss_;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  cached_gauss_ = r * std::sin(t);
  have_cached_ = true;
  return r * std::cos(t);
}

std::complex<double> RngStream::complex_gaussian() {
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-std::log(u1));  // so that E|xi|^2 = 1
  const double t = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

double RngStream::gamma(double shape) {
  if (!(shape > 0.0)) throw std::invalid_argument("gamma: shape must be > 0");
  if (shape < 1.0) {
    // Shape boost: X ~ Gamma(a+1), X * U^(1/a) ~ Gamma(a).
    const double x = gamma(shape + 1.0);
    return x * std::pow(uniform01(), 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = gaussian();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform01();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RngStream::chi(double dof) {
  if (!(dof > 0.0)) throw std::invalid_argument("chi: dof must be > 0");
  return std::sqrt(2.0 * gamma(0.5 * dof));
}

std::uint64_t RngStream::field_key(std::uint64_t tag, std::uint64_t a, std::uint64_t b) const {
  return mix64(mix64(seed_, stream_, tag), a, b);
}

double RngStream::field_gaussian(std::uint64_t key) {
  const double u1 = u01_from_bits(mix64(key));
  const double u2 = u01_from_bits(mix64(key ^ 0xd1b54a32d192ed03ULL));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::complex<double> RngStream::field_complex_gaussian(std::uint64_t key) {
  const double u1 = u01_from_bits(mix64(key));
  const double u2 = u01_from_bits(mix64(key ^ 0xd1b54a32d192ed03ULL));
  const double r = std::sqrt(-std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

}  // namespace lpomega
