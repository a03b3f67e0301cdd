#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace lpomega {

/// splitmix64 finalizer; used for seeding and key derivation.
std::uint64_t mix64(std::uint64_t x);

/// Combine words into one key (order-sensitive).
std::uint64_t mix64(std::uint64_t a, std::uint64_t b);
std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c);
std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d);

/// Seeded random stream. Identical (seed, stream) gives an identical draw
/// sequence; substream(k) derives an independent child stream, so trials can
/// run on independent substreams in any order or thread count.
///
/// Besides the sequential interface there is a counter-based "field" mode:
/// field_gaussian(key) depends only on the key, never on stream state. Matrix
/// samplers use it so that the NxN corner of a larger sampled matrix is
/// entrywise identical to the NxN sample under the same stream.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  RngStream substream(std::uint64_t k) const;

  std::uint64_t next_u64();
  double uniform01();  // in (0, 1)
  double gaussian();   // N(0, 1)
  std::complex<double> complex_gaussian();  // E|xi|^2 = 1
  double gamma(double shape);  // unit scale, shape > 0
  double chi(double dof);      // sqrt of chi-square, dof > 0

  std::uint64_t field_key(std::uint64_t tag, std::uint64_t a, std::uint64_t b) const;

  static double field_gaussian(std::uint64_t key);
  static std::complex<double> field_complex_gaussian(std::uint64_t key);  // E|.|^2 = 1

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::mt19937_64 engine_;
  double cached_gauss_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace lpomega
