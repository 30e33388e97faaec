#pragma once

#include <cstdint>
#include <vector>

#include <dagger/scalars.hpp>

namespace dagger::cli {

/// splitmix64 stream. Ranges are drawn by rejection so the sequence is the same
/// on every platform (std distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t state) : state_(state) {}
  /// Independent stream for item `index` of `stream` under `seed`.
  static Rng for_item(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

  std::uint64_t next();
  /// Uniform integer in [lo, hi].
  long long range(long long lo, long long hi);
  bool coin() { return (next() >> 63) != 0; }
  /// num / den with num in [-num_bound, num_bound], den in [1, den_bound].
  Rational rational(long long num_bound, long long den_bound);
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(range(0, static_cast<long long>(v.size()) - 1))];
  }

 private:
  std::uint64_t state_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace dagger::cli
