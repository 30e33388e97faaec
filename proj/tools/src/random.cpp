#include "dagger_cli/random.hpp"

namespace dagger::cli {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::for_item(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(stream * 0x100000001b3ULL + index)));
}

std::uint64_t Rng::next() {
  std::uint64_t out = splitmix64(state_);
  state_ += 0x9e3779b97f4a7c15ULL;
  return out;
}

long long Rng::range(long long lo, long long hi) {
  if (hi <= lo) return lo;
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return lo + static_cast<long long>(x % span);
}

Rational Rng::rational(long long num_bound, long long den_bound) {
  Rational q(Integer(static_cast<long>(range(-num_bound, num_bound))), Integer(static_cast<long>(range(1, den_bound))));
  q.canonicalize();
  return q;
}

}  // namespace dagger::cli
