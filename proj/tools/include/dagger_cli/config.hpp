#pragma once

#include <cstdint>
#include <string>

namespace dagger::cli {

struct RunConfig {
  std::uint64_t seed = 7;
  unsigned degree = 16;
  unsigned long prime_bound = 50;
  unsigned grid = 2;
  unsigned threads = 1;
  std::string json_out;
  int verbosity = 0;
};

/// Defaults overridden by DAGGER_SEED, DAGGER_DEGREE, DAGGER_PRIME_BOUND, DAGGER_THREADS.
RunConfig config_from_environment();

/// max(2, hardware threads).
unsigned max_threads();

}  // namespace dagger::cli
