#include "dagger_cli/config.hpp"

#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "dagger_cli/json_io.hpp"

namespace dagger::cli {

namespace {

template <class T>
void override_from(const char* name, T& target) {
  const char* value = std::getenv(name);
  if (!value || !*value) return;
  try {
    std::size_t used = 0;
    unsigned long long parsed = std::stoull(value, &used);
    if (used != std::string(value).size()) throw std::invalid_argument(name);
    target = static_cast<T>(parsed);
  } catch (const std::logic_error&) {
    throw InputError(std::string("$") + name, "expected a non-negative integer");
  }
}

}  // namespace

RunConfig config_from_environment() {
  RunConfig c;
  override_from("DAGGER_SEED", c.seed);
  override_from("DAGGER_DEGREE", c.degree);
  override_from("DAGGER_PRIME_BOUND", c.prime_bound);
  override_from("DAGGER_THREADS", c.threads);
  if (c.threads == 0) c.threads = 1;
  return c;
}

unsigned max_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw < 2 ? 2 : hw;
}

}  // namespace dagger::cli
