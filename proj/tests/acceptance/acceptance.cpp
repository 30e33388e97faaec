#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "dagger_cli/config.hpp"
#include "dagger_cli/selftest.hpp"

int main(int argc, char** argv) {
  dagger::cli::RunConfig cfg = dagger::cli::config_from_environment();
  CLI::App app{"acceptance criteria"};
  app.add_option("--seed", cfg.seed);
  app.add_option("--threads", cfg.threads);
  CLI11_PARSE(app, argc, argv);

  std::vector<dagger::cli::CriterionResult> results = dagger::cli::run_selftest(cfg);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%s  criterion %2d  %-36s checked=%zu failures=%zu  %.1fs", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.checked, r.failures, r.seconds);
    if (!r.detail.empty()) std::printf("  (%s)", r.detail.c_str());
    std::printf("\n");
    if (!r.passed) ++failed;
  }
  std::printf("%zu/%zu criteria passed\n", results.size() - failed, results.size());
  return failed == 0 ? 0 : 1;
}
