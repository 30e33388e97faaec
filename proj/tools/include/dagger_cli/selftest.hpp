#pragma once

#include <string>
#include <vector>

#include "dagger_cli/config.hpp"
#include "dagger_cli/json_io.hpp"

namespace dagger::cli {

struct CriterionResult {
  int id = 0;
  std::string name;
  std::string anchor;
  bool passed = false;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string detail;
  double seconds = 0;  // wall time; kept out of reports
};

CriterionResult check_norm_axioms(const RunConfig& cfg);
CriterionResult check_cofinality(const RunConfig& cfg);
CriterionResult check_laurent_recursion(const RunConfig& cfg);
CriterionResult check_koszul(const RunConfig& cfg);
CriterionResult check_mayer_vietoris(const RunConfig& cfg);
CriterionResult check_residue_oracle(const RunConfig& cfg);
CriterionResult check_shilov(const RunConfig& cfg);
CriterionResult check_pi_adjunction(const RunConfig& cfg);
CriterionResult check_base_change(const RunConfig& cfg);

/// Criteria 1-9 in order.
std::vector<CriterionResult> run_property_suite(const RunConfig& cfg);
/// Suite report without timings; byte-stable for a fixed seed.
json suite_report(const RunConfig& cfg, const std::vector<CriterionResult>& results);
/// Reruns the suite with another thread count and compares the serialized reports.
CriterionResult check_determinism(const RunConfig& cfg, const std::vector<CriterionResult>& first);
/// Criteria 1-10.
std::vector<CriterionResult> run_selftest(const RunConfig& cfg);

/// Exhaustive closest-vector oracle: min ||y|| over integer y with y - v in the
/// column lattice of `relations`, ||.|| the weighted sum norm over Z_inf.
Rational closest_vector_oracle(const std::vector<long long>& weights, const std::vector<std::vector<long long>>& relations,
                               const std::vector<long long>& v);

}  // namespace dagger::cli
