#pragma once

#include <optional>
#include <vector>

#include "dagger/normed_core.hpp"
#include "dagger/tensor.hpp"

namespace dagger {

/// A presented module over a non-Archimedean ring; the flavor of its ambient
/// module says whether it is read as an Archimedean (Sum) or non-Archimedean (Max) object.
struct FlavoredPresentation {
  PresentedModule module;

  explicit FlavoredPresentation(PresentedModule m);
  NormFlavor flavor() const { return module.ambient.flavor(); }
};

/// pi on presentations: same weights and matrices, every coproduct read with the
/// max norm. Idempotent on Max inputs. Throws ArchimedeanBaseRing.
FlavoredPresentation pi_module(const FlavoredPresentation& m);
/// pi on a weighted free module.
WeightedFreeModule pi_module(const WeightedFreeModule& m);

struct AdjunctionCase {
  NormValue from_sum;   // operator norm with the Sum source
  NormValue from_max;   // sup over sampled unit vectors / strong-triangle bound, Max source
  bool equal = false;
  bool same_ball = false;  // both <= r or both > r
};

struct AdjunctionReport {
  std::vector<AdjunctionCase> cases;
  std::size_t agreed = 0;
  std::optional<std::size_t> first_mismatch;
  bool confirmed() const { return !first_mismatch.has_value(); }
};

/// For each matrix A: ||A : V -> W|| with V Sum-flavored against ||A : pi(V) -> W||,
/// W Max-flavored. The Max side is computed on its own from basis and sampled
/// integer vectors (lower) and the strong triangle inequality (upper).
AdjunctionReport check_adjunction(const WeightedFreeModule& v, const WeightedFreeModule& w, const Rational& r,
                                  const std::vector<Matrix>& matrices, const std::vector<Vector>& extra_samples = {});

struct PiTensorReport {
  WeightedFreeModule pi_of_tensor;
  WeightedFreeModule tensor_of_pi;
  bool weights_match = false;
  std::size_t generators_checked = 0;
  bool norms_match = false;
  bool confirmed() const { return weights_match && norms_match; }
};

/// pi(U (x) V) against pi(U) (x)_max pi(V) for Sum-flavored U, V.
PiTensorReport pi_tensor_check(const WeightedFreeModule& u, const WeightedFreeModule& v);

/// pi(coker f) and coker of the flavor-switched f carry the same relation matrix and ambient.
bool pi_commutes_with_cokernel(const ModuleMap& f);

}  // namespace dagger
