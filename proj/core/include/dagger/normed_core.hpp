#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "dagger/linalg.hpp"
#include "dagger/scalars.hpp"

namespace dagger {

/// Sum: ||c|| = sum |c_i| w_i.  Max: ||c|| = max |c_i| w_i (non-Archimedean rings only).
enum class NormFlavor { Sum, Max };

const char* to_string(NormFlavor flavor);

/// The free module R_{w_1} (+) ... (+) R_{w_n} with the chosen coproduct norm.
class WeightedFreeModule {
 public:
  WeightedFreeModule(BanachRingDesc ring, std::vector<Rational> weights, NormFlavor flavor);
  static WeightedFreeModule zero(BanachRingDesc ring, NormFlavor flavor) { return {std::move(ring), {}, flavor}; }

  const BanachRingDesc& ring() const { return ring_; }
  const std::vector<Rational>& weights() const { return weights_; }
  NormFlavor flavor() const { return flavor_; }
  std::size_t rank() const { return weights_.size(); }

  /// Same weights with another flavor (validated against the ring).
  WeightedFreeModule with_flavor(NormFlavor flavor) const { return {ring_, weights_, flavor}; }

  friend bool operator==(const WeightedFreeModule& a, const WeightedFreeModule& b) {
    return a.ring_ == b.ring_ && a.weights_ == b.weights_ && a.flavor_ == b.flavor_;
  }

 private:
  BanachRingDesc ring_;
  std::vector<Rational> weights_;
  NormFlavor flavor_;
};

/// Exact norm; throws DimensionMismatch or NonElement.
Rational vector_norm_exact(const WeightedFreeModule& m, const Vector& v);
NormValue vector_norm(const WeightedFreeModule& m, const Vector& v);

/// Bounded homomorphism given by a target-rank x source-rank matrix.
class ModuleMap {
 public:
  ModuleMap(WeightedFreeModule source, WeightedFreeModule target, Matrix matrix);

  const WeightedFreeModule& source() const { return source_; }
  const WeightedFreeModule& target() const { return target_; }
  const Matrix& matrix() const { return matrix_; }

  Vector apply(const Vector& v) const { return matrix_ * v; }

 private:
  WeightedFreeModule source_;
  WeightedFreeModule target_;
  Matrix matrix_;
};

ModuleMap compose(const ModuleMap& g, const ModuleMap& f);

/// Sup of ||f(v)|| / ||v||. Exact as max_i ||f(e_i)|| / w_i whenever the source
/// norm is Sum or the target norm is Max (coproduct criterion); for a Max source
/// into a Sum target the upper end is the row-wise bound sum_j v_j max_i |a_ji| / w_i.
NormValue operator_norm(const ModuleMap& f);

/// A cokernel (ambient / image of relations) or kernel (ker of restriction).
struct PresentedModule {
  WeightedFreeModule ambient;
  std::optional<ModuleMap> relations;    // into ambient; module = cokernel
  std::optional<ModuleMap> restriction;  // out of ambient; module = kernel
  std::vector<Vector> kernel_basis;      // Z- (or Q-) basis of the kernel, in ambient coords

  bool is_cokernel() const { return relations.has_value(); }
  bool is_kernel() const { return restriction.has_value(); }
};

PresentedModule free_presentation(const WeightedFreeModule& m);

/// Residue norm of the class of v: min over v + relations * k with ||k||_inf bounded.
/// Exact when the search provably contains a minimiser; otherwise lo = 0.
NormValue residue_norm(const PresentedModule& m, const Vector& v, unsigned long search_bound);

PresentedModule kernel(const ModuleMap& f);
PresentedModule cokernel(const ModuleMap& f);

/// Canonical representatives of a finite cokernel over the integers (empty
/// optional when the quotient is infinite), each paired with its residue norm.
struct CosetClass {
  Vector representative;
  NormValue norm;
};
std::optional<std::vector<CosetClass>> finite_quotient_classes(const PresentedModule& m, unsigned long search_bound);

struct StrictWithConstants {
  Rational lower;
  Rational upper;
};
struct NotStrictWitness {
  Vector witness;
  Rational ratio;
};
struct Inconclusive {
  std::string reason;
};
using StrictnessVerdict = std::variant<StrictWithConstants, NotStrictWitness, Inconclusive>;

/// Compares coimage (residue of M / ker f) and image norms on every integer
/// vector with ||v||_inf <= search_bound. The constants are widened to contain 1.
/// A candidate pair, when given, is refuted by the first vector violating it.
StrictnessVerdict check_strictness(const ModuleMap& f, unsigned long search_bound,
                                   std::optional<StrictWithConstants> candidate = std::nullopt);

WeightedFreeModule direct_sum(const std::vector<WeightedFreeModule>& modules, NormFlavor flavor,
                              const BanachRingDesc& ring_if_empty = BanachRingDesc::integers());

struct StandardProjective {
  WeightedFreeModule free;
  ModuleMap kappa;        // into the ambient module
  NormValue kappa_norm;   // measured in the presented module's own norm
};

/// Finite piece of P(M): one generator of weight ||m|| per sampled element.
StandardProjective standard_projective(const PresentedModule& m, const std::vector<Vector>& sample,
                                       unsigned long search_bound = 8);

}  // namespace dagger
