#pragma once

#include <utility>
#include <vector>

#include "dagger/normed_core.hpp"

namespace dagger {

/// Generators e_i (x) f_j in row-major order (i * rank(N) + j), weights w_i v_j.
WeightedFreeModule tensor_modules(const WeightedFreeModule& m, const WeightedFreeModule& n, NormFlavor flavor);

/// x = sum_k m_k (x) n_k; an empty term list is the canonical zero.
struct TensorElement {
  WeightedFreeModule left;
  WeightedFreeModule right;
  std::vector<std::pair<Vector, Vector>> terms;

  /// Coordinates in tensor_modules(left, right, .).
  Vector coordinates() const;
};

/// Sum (or max) of ||m_k|| ||n_k|| over the given representation.
Rational tensor_norm_upper(const TensorElement& x, NormFlavor flavor);

struct TensorNormCertificate {
  NormValue value;
  std::vector<std::pair<Vector, Vector>> best_representation;
  std::size_t functionals_tried = 0;
};

/// hi: cheapest representation with at most term_bound terms and integer
/// coefficients |c| <= coeff_bound; lo: max |(phi (x) psi)(x)| over enumerated
/// unit functionals of the dual balls.
TensorNormCertificate tensor_norm_certified(const TensorElement& x, NormFlavor flavor, unsigned long coeff_bound,
                                            unsigned long term_bound);

struct ScalarContractionRecord {
  Rational lambda_abs;
  Rational bound_x;
  Rational bound_scaled;
  bool holds = false;
};

/// Bound of lambda * x through the scaled representation (lambda m_k, n_k).
ScalarContractionRecord scalar_contraction_bound(const Rational& lambda, const TensorElement& x, NormFlavor flavor);

/// Finite-rank normed algebra: basis weights and structure constants
/// e_i e_j = sum_k table[i][j][k] e_k.
struct NormedAlgebra {
  WeightedFreeModule module;
  std::vector<std::vector<Vector>> table;

  std::size_t dim() const { return module.rank(); }
  Vector multiply(const Vector& x, const Vector& y) const;
  /// max ||e_i e_j|| / (w_i w_j): the multiplicativity constant of the norm.
  Rational mul_constant() const;

  static NormedAlgebra scalars(const BanachRingDesc& ring);
  /// R[X]/(X^{degree+1}) with weights rho^i.
  static NormedAlgebra truncated_polynomials(const BanachRingDesc& ring, unsigned degree, const Rational& rho,
                                             NormFlavor flavor);
};

NormedAlgebra tensor_algebras(const NormedAlgebra& a, const NormedAlgebra& b, NormFlavor flavor);

struct SubmultiplicativityRecord {
  Rational constant;  // C_A * C_B
  std::size_t pairs_checked = 0;
  std::vector<std::pair<Rational, Rational>> sides;  // (||xy||, C ||x|| ||y||) per pair
};

/// Checks ||xy|| <= C_A C_B ||x|| ||y|| in A (x) B; throws ViolationWitness on failure.
SubmultiplicativityRecord algebra_tensor_submultiplicativity(const NormedAlgebra& a, const NormedAlgebra& b,
                                                             const std::vector<std::pair<Vector, Vector>>& samples,
                                                             NormFlavor flavor);

}  // namespace dagger
