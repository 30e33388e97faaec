#pragma once

#include <vector>

#include "dagger/linalg.hpp"
#include "dagger/scalars.hpp"

namespace dagger {

/// Commutative algebra of finite dimension over Q, given by a basis and the
/// matrices of left multiplication by each basis element.
class FiniteAlgebra {
 public:
  /// Basis 1, Z, ..., Z^{d-1} of Q[Z]/(Z^d + c_{d-1} Z^{d-1} + ... + c_0); `low` = (c_0, ..., c_{d-1}).
  static FiniteAlgebra monic_quotient(const BanachRingDesc& ring, const Vector& low);
  static FiniteAlgebra scalars(const BanachRingDesc& ring);

  const BanachRingDesc& ring() const { return ring_; }
  std::size_t dimension() const { return mult_.size(); }
  const Vector& one() const { return one_; }
  Vector zero() const { return Vector(dimension()); }
  Vector basis(std::size_t i) const;
  /// Element from scalar coordinates; pads with zeros.
  Vector element(const Vector& coordinates) const;

  Vector multiply(const Vector& a, const Vector& b) const;
  Vector power(const Vector& a, unsigned exponent) const;
  /// Matrix of x -> a x.
  Matrix multiplication_matrix(const Vector& a) const;

 private:
  BanachRingDesc ring_;
  std::vector<Matrix> mult_;
  Vector one_;
};

}  // namespace dagger
