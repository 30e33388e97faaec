#include "dagger/finite_algebra.hpp"

#include "dagger/errors.hpp"

namespace dagger {

FiniteAlgebra FiniteAlgebra::monic_quotient(const BanachRingDesc& ring, const Vector& low) {
  const std::size_t d = low.size();
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "monic quotient needs degree at least 1");
  FiniteAlgebra a;
  a.ring_ = ring;
  // Multiplication by Z: companion matrix.
  Matrix z(d, d);
  for (std::size_t i = 0; i + 1 < d; ++i) z(i + 1, i) = 1;
  for (std::size_t i = 0; i < d; ++i) z(i, d - 1) = -low[i];
  Matrix p = Matrix::identity(d);
  for (std::size_t i = 0; i < d; ++i) {
    a.mult_.push_back(p);
    p = z * p;
  }
  a.one_ = Vector(d);
  a.one_[0] = 1;
  return a;
}

FiniteAlgebra FiniteAlgebra::scalars(const BanachRingDesc& ring) { return monic_quotient(ring, Vector{0}); }

Vector FiniteAlgebra::basis(std::size_t i) const {
  Vector v(dimension());
  v.at(i) = 1;
  return v;
}

Vector FiniteAlgebra::element(const Vector& coordinates) const {
  if (coordinates.size() > dimension()) throw Error(ErrorCode::DimensionMismatch, "too many coordinates for the algebra");
  Vector v(dimension());
  std::copy(coordinates.begin(), coordinates.end(), v.begin());
  return v;
}

Matrix FiniteAlgebra::multiplication_matrix(const Vector& a) const {
  if (a.size() != dimension()) throw Error(ErrorCode::DimensionMismatch, "element size differs from algebra dimension");
  Matrix m(dimension(), dimension());
  for (std::size_t i = 0; i < dimension(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t r = 0; r < dimension(); ++r)
      for (std::size_t c = 0; c < dimension(); ++c) m(r, c) += a[i] * mult_[i](r, c);
  }
  return m;
}

Vector FiniteAlgebra::multiply(const Vector& a, const Vector& b) const {
  if (b.size() != dimension()) throw Error(ErrorCode::DimensionMismatch, "element size differs from algebra dimension");
  return multiplication_matrix(a) * b;
}

Vector FiniteAlgebra::power(const Vector& a, unsigned exponent) const {
  Vector r = one_;
  for (unsigned i = 0; i < exponent; ++i) r = multiply(r, a);
  return r;
}

}  // namespace dagger
