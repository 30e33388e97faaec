#include <doctest.h>

#include <random>

#include <dagger/tensor.hpp>

using namespace dagger;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }
const BanachRingDesc Z = BanachRingDesc::integers();

// Brute force over all one- and two-term integer representations of the
// 1x1 tensor c (e (x) e') with coefficients in [-bound, bound].
Rational brute_tensor_norm_1x1(long c, const Rational& w, const Rational& v, long bound) {
  Rational best = -1;
  for (long a1 = -bound; a1 <= bound; ++a1)
    for (long b1 = -bound; b1 <= bound; ++b1)
      for (long a2 = -bound; a2 <= bound; ++a2)
        for (long b2 = -bound; b2 <= bound; ++b2) {
          if (a1 * b1 + a2 * b2 != c) continue;
          Rational cost = q(std::labs(a1)) * w * q(std::labs(b1)) * v + q(std::labs(a2)) * w * q(std::labs(b2)) * v;
          if (best < 0 || cost < best) best = cost;
        }
  return best;
}

}  // namespace

TEST_CASE("tensor of weighted modules multiplies weights") {
  CHECK(tensor_modules(WeightedFreeModule(Z, {2}, NormFlavor::Sum), WeightedFreeModule(Z, {3}, NormFlavor::Sum),
                       NormFlavor::Sum)
            .weights() == std::vector<Rational>{q(6)});
  CHECK(tensor_modules(WeightedFreeModule(Z, {1, 1}, NormFlavor::Sum), WeightedFreeModule(Z, {1}, NormFlavor::Sum),
                       NormFlavor::Sum)
            .weights() == std::vector<Rational>{q(1), q(1)});
  CHECK(tensor_modules(WeightedFreeModule::zero(Z, NormFlavor::Sum), WeightedFreeModule(Z, {4}, NormFlavor::Sum),
                       NormFlavor::Sum)
            .rank() == 0);
}

TEST_CASE("upper bound from a representation") {
  WeightedFreeModule m(Z, {2}, NormFlavor::Sum), n(Z, {3}, NormFlavor::Sum);
  CHECK(tensor_norm_upper(TensorElement{m, n, {{{q(1)}, {q(1)}}}}, NormFlavor::Sum) == 6);
  CHECK(tensor_norm_upper(TensorElement{m, n, {{{q(2)}, {q(1)}}}}, NormFlavor::Sum) == 12);
  CHECK(tensor_norm_upper(TensorElement{m, n, {}}, NormFlavor::Sum) == 0);
}

TEST_CASE("certified tensor norm meets the dual bound") {
  WeightedFreeModule m(Z, {2}, NormFlavor::Sum), n(Z, {3}, NormFlavor::Sum);
  CHECK(tensor_norm_certified(TensorElement{m, n, {{{q(1)}, {q(1)}}}}, NormFlavor::Sum, 10, 2).value ==
        NormValue(q(6)));
  CHECK(brute_tensor_norm_1x1(1, q(2), q(3), 10) == 6);
  const auto Qp = BanachRingDesc::padic(3);
  WeightedFreeModule u(Qp, {1}, NormFlavor::Max);
  CHECK(tensor_norm_certified(TensorElement{u, u, {{{q(1)}, {q(1)}}}}, NormFlavor::Max, 10, 2).value ==
        NormValue(q(1)));
  CHECK(tensor_norm_certified(TensorElement{m, n, {}}, NormFlavor::Sum, 10, 2).value == NormValue(q(0)));
}

TEST_CASE("certified norm agrees with brute force on rank one") {
  for (long c = -6; c <= 6; ++c) {
    WeightedFreeModule m(Z, {2}, NormFlavor::Sum), n(Z, {5}, NormFlavor::Sum);
    TensorElement x{m, n, {{{q(c)}, {q(1)}}}};
    NormValue cert = tensor_norm_certified(x, NormFlavor::Sum, 6, 2).value;
    CHECK(cert.contains(brute_tensor_norm_1x1(c, q(2), q(5), 6)));
  }
}

TEST_CASE("dual lower bound never exceeds any representation") {
  std::mt19937 gen(5);
  std::uniform_int_distribution<long> coeff(-3, 3);
  WeightedFreeModule m(Z, {1, 2}, NormFlavor::Sum), n(Z, {3, 1}, NormFlavor::Sum);
  for (int trial = 0; trial < 40; ++trial) {
    TensorElement x{m, n, {{{q(coeff(gen)), q(coeff(gen))}, {q(coeff(gen)), q(coeff(gen))}}}};
    CHECK(tensor_norm_certified(x, NormFlavor::Sum, 3, 2).value.lo() <= tensor_norm_upper(x, NormFlavor::Sum));
  }
}

TEST_CASE("scalar contraction") {
  WeightedFreeModule m(Z, {2}, NormFlavor::Sum), n(Z, {3}, NormFlavor::Sum);
  TensorElement x{m, n, {{{q(1)}, {q(1)}}}};
  auto two = scalar_contraction_bound(q(2), x, NormFlavor::Sum);
  CHECK(two.bound_x == 6);
  CHECK(two.bound_scaled == 12);
  CHECK(two.holds);
  auto one = scalar_contraction_bound(q(1), x, NormFlavor::Sum);
  CHECK(one.bound_scaled == one.bound_x);
  CHECK(scalar_contraction_bound(q(0), x, NormFlavor::Sum).bound_scaled == 0);
}

TEST_CASE("tensor of algebras stays submultiplicative") {
  auto zz = NormedAlgebra::scalars(Z);
  auto rec = algebra_tensor_submultiplicativity(zz, zz, {{{q(2)}, {q(2)}}, {{q(0)}, {q(5)}}}, NormFlavor::Sum);
  REQUIRE(rec.sides.size() == 2);
  CHECK(rec.sides[0] == std::pair<Rational, Rational>{q(4), q(4)});
  CHECK(rec.sides[1].first == 0);

  auto s = NormedAlgebra::truncated_polynomials(Z, 2, q(1), NormFlavor::Sum);
  auto st = tensor_algebras(s, s, NormFlavor::Sum);
  Vector x(st.dim()), y(st.dim());
  x[1] = 1;  // X (x) 1
  y[3] = 1;  // 1 (x) X
  auto pair = algebra_tensor_submultiplicativity(s, s, {{x, y}, {add(x, y), add(x, y)}}, NormFlavor::Sum);
  for (const auto& [lhs, rhs] : pair.sides) CHECK(lhs <= rhs);
}
