#include <doctest.h>

#include <random>

#include <dagger/nonarch.hpp>

using namespace dagger;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }
const BanachRingDesc Q3 = BanachRingDesc::padic(3);

Matrix row(const std::vector<Rational>& entries) {
  Matrix m(1, entries.size());
  for (std::size_t c = 0; c < entries.size(); ++c) m(0, c) = entries[c];
  return m;
}

// sup over x != 0 of |a.x|_3 / max |x_i|_3 w_i equals max_i |a_i|_3 / w_i for a
// max-normed source; check by hand on a grid of 3-adically distinct vectors.
Rational max_source_norm_by_hand(const std::vector<Rational>& a, const std::vector<Rational>& w) {
  Rational best = 0;
  for (long x0 = -9; x0 <= 9; ++x0)
    for (long x1 = -9; x1 <= 9; ++x1) {
      if (x0 == 0 && x1 == 0) continue;
      Rational num = abs_exact(Q3, a[0] * x0 + a[1] * x1);
      Rational den = qmax(abs_exact(Q3, q(x0)) * w[0], abs_exact(Q3, q(x1)) * w[1]);
      best = qmax(best, num / den);
    }
  return best;
}

}  // namespace

TEST_CASE("pi switches the flavor and keeps the weights") {
  WeightedFreeModule v(Q3, {1, 2}, NormFlavor::Sum);
  CHECK(pi_module(v) == WeightedFreeModule(Q3, {1, 2}, NormFlavor::Max));
  CHECK(pi_module(WeightedFreeModule(Q3, {5}, NormFlavor::Sum)) == WeightedFreeModule(Q3, {5}, NormFlavor::Max));
  CHECK(pi_module(WeightedFreeModule::zero(Q3, NormFlavor::Sum)).rank() == 0);
  CHECK(pi_module(pi_module(v)) == pi_module(v));
  CHECK_THROWS_AS(pi_module(WeightedFreeModule(BanachRingDesc::rationals(), {1}, NormFlavor::Sum)), Error);
}

TEST_CASE("pi on presentations") {
  WeightedFreeModule v(Q3, {1, 3}, NormFlavor::Sum);
  ModuleMap f(v, v, row({q(1), q(3)}).transpose() * row({q(1), q(0)}));
  FlavoredPresentation m(cokernel(f));
  FlavoredPresentation p = pi_module(m);
  CHECK(p.flavor() == NormFlavor::Max);
  CHECK(p.module.relations->matrix() == f.matrix());
  CHECK(pi_commutes_with_cokernel(f));
}

TEST_CASE("adjunction examples") {
  WeightedFreeModule v(Q3, {1, 1}, NormFlavor::Sum), w(Q3, {1}, NormFlavor::Max);
  AdjunctionReport r = check_adjunction(v, w, q(1), {row({q(1), q(1)}), row({q(3), q(1)}), row({q(0), q(0)})});
  REQUIRE(r.cases.size() == 3);
  CHECK(r.confirmed());
  CHECK(r.cases[0].from_sum == NormValue(q(1)));
  CHECK(r.cases[0].from_max == NormValue(q(1)));
  CHECK(r.cases[1].from_max == NormValue(q(1)));
  CHECK(r.cases[2].from_sum == NormValue(q(0)));
  CHECK(r.cases[2].from_max == NormValue(q(0)));
}

TEST_CASE("adjunction against a hand computation") {
  std::mt19937 gen(29);
  std::uniform_int_distribution<long> entry(-27, 27);
  std::uniform_int_distribution<long> weight(1, 9);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Rational> a{q(entry(gen)), q(entry(gen))};
    std::vector<Rational> wt{q(weight(gen)), q(weight(gen))};
    WeightedFreeModule v(Q3, wt, NormFlavor::Sum), w(Q3, {1}, NormFlavor::Max);
    AdjunctionReport r = check_adjunction(v, w, q(1), {row(a)});
    CHECK(r.confirmed());
    CHECK(r.cases[0].from_max.contains(max_source_norm_by_hand(a, wt)));
  }
}

TEST_CASE("pi commutes with tensor products") {
  WeightedFreeModule a(Q3, {2}, NormFlavor::Sum), b(Q3, {3}, NormFlavor::Sum);
  PiTensorReport r = pi_tensor_check(a, b);
  CHECK(r.confirmed());
  CHECK(r.pi_of_tensor == WeightedFreeModule(Q3, {6}, NormFlavor::Max));
  WeightedFreeModule u(Q3, {1, 1}, NormFlavor::Sum);
  CHECK(pi_tensor_check(u, u).pi_of_tensor.weights() == std::vector<Rational>(4, q(1)));
  PiTensorReport z = pi_tensor_check(WeightedFreeModule::zero(Q3, NormFlavor::Sum), u);
  CHECK(z.confirmed());
  CHECK(z.pi_of_tensor.rank() == 0);
  CHECK(z.tensor_of_pi.rank() == 0);
}
