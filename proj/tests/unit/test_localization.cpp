#include <doctest.h>

#include <random>

#include <dagger/localization.hpp>

using namespace dagger;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }
const BanachRingDesc Q = BanachRingDesc::rationals();
const BanachRingDesc Q3 = BanachRingDesc::padic(3);

TruncatedSeries x_in(const BanachRingDesc& ring, std::size_t n, std::size_t i) {
  return TruncatedSeries::variable(ring, n, i);
}

DaggerPresentation disk(const BanachRingDesc& ring) {
  return DaggerPresentation::free_algebra(ring, PolyRadius::uniform(1, 1));
}

TruncatedSeries univariate(const BanachRingDesc& ring, const std::vector<Rational>& c) {
  TruncatedSeries f(ring, 1, c.empty() ? 0 : static_cast<unsigned>(c.size() - 1));
  for (std::size_t i = 0; i < c.size(); ++i) f.set({static_cast<unsigned>(i)}, c[i]);
  return f;
}

bool is_polynomial(const TruncatedSeries& f, const std::map<MultiIndex, Rational>& expected) {
  return f.coefficients() == expected && !f.tail();
}

}  // namespace

TEST_CASE("Weierstrass presentation") {
  TruncatedSeries x2 = TruncatedSeries::monomial(Q, {2}, q(1));
  DaggerPresentation p = present_localization(disk(Q), WeierstrassSpec{{x2}, {q(1, 2)}});
  CHECK(p.variables == 2);
  CHECK(p.rho == PolyRadius({q(1), q(1, 2)}));
  REQUIRE(p.relations.size() == 1);
  CHECK(is_polynomial(p.relations[0], {{{0, 1}, q(1)}, {{2, 0}, q(-1)}}));
}

TEST_CASE("Laurent presentation") {
  DaggerPresentation p = present_localization(disk(Q), LaurentSpec{{}, {}, {x_in(Q, 1, 0)}, {q(1)}});
  REQUIRE(p.relations.size() == 1);
  CHECK(is_polynomial(p.relations[0], {{{1, 1}, q(1)}, {{0, 0}, q(-1)}}));
  DaggerPresentation same = present_localization(disk(Q), WeierstrassSpec{});
  CHECK(same.variables == 1);
  CHECK(same.relations.empty());
}

TEST_CASE("rational presentation needs a unit ideal") {
  RationalSpec spec{{x_in(Q, 1, 0)}, TruncatedSeries::constant(Q, 1, q(2)), {q(1)}, std::nullopt};
  auto w = find_unit_ideal_witness(disk(Q), spec);
  REQUIRE(w.has_value());
  CHECK(check_unit_ideal_witness(disk(Q), spec, *w));
  RationalSpec bad{{x_in(Q, 1, 0)}, x_in(Q, 1, 0), {q(1)}, std::nullopt};
  CHECK_FALSE(find_unit_ideal_witness(disk(Q), bad).has_value());
  CHECK_THROWS_AS(rational_factor(disk(Q), bad, q(1)), Error);
}

TEST_CASE("scalar Laurent recursion") {
  TruncatedSeries t = univariate(Q, {q(-1)});
  TruncatedSeries a = laurent_solve(q(2), t, 2);
  CHECK(a.coefficients() == univariate(Q, {q(1), q(2), q(4)}).coefficients());
  TruncatedSeries back = multiply(univariate(Q, {q(-1), q(2)}), a, 2);
  CHECK(back.coefficients() == t.coefficients());
  CHECK(laurent_solve(q(5), univariate(Q, {}), 4).is_zero());
  TruncatedSeries t3 = univariate(Q, {q(1), q(-3), q(2)});
  CHECK(laurent_solve(q(0), t3, 2).coefficients() == negate(t3).coefficients());
}

TEST_CASE("Laurent recursion round trips over a finite algebra") {
  FiniteAlgebra c = FiniteAlgebra::monic_quotient(Q, {q(2), q(0)});  // Q[Z]/(Z^2 + 2)
  std::mt19937 gen(17);
  std::uniform_int_distribution<long> coeff(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    Vector g = c.element({q(coeff(gen)), q(coeff(gen))});
    CoefficientList t(9);
    for (auto& ti : t) ti = c.element({q(coeff(gen)), q(coeff(gen))});
    LaurentSolution s = laurent_solve(c, g, t, 8);
    CHECK(s.verified);
    CHECK(s.kernel_trivial);
    CHECK(laurent_apply(c, g, s.a, 8) == t);
  }
}

TEST_CASE("Weierstrass kernel") {
  FiniteAlgebra q1 = FiniteAlgebra::scalars(Q);
  CHECK(std::holds_alternative<Injective>(weierstrass_kernel_check(q1, q1.zero(), 6)));
  CHECK(std::holds_alternative<Injective>(weierstrass_kernel_check(q1, q1.one(), 4)));
  FiniteAlgebra e = FiniteAlgebra::monic_quotient(Q, {q(0), q(-1)});  // Q[e]/(e^2 - e)
  CHECK(std::holds_alternative<Injective>(weierstrass_kernel_check(e, e.basis(1), 4)));
  FiniteAlgebra nil = FiniteAlgebra::monic_quotient(Q, {q(0), q(0)});  // Q[Z]/(Z^2)
  auto v = weierstrass_kernel_check(nil, nil.basis(1), 6);
  REQUIRE(std::holds_alternative<Injective>(v));
  CHECK(std::get<Injective>(v).stabilization_index == 2);
}

TEST_CASE("Koszul complex is concentrated in degree zero") {
  for (const auto& ring : {Q3, Q}) {
    KoszulReport w = koszul_h_check(disk(ring), WeierstrassSpec{{x_in(ring, 1, 0)}, {q(1)}}, 8);
    CHECK(w.concentrated);
    CHECK(w.h_minus1_dimension == 0);
    KoszulReport l = koszul_h_check(disk(ring), LaurentSpec{{}, {}, {x_in(ring, 1, 0)}, {q(1)}}, 8);
    CHECK(l.concentrated);
  }
  DaggerPresentation zero = disk(Q3);
  zero.relations.push_back(TruncatedSeries::constant(Q3, 1, q(1)));
  KoszulReport z = koszul_h_check(disk(Q3), WeierstrassSpec{{x_in(Q3, 1, 0)}, {q(1)}}, zero, {x_in(Q3, 1, 0)}, 6);
  CHECK(z.concentrated);
}

TEST_CASE("Koszul over an algebra with nilpotents") {
  // B = Q[X]/(X^2): g = X is nilpotent, yet gY - 1 has unit constant term and stays injective.
  DaggerPresentation b = disk(Q);
  b.relations.push_back(TruncatedSeries::monomial(Q, {2}, q(1)));
  CHECK(koszul_h_check(b, LaurentSpec{{}, {}, {x_in(Q, 1, 0)}, {q(1)}}, 6).concentrated);
  CHECK(koszul_h_check(b, WeierstrassSpec{{x_in(Q, 1, 0)}, {q(1)}}, 6).concentrated);
}

TEST_CASE("rational localization factors into Laurent then Weierstrass") {
  RationalSpec two{{x_in(Q, 1, 0)}, TruncatedSeries::constant(Q, 1, q(2)), {q(1)}, std::nullopt};
  RationalFactorization f = rational_factor(disk(Q), two, q(2));
  CHECK(f.epsilon == q(1, 2));
  CHECK(f.generators_match);
  RationalSpec one{{x_in(Q, 1, 0)}, TruncatedSeries::constant(Q, 1, q(1)), {q(1)}, std::nullopt};
  CHECK(rational_factor(disk(Q), one, q(1)).epsilon == 1);
  CHECK(rational_factor(disk(Q), two, q(1, 3)).epsilon == 3);
  CHECK_THROWS_AS(rational_factor(disk(Q), two, q(0)), Error);
}

TEST_CASE("idempotents") {
  FiniteAlgebra e = FiniteAlgebra::monic_quotient(Q, {q(0), q(-1)});
  auto split = idempotent_split(e, {e.basis(1)});
  REQUIRE(split.has_value());
  CHECK(*split == e.basis(1));
  Vector one_minus_e = add(e.one(), scale(e.basis(1), q(-1)));
  auto other = idempotent_split(e, {one_minus_e});
  REQUIRE(other.has_value());
  CHECK(*other == one_minus_e);
  FiniteAlgebra nil = FiniteAlgebra::monic_quotient(Q, {q(0), q(0)});
  CHECK_FALSE(idempotent_split(nil, {nil.basis(1)}).has_value());
}

TEST_CASE("Mayer-Vietoris for a disk and an annulus") {
  WeierstrassSpec inner{{x_in(Q3, 1, 0)}, {q(1, 3)}};
  LaurentSpec outer{{}, {}, {x_in(Q3, 1, 0)}, {q(3)}};
  MayerVietorisReport r = mayer_vietoris(disk(Q3), inner, outer, 8);
  CHECK(r.covers);
  CHECK(r.exact);
  LaurentPolynomial c{{-3, q(2)}, {0, q(1)}, {5, q(-7)}};
  LaurentSplitting s = split_overlap(r, c);
  CHECK(s.verified);
  CHECK(s.on_v1 == LaurentPolynomial{{0, q(1)}, {5, q(-7)}});

  LaurentPolynomial global{{0, q(1)}, {2, q(4)}};
  CHECK(in_difference_kernel(global, global));
  CHECK_FALSE(in_difference_kernel(global, LaurentPolynomial{{1, q(1)}}));

  LaurentSpec gap{{}, {}, {x_in(Q3, 1, 0)}, {q(2)}};
  CHECK_THROWS_AS(mayer_vietoris(disk(Q3), WeierstrassSpec{{x_in(Q3, 1, 0)}, {q(1, 3)}}, gap, 8), Error);
}

TEST_CASE("Mayer-Vietoris with both pieces the whole disk") {
  WeierstrassSpec all{{x_in(Q, 1, 0)}, {q(1)}};
  LaurentSpec unit{{}, {}, {TruncatedSeries::constant(Q, 1, q(1))}, {q(1)}};
  MayerVietorisReport r = mayer_vietoris(disk(Q), all, unit, 6);
  CHECK(r.exact);
  CHECK(r.kernel_is_diagonal);
}

TEST_CASE("substitution and monomials") {
  CHECK(monomials_up_to(2, 2).size() == 6);
  TruncatedSeries f = univariate(Q, {q(1), q(0), q(1)});
  TruncatedSeries g = substitute(f, {univariate(Q, {q(1), q(1)})});
  CHECK(g.coefficients() == univariate(Q, {q(2), q(2), q(1)}).coefficients());
}
