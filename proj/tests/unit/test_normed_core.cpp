#include <doctest.h>

#include <random>

#include <dagger/normed_core.hpp>

using namespace dagger;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }
const BanachRingDesc Z = BanachRingDesc::integers();

Matrix mat(const std::vector<std::vector<long>>& rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

// min |v + 2k| over k in [-5, 5], by hand.
Rational residue_mod2(long v) {
  long best = std::labs(v);
  for (long k = -5; k <= 5; ++k) best = std::min(best, std::labs(v + 2 * k));
  return q(best);
}

}  // namespace

TEST_CASE("vector norms") {
  CHECK(vector_norm(WeightedFreeModule(Z, {1, 1}, NormFlavor::Sum), {q(3), q(-2)}) == NormValue(q(5)));
  const auto Qp = BanachRingDesc::padic(5);
  CHECK(vector_norm(WeightedFreeModule(Qp, {1, 1}, NormFlavor::Max), {q(5), q(1)}) == NormValue(q(1)));
  CHECK(vector_norm(WeightedFreeModule(Qp, {2, 3}, NormFlavor::Sum), {q(0), q(0)}) == NormValue(q(0)));
  CHECK(vector_norm(WeightedFreeModule(Z, {2, 3}, NormFlavor::Sum), {q(1), q(-1)}) == NormValue(q(5)));
}

TEST_CASE("max flavor needs a non-Archimedean ring") {
  CHECK_THROWS_AS(WeightedFreeModule(Z, {1}, NormFlavor::Max), Error);
  CHECK_THROWS_AS(WeightedFreeModule(Z, {0}, NormFlavor::Sum), Error);
  CHECK_THROWS_AS(vector_norm(WeightedFreeModule(Z, {1}, NormFlavor::Sum), {q(1, 2)}), Error);
  CHECK_THROWS_AS(vector_norm(WeightedFreeModule(Z, {1, 1}, NormFlavor::Sum), {q(1)}), Error);
}

TEST_CASE("operator norms") {
  const auto Qp = BanachRingDesc::padic(3);
  for (auto flavor : {NormFlavor::Sum, NormFlavor::Max}) {
    WeightedFreeModule m(Qp, {2, 3}, flavor);
    CHECK(operator_norm(ModuleMap(m, m, Matrix::identity(2))) == NormValue(q(1)));
  }
  ModuleMap row(WeightedFreeModule(Qp, {1, 1}, NormFlavor::Sum), WeightedFreeModule(Qp, {1}, NormFlavor::Max),
                mat({{1, 1}}));
  CHECK(operator_norm(row) == NormValue(q(1)));
  ModuleMap six(WeightedFreeModule(Z, {2}, NormFlavor::Sum), WeightedFreeModule(Z, {1}, NormFlavor::Sum), mat({{6}}));
  CHECK(operator_norm(six) == NormValue(q(3)));
}

TEST_CASE("operator norm of a composite is submultiplicative") {
  std::mt19937 gen(11);
  std::uniform_int_distribution<long> entry(-4, 4);
  std::uniform_int_distribution<long> weight(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Rational> w1{q(weight(gen)), q(weight(gen))}, w2{q(weight(gen))}, w3{q(weight(gen)), q(weight(gen))};
    WeightedFreeModule a(Z, w1, NormFlavor::Sum), b(Z, w2, NormFlavor::Sum), c(Z, w3, NormFlavor::Sum);
    ModuleMap f(a, b, mat({{entry(gen), entry(gen)}}));
    ModuleMap g(b, c, mat({{entry(gen)}, {entry(gen)}}));
    CHECK(operator_norm(compose(g, f)).upper() <= operator_norm(g).upper() * operator_norm(f).upper());
  }
}

TEST_CASE("residue norm modulo 2") {
  WeightedFreeModule z1(Z, {1}, NormFlavor::Sum);
  PresentedModule m = cokernel(ModuleMap(z1, z1, mat({{2}})));
  CHECK(residue_norm(m, {q(1)}, 5) == NormValue(q(1)));
  CHECK(residue_norm(m, {q(3)}, 5) == NormValue(residue_mod2(3)));
  CHECK(residue_norm(m, {q(0)}, 5) == NormValue(q(0)));
  CHECK(residue_norm(m, {q(-8)}, 5) == NormValue(residue_mod2(-8)));
}

TEST_CASE("kernel and cokernel") {
  WeightedFreeModule z2(Z, {1, 1}, NormFlavor::Sum), z1(Z, {1}, NormFlavor::Sum);
  PresentedModule k = kernel(ModuleMap(z2, z1, mat({{1, -1}})));
  REQUIRE(k.kernel_basis.size() == 1);
  CHECK(k.kernel_basis[0][0] == k.kernel_basis[0][1]);
  CHECK(k.kernel_basis[0][0] != 0);

  auto classes = finite_quotient_classes(cokernel(ModuleMap(z1, z1, mat({{2}}))), 5);
  REQUIRE(classes.has_value());
  REQUIRE(classes->size() == 2);
  std::vector<Rational> norms;
  for (const auto& c : *classes) norms.push_back(c.norm.upper());
  std::sort(norms.begin(), norms.end());
  CHECK(norms == std::vector<Rational>{q(0), q(1)});

  auto trivial = finite_quotient_classes(cokernel(ModuleMap(z2, z2, Matrix::identity(2))), 3);
  REQUIRE(trivial.has_value());
  CHECK(trivial->size() == 1);
  CHECK(trivial->front().norm == NormValue(q(0)));

  CHECK_FALSE(finite_quotient_classes(cokernel(ModuleMap(z1, z2, mat({{1}, {0}}))), 3).has_value());
}

TEST_CASE("strictness verdicts") {
  WeightedFreeModule z1(Z, {1}, NormFlavor::Sum);
  auto id = check_strictness(ModuleMap(z1, z1, Matrix::identity(1)), 6);
  REQUIRE(std::holds_alternative<StrictWithConstants>(id));
  CHECK(std::get<StrictWithConstants>(id).lower == 1);
  CHECK(std::get<StrictWithConstants>(id).upper == 1);

  auto two = check_strictness(ModuleMap(z1, z1, mat({{2}})), 6);
  REQUIRE(std::holds_alternative<StrictWithConstants>(two));
  CHECK(std::get<StrictWithConstants>(two).lower == 1);
  CHECK(std::get<StrictWithConstants>(two).upper == 2);

  auto zero = check_strictness(ModuleMap(z1, z1, mat({{0}})), 6);
  REQUIRE(std::holds_alternative<StrictWithConstants>(zero));
  CHECK(std::get<StrictWithConstants>(zero).upper == 1);

  auto refuted = check_strictness(ModuleMap(z1, z1, mat({{2}})), 6, StrictWithConstants{q(1), q(3, 2)});
  CHECK(std::holds_alternative<NotStrictWitness>(refuted));
}

TEST_CASE("direct sums") {
  auto s = direct_sum({WeightedFreeModule(Z, {2}, NormFlavor::Sum), WeightedFreeModule(Z, {3}, NormFlavor::Sum)},
                      NormFlavor::Sum);
  CHECK(s == WeightedFreeModule(Z, {2, 3}, NormFlavor::Sum));
  const auto Qp = BanachRingDesc::padic(2);
  auto m = direct_sum({WeightedFreeModule(Qp, {1}, NormFlavor::Max), WeightedFreeModule(Qp, {1}, NormFlavor::Max)},
                      NormFlavor::Max);
  CHECK(vector_norm(m, {q(1), q(1)}) == NormValue(q(1)));
  CHECK(direct_sum({}, NormFlavor::Sum).rank() == 0);
}

TEST_CASE("standard projective cover") {
  WeightedFreeModule z1(Z, {1}, NormFlavor::Sum);
  auto single = standard_projective(free_presentation(z1), {{q(2)}});
  CHECK(single.free.weights() == std::vector<Rational>{q(2)});

  auto pair = standard_projective(free_presentation(z1), {{q(1)}, {q(2)}});
  CHECK(pair.free.weights() == std::vector<Rational>{q(1), q(2)});
  CHECK(pair.kappa.apply({q(1), q(1)}) == Vector{q(3)});
  CHECK(pair.kappa_norm.upper() <= 1);

  auto empty = standard_projective(free_presentation(z1), {});
  CHECK(empty.free.rank() == 0);
  CHECK_THROWS_AS(standard_projective(free_presentation(z1), {{q(0)}}), Error);
}

TEST_CASE("LLL keeps the lattice and shortens the basis") {
  Matrix b = mat({{1, 100, 7}, {0, 1, 3}, {0, 0, 5}});
  Matrix red = lll_reduce(b);
  Matrix b_inv = *inverse(b), red_inv = *inverse(red);
  Matrix there = b_inv * red, back = red_inv * b;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(is_integer(there(i, j)));
      CHECK(is_integer(back(i, j)));
    }
  Rational longest = 0;
  for (std::size_t j = 0; j < 3; ++j) {
    Vector c = red.column(j);
    longest = qmax(longest, c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
  }
  CHECK(longest < 100);
}

TEST_CASE("residue norm on a skewed lattice") {
  // Relations (1, 50) and (0, 1) span Z^2, so every class is zero.
  WeightedFreeModule z2(Z, {1, 2}, NormFlavor::Sum);
  PresentedModule m = cokernel(ModuleMap(z2, z2, mat({{1, 0}, {50, 1}})));
  CHECK(residue_norm(m, {q(3), q(-4)}, 64) == NormValue(q(0)));
  // Relation (7, 51): class of (1, 7) has distance min over t of |1 + 7t| + 2|7 + 51t|.
  WeightedFreeModule z1(Z, {1}, NormFlavor::Sum);
  PresentedModule one = cokernel(ModuleMap(z1, z2, mat({{7}, {51}})));
  Rational best = 15;
  for (long t = -3; t <= 3; ++t) best = qmin(best, q(std::labs(1 + 7 * t) + 2 * std::labs(7 + 51 * t)));
  CHECK(residue_norm(one, {q(1), q(7)}, 64) == NormValue(best));
}
