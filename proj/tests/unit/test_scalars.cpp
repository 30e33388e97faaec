#include <doctest.h>

#include <dagger/scalars.hpp>

using namespace dagger;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

// Bisection on y^2 = 2 with exact rationals, independent of the library's root code.
std::pair<Rational, Rational> sqrt2_bracket(const Rational& width) {
  Rational lo = 1, hi = 2;
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    if (mid * mid <= 2)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi};
}

}  // namespace

TEST_CASE("parse and format rationals") {
  CHECK(parse_rational("6/4") == q(3, 2));
  CHECK(parse_rational("-7") == q(-7));
  CHECK(format_rational(q(3)) == "3/1");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("abs_value on each ring kind") {
  CHECK(abs_value(BanachRingDesc::integers(), q(-3)) == NormValue(q(3)));
  CHECK(abs_value(BanachRingDesc::padic(2), q(12)) == NormValue(q(1, 4)));
  CHECK(abs_value(BanachRingDesc::integers_trivial(), q(7)) == NormValue(q(1)));
  CHECK(abs_value(BanachRingDesc::integers_trivial(), q(0)) == NormValue(q(0)));
  CHECK(abs_value(BanachRingDesc::padic(3), q(5, 9)) == NormValue(q(9)));
  CHECK(abs_value(BanachRingDesc::rationals(), q(-5, 2)) == NormValue(q(5, 2)));
}

TEST_CASE("integer rings reject fractions") {
  CHECK_THROWS_AS(abs_value(BanachRingDesc::integers(), q(1, 2)), Error);
  try {
    abs_exact(BanachRingDesc::integers_trivial(), q(1, 3));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonElement);
  }
}

TEST_CASE("padic valuation") {
  CHECK(padic_valuation(q(12), 2) == 2);
  CHECK(padic_valuation(q(5, 8), 2) == -3);
  CHECK(padic_valuation(q(7), 3) == 0);
  CHECK(is_prime(47));
  CHECK_FALSE(is_prime(49));
}

TEST_CASE("nth_root_interval of a perfect square is tight") {
  NormValue r = nth_root_interval(NormValue(q(4)), 2, q(1, 100));
  CHECK(r.contains(2));
  CHECK(*r.width() <= q(1, 100));
}

TEST_CASE("nth_root_interval of 2 brackets sqrt 2") {
  NormValue r = nth_root_interval(NormValue(q(2)), 2, q(1, 10));
  CHECK(r.lo() >= q(7, 5));
  CHECK(r.upper() <= q(3, 2));
  auto [lo, hi] = sqrt2_bracket(q(1, 1000));
  CHECK(r.lo() <= hi);
  CHECK(r.upper() >= lo);
  CHECK(r.lo() * r.lo() <= 2);
  CHECK(r.upper() * r.upper() >= 2);
}

TEST_CASE("roots of one stay one") {
  for (unsigned long k = 1; k <= 9; ++k) CHECK(nth_root_interval(NormValue(q(1)), k, q(1, 3)) == NormValue(q(1)));
}

TEST_CASE("rational powers enclose the true value") {
  NormValue r = rational_power_interval(NormValue(q(8)), q(2, 3), q(1, 1000));
  CHECK(r.contains(4));
  NormValue s = rational_power_interval(NormValue(q(2)), q(1, 2), q(1, 1000));
  CHECK(s.lo() * s.lo() <= 2);
  CHECK(s.upper() * s.upper() >= 2);
  CHECK(rational_power_interval(NormValue(q(5)), q(0), q(1, 10)) == NormValue(q(1)));
}

TEST_CASE("interval arithmetic with an infinite end") {
  NormValue a(q(1), q(2));
  NormValue inf = NormValue::unbounded(q(3));
  CHECK_FALSE((a + inf).is_finite());
  CHECK((a + inf).lo() == 4);
  CHECK(max(a, NormValue(q(5))) == NormValue(q(5)));
  CHECK(certainly_le(a, NormValue(q(2))));
  CHECK_FALSE(certainly_le(a, NormValue(q(3, 2))));
  CHECK(overlaps(a, NormValue(q(3, 2))));
  CHECK_THROWS_AS(NormValue(q(2), q(1)), Error);
}

TEST_CASE("multiplicativity and triangle inequalities on every ring") {
  const std::vector<BanachRingDesc> rings = {BanachRingDesc::integers(), BanachRingDesc::integers_trivial(),
                                             BanachRingDesc::padic(2), BanachRingDesc::padic(5),
                                             BanachRingDesc::rationals()};
  for (const auto& ring : rings) {
    for (long a = -12; a <= 12; ++a)
      for (long b = -12; b <= 12; ++b) {
        Rational x = ring.is_lattice() ? q(a) : q(a, 1 + (b + 12) % 4);
        Rational y = ring.is_lattice() ? q(b) : q(b, 1 + (a + 12) % 3);
        Rational ax = abs_exact(ring, x), ay = abs_exact(ring, y);
        CHECK(abs_exact(ring, x * y) <= ring.mul_constant * ax * ay);
        Rational s = abs_exact(ring, x + y);
        if (ring.non_archimedean)
          CHECK(s <= qmax(ax, ay));
        else
          CHECK(s <= ax + ay);
      }
  }
}
