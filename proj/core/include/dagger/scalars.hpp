#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "dagger/errors.hpp"

namespace dagger {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "num/den" or "num"; throws InvalidArgument on malformed input.
Rational parse_rational(std::string_view text);
/// Always emits "num/den", also for integers ("3/1").
std::string format_rational(const Rational& q);

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }
inline Rational qmax(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational qmin(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline bool is_integer(const Rational& q) { return q.get_den() == 1; }
Rational pow(const Rational& base, unsigned long exponent);
/// p-adic valuation of a nonzero rational.
long padic_valuation(const Rational& q, unsigned long p);
bool is_prime(unsigned long n);

/// Certified closed interval [lo, hi] of non-negative rationals; hi = nullopt
/// means +infinity.
class NormValue {
 public:
  NormValue() : lo_(0), hi_(Rational(0)) {}
  explicit NormValue(Rational exact);
  NormValue(Rational lo, std::optional<Rational> hi);

  static NormValue unbounded(Rational lo = 0) { return NormValue(std::move(lo), std::nullopt); }

  const Rational& lo() const { return lo_; }
  const std::optional<Rational>& hi() const { return hi_; }
  /// hi(), which must be finite.
  const Rational& upper() const;
  bool is_exact() const { return hi_ && *hi_ == lo_; }
  bool is_finite() const { return hi_.has_value(); }
  bool contains(const Rational& x) const { return x >= lo_ && (!hi_ || x <= *hi_); }
  std::optional<Rational> width() const;

  friend NormValue operator+(const NormValue& a, const NormValue& b);
  friend NormValue operator*(const NormValue& a, const NormValue& b);
  NormValue scaled(const Rational& factor) const;
  friend bool operator==(const NormValue& a, const NormValue& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  Rational lo_;
  std::optional<Rational> hi_;
};

NormValue max(const NormValue& a, const NormValue& b);
/// Intervals intersect.
bool overlaps(const NormValue& a, const NormValue& b);
/// a.hi <= b.lo: a is certainly no larger than b.
bool certainly_le(const NormValue& a, const NormValue& b);

enum class RingKind { IntegersArchimedean, IntegersTrivial, RationalsPadic, RationalsArchimedean };

struct BanachRingDesc {
  RingKind kind = RingKind::IntegersArchimedean;
  unsigned long prime = 0;  // only for RationalsPadic
  Rational mul_constant = 1;
  bool non_archimedean = false;

  static BanachRingDesc integers();
  static BanachRingDesc integers_trivial();
  static BanachRingDesc padic(unsigned long p);
  static BanachRingDesc rationals();

  /// Integer carrier (lattice-like scalars).
  bool is_lattice() const {
    return kind == RingKind::IntegersArchimedean || kind == RingKind::IntegersTrivial;
  }
  bool contains(const Rational& x) const { return !is_lattice() || is_integer(x); }
  /// Throws unless kind/prime/flags are consistent.
  void validate() const;

  friend bool operator==(const BanachRingDesc& a, const BanachRingDesc& b) {
    return a.kind == b.kind && a.prime == b.prime && a.mul_constant == b.mul_constant &&
           a.non_archimedean == b.non_archimedean;
  }
};

std::string describe(const BanachRingDesc& ring);

/// Exact absolute value of a scalar; throws NonElement outside the carrier.
Rational abs_exact(const BanachRingDesc& ring, const Rational& x);
NormValue abs_value(const BanachRingDesc& ring, const Rational& x);

/// Encloses [x.lo^(1/n), x.hi^(1/n)]; each endpoint is within precision/2 of the
/// true root (exact when the root is rational).
NormValue nth_root_interval(const NormValue& x, unsigned long n, const Rational& precision);

/// Encloses x^(num/den) for a non-negative rational exponent.
NormValue rational_power_interval(const NormValue& x, const Rational& exponent,
                                  const Rational& precision);

}  // namespace dagger
