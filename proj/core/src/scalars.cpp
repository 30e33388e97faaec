#include "dagger/scalars.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace dagger {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonElement: return "NonElement";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::FlavorMismatch: return "FlavorMismatch";
    case ErrorCode::NotCokernelForm: return "NotCokernelForm";
    case ErrorCode::UnsupportedRing: return "UnsupportedRing";
    case ErrorCode::ZeroSampleElement: return "ZeroSampleElement";
    case ErrorCode::TailDiverges: return "TailDiverges";
    case ErrorCode::NotStrictlySmaller: return "NotStrictlySmaller";
    case ErrorCode::UnitIdealWitnessMissing: return "UnitIdealWitnessMissing";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::NonPositiveLowerBound: return "NonPositiveLowerBound";
    case ErrorCode::NotACover: return "NotACover";
    case ErrorCode::ArchimedeanBaseRing: return "ArchimedeanBaseRing";
    case ErrorCode::CoordinateOutOfDisk: return "CoordinateOutOfDisk";
    case ErrorCode::ViolationWitness: return "ViolationWitness";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

bool valid_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

Integer parse_integer(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

// floor(y^(1/n)) for y >= 0; sets exact when the root is an integer.
Integer floor_root(const Integer& y, unsigned long n, bool& exact) {
  Integer r;
  exact = mpz_root(r.get_mpz_t(), y.get_mpz_t(), n) != 0;
  return r;
}

Integer ceil_root(const Integer& y, unsigned long n) {
  bool exact = false;
  Integer r = floor_root(y, n, exact);
  return exact ? r : Integer(r + 1);
}

std::optional<Rational> exact_root(const Rational& y, unsigned long n) {
  bool num_exact = false;
  bool den_exact = false;
  Integer a = floor_root(y.get_num(), n, num_exact);
  Integer b = floor_root(y.get_den(), n, den_exact);
  if (!num_exact || !den_exact) return std::nullopt;
  Rational r(a, b);
  r.canonicalize();
  return r;
}

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer_literal(num) || !valid_integer_literal(den) || den[0] == '-') {
    throw Error(ErrorCode::InvalidArgument, "malformed rational '" + std::string(text) + "'");
  }
  Integer d = parse_integer(den);
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
  Rational q(parse_integer(num), d);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational pow(const Rational& base, unsigned long exponent) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  r.canonicalize();
  return r;
}

long padic_valuation(const Rational& q, unsigned long p) {
  if (q == 0) throw Error(ErrorCode::InvalidArgument, "valuation of zero");
  Integer prime(p);
  auto count = [&](Integer n) {
    long v = 0;
    if (n < 0) n = -n;
    while (mpz_divisible_p(n.get_mpz_t(), prime.get_mpz_t())) {
      n /= prime;
      ++v;
    }
    return v;
  };
  return count(q.get_num()) - count(q.get_den());
}

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

NormValue::NormValue(Rational exact) : lo_(exact), hi_(exact) {
  if (lo_ < 0) throw Error(ErrorCode::InvalidArgument, "negative norm value");
}

NormValue::NormValue(Rational lo, std::optional<Rational> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ < 0) throw Error(ErrorCode::InvalidArgument, "negative norm lower bound");
  if (hi_ && *hi_ < lo_) throw Error(ErrorCode::InvalidArgument, "norm interval with hi < lo");
}

const Rational& NormValue::upper() const {
  if (!hi_) throw Error(ErrorCode::InvalidArgument, "unbounded norm value");
  return *hi_;
}

std::optional<Rational> NormValue::width() const {
  if (!hi_) return std::nullopt;
  return Rational(*hi_ - lo_);
}

NormValue operator+(const NormValue& a, const NormValue& b) {
  std::optional<Rational> hi;
  if (a.hi_ && b.hi_) hi = *a.hi_ + *b.hi_;
  return NormValue(a.lo_ + b.lo_, hi);
}

NormValue operator*(const NormValue& a, const NormValue& b) {
  std::optional<Rational> hi;
  if (a.hi_ && b.hi_) {
    hi = *a.hi_ * *b.hi_;
  } else if ((a.hi_ && *a.hi_ == 0) || (b.hi_ && *b.hi_ == 0)) {
    hi = Rational(0);
  }
  return NormValue(a.lo_ * b.lo_, hi);
}

NormValue NormValue::scaled(const Rational& factor) const {
  if (factor < 0) throw Error(ErrorCode::InvalidArgument, "negative scale factor");
  std::optional<Rational> hi;
  if (hi_) hi = *hi_ * factor;
  else if (factor == 0) hi = Rational(0);
  return NormValue(lo_ * factor, hi);
}

NormValue max(const NormValue& a, const NormValue& b) {
  std::optional<Rational> hi;
  if (a.hi() && b.hi()) hi = std::max(*a.hi(), *b.hi());
  return NormValue(std::max(a.lo(), b.lo()), hi);
}

bool overlaps(const NormValue& a, const NormValue& b) {
  bool a_below = a.hi() && *a.hi() < b.lo();
  bool b_below = b.hi() && *b.hi() < a.lo();
  return !a_below && !b_below;
}

bool certainly_le(const NormValue& a, const NormValue& b) { return a.hi() && *a.hi() <= b.lo(); }

BanachRingDesc BanachRingDesc::integers() { return {RingKind::IntegersArchimedean, 0, 1, false}; }
BanachRingDesc BanachRingDesc::integers_trivial() { return {RingKind::IntegersTrivial, 0, 1, true}; }
BanachRingDesc BanachRingDesc::padic(unsigned long p) {
  BanachRingDesc r{RingKind::RationalsPadic, p, 1, true};
  r.validate();
  return r;
}
BanachRingDesc BanachRingDesc::rationals() { return {RingKind::RationalsArchimedean, 0, 1, false}; }

void BanachRingDesc::validate() const {
  if (mul_constant <= 0) throw Error(ErrorCode::InvalidArgument, "multiplicativity constant must be positive");
  switch (kind) {
    case RingKind::RationalsPadic:
      if (!is_prime(prime)) throw Error(ErrorCode::InvalidArgument, "p-adic ring needs a prime, got " + std::to_string(prime));
      if (!non_archimedean) throw Error(ErrorCode::InvalidArgument, "p-adic absolute value is non-Archimedean");
      break;
    case RingKind::IntegersTrivial:
      if (!non_archimedean) throw Error(ErrorCode::InvalidArgument, "trivial absolute value is non-Archimedean");
      break;
    case RingKind::IntegersArchimedean:
    case RingKind::RationalsArchimedean:
      if (non_archimedean) throw Error(ErrorCode::InvalidArgument, "usual absolute value is Archimedean");
      break;
  }
}

std::string describe(const BanachRingDesc& ring) {
  switch (ring.kind) {
    case RingKind::IntegersArchimedean: return "Z_inf";
    case RingKind::IntegersTrivial: return "Z_triv";
    case RingKind::RationalsPadic: return "Q_" + std::to_string(ring.prime);
    case RingKind::RationalsArchimedean: return "Q_inf";
  }
  return "?";
}

Rational abs_exact(const BanachRingDesc& ring, const Rational& x) {
  if (!ring.contains(x)) {
    throw Error(ErrorCode::NonElement, format_rational(x) + " is not an element of " + describe(ring));
  }
  if (x == 0) return 0;
  switch (ring.kind) {
    case RingKind::IntegersArchimedean:
    case RingKind::RationalsArchimedean:
      return abs(x);
    case RingKind::IntegersTrivial:
      return 1;
    case RingKind::RationalsPadic: {
      long v = padic_valuation(x, ring.prime);
      Rational p(static_cast<long>(ring.prime));
      return v >= 0 ? Rational(1 / pow(p, static_cast<unsigned long>(v))) : pow(p, static_cast<unsigned long>(-v));
    }
  }
  return 0;
}

NormValue abs_value(const BanachRingDesc& ring, const Rational& x) { return NormValue(abs_exact(ring, x)); }

namespace {

Integer scale_for(const Rational& precision) {
  if (precision <= 0) throw Error(ErrorCode::InvalidArgument, "root precision must be positive");
  // 4 / S <= precision keeps each endpoint within precision / 2.
  Integer scale = 1;
  while (Rational(4, 1) > precision * scale) scale *= 2;
  return scale;
}

Rational root_lower(const Rational& y, unsigned long n, const Integer& scale) {
  if (auto r = exact_root(y, n)) return *r;
  Integer scale_n;
  mpz_pow_ui(scale_n.get_mpz_t(), scale.get_mpz_t(), n);
  Integer target = floor_div(y.get_num() * scale_n, y.get_den());
  bool exact = false;
  Rational r(floor_root(target, n, exact), scale);
  r.canonicalize();
  return r;
}

Rational root_upper(const Rational& y, unsigned long n, const Integer& scale) {
  if (auto r = exact_root(y, n)) return *r;
  Integer scale_n;
  mpz_pow_ui(scale_n.get_mpz_t(), scale.get_mpz_t(), n);
  Integer target = ceil_div(y.get_num() * scale_n, y.get_den());
  Rational r(ceil_root(target, n), scale);
  r.canonicalize();
  return r;
}

}  // namespace

NormValue nth_root_interval(const NormValue& x, unsigned long n, const Rational& precision) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "root index must be positive");
  if (n == 1) return x;
  Integer scale = scale_for(precision);
  Rational lo = root_lower(x.lo(), n, scale);
  if (!x.hi()) return NormValue::unbounded(lo);
  Rational hi = root_upper(*x.hi(), n, scale);
  return NormValue(lo, hi);
}

NormValue rational_power_interval(const NormValue& x, const Rational& exponent, const Rational& precision) {
  if (exponent < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
  if (exponent == 0) return NormValue(Rational(1));
  unsigned long num = exponent.get_num().get_ui();
  unsigned long den = exponent.get_den().get_ui();
  std::optional<Rational> hi;
  if (x.hi()) hi = pow(*x.hi(), num);
  return nth_root_interval(NormValue(pow(x.lo(), num), hi), den, precision);
}

}  // namespace dagger
