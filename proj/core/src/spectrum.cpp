#include "dagger/spectrum.hpp"

#include <algorithm>

#include "dagger/parallel.hpp"

namespace dagger {

namespace {

void require_integer_series(const TruncatedSeries& f) {
  auto kind = f.ring().kind;
  if (kind != RingKind::IntegersArchimedean && kind != RingKind::IntegersTrivial) {
    throw Error(ErrorCode::UnsupportedRing, "spectrum computations take series over Z");
  }
  if (f.tail()) throw Error(ErrorCode::InvalidArgument, "spectrum computations take polynomials (no tail)");
}

NormValue raise(const NormValue& x, const Rational& epsilon, const Rational& precision) {
  if (epsilon == 1) return x;
  return rational_power_interval(x, epsilon, precision);
}

// |c|^eps <= rho given |c|^2 (squared = true) or |c|.
bool within(const Rational& value, bool squared, const Rational& epsilon, const Rational& rho) {
  unsigned long a = epsilon.get_num().get_ui();
  unsigned long b = epsilon.get_den().get_ui();
  return pow(value, a) <= pow(rho, squared ? 2 * b : b);
}

Rational support_bound(const TruncatedSeries& f, const PolyRadius& rho) {
  Rational m = 0;
  for (const auto& [index, c] : f.coefficients()) m = std::max(m, radius_power(rho, index));
  return m;
}

}  // namespace

Place Place::archimedean(const Rational& epsilon) {
  if (epsilon <= 0 || epsilon > 1) throw Error(ErrorCode::InvalidArgument, "Archimedean exponent must lie in (0, 1]");
  return Place{PlaceKind::Archimedean, 0, epsilon};
}

Place Place::padic(unsigned long p, const Rational& epsilon) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  if (epsilon <= 0) throw Error(ErrorCode::InvalidArgument, "p-adic exponent must be positive");
  return Place{PlaceKind::Padic, p, epsilon};
}

std::string describe(const Place& place) {
  switch (place.kind) {
    case PlaceKind::Trivial:
      return "trivial";
    case PlaceKind::Archimedean:
      return "inf^" + format_rational(place.epsilon);
    case PlaceKind::Padic:
      return std::to_string(place.prime) + "-adic^" + format_rational(place.epsilon);
  }
  return "?";
}

std::vector<Place> enumerate_places(unsigned long prime_bound, unsigned grid) {
  if (prime_bound < 2) throw Error(ErrorCode::InvalidArgument, "prime bound must be at least 2");
  if (grid == 0) throw Error(ErrorCode::InvalidArgument, "exponent grid must be non-empty");
  std::vector<Place> places{Place::trivial()};
  auto exponents = [&] {
    std::vector<Rational> e;
    for (unsigned k = 1; k <= grid; ++k) {
      Rational q(k, grid);
      q.canonicalize();
      e.push_back(q);
    }
    return e;
  }();
  for (const auto& e : exponents) places.push_back(Place::archimedean(e));
  for (unsigned long p = 2; p <= prime_bound; ++p) {
    if (!is_prime(p)) continue;
    for (const auto& e : exponents) places.push_back(Place::padic(p, e));
  }
  return places;
}

NormValue place_abs(const Place& place, const Rational& x, const Rational& precision) {
  if (x == 0) return NormValue(Rational(0));
  switch (place.kind) {
    case PlaceKind::Trivial:
      return NormValue(Rational(1));
    case PlaceKind::Archimedean:
      return raise(NormValue(abs(x)), place.epsilon, precision);
    case PlaceKind::Padic:
      return raise(NormValue(abs_exact(BanachRingDesc::padic(place.prime), x)), place.epsilon, precision);
  }
  return NormValue();
}

SpectrumPoint::SpectrumPoint(Place place, std::vector<GaussianRational> coordinates, PolyRadius rho)
    : place_(std::move(place)), coords_(std::move(coordinates)), rho_(std::move(rho)) {
  if (coords_.size() != rho_.size()) throw Error(ErrorCode::DimensionMismatch, "one coordinate per radius");
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const auto& c = coords_[i];
    bool ok = false;
    if (place_.kind == PlaceKind::Archimedean) {
      ok = within(c.norm_squared(), true, place_.epsilon, rho_[i]);
    } else {
      if (c.im != 0) throw Error(ErrorCode::InvalidArgument, "non-Archimedean coordinates are rational");
      if (place_.kind == PlaceKind::Trivial) ok = c.re == 0 || rho_[i] >= 1;
      else ok = c.re == 0 || within(abs_exact(BanachRingDesc::padic(place_.prime), c.re), false, place_.epsilon, rho_[i]);
    }
    if (!ok) throw Error(ErrorCode::CoordinateOutOfDisk, "coordinate " + std::to_string(i) + " lies outside the disk");
  }
}

NormValue evaluate_seminorm(const TruncatedSeries& f, const SpectrumPoint& point, const Rational& precision) {
  require_integer_series(f);
  if (f.variables() != point.coordinates().size()) throw Error(ErrorCode::DimensionMismatch, "point dimension");
  if (point.place().kind == PlaceKind::Archimedean) {
    Rational squared = evaluate(f, point.coordinates()).norm_squared();
    return raise(NormValue(squared), point.place().epsilon / 2, precision);
  }
  std::vector<Rational> real;
  for (const auto& c : point.coordinates()) real.push_back(c.re);
  return place_abs(point.place(), evaluate(f, real), precision);
}

NormValue fiber_sup(const TruncatedSeries& f, const Place& place, const PolyRadius& rho, const Rational& precision) {
  require_integer_series(f);
  if (rho.size() != f.variables()) throw Error(ErrorCode::DimensionMismatch, "polyradius length differs from variable count");
  switch (place.kind) {
    case PlaceKind::Trivial:
      return NormValue(support_bound(f, rho));
    case PlaceKind::Padic: {
      NormValue best(Rational(0));
      for (const auto& [index, c] : f.coefficients())
        best = max(best, place_abs(place, c, precision).scaled(radius_power(rho, index)));
      return best;
    }
    case PlaceKind::Archimedean: {
      unsigned per = 8 * (f.degree() + 1);
      NormValue bracket = torus_sup_lower(f, rho, per, precision);
      return raise(bracket, place.epsilon, precision);
    }
  }
  return NormValue();
}

GlobalSupReport global_sup(const TruncatedSeries& f, const PolyRadius& rho, unsigned long prime_bound, unsigned grid,
                           unsigned threads) {
  require_integer_series(f);
  GlobalSupReport report;
  report.prime_bound = prime_bound;
  std::vector<Place> places = enumerate_places(prime_bound, grid);
  auto values = parallel_map(places.size(), threads, [&](std::size_t i) { return fiber_sup(f, places[i], rho); });
  for (std::size_t i = 0; i < places.size(); ++i) {
    report.per_place.push_back(PlaceValue{places[i], values[i]});
    if (i == 0) {
      report.value = values[i];
      continue;
    }
    if (values[i].lo() > values[report.argmax].lo()) report.argmax = i;
    report.value = max(report.value, values[i]);
  }
  report.beyond_bound = support_bound(f, rho);
  return report;
}

PowersReport spectral_via_powers(const TruncatedSeries& f, const PolyRadius& rho, unsigned n_max,
                                 const Rational& precision) {
  require_integer_series(f);
  if (n_max == 0) throw Error(ErrorCode::InvalidArgument, "need at least one power");
  PowersReport report;
  TruncatedSeries p = f;
  for (unsigned n = 1; n <= n_max; ++n) {
    if (n > 1) p = multiply_exact(p, f);
    Rational s = 0;
    for (const auto& [index, c] : p.coefficients()) s += abs(c) * radius_power(rho, index);
    NormValue root = nth_root_interval(NormValue(s), n, precision);
    report.raw.push_back(root);
    if (report.running.empty() || root.upper() < report.running.back().upper()) report.running.push_back(root);
    else report.running.push_back(report.running.back());
  }
  return report;
}

ShilovReport shilov_check(const TruncatedSeries& f, const PolyRadius& rho, unsigned long prime_bound, unsigned grid,
                          unsigned threads) {
  require_integer_series(f);
  for (std::size_t i = 0; i < rho.size(); ++i)
    if (rho[i] < 1) throw Error(ErrorCode::InvalidArgument, "Shilov check needs every radius >= 1");
  if (f.coefficients().empty()) throw Error(ErrorCode::InvalidArgument, "Shilov check needs a nonzero series");
  ShilovReport report;
  report.global = global_sup(f, rho, prime_bound, grid, threads);
  report.archimedean = fiber_sup(f, Place::archimedean(1), rho);
  report.non_archimedean = NormValue(Rational(0));
  for (const auto& pv : report.global.per_place)
    if (pv.place.non_archimedean()) report.non_archimedean = max(report.non_archimedean, pv.value);
  report.gauss_bound = support_bound(f, rho);
  report.confirmed = certainly_le(report.non_archimedean, report.archimedean) && report.gauss_bound <= report.archimedean.lo();
  return report;
}

}  // namespace dagger
