#pragma once

#include <string>
#include <vector>

#include "dagger/series.hpp"

namespace dagger {

enum class PlaceKind { Trivial, Archimedean, Padic };

/// A point of M(Z): trivial, |.|_inf^eps with 0 < eps <= 1, or |.|_p^eps with eps > 0.
struct Place {
  PlaceKind kind = PlaceKind::Trivial;
  unsigned long prime = 0;
  Rational epsilon = 1;

  static Place trivial() { return Place{}; }
  static Place archimedean(const Rational& epsilon);
  static Place padic(unsigned long p, const Rational& epsilon);
  bool non_archimedean() const { return kind != PlaceKind::Archimedean; }
  friend bool operator==(const Place&, const Place&) = default;
};

std::string describe(const Place& place);

/// Trivial, then Archimedean, then p-adic for each prime <= prime_bound, with
/// eps in {1/grid, 2/grid, ..., 1}.
std::vector<Place> enumerate_places(unsigned long prime_bound, unsigned grid);

/// |x|_place, certified (exact unless eps makes it irrational).
NormValue place_abs(const Place& place, const Rational& x, const Rational& precision = Rational(1, 1 << 20));

/// A place with fiber coordinates; p-adic and trivial coordinates are rational
/// (imaginary parts zero), Archimedean ones Gaussian rationals.
class SpectrumPoint {
 public:
  /// Throws CoordinateOutOfDisk unless |c_i|_place <= rho_i.
  SpectrumPoint(Place place, std::vector<GaussianRational> coordinates, PolyRadius rho);
  const Place& place() const { return place_; }
  const std::vector<GaussianRational>& coordinates() const { return coords_; }
  const PolyRadius& rho() const { return rho_; }

 private:
  Place place_;
  std::vector<GaussianRational> coords_;
  PolyRadius rho_;
};

NormValue evaluate_seminorm(const TruncatedSeries& f, const SpectrumPoint& point,
                            const Rational& precision = Rational(1, 1 << 20));

/// Supremum of the fiber seminorms over the polydisk of radius rho.
NormValue fiber_sup(const TruncatedSeries& f, const Place& place, const PolyRadius& rho,
                    const Rational& precision = Rational(1, 1 << 20));

struct PlaceValue {
  Place place;
  NormValue value;
};

struct GlobalSupReport {
  NormValue value;
  std::vector<PlaceValue> per_place;
  std::size_t argmax = 0;
  unsigned long prime_bound = 0;
  /// Bound max_I rho^I over the support for every prime above prime_bound.
  Rational beyond_bound;
};

GlobalSupReport global_sup(const TruncatedSeries& f, const PolyRadius& rho, unsigned long prime_bound, unsigned grid,
                           unsigned threads = 1);

struct PowersReport {
  std::vector<NormValue> raw;      // ||f^n||_S^(1/n)
  std::vector<NormValue> running;  // running minimum of raw
};
PowersReport spectral_via_powers(const TruncatedSeries& f, const PolyRadius& rho, unsigned n_max,
                                 const Rational& precision = Rational(1, 1 << 20));

struct ShilovReport {
  bool confirmed = false;
  NormValue archimedean;        // fiber at |.|_inf
  NormValue non_archimedean;    // max over trivial and p-adic fibers
  Rational gauss_bound;         // max_I rho^I over the support
  GlobalSupReport global;
};
/// Non-Archimedean fibers are dominated by the Archimedean one (rho_i >= 1, f != 0).
ShilovReport shilov_check(const TruncatedSeries& f, const PolyRadius& rho, unsigned long prime_bound,
                          unsigned grid = 1, unsigned threads = 1);

}  // namespace dagger
