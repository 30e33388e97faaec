#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dagger/scalars.hpp"

namespace dagger {

/// Positive radii, one per variable.
struct PolyRadius {
  std::vector<Rational> components;

  PolyRadius() = default;
  explicit PolyRadius(std::vector<Rational> c);
  static PolyRadius uniform(std::size_t n, const Rational& r) { return PolyRadius(std::vector<Rational>(n, r)); }

  std::size_t size() const { return components.size(); }
  const Rational& operator[](std::size_t i) const { return components[i]; }
  friend bool operator==(const PolyRadius&, const PolyRadius&) = default;
};

/// Every component strictly smaller.
bool strictly_less(const PolyRadius& a, const PolyRadius& b);

using MultiIndex = std::vector<unsigned>;
unsigned total_degree(const MultiIndex& index);
/// rho^I
Rational radius_power(const PolyRadius& rho, const MultiIndex& index);

/// |a_I| <= constant * sigma^{-I} for every |I| above the degree bound.
struct TailMajorant {
  Rational constant;
  PolyRadius sigma;
};

/// Power series over a Banach ring known exactly up to total degree
/// `degree_bound`, optionally with a geometric majorant for the rest.
class TruncatedSeries {
 public:
  TruncatedSeries(BanachRingDesc ring, std::size_t variables, unsigned degree_bound);

  static TruncatedSeries constant(const BanachRingDesc& ring, std::size_t variables, const Rational& c,
                                  unsigned degree_bound = 0);
  static TruncatedSeries monomial(const BanachRingDesc& ring, const MultiIndex& index, const Rational& c);
  static TruncatedSeries variable(const BanachRingDesc& ring, std::size_t variables, std::size_t which);

  const BanachRingDesc& ring() const { return ring_; }
  std::size_t variables() const { return n_; }
  unsigned degree_bound() const { return degree_bound_; }
  const std::map<MultiIndex, Rational>& coefficients() const { return coeffs_; }
  const std::optional<TailMajorant>& tail() const { return tail_; }

  /// Zero coefficients are erased; throws if |I| exceeds the degree bound.
  void set(const MultiIndex& index, const Rational& value);
  Rational coefficient(const MultiIndex& index) const;
  void set_tail(TailMajorant tail);
  void clear_tail() { tail_.reset(); }
  /// Raises (never lowers) the degree bound of a tail-free series.
  void raise_degree_bound(unsigned degree_bound);

  bool is_zero() const { return coeffs_.empty() && !tail_; }
  /// Largest |I| with a nonzero coefficient (0 for the zero series).
  unsigned degree() const;

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  BanachRingDesc ring_;
  std::size_t n_;
  unsigned degree_bound_;
  std::map<MultiIndex, Rational> coeffs_;
  std::optional<TailMajorant> tail_;
};

/// S-norm sum |a_I| rho^I; a tail only widens hi by its closed-form geometric remainder.
NormValue norm_S(const TruncatedSeries& f, const PolyRadius& rho);
/// Exact tail remainder C (prod 1/(1 - q_i) - sum_{|I|<=D} q^I), q = rho / sigma.
Rational tail_remainder(const TailMajorant& tail, unsigned degree_bound, const PolyRadius& rho);

struct TorusOptions {
  /// Samples per variable; 0 means 64 * max(D, 1).
  unsigned points_per_variable = 0;
  /// Grid size cap for several variables.
  unsigned max_points = 4096;
  Rational root_precision = Rational(1, 1 << 20);
};

/// T-norm: the Gauss norm over non-Archimedean rings; over Archimedean rings
/// the sup on the torus |z_i| = rho_i bracketed by sampling / L2 (lo) and the S-norm (hi).
NormValue norm_T(const TruncatedSeries& f, const PolyRadius& rho, const TorusOptions& options = {});

/// Lower bound on sup_{|z_i| = rho_i} |p(z)| for the polynomial part p, from a
/// grid of exact rational points on the torus and the L2 mean.
NormValue torus_sup_lower(const TruncatedSeries& f, const PolyRadius& rho, unsigned points_per_variable,
                          const Rational& precision, unsigned max_points = 4096);

TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries negate(const TruncatedSeries& f);
TruncatedSeries subtract(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries scale(const TruncatedSeries& f, const Rational& c);

/// Product known exactly up to degree min(D, degree bounds of tailed factors);
/// everything above is covered by a rigorous geometric majorant when a factor has a tail.
TruncatedSeries multiply(const TruncatedSeries& f, const TruncatedSeries& g, unsigned degree_bound);
/// Exact polynomial product (tail-free inputs).
TruncatedSeries multiply_exact(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries power_exact(const TruncatedSeries& f, unsigned exponent);

/// Factor by which the majorant radius shrinks when both factors carry tails.
inline Rational tail_shrink_factor() { return Rational(7, 8); }

/// max_i rho'_i / (rho'_i - rho_i)
Rational cofinality_constant(const PolyRadius& rho, const PolyRadius& rho_prime);
/// prod_i rho'_i / (rho'_i - rho_i); the sum of the geometric series over all multi-indices.
Rational product_cofinality_constant(const PolyRadius& rho, const PolyRadius& rho_prime);

struct RestrictionCertificate {
  Rational s_norm;          // ||f||_{S, rho}.hi
  Rational t_norm;          // ||f||_{T, rho'}.hi
  Rational t_norm_lower;    // ||f||_{T, rho'}.lo
  Rational constant;        // cofinality constant used by the claim
  Rational product_constant;
  bool holds = false;           // s_norm <= constant * t_norm
  bool holds_product = false;   // s_norm <= product_constant * t_norm
  bool holds_against_lower = false;  // s_norm <= constant * t_norm_lower
};

/// Identity T(rho') -> S(rho) over a non-Archimedean ring, certified with the max constant.
RestrictionCertificate restrict_T_to_S(const TruncatedSeries& f, const PolyRadius& rho_prime, const PolyRadius& rho);
/// Archimedean version via Cauchy estimates: constant prod 1 / (1 - rho_i / rho'_i).
RestrictionCertificate restrict_arch(const TruncatedSeries& f, const PolyRadius& rho_prime, const PolyRadius& rho,
                                     const TorusOptions& options = {});

/// Coefficientwise image of an integer series in another base ring.
TruncatedSeries base_change(const TruncatedSeries& f, const BanachRingDesc& target);

/// W^n(rho) / (relations).
struct DaggerPresentation {
  BanachRingDesc ring;
  std::size_t variables = 0;
  PolyRadius rho;
  std::vector<TruncatedSeries> relations;

  static DaggerPresentation free_algebra(const BanachRingDesc& ring, PolyRadius rho);
  void validate() const;
};

DaggerPresentation base_change(const DaggerPresentation& a, const BanachRingDesc& target);

/// Re-embeds a series in more variables (new variables appended).
TruncatedSeries extend_variables(const TruncatedSeries& f, std::size_t variables);

/// Exact value at a rational point (tail-free).
Rational evaluate(const TruncatedSeries& f, const std::vector<Rational>& point);

struct GaussianRational {
  Rational re;
  Rational im;
  Rational norm_squared() const { return re * re + im * im; }
};
GaussianRational evaluate(const TruncatedSeries& f, const std::vector<GaussianRational>& point);

/// Rational points on the unit circle, roughly uniform in angle, float-free.
std::vector<GaussianRational> unit_circle_points(unsigned count);

}  // namespace dagger
