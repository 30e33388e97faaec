#pragma once

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "dagger/finite_algebra.hpp"
#include "dagger/series.hpp"

namespace dagger {

/// A -> A<X/r>/(X_i - f_i)
struct WeierstrassSpec {
  std::vector<TruncatedSeries> f;
  std::vector<Rational> r;
};

/// A -> A<X/r, Y/s>/(X_i - f_i, g_j Y_j - 1)
struct LaurentSpec {
  std::vector<TruncatedSeries> f;
  std::vector<Rational> r;
  std::vector<TruncatedSeries> g;
  std::vector<Rational> s;
};

/// 1 = h_cofactor h + sum f_cofactors[i] f_i + sum relation_cofactors[k] rel_k, exactly.
struct UnitIdealWitness {
  TruncatedSeries h_cofactor;
  std::vector<TruncatedSeries> f_cofactors;
  std::vector<TruncatedSeries> relation_cofactors;
};

/// A -> A<X/r>/(h X_i - f_i), with (h, f_1..f_n) the unit ideal.
struct RationalSpec {
  std::vector<TruncatedSeries> f;
  TruncatedSeries h;
  std::vector<Rational> r;
  std::optional<UnitIdealWitness> witness;
};

using LocalizationSpec = std::variant<WeierstrassSpec, LaurentSpec, RationalSpec>;

/// Number of variables the localization adds.
std::size_t added_variables(const LocalizationSpec& spec);

/// New variables are appended after A's; relations of A come first.
DaggerPresentation present_localization(const DaggerPresentation& a, const LocalizationSpec& spec);

/// True when the witness identity holds exactly in A's polynomial ring.
bool check_unit_ideal_witness(const DaggerPresentation& a, const RationalSpec& spec, const UnitIdealWitness& w);
/// Linear solve for cofactors of total degree <= max_degree (polynomial relations only).
std::optional<UnitIdealWitness> find_unit_ideal_witness(const DaggerPresentation& a, const RationalSpec& spec,
                                                        unsigned max_degree = 2);

/// Monomials in n variables of total degree <= d, graded then lexicographic.
std::vector<MultiIndex> monomials_up_to(std::size_t n, unsigned d);
/// f(images) for a tail-free f; the result lives in the images' variables.
TruncatedSeries substitute(const TruncatedSeries& f, const std::vector<TruncatedSeries>& images);

/// Coefficients a_0..a_D in C of an element of C[X]/X^{D+1}.
using CoefficientList = std::vector<Vector>;

struct LaurentSolution {
  CoefficientList a;
  bool verified = false;      // (gX - 1) a == t mod X^{D+1}
  bool kernel_trivial = false;  // (gX - 1) has zero kernel on C[X]/X^{D+1}
};

/// Solves (g X - 1) a == t mod X^{D+1} by the coefficient recursion.
LaurentSolution laurent_solve(const FiniteAlgebra& c, const Vector& g, const CoefficientList& t, unsigned degree);
/// Scalar case C = ring: t is a univariate series.
TruncatedSeries laurent_solve(const Rational& g, const TruncatedSeries& t, unsigned degree);
/// (g X - 1) a mod X^{D+1}
CoefficientList laurent_apply(const FiniteAlgebra& c, const Vector& g, const CoefficientList& a, unsigned degree);

struct Injective {
  /// Least N with ker(f^N) = ker(f^{N+1}).
  unsigned stabilization_index = 0;
};
struct KernelWitness {
  CoefficientList element;
};
using KernelVerdict = std::variant<Injective, KernelWitness>;

/// Kernel of (X - f) on C[X]/X^{D+1}. Elements supported in the top N
/// coefficients are truncation artefacts (X^D a_D with f^N a_D = 0 and the like);
/// anything reaching below degree D - N + 1 is reported as a witness.
KernelVerdict weierstrass_kernel_check(const FiniteAlgebra& c, const Vector& f, unsigned degree);

struct KoszulReport {
  bool concentrated = false;     // truncated H^{-1} vanishes
  std::size_t h_minus1_dimension = 0;
  std::size_t source_dimension = 0;
  std::size_t ideal_dimension = 0;
  std::optional<TruncatedSeries> witness;
  unsigned degree = 0;
};

/// B (x)_A of the two-term complex B[Y] --(Y - f) or (gY - 1)--> B[Y], truncated to
/// total degree D modulo the degree-D part of B's relation ideal. `images` sends
/// A's variables into B. Rechecks at D - 2 and throws TruncationTooSmall when the verdict changes.
KoszulReport koszul_h_check(const DaggerPresentation& a, const LocalizationSpec& spec, const DaggerPresentation& b,
                            const std::vector<TruncatedSeries>& images, unsigned degree);
/// Same with B = A and the identity map.
KoszulReport koszul_h_check(const DaggerPresentation& a, const LocalizationSpec& spec, unsigned degree);

struct RationalFactorization {
  Rational epsilon;
  LaurentSpec laurent;        // over A
  WeierstrassSpec weierstrass;  // over the Laurent localization
  DaggerPresentation composed;
  DaggerPresentation direct;
  /// Every relation of one presentation, after relabeling, is an explicit
  /// combination of the other's relations.
  bool generators_match = false;
};

/// Splits a rational localization into A -> A<Y/eps>/(hY - 1) followed by the
/// Weierstrass localization X_i - f_i Y, with eps = 1 / sup_lower.
RationalFactorization rational_factor(const DaggerPresentation& a, const RationalSpec& spec, const Rational& sup_lower);

/// e in I with e^2 = e and e I = I when I^2 = I; I is generated by `ideal`.
std::optional<Vector> idempotent_split(const FiniteAlgebra& c, const std::vector<Vector>& ideal);

/// Laurent polynomial: exponent -> coefficient.
using LaurentPolynomial = std::map<long, Rational>;

struct MayerVietorisReport {
  bool covers = false;
  bool diagonal_injective = false;
  bool kernel_is_diagonal = false;
  bool difference_surjective = false;
  bool exact = false;
  long v2_low = 0;       // lowest exponent kept on the second piece
  long overlap_low = 0;  // lowest exponent kept on the overlap
  unsigned degree = 0;
};

/// V1 = {|X| <= r} (Weierstrass f = X) and V2 = {|X| >= 1/s} (Laurent g = X) or the
/// whole space (g a constant unit) inside the one-variable disk A, truncated to
/// exponent windows of width D.
MayerVietorisReport mayer_vietoris(const DaggerPresentation& a, const WeierstrassSpec& v1, const LaurentSpec& v2,
                                   unsigned degree);

struct LaurentSplitting {
  LaurentPolynomial on_v1;  // exponents >= 0
  LaurentPolynomial on_v2;  // principal part, negated
  bool verified = false;    // c = on_v1 - on_v2
};
/// Unique split of an overlap element into power part minus (negated) principal part.
LaurentSplitting split_overlap(const MayerVietorisReport& report, const LaurentPolynomial& c);
/// (a, b) lies in the kernel of the difference map.
bool in_difference_kernel(const LaurentPolynomial& on_v1, const LaurentPolynomial& on_v2);

}  // namespace dagger
