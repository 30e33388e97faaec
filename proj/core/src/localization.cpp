#include "dagger/localization.hpp"

#include <algorithm>
#include <functional>

#include "dagger/errors.hpp"

namespace dagger {

namespace {

bool is_polynomial(const TruncatedSeries& f) { return !f.tail().has_value(); }

void require_polynomial(const TruncatedSeries& f, const char* what) {
  if (!is_polynomial(f)) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be a polynomial (no tail)");
}

TruncatedSeries product(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (is_polynomial(a) && is_polynomial(b)) return multiply_exact(a, b);
  return multiply(a, b, a.degree_bound() + b.degree_bound());
}

TruncatedSeries one(const BanachRingDesc& ring, std::size_t n) { return TruncatedSeries::constant(ring, n, 1); }

TruncatedSeries var(const BanachRingDesc& ring, std::size_t n, std::size_t i) {
  return TruncatedSeries::variable(ring, n, i);
}

bool same_polynomial(const TruncatedSeries& a, const TruncatedSeries& b) {
  return is_polynomial(a) && is_polynomial(b) && a.variables() == b.variables() && a.coefficients() == b.coefficients();
}

void check_in_algebra(const DaggerPresentation& a, const TruncatedSeries& f) {
  if (!(f.ring() == a.ring)) throw Error(ErrorCode::InvalidArgument, "localization datum over a different ring");
  if (f.variables() != a.variables) {
    throw Error(ErrorCode::DimensionMismatch, "localization datum not in the algebra's variables");
  }
}

std::vector<Rational> concat(const PolyRadius& rho, const std::vector<Rational>& extra) {
  std::vector<Rational> out = rho.components;
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

// Coordinates of a polynomial against a monomial list.
Vector coordinates(const TruncatedSeries& f, const std::map<MultiIndex, std::size_t>& index) {
  Vector v(index.size());
  for (const auto& [m, c] : f.coefficients()) {
    auto it = index.find(m);
    if (it == index.end()) throw Error(ErrorCode::TruncationTooSmall, "polynomial exceeds the truncation degree");
    v[it->second] = c;
  }
  return v;
}

std::map<MultiIndex, std::size_t> index_of(const std::vector<MultiIndex>& monomials) {
  std::map<MultiIndex, std::size_t> index;
  for (std::size_t i = 0; i < monomials.size(); ++i) index[monomials[i]] = i;
  return index;
}

TruncatedSeries from_coordinates(const BanachRingDesc& ring, std::size_t n, const std::vector<MultiIndex>& monomials,
                                 const Vector& v) {
  unsigned d = 0;
  for (const auto& m : monomials) d = std::max(d, total_degree(m));
  TruncatedSeries f(ring, n, d);
  for (std::size_t i = 0; i < monomials.size(); ++i) f.set(monomials[i], v[i]);
  return f;
}

std::size_t rank_of_columns(const std::vector<Vector>& cols, std::size_t rows) {
  if (cols.empty()) return 0;
  return rank(Matrix::from_columns(cols, rows));
}

}  // namespace

std::size_t added_variables(const LocalizationSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::size_t {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LaurentSpec>) return s.f.size() + s.g.size();
        else return s.f.size();
      },
      spec);
}

std::vector<MultiIndex> monomials_up_to(std::size_t n, unsigned d) {
  std::vector<MultiIndex> out;
  MultiIndex current(n, 0);
  std::function<void(std::size_t, unsigned)> fill = [&](std::size_t pos, unsigned remaining) {
    if (pos + 1 >= n) {
      if (n > 0) current[n - 1] = remaining;
      out.push_back(current);
      return;
    }
    for (unsigned e = remaining + 1; e-- > 0;) {
      current[pos] = e;
      fill(pos + 1, remaining - e);
    }
  };
  for (unsigned degree = 0; degree <= d; ++degree) {
    if (n == 0) {
      if (degree == 0) out.push_back(current);
      continue;
    }
    fill(0, degree);
  }
  return out;
}

TruncatedSeries substitute(const TruncatedSeries& f, const std::vector<TruncatedSeries>& images) {
  require_polynomial(f, "substituted series");
  if (images.size() != f.variables()) throw Error(ErrorCode::DimensionMismatch, "one image per variable required");
  std::size_t m = images.empty() ? 0 : images.front().variables();
  for (const auto& g : images) {
    if (g.variables() != m) throw Error(ErrorCode::DimensionMismatch, "images in different variable counts");
    if (!(g.ring() == f.ring())) throw Error(ErrorCode::InvalidArgument, "images over a different ring");
  }
  std::vector<std::vector<TruncatedSeries>> powers(images.size());
  for (std::size_t v = 0; v < images.size(); ++v) powers[v].push_back(one(f.ring(), m));
  TruncatedSeries result(f.ring(), m, 0);
  for (const auto& [index, c] : f.coefficients()) {
    TruncatedSeries term = TruncatedSeries::constant(f.ring(), m, c);
    for (std::size_t v = 0; v < index.size(); ++v) {
      while (powers[v].size() <= index[v]) powers[v].push_back(product(powers[v].back(), images[v]));
      if (index[v] > 0) term = product(term, powers[v][index[v]]);
    }
    result = add(result, term);
  }
  return result;
}

bool check_unit_ideal_witness(const DaggerPresentation& a, const RationalSpec& spec, const UnitIdealWitness& w) {
  if (w.f_cofactors.size() != spec.f.size() || w.relation_cofactors.size() > a.relations.size()) return false;
  TruncatedSeries total = product(w.h_cofactor, spec.h);
  for (std::size_t i = 0; i < spec.f.size(); ++i) total = add(total, product(w.f_cofactors[i], spec.f[i]));
  for (std::size_t k = 0; k < w.relation_cofactors.size(); ++k)
    total = add(total, product(w.relation_cofactors[k], a.relations[k]));
  return same_polynomial(total, one(a.ring, a.variables));
}

std::optional<UnitIdealWitness> find_unit_ideal_witness(const DaggerPresentation& a, const RationalSpec& spec,
                                                        unsigned max_degree) {
  std::vector<TruncatedSeries> gens{spec.h};
  gens.insert(gens.end(), spec.f.begin(), spec.f.end());
  gens.insert(gens.end(), a.relations.begin(), a.relations.end());
  unsigned top = 0;
  for (const auto& g : gens) {
    if (!is_polynomial(g)) return std::nullopt;
    top = std::max(top, g.degree());
  }
  const std::size_t n = a.variables;
  auto multipliers = monomials_up_to(n, max_degree);
  auto rows = monomials_up_to(n, max_degree + top);
  auto row_index = index_of(rows);
  std::vector<Vector> cols;
  for (const auto& g : gens) {
    for (const auto& m : multipliers) cols.push_back(coordinates(product(TruncatedSeries::monomial(a.ring, m, 1), g), row_index));
  }
  Vector rhs(rows.size());
  rhs[0] = 1;
  auto x = solve(Matrix::from_columns(cols, rows.size()), rhs);
  if (!x) return std::nullopt;
  for (const auto& c : *x)
    if (!a.ring.contains(c)) return std::nullopt;
  std::vector<TruncatedSeries> cof;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    TruncatedSeries c(a.ring, n, max_degree);
    for (std::size_t j = 0; j < multipliers.size(); ++j) c.set(multipliers[j], (*x)[g * multipliers.size() + j]);
    cof.push_back(c);
  }
  UnitIdealWitness w{cof[0], {cof.begin() + 1, cof.begin() + 1 + static_cast<long>(spec.f.size())},
                     {cof.begin() + 1 + static_cast<long>(spec.f.size()), cof.end()}};
  return w;
}

DaggerPresentation present_localization(const DaggerPresentation& a, const LocalizationSpec& spec) {
  a.validate();
  const std::size_t n = a.variables;
  const std::size_t total = n + added_variables(spec);
  DaggerPresentation out{a.ring, total, {}, {}};
  for (const auto& r : a.relations) out.relations.push_back(extend_variables(r, total));

  auto add_weierstrass = [&](const std::vector<TruncatedSeries>& f, const std::vector<Rational>& r, std::size_t first) {
    if (f.size() != r.size()) throw Error(ErrorCode::DimensionMismatch, "one radius per added variable");
    for (std::size_t i = 0; i < f.size(); ++i) {
      check_in_algebra(a, f[i]);
      out.relations.push_back(subtract(var(a.ring, total, first + i), extend_variables(f[i], total)));
    }
  };

  std::vector<Rational> radii;
  if (const auto* w = std::get_if<WeierstrassSpec>(&spec)) {
    add_weierstrass(w->f, w->r, n);
    radii = w->r;
  } else if (const auto* l = std::get_if<LaurentSpec>(&spec)) {
    add_weierstrass(l->f, l->r, n);
    if (l->g.size() != l->s.size()) throw Error(ErrorCode::DimensionMismatch, "one radius per added variable");
    for (std::size_t j = 0; j < l->g.size(); ++j) {
      check_in_algebra(a, l->g[j]);
      TruncatedSeries gy = product(extend_variables(l->g[j], total), var(a.ring, total, n + l->f.size() + j));
      out.relations.push_back(subtract(gy, one(a.ring, total)));
    }
    radii = l->r;
    radii.insert(radii.end(), l->s.begin(), l->s.end());
  } else {
    const auto& q = std::get<RationalSpec>(spec);
    if (q.f.size() != q.r.size()) throw Error(ErrorCode::DimensionMismatch, "one radius per added variable");
    check_in_algebra(a, q.h);
    bool witnessed = q.witness ? check_unit_ideal_witness(a, q, *q.witness) : find_unit_ideal_witness(a, q).has_value();
    if (!witnessed) throw Error(ErrorCode::UnitIdealWitnessMissing, "h and the f_i are not shown to generate the unit ideal");
    TruncatedSeries h = extend_variables(q.h, total);
    for (std::size_t i = 0; i < q.f.size(); ++i) {
      check_in_algebra(a, q.f[i]);
      out.relations.push_back(subtract(product(h, var(a.ring, total, n + i)), extend_variables(q.f[i], total)));
    }
    radii = q.r;
  }
  out.rho = PolyRadius(concat(a.rho, radii));
  return out;
}

CoefficientList laurent_apply(const FiniteAlgebra& c, const Vector& g, const CoefficientList& a, unsigned degree) {
  CoefficientList out(degree + 1, c.zero());
  for (unsigned i = 0; i <= degree; ++i) {
    Vector ai = i < a.size() ? a[i] : c.zero();
    Vector term = scale(ai, -1);
    if (i >= 1 && i - 1 < a.size()) term = add(term, c.multiply(g, a[i - 1]));
    out[i] = term;
  }
  return out;
}

LaurentSolution laurent_solve(const FiniteAlgebra& c, const Vector& g, const CoefficientList& t, unsigned degree) {
  if (t.size() > degree + 1) throw Error(ErrorCode::InvalidArgument, "target has terms beyond the truncation");
  CoefficientList target(degree + 1, c.zero());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i].size() != c.dimension()) throw Error(ErrorCode::DimensionMismatch, "target coefficient size");
    target[i] = t[i];
  }
  LaurentSolution sol;
  sol.a.push_back(scale(target[0], -1));
  for (unsigned i = 1; i <= degree; ++i) sol.a.push_back(add(c.multiply(g, sol.a[i - 1]), scale(target[i], -1)));
  sol.verified = laurent_apply(c, g, sol.a, degree) == target;

  const std::size_t d = c.dimension();
  Matrix op((degree + 1) * d, (degree + 1) * d);
  Matrix mg = c.multiplication_matrix(g);
  for (unsigned i = 0; i <= degree; ++i) {
    for (std::size_t r = 0; r < d; ++r) {
      op(i * d + r, i * d + r) = -1;
      if (i >= 1)
        for (std::size_t k = 0; k < d; ++k) op(i * d + r, (i - 1) * d + k) = mg(r, k);
    }
  }
  sol.kernel_trivial = rank(op) == op.cols();
  return sol;
}

TruncatedSeries laurent_solve(const Rational& g, const TruncatedSeries& t, unsigned degree) {
  if (t.variables() != 1) throw Error(ErrorCode::DimensionMismatch, "target must be univariate");
  require_polynomial(t, "target");
  FiniteAlgebra c = FiniteAlgebra::scalars(t.ring());
  CoefficientList target;
  for (unsigned i = 0; i <= degree; ++i) target.push_back(Vector{t.coefficient({i})});
  if (t.degree() > degree) throw Error(ErrorCode::InvalidArgument, "target has terms beyond the truncation");
  LaurentSolution sol = laurent_solve(c, Vector{g}, target, degree);
  TruncatedSeries a(t.ring(), 1, degree);
  for (unsigned i = 0; i <= degree; ++i) a.set({i}, sol.a[i][0]);
  return a;
}

KernelVerdict weierstrass_kernel_check(const FiniteAlgebra& c, const Vector& f, unsigned degree) {
  const std::size_t d = c.dimension();
  Matrix mf = c.multiplication_matrix(f);
  unsigned stab = 0;
  {
    Matrix p = Matrix::identity(d);
    std::size_t previous = rank(p);
    while (true) {
      Matrix next = mf * p;
      std::size_t r = rank(next);
      if (r == previous) break;
      previous = r;
      p = next;
      ++stab;
    }
  }
  // (X - f) a: coefficient i is a_{i-1} - f a_i.
  Matrix op((degree + 1) * d, (degree + 1) * d);
  for (unsigned i = 0; i <= degree; ++i) {
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t k = 0; k < d; ++k) op(i * d + r, i * d + k) = -mf(r, k);
      if (i >= 1) op(i * d + r, (i - 1) * d + r) = 1;
    }
  }
  for (const auto& v : nullspace(op)) {
    bool artefact = degree >= stab;
    for (unsigned i = 0; artefact && i + stab <= degree; ++i)
      for (std::size_t r = 0; r < d; ++r)
        if (v[i * d + r] != 0) artefact = false;
    if (!artefact) {
      CoefficientList element;
      for (unsigned i = 0; i <= degree; ++i) element.emplace_back(v.begin() + i * d, v.begin() + (i + 1) * d);
      return KernelWitness{element};
    }
  }
  return Injective{stab};
}

namespace {

struct KoszulElement {
  TruncatedSeries element;
  std::vector<TruncatedSeries> relations;
  std::size_t variables;
};

KoszulElement koszul_element(const DaggerPresentation& a, const LocalizationSpec& spec, const DaggerPresentation& b,
                             const std::vector<TruncatedSeries>& images) {
  if (added_variables(spec) != 1) throw Error(ErrorCode::InvalidArgument, "Koszul check needs exactly one added variable");
  a.validate();
  b.validate();
  if (!(a.ring == b.ring)) throw Error(ErrorCode::InvalidArgument, "algebras over different rings");
  if (images.size() != a.variables) throw Error(ErrorCode::DimensionMismatch, "one image per variable of A");
  const std::size_t m = b.variables + 1;
  auto to_b = [&](const TruncatedSeries& f) {
    check_in_algebra(a, f);
    TruncatedSeries g = a.variables == 0 ? TruncatedSeries::constant(b.ring, b.variables, f.coefficient({}))
                                         : substitute(f, images);
    return extend_variables(g, m);
  };
  TruncatedSeries y = var(b.ring, m, m - 1);
  KoszulElement k{TruncatedSeries(b.ring, m, 0), {}, m};
  const std::vector<TruncatedSeries>* f = nullptr;
  const std::vector<TruncatedSeries>* g = nullptr;
  if (const auto* w = std::get_if<WeierstrassSpec>(&spec)) f = &w->f;
  else if (const auto* l = std::get_if<LaurentSpec>(&spec)) {
    if (l->f.empty()) g = &l->g;
    else f = &l->f;
  } else throw Error(ErrorCode::InvalidArgument, "Koszul check takes a Weierstrass or Laurent spec");
  if (f) k.element = subtract(y, to_b(f->front()));
  else k.element = subtract(product(to_b(g->front()), y), one(b.ring, m));
  require_polynomial(k.element, "Koszul differential");
  for (const auto& r : b.relations) {
    require_polynomial(r, "relation of B");
    k.relations.push_back(extend_variables(r, m));
  }
  return k;
}

// Columns spanning the degree-<=D part of the ideal generated by `relations`.
std::vector<Vector> ideal_columns(const std::vector<TruncatedSeries>& relations, std::size_t n, unsigned d,
                                  const std::map<MultiIndex, std::size_t>& index, const BanachRingDesc& ring) {
  std::vector<Vector> cols;
  for (const auto& r : relations) {
    if (r.coefficients().empty()) continue;
    unsigned rd = r.degree();
    if (rd > d) continue;
    for (const auto& m : monomials_up_to(n, d - rd))
      cols.push_back(coordinates(product(TruncatedSeries::monomial(ring, m, 1), r), index));
  }
  return cols;
}

KoszulReport koszul_at(const KoszulElement& k, const BanachRingDesc& ring, unsigned degree) {
  const unsigned kd = k.element.degree();
  if (degree < kd) throw Error(ErrorCode::TruncationTooSmall, "truncation below the degree of the differential");
  const std::size_t n = k.variables;
  auto source = monomials_up_to(n, degree - kd);
  auto target = monomials_up_to(n, degree);
  auto source_index = index_of(source);
  auto target_index = index_of(target);

  std::vector<Vector> image;
  for (const auto& m : source) image.push_back(coordinates(product(TruncatedSeries::monomial(ring, m, 1), k.element), target_index));
  std::vector<Vector> ideal = ideal_columns(k.relations, n, degree, target_index, ring);
  std::vector<Vector> low_ideal = ideal_columns(k.relations, n, degree - kd, source_index, ring);

  std::vector<Vector> both = image;
  both.insert(both.end(), ideal.begin(), ideal.end());
  const std::size_t rank_ideal = rank_of_columns(ideal, target.size());
  const std::size_t rank_both = rank_of_columns(both, target.size());
  const std::size_t preimage = source.size() + rank_ideal - rank_both;
  const std::size_t low_rank = rank_of_columns(low_ideal, source.size());

  KoszulReport report;
  report.degree = degree;
  report.source_dimension = source.size();
  report.ideal_dimension = low_rank;
  report.h_minus1_dimension = preimage - low_rank;
  report.concentrated = report.h_minus1_dimension == 0;
  if (!report.concentrated) {
    // x with K x in the ideal: first block of the nullspace of [K | -Q].
    std::vector<Vector> cols = image;
    for (const auto& q : ideal) cols.push_back(scale(q, -1));
    for (const auto& z : nullspace(Matrix::from_columns(cols, target.size()))) {
      Vector x(z.begin(), z.begin() + static_cast<long>(source.size()));
      std::vector<Vector> test = low_ideal;
      test.push_back(x);
      if (rank_of_columns(test, source.size()) > low_rank) {
        report.witness = from_coordinates(ring, n, source, x);
        break;
      }
    }
  }
  return report;
}

}  // namespace

KoszulReport koszul_h_check(const DaggerPresentation& a, const LocalizationSpec& spec, const DaggerPresentation& b,
                            const std::vector<TruncatedSeries>& images, unsigned degree) {
  KoszulElement k = koszul_element(a, spec, b, images);
  KoszulReport report = koszul_at(k, b.ring, degree);
  if (degree >= 2 && degree - 2 >= k.element.degree()) {
    KoszulReport lower = koszul_at(k, b.ring, degree - 2);
    if (lower.concentrated != report.concentrated) {
      throw Error(ErrorCode::TruncationTooSmall, "H^-1 verdict differs between degree " + std::to_string(degree - 2) +
                                                     " and " + std::to_string(degree));
    }
  }
  return report;
}

KoszulReport koszul_h_check(const DaggerPresentation& a, const LocalizationSpec& spec, unsigned degree) {
  std::vector<TruncatedSeries> images;
  for (std::size_t i = 0; i < a.variables; ++i) images.push_back(var(a.ring, a.variables, i));
  return koszul_h_check(a, spec, a, images, degree);
}

RationalFactorization rational_factor(const DaggerPresentation& a, const RationalSpec& spec, const Rational& sup_lower) {
  if (sup_lower <= 0) throw Error(ErrorCode::NonPositiveLowerBound, "the lower bound for |h|_sup must be positive");
  RationalSpec q = spec;
  if (q.witness && !check_unit_ideal_witness(a, q, *q.witness)) q.witness.reset();
  if (!q.witness) q.witness = find_unit_ideal_witness(a, q);
  if (!q.witness) throw Error(ErrorCode::UnitIdealWitnessMissing, "h and the f_i are not shown to generate the unit ideal");
  for (const auto& f : q.f) require_polynomial(f, "rational datum");
  require_polynomial(q.h, "rational datum");

  const std::size_t n = a.variables;
  const std::size_t k = q.f.size();
  RationalFactorization out;
  out.epsilon = 1 / sup_lower;
  out.laurent = LaurentSpec{{}, {}, {q.h}, {out.epsilon}};
  DaggerPresentation w = present_localization(a, out.laurent);
  TruncatedSeries y = var(a.ring, n + 1, n);
  for (std::size_t i = 0; i < k; ++i) out.weierstrass.f.push_back(product(extend_variables(q.f[i], n + 1), y));
  out.weierstrass.r = q.r;
  out.composed = present_localization(w, out.weierstrass);
  out.direct = present_localization(a, q);

  // Composed variables: (A, Y, X_1..X_k); direct: (A, X_1..X_k).
  const std::size_t nc = n + 1 + k;
  const std::size_t nd = n + k;
  const std::size_t base = a.relations.size();
  bool ok = out.composed.relations.size() == base + 1 + k && out.direct.relations.size() == base + k;
  for (std::size_t r = 0; ok && r < base; ++r) {
    ok = same_polynomial(out.composed.relations[r], extend_variables(a.relations[r], nc)) &&
         same_polynomial(out.direct.relations[r], extend_variables(a.relations[r], nd));
  }
  if (ok) {
    // Direct relation h X_i - f_i = h (X_i - f_i Y) + f_i (h Y - 1).
    std::vector<TruncatedSeries> to_composed;
    for (std::size_t v = 0; v < n; ++v) to_composed.push_back(var(a.ring, nc, v));
    for (std::size_t i = 0; i < k; ++i) to_composed.push_back(var(a.ring, nc, n + 1 + i));
    const TruncatedSeries& laurent_rel = out.composed.relations[base];
    TruncatedSeries hc = extend_variables(q.h, nc);
    for (std::size_t i = 0; ok && i < k; ++i) {
      TruncatedSeries mapped = substitute(out.direct.relations[base + i], to_composed);
      TruncatedSeries combo = add(product(hc, out.composed.relations[base + 1 + i]),
                                  product(extend_variables(q.f[i], nc), laurent_rel));
      ok = same_polynomial(mapped, combo);
    }
    // Composed relations with Y -> a + sum b_i X_i, witness a h + sum b_i f_i + sum c_k rel_k = 1.
    const UnitIdealWitness& wit = *q.witness;
    std::vector<TruncatedSeries> to_direct;
    for (std::size_t v = 0; v < n; ++v) to_direct.push_back(var(a.ring, nd, v));
    TruncatedSeries inverse = extend_variables(wit.h_cofactor, nd);
    for (std::size_t i = 0; i < k; ++i)
      inverse = add(inverse, product(extend_variables(wit.f_cofactors[i], nd), var(a.ring, nd, n + i)));
    to_direct.push_back(inverse);
    for (std::size_t i = 0; i < k; ++i) to_direct.push_back(var(a.ring, nd, n + i));
    TruncatedSeries relation_part(a.ring, nd, 0);
    for (std::size_t c = 0; c < wit.relation_cofactors.size(); ++c)
      relation_part = add(relation_part, product(extend_variables(wit.relation_cofactors[c], nd), out.direct.relations[c]));
    auto direct_rel = [&](std::size_t i) -> const TruncatedSeries& { return out.direct.relations[base + i]; };
    {
      // h Y - 1 -> sum b_i (h X_i - f_i) - sum c_k rel_k
      TruncatedSeries combo = negate(relation_part);
      for (std::size_t i = 0; i < k; ++i) combo = add(combo, product(extend_variables(wit.f_cofactors[i], nd), direct_rel(i)));
      ok = ok && same_polynomial(substitute(out.composed.relations[base], to_direct), combo);
    }
    for (std::size_t i = 0; ok && i < k; ++i) {
      // X_i - f_i Y -> a R_i + sum_j b_j (X_j R_i - X_i R_j) + X_i sum c_k rel_k
      TruncatedSeries xi = var(a.ring, nd, n + i);
      TruncatedSeries combo = add(product(extend_variables(wit.h_cofactor, nd), direct_rel(i)), product(xi, relation_part));
      for (std::size_t j = 0; j < k; ++j) {
        TruncatedSeries bj = extend_variables(wit.f_cofactors[j], nd);
        TruncatedSeries inner = subtract(product(var(a.ring, nd, n + j), direct_rel(i)), product(xi, direct_rel(j)));
        combo = add(combo, product(bj, inner));
      }
      ok = same_polynomial(substitute(out.composed.relations[base + 1 + i], to_direct), combo);
    }
  }
  out.generators_match = ok;
  return out;
}

std::optional<Vector> idempotent_split(const FiniteAlgebra& c, const std::vector<Vector>& ideal) {
  const std::size_t d = c.dimension();
  std::vector<Vector> spanning;
  for (const auto& g : ideal) {
    Matrix m = c.multiplication_matrix(g);
    for (std::size_t j = 0; j < d; ++j) spanning.push_back(m.column(j));
  }
  std::vector<Vector> basis;
  if (!spanning.empty()) {
    Matrix echelon = rref(Matrix::from_rows(spanning, d));
    for (std::size_t r = 0; r < echelon.rows(); ++r)
      if (!is_zero(echelon.row(r))) basis.push_back(echelon.row(r));
  }
  if (basis.empty()) return c.zero();
  std::vector<Vector> squares;
  for (const auto& x : basis)
    for (const auto& y : basis) squares.push_back(c.multiply(x, y));
  if (rank_of_columns(squares, d) != basis.size()) return std::nullopt;

  // e = sum x_k basis_k with e * basis_j = basis_j for all j.
  Matrix system(d * basis.size(), basis.size());
  Vector rhs(d * basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t kk = 0; kk < basis.size(); ++kk) {
      Vector p = c.multiply(basis[kk], basis[j]);
      for (std::size_t r = 0; r < d; ++r) system(j * d + r, kk) = p[r];
    }
    for (std::size_t r = 0; r < d; ++r) rhs[j * d + r] = basis[j][r];
  }
  auto x = solve(system, rhs);
  if (!x) return std::nullopt;
  Vector e = c.zero();
  for (std::size_t kk = 0; kk < basis.size(); ++kk) e = add(e, scale(basis[kk], (*x)[kk]));
  if (c.multiply(e, e) != e) return std::nullopt;
  return e;
}

MayerVietorisReport mayer_vietoris(const DaggerPresentation& a, const WeierstrassSpec& v1, const LaurentSpec& v2,
                                   unsigned degree) {
  a.validate();
  if (a.variables != 1 || !a.relations.empty()) {
    throw Error(ErrorCode::InvalidArgument, "Mayer-Vietoris check runs on the one-variable disk");
  }
  TruncatedSeries x = var(a.ring, 1, 0);
  if (v1.f.size() != 1 || v1.r.size() != 1 || !same_polynomial(v1.f[0], x)) {
    throw Error(ErrorCode::InvalidArgument, "first piece must be the Weierstrass domain |X| <= r");
  }
  if (!v2.f.empty() || v2.g.size() != 1 || v2.s.size() != 1) {
    throw Error(ErrorCode::InvalidArgument, "second piece must be a single Laurent condition");
  }
  const Rational& rho = a.rho[0];
  const Rational& r = v1.r[0];
  const Rational& s = v2.s[0];
  const TruncatedSeries& g = v2.g[0];
  require_polynomial(g, "Laurent datum");

  MayerVietorisReport report;
  report.degree = degree;
  bool annulus = same_polynomial(g, x);
  bool constant = g.degree() == 0 && g.variables() == 1 && !g.coefficients().empty();
  if (!annulus && !constant) throw Error(ErrorCode::InvalidArgument, "second piece must use g = X or a constant");
  // Points of the disk are recorded by |X| in [0, rho].
  if (annulus) report.covers = r >= rho || 1 / s <= r;
  else report.covers = r >= rho || 1 / abs_exact(a.ring, g.coefficient({0})) <= s;
  if (!report.covers) throw Error(ErrorCode::NotACover, "points of the disk escape both pieces");

  const long d = static_cast<long>(degree);
  report.v2_low = annulus ? -d : 0;
  report.overlap_low = report.v2_low;
  const std::size_t dim_a = degree + 1;
  const std::size_t dim_v1 = degree + 1;
  const std::size_t dim_v2 = static_cast<std::size_t>(d - report.v2_low + 1);
  const std::size_t dim_overlap = static_cast<std::size_t>(d - report.overlap_low + 1);

  // A -> V1 x V2
  Matrix diagonal(dim_v1 + dim_v2, dim_a);
  for (std::size_t e = 0; e < dim_a; ++e) {
    diagonal(e, e) = 1;
    diagonal(dim_v1 + static_cast<std::size_t>(static_cast<long>(e) - report.v2_low), e) = 1;
  }
  // V1 x V2 -> overlap, (a, b) -> a - b
  Matrix difference(dim_overlap, dim_v1 + dim_v2);
  for (std::size_t e = 0; e < dim_v1; ++e) difference(static_cast<std::size_t>(static_cast<long>(e) - report.overlap_low), e) = 1;
  for (std::size_t j = 0; j < dim_v2; ++j) {
    long exponent = report.v2_low + static_cast<long>(j);
    difference(static_cast<std::size_t>(exponent - report.overlap_low), dim_v1 + j) = -1;
  }
  const std::size_t diag_rank = rank(diagonal);
  const std::size_t diff_rank = rank(difference);
  report.diagonal_injective = diag_rank == dim_a;
  report.difference_surjective = diff_rank == dim_overlap;
  report.kernel_is_diagonal = (difference * diagonal).is_zero() && dim_v1 + dim_v2 - diff_rank == diag_rank;
  report.exact = report.covers && report.diagonal_injective && report.kernel_is_diagonal && report.difference_surjective;
  return report;
}

LaurentSplitting split_overlap(const MayerVietorisReport& report, const LaurentPolynomial& c) {
  const long d = static_cast<long>(report.degree);
  const long low = report.overlap_low;
  for (const auto& [e, v] : c) {
    if (v != 0 && (e < low || e > d)) throw Error(ErrorCode::InvalidArgument, "exponent outside the overlap window");
  }
  // Unknowns: power part exponents 0..D, then principal part exponents low..-1.
  const std::size_t power = report.degree + 1;
  const std::size_t principal = static_cast<std::size_t>(-low);
  const std::size_t rows = static_cast<std::size_t>(d - low + 1);
  Matrix m(rows, power + principal);
  Vector rhs(rows);
  for (std::size_t e = 0; e < power; ++e) m(static_cast<std::size_t>(static_cast<long>(e) - low), e) = 1;
  for (std::size_t j = 0; j < principal; ++j) m(j, power + j) = -1;
  for (const auto& [e, v] : c) rhs[static_cast<std::size_t>(e - low)] = v;
  LaurentSplitting split;
  auto x = solve(m, rhs);
  if (!x || rank(m) != m.cols()) return split;
  for (std::size_t e = 0; e < power; ++e)
    if ((*x)[e] != 0) split.on_v1[static_cast<long>(e)] = (*x)[e];
  for (std::size_t j = 0; j < principal; ++j)
    if ((*x)[power + j] != 0) split.on_v2[low + static_cast<long>(j)] = (*x)[power + j];
  LaurentPolynomial check = split.on_v1;
  for (const auto& [e, v] : split.on_v2) {
    check[e] -= v;
    if (check[e] == 0) check.erase(e);
  }
  LaurentPolynomial target;
  for (const auto& [e, v] : c)
    if (v != 0) target[e] = v;
  split.verified = check == target;
  return split;
}

bool in_difference_kernel(const LaurentPolynomial& on_v1, const LaurentPolynomial& on_v2) {
  auto clean = [](const LaurentPolynomial& p) {
    LaurentPolynomial q;
    for (const auto& [e, v] : p)
      if (v != 0) q[e] = v;
    return q;
  };
  return clean(on_v1) == clean(on_v2);
}

}  // namespace dagger
