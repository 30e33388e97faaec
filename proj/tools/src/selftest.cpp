#include "dagger_cli/selftest.hpp"

#include <chrono>
#include <functional>

#include <dagger/localization.hpp>
#include <dagger/nonarch.hpp>
#include <dagger/parallel.hpp>
#include <dagger/spectrum.hpp>

#include "dagger_cli/random.hpp"

namespace dagger::cli {

namespace {

struct ItemResult {
  bool ok = true;
  std::string note;
};

ItemResult fail(std::string note) { return ItemResult{false, std::move(note)}; }

// Runs `count` independent items and folds them into a criterion result.
CriterionResult run_items(int id, std::string name, std::string anchor, std::size_t count, const RunConfig& cfg,
                          const std::function<ItemResult(Rng&, std::size_t)>& item) {
  auto start = std::chrono::steady_clock::now();
  auto results = parallel_map(count, cfg.threads, [&](std::size_t i) {
    Rng rng = Rng::for_item(cfg.seed, static_cast<std::uint64_t>(id), i);
    try {
      return item(rng, i);
    } catch (const std::exception& e) {
      return fail(std::string("exception: ") + e.what());
    }
  });
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.checked = count;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].ok) continue;
    if (r.failures++ == 0) r.detail = "item " + std::to_string(i) + ": " + results[i].note;
  }
  r.passed = r.failures == 0;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

const std::vector<BanachRingDesc>& sample_rings() {
  static const std::vector<BanachRingDesc> rings{BanachRingDesc::integers(), BanachRingDesc::integers_trivial(),
                                                 BanachRingDesc::padic(2),   BanachRingDesc::padic(3),
                                                 BanachRingDesc::padic(5),   BanachRingDesc::rationals()};
  return rings;
}

Rational random_scalar(Rng& rng, const BanachRingDesc& ring, long long bound = 20) {
  if (ring.is_lattice()) return Rational(Integer(static_cast<long>(rng.range(-bound, bound))));
  if (ring.kind == RingKind::RationalsPadic) {
    // u * p^k keeps valuations interesting.
    Rational p(static_cast<long>(ring.prime));
    Rational u(Integer(static_cast<long>(rng.range(-bound, bound))));
    long k = static_cast<long>(rng.range(-2, 2));
    return k >= 0 ? Rational(u * pow(p, static_cast<unsigned long>(k))) : Rational(u / pow(p, static_cast<unsigned long>(-k)));
  }
  return rng.rational(bound, 6);
}

Rational random_positive(Rng& rng, long long num, long long den) {
  Rational q(Integer(static_cast<long>(rng.range(1, num))), Integer(static_cast<long>(rng.range(1, den))));
  q.canonicalize();
  return q;
}

Vector random_vector(Rng& rng, const BanachRingDesc& ring, std::size_t n) {
  Vector v(n);
  for (auto& x : v) x = random_scalar(rng, ring);
  return v;
}

WeightedFreeModule random_module(Rng& rng, const BanachRingDesc& ring, std::size_t rank, NormFlavor flavor) {
  std::vector<Rational> w(rank);
  for (auto& x : w) x = random_positive(rng, 10, 4);
  return WeightedFreeModule(ring, w, flavor);
}

TruncatedSeries random_series(Rng& rng, const BanachRingDesc& ring, std::size_t n, unsigned degree,
                              long long bound = 9) {
  TruncatedSeries f(ring, n, degree);
  for (const auto& m : monomials_up_to(n, degree))
    if (rng.coin()) f.set(m, random_scalar(rng, ring, bound));
  return f;
}

// --- 1 -------------------------------------------------------------------

ItemResult vector_axioms(Rng& rng) {
  const BanachRingDesc& ring = rng.pick(sample_rings());
  NormFlavor flavor = ring.non_archimedean && rng.coin() ? NormFlavor::Max : NormFlavor::Sum;
  WeightedFreeModule m = random_module(rng, ring, static_cast<std::size_t>(rng.range(1, 4)), flavor);
  Vector x = random_vector(rng, ring, m.rank());
  Vector y = random_vector(rng, ring, m.rank());
  Rational lambda = random_scalar(rng, ring);
  Rational nx = vector_norm_exact(m, x), ny = vector_norm_exact(m, y);
  Rational nsum = vector_norm_exact(m, add(x, y));
  Rational bound = flavor == NormFlavor::Max ? qmax(nx, ny) : Rational(nx + ny);
  if (nsum > bound) return fail("vector triangle inequality on " + describe(ring));
  if (vector_norm_exact(m, scale(x, lambda)) > ring.mul_constant * abs_exact(ring, lambda) * nx)
    return fail("vector homogeneity on " + describe(ring));
  if ((nx == 0) != is_zero(x)) return fail("vector definiteness");
  return {};
}

ItemResult tensor_axioms(Rng& rng) {
  const BanachRingDesc& ring = rng.pick(sample_rings());
  NormFlavor flavor = ring.non_archimedean && rng.coin() ? NormFlavor::Max : NormFlavor::Sum;
  WeightedFreeModule left = random_module(rng, ring, static_cast<std::size_t>(rng.range(1, 3)), flavor);
  WeightedFreeModule right = random_module(rng, ring, static_cast<std::size_t>(rng.range(1, 3)), flavor);
  auto element = [&] {
    TensorElement t{left, right, {}};
    long terms = static_cast<long>(rng.range(1, 3));
    for (long k = 0; k < terms; ++k)
      t.terms.emplace_back(random_vector(rng, ring, left.rank()), random_vector(rng, ring, right.rank()));
    return t;
  };
  TensorElement x = element(), y = element();
  TensorElement both = x;
  both.terms.insert(both.terms.end(), y.terms.begin(), y.terms.end());
  Rational ux = tensor_norm_upper(x, flavor), uy = tensor_norm_upper(y, flavor);
  Rational bound = flavor == NormFlavor::Max ? qmax(ux, uy) : Rational(ux + uy);
  if (tensor_norm_upper(both, flavor) > bound) return fail("tensor triangle inequality on " + describe(ring));
  Rational lambda = random_scalar(rng, ring);
  TensorElement scaled = x;
  for (auto& [m, n] : scaled.terms) m = scale(m, lambda);
  if (tensor_norm_upper(scaled, flavor) > ring.mul_constant * abs_exact(ring, lambda) * ux)
    return fail("tensor homogeneity on " + describe(ring));
  if (!(tensor_modules(left, right, flavor).rank() == left.rank() * right.rank())) return fail("tensor rank");
  return {};
}

ItemResult series_axioms(Rng& rng) {
  const BanachRingDesc& ring = rng.pick(sample_rings());
  std::size_t n = static_cast<std::size_t>(rng.range(1, 2));
  std::vector<Rational> radii(n);
  for (auto& r : radii) r = random_positive(rng, 6, 3);
  PolyRadius rho(radii);
  TruncatedSeries f = random_series(rng, ring, n, static_cast<unsigned>(rng.range(0, 5)));
  TruncatedSeries g = random_series(rng, ring, n, static_cast<unsigned>(rng.range(0, 5)));
  Rational sf = norm_S(f, rho).upper(), sg = norm_S(g, rho).upper();
  if (norm_S(add(f, g), rho).upper() > sf + sg) return fail("S-norm triangle inequality on " + describe(ring));
  Rational lambda = random_scalar(rng, ring);
  if (norm_S(scale(f, lambda), rho).upper() > abs_exact(ring, lambda) * sf) return fail("S-norm homogeneity");
  if (norm_S(multiply_exact(f, g), rho).upper() > sf * sg) return fail("S-norm submultiplicativity");
  if (ring.non_archimedean) {
    Rational tf = norm_T(f, rho).upper(), tg = norm_T(g, rho).upper();
    if (norm_T(add(f, g), rho).upper() > qmax(tf, tg)) return fail("Gauss norm strong triangle inequality");
    if (tf > sf) return fail("Gauss norm above S-norm");
    Rational tfg = norm_T(multiply_exact(f, g), rho).upper();
    if (ring.kind == RingKind::RationalsPadic ? tfg != tf * tg : tfg > tf * tg) return fail("Gauss norm multiplicativity");
  }
  return {};
}

// --- 6 oracle helpers ------------------------------------------------------

struct IntegerEchelon {
  std::vector<std::vector<long long>> rows;  // row-echelon basis of the lattice
};

IntegerEchelon integer_echelon(std::vector<std::vector<long long>> gens, std::size_t n) {
  IntegerEchelon e;
  std::size_t top = 0;
  for (std::size_t c = 0; c < n && top < gens.size(); ++c) {
    while (true) {
      // Smallest nonzero |entry| in column c among rows >= top becomes the pivot.
      std::size_t best = gens.size();
      for (std::size_t r = top; r < gens.size(); ++r) {
        if (gens[r][c] == 0) continue;
        if (best == gens.size() || std::llabs(gens[r][c]) < std::llabs(gens[best][c])) best = r;
      }
      if (best == gens.size()) break;
      std::swap(gens[top], gens[best]);
      bool clean = true;
      for (std::size_t r = top + 1; r < gens.size(); ++r) {
        long long q = gens[r][c] / gens[top][c];
        for (std::size_t k = 0; k < n; ++k) gens[r][k] -= q * gens[top][k];
        if (gens[r][c] != 0) clean = false;
      }
      if (clean) {
        ++top;
        break;
      }
    }
  }
  gens.resize(top);
  e.rows = std::move(gens);
  return e;
}

bool in_lattice(const IntegerEchelon& e, std::vector<long long> u) {
  const std::size_t n = u.size();
  std::size_t row = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (row < e.rows.size() && e.rows[row][c] != 0) {
      const auto& p = e.rows[row];
      if (u[c] % p[c] != 0) return false;
      long long q = u[c] / p[c];
      for (std::size_t k = 0; k < n; ++k) u[k] -= q * p[k];
      ++row;
    } else if (u[c] != 0) {
      return false;
    }
  }
  return true;
}

}  // namespace

Rational closest_vector_oracle(const std::vector<long long>& weights, const std::vector<std::vector<long long>>& relations,
                               const std::vector<long long>& v) {
  const std::size_t n = v.size();
  IntegerEchelon lattice = integer_echelon(relations, n);
  long long bound = 0;
  for (std::size_t i = 0; i < n; ++i) bound += std::llabs(v[i]) * weights[i];
  long long best = bound;
  std::vector<long long> y(n), diff(n);
  // Enumerate the weighted l1 ball of radius `bound`.
  std::function<void(std::size_t, long long)> walk = [&](std::size_t i, long long used) {
    if (used >= best) return;
    if (i == n) {
      for (std::size_t k = 0; k < n; ++k) diff[k] = y[k] - v[k];
      if (in_lattice(lattice, diff)) best = used;
      return;
    }
    long long reach = (best - used) / weights[i];
    for (long long t = -reach; t <= reach; ++t) {
      y[i] = t;
      walk(i + 1, used + std::llabs(t) * weights[i]);
    }
  };
  walk(0, 0);
  // The loop prunes at `used >= best`, so y = v itself (cost `bound`) needs no visit.
  return Rational(Integer(static_cast<long>(best)));
}

CriterionResult check_norm_axioms(const RunConfig& cfg) {
  CriterionResult r = run_items(1, "norm axioms", "triangle or strong triangle inequality and ||lambda x|| <= C |lambda| ||x|| for vector, projective tensor and series norms",
                                3000, cfg, [](Rng& rng, std::size_t i) {
                                  switch (i % 3) {
                                    case 0: return vector_axioms(rng);
                                    case 1: return tensor_axioms(rng);
                                    default: return series_axioms(rng);
                                  }
                                });
  if (r.seconds >= 60) {
    r.passed = false;
    r.detail = "runtime over 60 s";
  }
  return r;
}

CriterionResult check_cofinality(const RunConfig& cfg) {
  PolyRadius rho({1, 1});
  PolyRadius rho_prime({2, 3});
  Rational constant = cofinality_constant(rho, rho_prime);
  CriterionResult r = run_items(
      2, "cofinality bound", "identity T(rho') -> S(rho) has norm <= max_i rho'_i / (rho'_i - rho_i) over a non-Archimedean field",
      200, cfg, [&](Rng& rng, std::size_t) {
        static const std::vector<unsigned long> primes{2, 3, 5, 7};
        BanachRingDesc ring = BanachRingDesc::padic(rng.pick(primes));
        TruncatedSeries f = random_series(rng, ring, 2, static_cast<unsigned>(rng.range(0, 12)));
        RestrictionCertificate cert = restrict_T_to_S(f, rho_prime, rho);
        if (cert.constant != 2) return fail("constant is " + format_rational(cert.constant));
        if (!cert.holds) return fail("S-norm exceeds 2 * T-norm");
        return ItemResult{};
      });
  if (constant != 2) {
    r.passed = false;
    r.detail = "cofinality constant " + format_rational(constant) + " instead of 2";
  }
  return r;
}

CriterionResult check_laurent_recursion(const RunConfig& cfg) {
  const unsigned degree = 16;
  CriterionResult r = run_items(
      3, "Laurent recursion", "(gX - 1) is injective on C[X] and its inverse follows a_{i+1} = g a_i - t_{i+1}", 200, cfg,
      [&](Rng& rng, std::size_t) {
        BanachRingDesc ring = BanachRingDesc::rationals();
        std::size_t dim = static_cast<std::size_t>(rng.range(1, 3));
        FiniteAlgebra c = dim == 1 ? FiniteAlgebra::scalars(ring) : [&] {
          Vector low(dim);
          for (auto& x : low) x = rng.rational(4, 3);
          return FiniteAlgebra::monic_quotient(ring, low);
        }();
        Vector g(dim);
        for (auto& x : g) x = rng.rational(5, 4);
        CoefficientList t(static_cast<std::size_t>(rng.range(1, degree + 1)));
        for (auto& ti : t) {
          ti = Vector(dim);
          for (auto& x : ti) x = rng.rational(9, 5);
        }
        LaurentSolution sol = laurent_solve(c, g, t, degree);
        if (!sol.verified) return fail("round trip failed");
        if (!sol.kernel_trivial) return fail("nonzero kernel");
        return ItemResult{};
      });
  // Worked instance: (2X - 1) a = -1 gives a_i = 2^i.
  TruncatedSeries t = TruncatedSeries::constant(BanachRingDesc::rationals(), 1, -1);
  TruncatedSeries a = laurent_solve(Rational(2), t, degree);
  bool worked = true;
  for (unsigned i = 0; i <= degree; ++i) worked = worked && a.coefficient({i}) == pow(Rational(2), i);
  if (!worked) {
    r.passed = false;
    r.detail = "(2X - 1) a = -1 does not give a = 1 + 2X + 4X^2 + ...";
  }
  ++r.checked;
  return r;
}

namespace {

struct KoszulInstance {
  std::string label;
  DaggerPresentation algebra;
  LocalizationSpec spec;
};

std::vector<KoszulInstance> koszul_instances() {
  std::vector<KoszulInstance> out;
  for (const BanachRingDesc& ring : {BanachRingDesc::padic(3), BanachRingDesc::rationals()}) {
    DaggerPresentation disk = DaggerPresentation::free_algebra(ring, PolyRadius({1}));
    TruncatedSeries x = TruncatedSeries::variable(ring, 1, 0);
    TruncatedSeries x2 = power_exact(x, 2);
    TruncatedSeries one_plus_x = add(TruncatedSeries::constant(ring, 1, 1), x);
    std::string r = describe(ring);
    out.push_back({"Weierstrass X over " + r, disk, WeierstrassSpec{{x}, {1}}});
    out.push_back({"Weierstrass X^2 over " + r, disk, WeierstrassSpec{{x2}, {Rational(1, 2)}}});
    out.push_back({"Laurent X over " + r, disk, LaurentSpec{{}, {}, {x}, {1}}});
    out.push_back({"Laurent 1+X over " + r, disk, LaurentSpec{{}, {}, {one_plus_x}, {1}}});
    // A quotient algebra: W^1(1)/(X^2 - X).
    DaggerPresentation split = disk;
    split.relations.push_back(subtract(x2, x));
    out.push_back({"Weierstrass X on W/(X^2-X) over " + r, split, WeierstrassSpec{{x}, {1}}});
  }
  return out;
}

}  // namespace

CriterionResult check_koszul(const RunConfig& cfg) {
  auto instances = koszul_instances();
  return run_items(4, "Koszul concentration", "the (X - f) and (gX - 1) Koszul complexes are strict resolutions: H^-1 = 0",
                   instances.size(), cfg, [&](Rng&, std::size_t i) {
                     const auto& inst = instances[i];
                     for (unsigned d : {6u, 8u, 10u}) {
                       KoszulReport rep = koszul_h_check(inst.algebra, inst.spec, d);
                       if (!rep.concentrated)
                         return fail(inst.label + ": H^-1 of dimension " + std::to_string(rep.h_minus1_dimension) +
                                     " at D = " + std::to_string(d));
                     }
                     return ItemResult{};
                   });
}

CriterionResult check_mayer_vietoris(const RunConfig& cfg) {
  const unsigned degree = 8;
  BanachRingDesc ring = BanachRingDesc::padic(3);
  DaggerPresentation disk = DaggerPresentation::free_algebra(ring, PolyRadius({1}));
  TruncatedSeries x = TruncatedSeries::variable(ring, 1, 0);
  MayerVietorisReport report = mayer_vietoris(disk, WeierstrassSpec{{x}, {1}}, LaurentSpec{{}, {}, {x}, {1}}, degree);
  CriterionResult r = run_items(5, "Mayer-Vietoris", "0 -> A -> A_V1 x A_V2 -> A_(V1 n V2) -> 0 is strict exact for a disk and annulus cover",
                                100, cfg, [&](Rng& rng, std::size_t) {
                                  LaurentPolynomial c;
                                  for (long e = -static_cast<long>(degree); e <= static_cast<long>(degree); ++e)
                                    if (rng.coin()) c[e] = random_scalar(rng, ring, 9);
                                  LaurentSplitting s = split_overlap(report, c);
                                  if (!s.verified) return fail("splitting does not reproduce the element");
                                  for (const auto& [e, v] : s.on_v1)
                                    if (e < 0) return fail("power part has a negative exponent");
                                  for (const auto& [e, v] : s.on_v2)
                                    if (e >= 0) return fail("principal part has a non-negative exponent");
                                  return ItemResult{};
                                });
  ++r.checked;
  if (!report.exact) {
    r.passed = false;
    r.detail = "truncated sequence is not exact";
  }
  return r;
}

CriterionResult check_residue_oracle(const RunConfig& cfg) {
  return run_items(6, "residue norm oracle", "the residue norm of a cokernel is the weighted distance from v to the relation lattice",
                   100, cfg, [](Rng& rng, std::size_t) {
                     std::size_t n = static_cast<std::size_t>(rng.range(1, 3));
                     std::size_t k = static_cast<std::size_t>(rng.range(1, 3));
                     std::vector<long long> weights(n), v(n);
                     std::vector<std::vector<long long>> rel(k, std::vector<long long>(n));
                     for (auto& w : weights) w = rng.range(1, 3);
                     for (auto& x : v) x = rng.range(-6, 6);
                     for (auto& col : rel)
                       for (auto& x : col) x = rng.range(-10, 10);
                     std::vector<Rational> wq;
                     for (auto w : weights) wq.push_back(Rational(Integer(static_cast<long>(w))));
                     BanachRingDesc ring = BanachRingDesc::integers();
                     WeightedFreeModule ambient(ring, wq, NormFlavor::Sum);
                     Matrix m(n, k);
                     for (std::size_t j = 0; j < k; ++j)
                       for (std::size_t i = 0; i < n; ++i) m(i, j) = Rational(Integer(static_cast<long>(rel[j][i])));
                     ModuleMap relations(WeightedFreeModule(ring, std::vector<Rational>(k, 1), NormFlavor::Sum), ambient, m);
                     Vector vq;
                     for (auto x : v) vq.push_back(Rational(Integer(static_cast<long>(x))));
                     NormValue got = residue_norm(cokernel(relations), vq, 64);
                     Rational want = closest_vector_oracle(weights, rel, v);
                     if (!got.is_exact() || got.lo() != want)
                       return fail("residue norm [" + format_rational(got.lo()) + ", " +
                                   (got.hi() ? format_rational(*got.hi()) : std::string("inf")) + "] vs oracle " +
                                   format_rational(want));
                     return ItemResult{};
                   });
}

CriterionResult check_shilov(const RunConfig& cfg) {
  const BanachRingDesc z = BanachRingDesc::integers();
  const PolyRadius rho({1});
  TruncatedSeries one_plus_x = add(TruncatedSeries::constant(z, 1, 1), TruncatedSeries::variable(z, 1, 0));
  GlobalSupReport g = global_sup(one_plus_x, rho, 50, cfg.grid, cfg.threads);
  CriterionResult r = run_items(7, "spectral norm and Shilov boundary", "the spectral seminorm of Z<X> is attained at the Archimedean place; |f|_sup = inf_n ||f^n||^(1/n)",
                                50, cfg, [&](Rng& rng, std::size_t) {
                                  TruncatedSeries f(z, 1, 6);
                                  while (f.coefficients().empty()) f = random_series(rng, z, 1, 6);
                                  NormValue arch = fiber_sup(f, Place::archimedean(1), rho);
                                  for (unsigned long p = 2; p <= 50; ++p) {
                                    if (!is_prime(p)) continue;
                                    NormValue padic = fiber_sup(f, Place::padic(p, 1), rho);
                                    if (!certainly_le(padic, arch)) return fail(std::to_string(p) + "-adic fiber above the Archimedean one");
                                  }
                                  GlobalSupReport global = global_sup(f, rho, 50, 1);
                                  PowersReport powers = spectral_via_powers(f, rho, 8);
                                  for (std::size_t n = 0; n < powers.running.size(); ++n) {
                                    if (n > 0 && powers.running[n].upper() > powers.running[n - 1].upper())
                                      return fail("power sequence increases");
                                    if (powers.raw[n].upper() < global.value.lo()) return fail("power bound below the global sup");
                                  }
                                  return ItemResult{};
                                });
  ++r.checked;
  bool attained = g.value == NormValue(Rational(2)) && g.per_place[g.argmax].place.kind == PlaceKind::Archimedean;
  if (!attained) {
    r.passed = false;
    r.detail = "global sup of 1+X is not [2,2] at the Archimedean place";
  }
  return r;
}

CriterionResult check_pi_adjunction(const RunConfig& cfg) {
  static const std::vector<unsigned long> primes{2, 3, 5};
  CriterionResult r = run_items(8, "non-Archimedification adjunction", "Hom^{<=r}(pi V, W) = Hom^{<=r}(V, W) for non-Archimedean W, and pi is monoidal",
                                500 + 27, cfg, [](Rng& rng, std::size_t i) {
                                  BanachRingDesc ring = BanachRingDesc::padic(rng.pick(primes));
                                  Rational p(static_cast<long>(ring.prime));
                                  auto power_weight = [&] {
                                    long k = static_cast<long>(rng.range(-2, 2));
                                    return k >= 0 ? pow(p, static_cast<unsigned long>(k)) : Rational(1 / pow(p, static_cast<unsigned long>(-k)));
                                  };
                                  if (i >= 500) {
                                    // Every pair of ranks (1..3)^2, three weight draws each.
                                    std::size_t j = i - 500;
                                    std::size_t a = j / 9 % 3 + 1, b = j / 3 % 3 + 1;
                                    std::vector<Rational> wu(a), wv(b);
                                    for (auto& w : wu) w = random_positive(rng, 12, 6);
                                    for (auto& w : wv) w = random_positive(rng, 12, 6);
                                    PiTensorReport rep = pi_tensor_check(WeightedFreeModule(ring, wu, NormFlavor::Sum),
                                                                         WeightedFreeModule(ring, wv, NormFlavor::Sum));
                                    if (!rep.confirmed()) return fail("pi does not intertwine the tensor products");
                                    return ItemResult{};
                                  }
                                  std::size_t n = static_cast<std::size_t>(rng.range(1, 4));
                                  std::size_t m = static_cast<std::size_t>(rng.range(1, 4));
                                  std::vector<Rational> wv(n), ww(m);
                                  for (auto& w : wv) w = power_weight();
                                  for (auto& w : ww) w = power_weight();
                                  Matrix a(m, n);
                                  for (std::size_t row = 0; row < m; ++row)
                                    for (std::size_t col = 0; col < n; ++col) a(row, col) = random_scalar(rng, ring, 6);
                                  std::vector<Vector> samples;
                                  for (int s = 0; s < 4; ++s) samples.push_back(random_vector(rng, ring, n));
                                  WeightedFreeModule v(ring, wv, NormFlavor::Sum);
                                  WeightedFreeModule w(ring, ww, NormFlavor::Max);
                                  AdjunctionReport rep = check_adjunction(v, w, power_weight(), {a}, samples);
                                  if (!rep.confirmed()) return fail("operator norms differ between V and pi(V)");
                                  ModuleMap f(v, WeightedFreeModule(ring, ww, NormFlavor::Sum), a);
                                  if (!pi_commutes_with_cokernel(f)) return fail("pi does not commute with the cokernel");
                                  return ItemResult{};
                                });
  return r;
}

CriterionResult check_base_change(const RunConfig& cfg) {
  const BanachRingDesc z = BanachRingDesc::integers();
  const BanachRingDesc q2 = BanachRingDesc::padic(2);
  const BanachRingDesc reals = BanachRingDesc::rationals();
  // Oracle for |c|_2 by repeated halving.
  auto abs2 = [](const Rational& c) {
    if (c == 0) return Rational(0);
    Integer num = abs(c).get_num();
    Rational value = 1;
    while (num % 2 == 0) {
      num /= 2;
      value /= 2;
    }
    return value;
  };
  CriterionResult r = run_items(
      9, "base change", "Z<X>-presentations base-change term by term to Q_p and to the reals", 101, cfg, [&](Rng& rng, std::size_t i) {
        if (i == 100) {
          TruncatedSeries two_x = TruncatedSeries::monomial(z, {1}, 2);
          if (norm_S(base_change(two_x, q2), PolyRadius({1})) != NormValue(Rational(1, 2))) return fail("||2X|| over Q_2 is not 1/2");
          if (norm_S(base_change(two_x, reals), PolyRadius({1})) != NormValue(Rational(2))) return fail("||2X|| over R is not 2");
          return ItemResult{};
        }
        std::size_t n = static_cast<std::size_t>(rng.range(1, 2));
        std::vector<Rational> radii(n);
        for (auto& x : radii) x = random_positive(rng, 4, 3);
        DaggerPresentation a = DaggerPresentation::free_algebra(z, PolyRadius(radii));
        for (int k = 0; k < 2; ++k) a.relations.push_back(random_series(rng, z, n, static_cast<unsigned>(rng.range(1, 4)), 12));
        for (const BanachRingDesc& target : {q2, reals}) {
          DaggerPresentation b = base_change(a, target);
          if (!(b.ring == target) || b.relations.size() != a.relations.size() || !(b.rho == a.rho)) return fail("presentation shape changed");
          for (std::size_t k = 0; k < a.relations.size(); ++k) {
            const TruncatedSeries& src = a.relations[k];
            const TruncatedSeries& dst = b.relations[k];
            if (src.coefficients() != dst.coefficients()) return fail("generator coefficients changed");
            Rational want = 0;
            for (const auto& [index, c] : src.coefficients()) {
              Rational abs_c = target == q2 ? abs2(c) : abs(c);
              want += abs_c * radius_power(a.rho, index);
              TruncatedSeries mono = TruncatedSeries::monomial(z, index, c);
              if (norm_S(base_change(mono, target), a.rho) != NormValue(abs_c * radius_power(a.rho, index)))
                return fail("monomial norm does not transform exactly");
            }
            if (norm_S(dst, a.rho) != NormValue(want)) return fail("S-norm over " + describe(target));
            if (target == reals && norm_S(dst, a.rho) != norm_S(src, a.rho)) return fail("norm over R differs from Z_inf");
          }
        }
        return ItemResult{};
      });
  return r;
}

std::vector<CriterionResult> run_property_suite(const RunConfig& cfg) {
  return {check_norm_axioms(cfg),     check_cofinality(cfg),     check_laurent_recursion(cfg),
          check_koszul(cfg),          check_mayer_vietoris(cfg), check_residue_oracle(cfg),
          check_shilov(cfg),          check_pi_adjunction(cfg),  check_base_change(cfg)};
}

json suite_report(const RunConfig& cfg, const std::vector<CriterionResult>& results) {
  json criteria = json::array();
  bool all = true;
  for (const auto& r : results) {
    criteria.push_back(json{{"id", r.id},
                            {"name", r.name},
                            {"anchor", r.anchor},
                            {"verdict", r.passed ? "pass" : "fail"},
                            {"checked", r.checked},
                            {"failures", r.failures},
                            {"detail", r.detail}});
    all = all && r.passed;
  }
  return json{{"schema", "dagger-report/1"},
              {"command", "selftest"},
              {"seed", cfg.seed},
              {"verdict", all ? "pass" : "fail"},
              {"criteria", criteria}};
}

CriterionResult check_determinism(const RunConfig& cfg, const std::vector<CriterionResult>& first) {
  auto start = std::chrono::steady_clock::now();
  RunConfig other = cfg;
  other.threads = cfg.threads == 1 ? max_threads() : 1;
  std::string a = suite_report(cfg, first).dump(2);
  std::string b = suite_report(other, run_property_suite(other)).dump(2);
  CriterionResult r;
  r.id = 10;
  r.name = "determinism";
  r.anchor = "reports depend only on the seed, not on the thread count";
  r.checked = 1;
  r.passed = a == b;
  r.failures = r.passed ? 0 : 1;
  r.detail = r.passed ? "single-thread and multi-thread reports are byte-identical" : "reports differ between thread counts";
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_selftest(const RunConfig& cfg) {
  std::vector<CriterionResult> results = run_property_suite(cfg);
  results.push_back(check_determinism(cfg, results));
  return results;
}

}  // namespace dagger::cli
