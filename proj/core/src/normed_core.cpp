#include "dagger/normed_core.hpp"

#include <algorithm>
#include <functional>

namespace dagger {

const char* to_string(NormFlavor flavor) { return flavor == NormFlavor::Sum ? "sum" : "max"; }

WeightedFreeModule::WeightedFreeModule(BanachRingDesc ring, std::vector<Rational> weights, NormFlavor flavor)
    : ring_(std::move(ring)), weights_(std::move(weights)), flavor_(flavor) {
  ring_.validate();
  if (flavor_ == NormFlavor::Max && !ring_.non_archimedean) {
    throw Error(ErrorCode::FlavorMismatch, "max-norm module over Archimedean ring " + describe(ring_));
  }
  for (const auto& w : weights_) {
    if (w <= 0) throw Error(ErrorCode::InvalidArgument, "module weights must be positive");
  }
}

Rational vector_norm_exact(const WeightedFreeModule& m, const Vector& v) {
  if (v.size() != m.rank()) {
    throw Error(ErrorCode::DimensionMismatch,
                "vector of length " + std::to_string(v.size()) + " in rank " + std::to_string(m.rank()) + " module");
  }
  Rational total = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational term = abs_exact(m.ring(), v[i]) * m.weights()[i];
    if (m.flavor() == NormFlavor::Sum) total += term;
    else if (term > total) total = term;
  }
  return total;
}

NormValue vector_norm(const WeightedFreeModule& m, const Vector& v) { return NormValue(vector_norm_exact(m, v)); }

ModuleMap::ModuleMap(WeightedFreeModule source, WeightedFreeModule target, Matrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (!(source_.ring() == target_.ring())) throw Error(ErrorCode::InvalidArgument, "source and target over different rings");
  if (matrix_.rows() != target_.rank() || matrix_.cols() != source_.rank()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix is " + std::to_string(matrix_.rows()) + "x" +
                                                  std::to_string(matrix_.cols()) + ", expected " +
                                                  std::to_string(target_.rank()) + "x" + std::to_string(source_.rank()));
  }
  for (std::size_t i = 0; i < matrix_.rows(); ++i)
    for (std::size_t j = 0; j < matrix_.cols(); ++j)
      if (!source_.ring().contains(matrix_(i, j)))
        throw Error(ErrorCode::NonElement, "matrix entry " + format_rational(matrix_(i, j)) + " not in ring");
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  if (!(g.source() == f.target())) throw Error(ErrorCode::DimensionMismatch, "maps are not composable");
  return ModuleMap(f.source(), g.target(), g.matrix() * f.matrix());
}

NormValue operator_norm(const ModuleMap& f) {
  const auto& src = f.source();
  const auto& tgt = f.target();
  const Rational& c = src.ring().mul_constant;
  Rational column_max = 0;
  for (std::size_t i = 0; i < src.rank(); ++i) {
    Rational r = vector_norm_exact(tgt, f.matrix().column(i)) / src.weights()[i];
    column_max = std::max(column_max, r);
  }
  bool coproduct_exact = src.flavor() == NormFlavor::Sum || tgt.flavor() == NormFlavor::Max || tgt.rank() <= 1;
  if (coproduct_exact) return NormValue(column_max, column_max * c);
  Rational row_bound = 0;
  for (std::size_t j = 0; j < tgt.rank(); ++j) {
    Rational row_max = 0;
    for (std::size_t i = 0; i < src.rank(); ++i)
      row_max = qmax(row_max, abs_exact(src.ring(), f.matrix()(j, i)) / src.weights()[i]);
    row_bound += tgt.weights()[j] * row_max;
  }
  return NormValue(column_max, std::max(column_max, row_bound) * c);
}

PresentedModule free_presentation(const WeightedFreeModule& m) { return PresentedModule{m, std::nullopt, std::nullopt, {}}; }

namespace {

// Enumerates integer points of the box prod [center_i - radius_i, center_i + radius_i].
void for_each_box_point(const std::vector<Integer>& center, const std::vector<Integer>& radius,
                        const std::function<void(const std::vector<Integer>&)>& visit) {
  std::vector<Integer> k(center.size());
  for (std::size_t i = 0; i < k.size(); ++i) k[i] = center[i] - radius[i];
  if (k.empty()) {
    visit(k);
    return;
  }
  while (true) {
    visit(k);
    std::size_t i = 0;
    while (i < k.size()) {
      if (k[i] < center[i] + radius[i]) {
        ++k[i];
        break;
      }
      k[i] = center[i] - radius[i];
      ++i;
    }
    if (i == k.size()) return;
  }
}

Integer round_nearest(const Rational& q) {
  Integer twice = 2 * q.get_num() + q.get_den();
  Integer den = 2 * q.get_den();
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), twice.get_mpz_t(), den.get_mpz_t());
  return r;
}

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational min_weight(const WeightedFreeModule& m) {
  return m.rank() == 0 ? Rational(0) : *std::min_element(m.weights().begin(), m.weights().end());
}

WeightedFreeModule unit_free(const BanachRingDesc& ring, std::size_t rank, NormFlavor flavor) {
  return WeightedFreeModule(ring, std::vector<Rational>(rank, Rational(1)), flavor);
}

}  // namespace

NormValue residue_norm(const PresentedModule& m, const Vector& v, unsigned long search_bound) {
  if (!m.is_cokernel()) throw Error(ErrorCode::NotCokernelForm, "residue norm needs a cokernel presentation");
  const auto& ambient = m.ambient;
  if (!ambient.ring().is_lattice()) {
    throw Error(ErrorCode::UnsupportedRing, "residue norm enumeration needs integer scalars, got " + describe(ambient.ring()));
  }
  if (v.size() != ambient.rank()) throw Error(ErrorCode::DimensionMismatch, "class representative length");

  ColumnHermite hermite = column_hermite(m.relations->matrix());
  const Matrix basis = lll_reduce(hermite.basis);
  const std::size_t r = hermite.rank;
  Rational direct = vector_norm_exact(ambient, v);
  if (r == 0) return NormValue(direct);

  // Left inverse (B^T B)^{-1} B^T of the full-column-rank lattice basis.
  Matrix bt = basis.transpose();
  Matrix left_inverse = *inverse(bt * basis) * bt;
  Vector coords = left_inverse * v;

  // Membership of v in the lattice: coordinates integral and reproduce v.
  bool in_lattice = std::all_of(coords.begin(), coords.end(), [](const Rational& q) { return is_integer(q); }) &&
                    basis * coords == v;
  if (in_lattice) return NormValue(Rational(0));

  std::vector<Integer> center(r);
  for (std::size_t i = 0; i < r; ++i) center[i] = round_nearest(-coords[i]);
  auto candidate = [&](const std::vector<Integer>& k) {
    Vector w = v;
    for (std::size_t j = 0; j < r; ++j) {
      if (k[j] == 0) continue;
      for (std::size_t i = 0; i < w.size(); ++i) w[i] += basis(i, j) * Rational(k[j]);
    }
    return w;
  };
  Rational start = vector_norm_exact(ambient, candidate(center));

  // Any w = v + B k with ||w|| <= h has |w_j| <= h / wt_j, hence
  // |k_i - center_i| <= |coords_i + center_i| + sum_j |L_ij| h / wt_j.
  const bool magnitude_bounded = ambient.ring().kind == RingKind::IntegersArchimedean;
  auto needed_radius = [&](const Rational& h, std::size_t i) {
    Rational bound = abs(Rational(coords[i] + Rational(center[i])));
    for (std::size_t j = 0; j < ambient.rank(); ++j) bound += abs(left_inverse(i, j)) * h / ambient.weights()[j];
    return floor_of(bound);
  };

  Integer cap(search_bound);
  std::vector<Integer> radius(r, cap);
  if (magnitude_bounded) {
    for (std::size_t i = 0; i < r; ++i) radius[i] = std::min(cap, needed_radius(start, i));
  }
  Rational best = std::min(start, direct);
  for_each_box_point(center, radius, [&](const std::vector<Integer>& k) {
    Rational n = vector_norm_exact(ambient, candidate(k));
    if (n < best) best = n;
  });

  Rational floor_value = min_weight(ambient);
  bool certified = best == floor_value;
  if (!certified && magnitude_bounded) {
    certified = true;
    for (std::size_t i = 0; i < r; ++i) {
      if (needed_radius(best, i) > radius[i]) certified = false;
    }
  }
  return certified ? NormValue(best) : NormValue(std::min(floor_value, best), best);
}

PresentedModule kernel(const ModuleMap& f) {
  PresentedModule out{f.source(), std::nullopt, f, {}};
  if (f.source().ring().is_lattice()) {
    ColumnHermite hermite = column_hermite(f.matrix());
    for (std::size_t j = hermite.rank; j < f.source().rank(); ++j) {
      out.kernel_basis.push_back(primitive_integer(hermite.transform.column(j)));
    }
  } else {
    for (const auto& v : nullspace(f.matrix())) out.kernel_basis.push_back(primitive_integer(v));
  }
  return out;
}

PresentedModule cokernel(const ModuleMap& f) { return PresentedModule{f.target(), f, std::nullopt, {}}; }

std::optional<std::vector<CosetClass>> finite_quotient_classes(const PresentedModule& m, unsigned long search_bound) {
  if (!m.is_cokernel()) throw Error(ErrorCode::NotCokernelForm, "quotient classes need a cokernel presentation");
  if (!m.ambient.ring().is_lattice()) throw Error(ErrorCode::UnsupportedRing, "finite quotients are enumerated over Z");
  const std::size_t n = m.ambient.rank();
  ColumnHermite hermite = column_hermite(m.relations->matrix());
  if (hermite.rank < n) return std::nullopt;
  // Full rank: lower-triangular basis with positive diagonal d_i; representatives 0 <= x_i < d_i.
  std::vector<Integer> diag(n);
  Integer count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = hermite.basis(i, i).get_num();
    count *= diag[i];
  }
  if (count > 100000) throw Error(ErrorCode::InvalidArgument, "quotient has more than 100000 classes");
  std::vector<CosetClass> classes;
  std::vector<Integer> x(n, 0);
  while (true) {
    Vector rep(n);
    for (std::size_t i = 0; i < n; ++i) rep[i] = x[i];
    classes.push_back({rep, residue_norm(m, rep, search_bound)});
    std::size_t i = 0;
    while (i < n) {
      if (x[i] + 1 < diag[i]) {
        ++x[i];
        break;
      }
      x[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  return classes;
}

StrictnessVerdict check_strictness(const ModuleMap& f, unsigned long search_bound,
                                   std::optional<StrictWithConstants> candidate) {
  const auto& src = f.source();
  PresentedModule ker = kernel(f);
  PresentedModule coimage = free_presentation(src);
  bool trivial_kernel = ker.kernel_basis.empty();
  if (!trivial_kernel) {
    Matrix inclusion = Matrix::from_columns(ker.kernel_basis, src.rank());
    coimage = cokernel(ModuleMap(unit_free(src.ring(), ker.kernel_basis.size(), src.flavor()), src, inclusion));
  }

  std::optional<Rational> lowest;
  std::optional<Rational> highest;
  std::vector<Integer> center(src.rank(), 0);
  std::vector<Integer> radius(src.rank(), Integer(search_bound));
  std::optional<StrictnessVerdict> early;
  for_each_box_point(center, radius, [&](const std::vector<Integer>& point) {
    if (early) return;
    auto lead = std::find_if(point.begin(), point.end(), [](const Integer& z) { return z != 0; });
    if (lead == point.end() || *lead < 0) return;  // v and -v give the same ratio
    Vector v(point.begin(), point.end());
    Vector image = f.apply(v);
    if (is_zero(image)) return;
    NormValue coim;
    if (trivial_kernel) {
      coim = vector_norm(src, v);
    } else {
      try {
        coim = residue_norm(coimage, v, search_bound);
      } catch (const Error& e) {
        early = Inconclusive{e.what()};
        return;
      }
    }
    if (!coim.is_exact()) {
      early = Inconclusive{"coimage norm not certified within the search bound"};
      return;
    }
    Rational ratio = vector_norm_exact(f.target(), image) / coim.lo();
    if (candidate && (ratio < candidate->lower || ratio > candidate->upper)) {
      early = NotStrictWitness{v, ratio};
      return;
    }
    if (!lowest || ratio < *lowest) lowest = ratio;
    if (!highest || ratio > *highest) highest = ratio;
  });
  if (early) return *early;
  Rational one = 1;
  return StrictWithConstants{lowest ? std::min(one, *lowest) : one, highest ? std::max(one, *highest) : one};
}

WeightedFreeModule direct_sum(const std::vector<WeightedFreeModule>& modules, NormFlavor flavor,
                              const BanachRingDesc& ring_if_empty) {
  if (modules.empty()) return WeightedFreeModule::zero(ring_if_empty, flavor);
  std::vector<Rational> weights;
  for (const auto& m : modules) {
    if (!(m.ring() == modules.front().ring())) throw Error(ErrorCode::InvalidArgument, "direct sum over different rings");
    weights.insert(weights.end(), m.weights().begin(), m.weights().end());
  }
  return WeightedFreeModule(modules.front().ring(), std::move(weights), flavor);
}

StandardProjective standard_projective(const PresentedModule& m, const std::vector<Vector>& sample,
                                       unsigned long search_bound) {
  std::vector<Rational> weights;
  std::vector<NormValue> norms;
  for (const auto& element : sample) {
    NormValue n = m.is_cokernel() ? residue_norm(m, element, search_bound) : vector_norm(m.ambient, element);
    if (n.upper() == 0) throw Error(ErrorCode::ZeroSampleElement, "sampled element has zero norm");
    weights.push_back(n.upper());
    norms.push_back(n);
  }
  WeightedFreeModule free(m.ambient.ring(), weights, m.ambient.flavor());
  ModuleMap kappa(free, m.ambient, Matrix::from_columns(sample, m.ambient.rank()));
  NormValue kappa_norm(Rational(0));
  if (m.is_cokernel()) {
    Rational lo = 0;
    Rational hi = 0;
    for (std::size_t i = 0; i < norms.size(); ++i) {
      lo = qmax(lo, norms[i].lo() / weights[i]);
      hi = qmax(hi, norms[i].upper() / weights[i]);
    }
    kappa_norm = NormValue(lo, hi * m.ambient.ring().mul_constant);
  } else {
    kappa_norm = operator_norm(kappa);
  }
  return {std::move(free), std::move(kappa), kappa_norm};
}

}  // namespace dagger
