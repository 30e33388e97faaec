#include "dagger/tensor.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace dagger {

WeightedFreeModule tensor_modules(const WeightedFreeModule& m, const WeightedFreeModule& n, NormFlavor flavor) {
  if (!(m.ring() == n.ring())) throw Error(ErrorCode::InvalidArgument, "tensor factors over different rings");
  std::vector<Rational> weights;
  weights.reserve(m.rank() * n.rank());
  for (const auto& w : m.weights())
    for (const auto& v : n.weights()) weights.push_back(w * v);
  return WeightedFreeModule(m.ring(), std::move(weights), flavor);
}

Vector TensorElement::coordinates() const {
  Vector x(left.rank() * right.rank());
  for (const auto& [m, n] : terms) {
    if (m.size() != left.rank() || n.size() != right.rank()) throw Error(ErrorCode::DimensionMismatch, "tensor term shape");
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      for (std::size_t j = 0; j < n.size(); ++j) x[i * n.size() + j] += m[i] * n[j];
    }
  }
  return x;
}

namespace {

Rational combine(NormFlavor flavor, const Rational& a, const Rational& b) {
  return flavor == NormFlavor::Sum ? Rational(a + b) : std::max(a, b);
}

Rational term_cost(const TensorElement& x, const Vector& m, const Vector& n) {
  return vector_norm_exact(x.left, m) * vector_norm_exact(x.right, n) * x.left.ring().mul_constant;
}

using Key = std::vector<long long>;

struct Entry {
  Rational cost;
  std::vector<std::pair<Vector, Vector>> terms;
};

void enumerate_vectors(std::size_t rank, long long bound, const std::function<void(const std::vector<long long>&)>& visit) {
  std::vector<long long> v(rank, -bound);
  if (rank == 0) return;
  while (true) {
    visit(v);
    std::size_t i = 0;
    while (i < rank) {
      if (v[i] < bound) {
        ++v[i];
        break;
      }
      v[i] = -bound;
      ++i;
    }
    if (i == rank) return;
  }
}

Vector to_vector(const std::vector<long long>& v) {
  Vector out;
  out.reserve(v.size());
  for (long long c : v) out.emplace_back(static_cast<long>(c));
  return out;
}

// Candidate values of phi_i with |phi_i| <= w_i, extreme points first.
std::vector<Rational> dual_candidates(const BanachRingDesc& ring, const Rational& w) {
  switch (ring.kind) {
    case RingKind::IntegersArchimedean:
    case RingKind::RationalsArchimedean:
      return {w, Rational(-w)};
    case RingKind::IntegersTrivial:
      if (w >= 1) return {Rational(1), Rational(0)};
      return {Rational(0)};
    case RingKind::RationalsPadic: {
      // largest p^{-k} <= w, realised by p^k.
      Rational p(static_cast<long>(ring.prime));
      Rational value = 1;
      Rational element = 1;
      while (value > w) {
        value /= p;
        element *= p;
      }
      while (value * p <= w) {
        value *= p;
        element /= p;
      }
      std::vector<Rational> out;
      unsigned long units = std::min<unsigned long>(ring.prime - 1, 3);
      for (unsigned long u = 1; u <= units; ++u) out.push_back(element * Rational(static_cast<long>(u)));
      out.emplace_back(0);
      return out;
    }
  }
  return {Rational(0)};
}

void enumerate_functionals(const WeightedFreeModule& m, const std::function<void(const Vector&)>& visit) {
  std::vector<std::vector<Rational>> choices;
  for (const auto& w : m.weights()) choices.push_back(dual_candidates(m.ring(), w));
  Vector phi(m.rank());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == m.rank()) {
      visit(phi);
      return;
    }
    for (const auto& c : choices[i]) {
      phi[i] = c;
      rec(i + 1);
    }
  };
  rec(0);
}

}  // namespace

Rational tensor_norm_upper(const TensorElement& x, NormFlavor flavor) {
  Rational total = 0;
  for (const auto& [m, n] : x.terms) total = combine(flavor, total, term_cost(x, m, n));
  return total;
}

TensorNormCertificate tensor_norm_certified(const TensorElement& x, NormFlavor flavor, unsigned long coeff_bound,
                                            unsigned long term_bound) {
  if (flavor == NormFlavor::Max && !x.left.ring().non_archimedean) {
    throw Error(ErrorCode::FlavorMismatch, "max tensor norm over Archimedean ring");
  }
  Vector target = x.coordinates();
  TensorNormCertificate cert;
  if (is_zero(target)) {
    cert.value = NormValue(Rational(0));
    return cert;
  }
  if (!std::all_of(target.begin(), target.end(), [](const Rational& q) { return is_integer(q); })) {
    throw Error(ErrorCode::UnsupportedRing, "representation search needs integral tensor coordinates");
  }

  // Dual lower bound.
  Rational lower = 0;
  const std::size_t rn = x.right.rank();
  enumerate_functionals(x.left, [&](const Vector& phi) {
    enumerate_functionals(x.right, [&](const Vector& psi) {
      Rational value = 0;
      for (std::size_t i = 0; i < phi.size(); ++i) {
        if (phi[i] == 0) continue;
        for (std::size_t j = 0; j < rn; ++j) value += target[i * rn + j] * phi[i] * psi[j];
      }
      ++cert.functionals_tried;
      Rational a = x.left.ring().kind == RingKind::IntegersTrivial ? Rational(value == 0 ? 0 : 1)
                   : x.left.ring().kind == RingKind::RationalsPadic ? abs_exact(x.left.ring(), value)
                                                                     : abs(value);
      lower = std::max(lower, a);
    });
  });

  // Single-term table: tensor coordinates -> cheapest (m, n).
  const long long cb = static_cast<long long>(coeff_bound);
  std::map<Key, Entry> single;
  enumerate_vectors(x.left.rank(), cb, [&](const std::vector<long long>& m) {
    auto lead = std::find_if(m.begin(), m.end(), [](long long c) { return c != 0; });
    if (lead == m.end() || *lead < 0) return;
    Vector mv = to_vector(m);
    Rational mnorm = vector_norm_exact(x.left, mv);
    enumerate_vectors(rn, cb, [&](const std::vector<long long>& n) {
      if (std::all_of(n.begin(), n.end(), [](long long c) { return c == 0; })) return;
      Key key(m.size() * n.size());
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < n.size(); ++j) key[i * n.size() + j] = m[i] * n[j];
      Vector nv = to_vector(n);
      Rational cost = mnorm * vector_norm_exact(x.right, nv) * x.left.ring().mul_constant;
      auto it = single.find(key);
      if (it == single.end() || cost < it->second.cost) single[key] = Entry{cost, {{mv, nv}}};
    });
  });

  Key goal(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) goal[i] = target[i].get_num().get_si();

  std::optional<Entry> best;
  auto offer = [&](const Entry& e) {
    if (!best || e.cost < best->cost) best = e;
  };
  if (term_bound >= 1) {
    if (auto it = single.find(goal); it != single.end()) offer(it->second);
  }
  std::map<Key, Entry> layer = single;
  for (unsigned long t = 1; t < term_bound && !layer.empty(); ++t) {
    // Close with one more term, then extend the layer (pruned by the incumbent).
    for (const auto& [state, entry] : layer) {
      Key rest(goal.size());
      for (std::size_t i = 0; i < goal.size(); ++i) rest[i] = goal[i] - state[i];
      auto it = single.find(rest);
      if (it == single.end()) continue;
      Entry e{combine(flavor, entry.cost, it->second.cost), entry.terms};
      e.terms.insert(e.terms.end(), it->second.terms.begin(), it->second.terms.end());
      offer(e);
    }
    if (t + 1 >= term_bound) break;
    std::map<Key, Entry> next;
    for (const auto& [state, entry] : layer) {
      if (best && entry.cost >= best->cost) continue;
      for (const auto& [step, step_entry] : single) {
        Rational cost = combine(flavor, entry.cost, step_entry.cost);
        if (best && cost >= best->cost) continue;
        Key s(state.size());
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = state[i] + step[i];
        auto it = next.find(s);
        if (it != next.end() && it->second.cost <= cost) continue;
        Entry e{cost, entry.terms};
        e.terms.insert(e.terms.end(), step_entry.terms.begin(), step_entry.terms.end());
        next[s] = std::move(e);
      }
    }
    layer = std::move(next);
  }

  if (best) {
    cert.value = NormValue(std::min(lower, best->cost), best->cost);
    cert.best_representation = best->terms;
  } else {
    cert.value = NormValue::unbounded(lower);
  }
  return cert;
}

ScalarContractionRecord scalar_contraction_bound(const Rational& lambda, const TensorElement& x, NormFlavor flavor) {
  ScalarContractionRecord rec;
  rec.lambda_abs = abs_exact(x.left.ring(), lambda);
  rec.bound_x = tensor_norm_upper(x, flavor);
  TensorElement scaled = x;
  for (auto& [m, n] : scaled.terms) m = scale(m, lambda);
  rec.bound_scaled = tensor_norm_upper(scaled, flavor);
  rec.holds = rec.bound_scaled <= rec.lambda_abs * rec.bound_x * x.left.ring().mul_constant;
  return rec;
}

Vector NormedAlgebra::multiply(const Vector& x, const Vector& y) const {
  if (x.size() != dim() || y.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "algebra element length");
  Vector out(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (y[j] == 0) continue;
      Rational c = x[i] * y[j];
      const Vector& e = table[i][j];
      for (std::size_t k = 0; k < dim(); ++k)
        if (e[k] != 0) out[k] += c * e[k];
    }
  }
  return out;
}

Rational NormedAlgebra::mul_constant() const {
  Rational c = 0;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j)
      c = qmax(c, vector_norm_exact(module, table[i][j]) / (module.weights()[i] * module.weights()[j]));
  return c * module.ring().mul_constant;
}

NormedAlgebra NormedAlgebra::scalars(const BanachRingDesc& ring) {
  return NormedAlgebra{WeightedFreeModule(ring, {Rational(1)}, NormFlavor::Sum), {{Vector{Rational(1)}}}};
}

NormedAlgebra NormedAlgebra::truncated_polynomials(const BanachRingDesc& ring, unsigned degree, const Rational& rho,
                                                   NormFlavor flavor) {
  const std::size_t d = degree + 1;
  std::vector<Rational> weights;
  for (std::size_t i = 0; i < d; ++i) weights.push_back(pow(rho, i));
  std::vector<std::vector<Vector>> table(d, std::vector<Vector>(d, Vector(d)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; i + j < d; ++j) table[i][j][i + j] = 1;
  return NormedAlgebra{WeightedFreeModule(ring, std::move(weights), flavor), std::move(table)};
}

NormedAlgebra tensor_algebras(const NormedAlgebra& a, const NormedAlgebra& b, NormFlavor flavor) {
  WeightedFreeModule module = tensor_modules(a.module, b.module, flavor);
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  std::vector<std::vector<Vector>> table(da * db, std::vector<Vector>(da * db, Vector(da * db)));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t k = 0; k < da; ++k)
        for (std::size_t l = 0; l < db; ++l) {
          const Vector& left = a.table[i][k];
          const Vector& right = b.table[j][l];
          Vector& out = table[i * db + j][k * db + l];
          for (std::size_t s = 0; s < da; ++s) {
            if (left[s] == 0) continue;
            for (std::size_t t = 0; t < db; ++t) out[s * db + t] = left[s] * right[t];
          }
        }
  return NormedAlgebra{std::move(module), std::move(table)};
}

SubmultiplicativityRecord algebra_tensor_submultiplicativity(const NormedAlgebra& a, const NormedAlgebra& b,
                                                             const std::vector<std::pair<Vector, Vector>>& samples,
                                                             NormFlavor flavor) {
  NormedAlgebra ab = tensor_algebras(a, b, flavor);
  SubmultiplicativityRecord rec;
  rec.constant = a.mul_constant() * b.mul_constant();
  for (const auto& [x, y] : samples) {
    Rational lhs = vector_norm_exact(ab.module, ab.multiply(x, y));
    Rational rhs = rec.constant * vector_norm_exact(ab.module, x) * vector_norm_exact(ab.module, y);
    if (lhs > rhs) {
      throw Error(ErrorCode::ViolationWitness,
                  "||xy|| = " + format_rational(lhs) + " exceeds " + format_rational(rhs));
    }
    rec.sides.emplace_back(lhs, rhs);
    ++rec.pairs_checked;
  }
  return rec;
}

}  // namespace dagger
