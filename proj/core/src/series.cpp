#include "dagger/series.hpp"

#include <algorithm>
#include <functional>

namespace dagger {

PolyRadius::PolyRadius(std::vector<Rational> c) : components(std::move(c)) {
  for (const auto& r : components) {
    if (r <= 0) throw Error(ErrorCode::InvalidArgument, "radii must be positive");
  }
}

bool strictly_less(const PolyRadius& a, const PolyRadius& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "polyradii of different lengths");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] < b[i])) return false;
  }
  return true;
}

unsigned total_degree(const MultiIndex& index) {
  unsigned d = 0;
  for (unsigned e : index) d += e;
  return d;
}

Rational radius_power(const PolyRadius& rho, const MultiIndex& index) {
  if (rho.size() != index.size()) throw Error(ErrorCode::DimensionMismatch, "polyradius length differs from variable count");
  Rational r = 1;
  for (std::size_t i = 0; i < index.size(); ++i) r *= pow(rho[i], index[i]);
  return r;
}

TruncatedSeries::TruncatedSeries(BanachRingDesc ring, std::size_t variables, unsigned degree_bound)
    : ring_(std::move(ring)), n_(variables), degree_bound_(degree_bound) {
  ring_.validate();
}

TruncatedSeries TruncatedSeries::constant(const BanachRingDesc& ring, std::size_t variables, const Rational& c,
                                          unsigned degree_bound) {
  TruncatedSeries f(ring, variables, degree_bound);
  f.set(MultiIndex(variables, 0), c);
  return f;
}

TruncatedSeries TruncatedSeries::monomial(const BanachRingDesc& ring, const MultiIndex& index, const Rational& c) {
  TruncatedSeries f(ring, index.size(), total_degree(index));
  f.set(index, c);
  return f;
}

TruncatedSeries TruncatedSeries::variable(const BanachRingDesc& ring, std::size_t variables, std::size_t which) {
  MultiIndex index(variables, 0);
  index.at(which) = 1;
  return monomial(ring, index, 1);
}

void TruncatedSeries::set(const MultiIndex& index, const Rational& value) {
  if (index.size() != n_) throw Error(ErrorCode::DimensionMismatch, "multi-index length differs from variable count");
  if (total_degree(index) > degree_bound_) {
    throw Error(ErrorCode::InvalidArgument, "coefficient of degree " + std::to_string(total_degree(index)) +
                                                " beyond degree bound " + std::to_string(degree_bound_));
  }
  if (!ring_.contains(value)) throw Error(ErrorCode::NonElement, format_rational(value) + " not in " + describe(ring_));
  if (value == 0) coeffs_.erase(index);
  else coeffs_[index] = value;
}

Rational TruncatedSeries::coefficient(const MultiIndex& index) const {
  auto it = coeffs_.find(index);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void TruncatedSeries::set_tail(TailMajorant tail) {
  if (tail.sigma.size() != n_) throw Error(ErrorCode::DimensionMismatch, "tail radius length");
  if (tail.constant < 0) throw Error(ErrorCode::InvalidArgument, "tail constant must be non-negative");
  tail_ = std::move(tail);
}

void TruncatedSeries::raise_degree_bound(unsigned degree_bound) {
  if (tail_ && degree_bound > degree_bound_) {
    throw Error(ErrorCode::InvalidArgument, "cannot raise the degree bound of a series with a tail");
  }
  degree_bound_ = std::max(degree_bound_, degree_bound);
}

unsigned TruncatedSeries::degree() const {
  unsigned d = 0;
  for (const auto& [index, c] : coeffs_) d = std::max(d, total_degree(index));
  return d;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  bool tails_equal = a.tail_.has_value() == b.tail_.has_value() &&
                     (!a.tail_ || (a.tail_->constant == b.tail_->constant && a.tail_->sigma == b.tail_->sigma));
  return a.ring_ == b.ring_ && a.n_ == b.n_ && a.degree_bound_ == b.degree_bound_ && a.coeffs_ == b.coeffs_ &&
         tails_equal;
}

namespace {

void check_radius(const TruncatedSeries& f, const PolyRadius& rho) {
  if (rho.size() != f.variables()) throw Error(ErrorCode::DimensionMismatch, "polyradius length differs from variable count");
  if (f.tail() && !strictly_less(rho, f.tail()->sigma)) {
    throw Error(ErrorCode::TailDiverges, "tail radius must exceed the evaluation radius in every component");
  }
}

// sum_{|I| <= D} q^I via the truncated product of geometric series.
Rational geometric_partial_sum(const std::vector<Rational>& q, unsigned degree) {
  std::vector<Rational> poly(degree + 1);
  poly[0] = 1;
  for (const auto& qi : q) {
    std::vector<Rational> next(degree + 1);
    for (unsigned d = 0; d <= degree; ++d) {
      if (poly[d] == 0) continue;
      Rational p = 1;
      for (unsigned k = 0; d + k <= degree; ++k) {
        next[d + k] += poly[d] * p;
        p *= qi;
      }
    }
    poly = std::move(next);
  }
  Rational total = 0;
  for (const auto& c : poly) total += c;
  return total;
}

// max_{|I| > from} |a_I| sigma^I over explicit coefficients.
Rational coefficient_majorant(const TruncatedSeries& f, const PolyRadius& sigma, int from) {
  Rational m = 0;
  for (const auto& [index, c] : f.coefficients()) {
    if (static_cast<int>(total_degree(index)) <= from) continue;
    m = qmax(m, abs_exact(f.ring(), c) * radius_power(sigma, index));
  }
  return m;
}

PolyRadius componentwise_min(const PolyRadius& a, const PolyRadius& b) {
  std::vector<Rational> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = std::min(a[i], b[i]);
  return PolyRadius(std::move(c));
}

void check_compatible(const TruncatedSeries& f, const TruncatedSeries& g) {
  if (!(f.ring() == g.ring())) throw Error(ErrorCode::InvalidArgument, "series over different rings");
  if (f.variables() != g.variables()) throw Error(ErrorCode::DimensionMismatch, "series in different variable counts");
}

// max_{i >= 0} (i + 1) theta^i for 0 < theta < 1.
Rational peak_of_linear_geometric(const Rational& theta) {
  Rational best = 1;
  Rational p = 1;
  for (unsigned long i = 0;; ++i) {
    Rational value = Rational(static_cast<long>(i + 1)) * p;
    if (value < best) break;
    best = value;
    p *= theta;
  }
  return best;
}

}  // namespace

Rational tail_remainder(const TailMajorant& tail, unsigned degree_bound, const PolyRadius& rho) {
  std::vector<Rational> q(rho.size());
  Rational full = 1;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    q[i] = rho[i] / tail.sigma[i];
    if (q[i] >= 1) throw Error(ErrorCode::TailDiverges, "tail radius must exceed the evaluation radius");
    full *= 1 / (1 - q[i]);
  }
  return tail.constant * (full - geometric_partial_sum(q, degree_bound));
}

NormValue norm_S(const TruncatedSeries& f, const PolyRadius& rho) {
  check_radius(f, rho);
  Rational exact = 0;
  for (const auto& [index, c] : f.coefficients()) exact += abs_exact(f.ring(), c) * radius_power(rho, index);
  if (!f.tail()) return NormValue(exact);
  return NormValue(exact, exact + tail_remainder(*f.tail(), f.degree_bound(), rho));
}

std::vector<GaussianRational> unit_circle_points(unsigned count) {
  long k_max = std::max<long>(1, (static_cast<long>(count) + 3) / 4);
  std::vector<GaussianRational> points;
  points.reserve(static_cast<std::size_t>(4 * k_max));
  for (long k = -k_max; k < k_max; ++k) {
    Rational t(k, k_max);
    t.canonicalize();
    Rational denom = 1 + t * t;
    GaussianRational z{(1 - t * t) / denom, 2 * t / denom};
    points.push_back(z);
    points.push_back(GaussianRational{-z.re, -z.im});
  }
  return points;
}

GaussianRational evaluate(const TruncatedSeries& f, const std::vector<GaussianRational>& point) {
  if (point.size() != f.variables()) throw Error(ErrorCode::DimensionMismatch, "evaluation point length");
  std::vector<std::vector<GaussianRational>> powers(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) powers[i].push_back(GaussianRational{1, 0});
  GaussianRational total{0, 0};
  for (const auto& [index, c] : f.coefficients()) {
    GaussianRational term{c, 0};
    for (std::size_t i = 0; i < index.size(); ++i) {
      auto& pw = powers[i];
      while (pw.size() <= index[i]) {
        const auto& last = pw.back();
        pw.push_back(GaussianRational{last.re * point[i].re - last.im * point[i].im,
                                      last.re * point[i].im + last.im * point[i].re});
      }
      const auto& z = pw[index[i]];
      term = GaussianRational{term.re * z.re - term.im * z.im, term.re * z.im + term.im * z.re};
    }
    total.re += term.re;
    total.im += term.im;
  }
  return total;
}

Rational evaluate(const TruncatedSeries& f, const std::vector<Rational>& point) {
  if (point.size() != f.variables()) throw Error(ErrorCode::DimensionMismatch, "evaluation point length");
  Rational total = 0;
  for (const auto& [index, c] : f.coefficients()) {
    Rational term = c;
    for (std::size_t i = 0; i < index.size(); ++i) term *= pow(point[i], index[i]);
    total += term;
  }
  return total;
}

NormValue torus_sup_lower(const TruncatedSeries& f, const PolyRadius& rho, unsigned points_per_variable,
                          const Rational& precision, unsigned max_points) {
  if (rho.size() != f.variables()) throw Error(ErrorCode::DimensionMismatch, "polyradius length differs from variable count");
  const std::size_t n = f.variables();
  Rational l2 = 0;
  Rational s = 0;
  for (const auto& [index, c] : f.coefficients()) {
    Rational r = radius_power(rho, index);
    l2 += c * c * r * r;
    s += abs(c) * r;
  }
  Rational best = l2;
  if (n > 0 && !f.coefficients().empty()) {
    unsigned per = std::max(1u, points_per_variable);
    auto grid_size = [&](unsigned p) {
      unsigned long long total = 1;
      for (std::size_t i = 0; i < n; ++i) total *= p;
      return total;
    };
    while (per > 1 && grid_size(per) > max_points) --per;
    std::vector<GaussianRational> circle = unit_circle_points(per);
    std::vector<std::size_t> at(n, 0);
    std::vector<GaussianRational> z(n);
    while (true) {
      for (std::size_t i = 0; i < n; ++i) z[i] = GaussianRational{circle[at[i]].re * rho[i], circle[at[i]].im * rho[i]};
      best = std::max(best, evaluate(f, z).norm_squared());
      std::size_t i = 0;
      while (i < n && ++at[i] == circle.size()) at[i++] = 0;
      if (i == n) break;
    }
  }
  NormValue root = nth_root_interval(NormValue(best), 2, precision);
  return NormValue(std::min(root.lo(), s), s);
}

NormValue norm_T(const TruncatedSeries& f, const PolyRadius& rho, const TorusOptions& options) {
  check_radius(f, rho);
  if (f.ring().non_archimedean) {
    Rational gauss = 0;
    for (const auto& [index, c] : f.coefficients())
      gauss = qmax(gauss, abs_exact(f.ring(), c) * radius_power(rho, index));
    if (!f.tail()) return NormValue(gauss);
    Rational q_max = 0;
    for (std::size_t i = 0; i < rho.size(); ++i) q_max = qmax(q_max, rho[i] / f.tail()->sigma[i]);
    Rational tail_sup = f.tail()->constant * pow(q_max, f.degree_bound() + 1);
    return NormValue(gauss, std::max(gauss, tail_sup));
  }
  NormValue s = norm_S(f, rho);
  unsigned per = options.points_per_variable ? options.points_per_variable : 64 * std::max(1u, f.degree_bound());
  NormValue poly = torus_sup_lower(f, rho, per, options.root_precision, options.max_points);
  Rational lo = poly.lo();
  if (f.tail()) {
    Rational tail = tail_remainder(*f.tail(), f.degree_bound(), rho);
    lo = lo > tail ? Rational(lo - tail) : Rational(0);
  }
  return NormValue(std::min(lo, s.upper()), s.upper());
}

namespace {

// Moves explicit coefficients above `degree` into a tail at radius sigma.
TruncatedSeries with_tail_from(const TruncatedSeries& f, unsigned degree, const PolyRadius& sigma,
                               const Rational& extra_constant) {
  TruncatedSeries out(f.ring(), f.variables(), degree);
  for (const auto& [index, c] : f.coefficients())
    if (total_degree(index) <= degree) out.set(index, c);
  Rational constant = extra_constant + coefficient_majorant(f, sigma, static_cast<int>(degree));
  if (f.tail()) constant += f.tail()->constant;
  out.set_tail(TailMajorant{constant, sigma});
  return out;
}

}  // namespace

TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g) {
  check_compatible(f, g);
  if (!f.tail() && !g.tail()) {
    TruncatedSeries out(f.ring(), f.variables(), std::max(f.degree_bound(), g.degree_bound()));
    for (const auto& [index, c] : f.coefficients()) out.set(index, c);
    for (const auto& [index, c] : g.coefficients()) out.set(index, out.coefficient(index) + c);
    return out;
  }
  unsigned degree = std::max(f.degree_bound(), g.degree_bound());
  std::optional<PolyRadius> sigma;
  if (f.tail()) {
    degree = std::min(degree, f.degree_bound());
    sigma = f.tail()->sigma;
  }
  if (g.tail()) {
    degree = std::min(degree, g.degree_bound());
    sigma = sigma ? componentwise_min(*sigma, g.tail()->sigma) : g.tail()->sigma;
  }
  TruncatedSeries a = with_tail_from(f, degree, *sigma, 0);
  TruncatedSeries b = with_tail_from(g, degree, *sigma, 0);
  TruncatedSeries out(f.ring(), f.variables(), degree);
  for (const auto& [index, c] : a.coefficients()) out.set(index, c);
  for (const auto& [index, c] : b.coefficients()) out.set(index, out.coefficient(index) + c);
  out.set_tail(TailMajorant{a.tail()->constant + b.tail()->constant, *sigma});
  return out;
}

TruncatedSeries scale(const TruncatedSeries& f, const Rational& c) {
  TruncatedSeries out(f.ring(), f.variables(), f.degree_bound());
  for (const auto& [index, a] : f.coefficients()) out.set(index, a * c);
  if (f.tail()) out.set_tail(TailMajorant{f.tail()->constant * abs_exact(f.ring(), c) * f.ring().mul_constant, f.tail()->sigma});
  return out;
}

TruncatedSeries negate(const TruncatedSeries& f) { return scale(f, -1); }

TruncatedSeries subtract(const TruncatedSeries& f, const TruncatedSeries& g) { return add(f, negate(g)); }

TruncatedSeries multiply(const TruncatedSeries& f, const TruncatedSeries& g, unsigned degree_bound) {
  check_compatible(f, g);
  unsigned degree = degree_bound;
  if (f.tail()) degree = std::min(degree, f.degree_bound());
  if (g.tail()) degree = std::min(degree, g.degree_bound());

  TruncatedSeries out(f.ring(), f.variables(), degree);
  std::map<MultiIndex, Rational> acc;
  for (const auto& [i, a] : f.coefficients()) {
    unsigned di = total_degree(i);
    if (di > degree) continue;
    for (const auto& [j, b] : g.coefficients()) {
      if (di + total_degree(j) > degree) continue;
      MultiIndex k(i.size());
      for (std::size_t v = 0; v < k.size(); ++v) k[v] = i[v] + j[v];
      acc[k] += a * b;
    }
  }
  for (const auto& [k, c] : acc) out.set(k, c);
  if (!f.tail() && !g.tail()) return out;

  const Rational& ring_c = f.ring().mul_constant;
  if (f.tail() && g.tail()) {
    PolyRadius sigma = componentwise_min(f.tail()->sigma, g.tail()->sigma);
    Rational fa = std::max(f.tail()->constant, coefficient_majorant(f, sigma, -1));
    Rational gb = std::max(g.tail()->constant, coefficient_majorant(g, sigma, -1));
    Rational theta = tail_shrink_factor();
    Rational peak = pow(peak_of_linear_geometric(theta), f.variables());
    std::vector<Rational> shrunk(sigma.size());
    for (std::size_t i = 0; i < shrunk.size(); ++i) shrunk[i] = sigma[i] * theta;
    out.set_tail(TailMajorant{fa * gb * peak * ring_c, PolyRadius(std::move(shrunk))});
    return out;
  }
  const TruncatedSeries& tailed = f.tail() ? f : g;
  const TruncatedSeries& poly = f.tail() ? g : f;
  const PolyRadius& sigma = tailed.tail()->sigma;
  Rational majorant = std::max(tailed.tail()->constant, coefficient_majorant(tailed, sigma, -1));
  Rational poly_norm = 0;
  for (const auto& [index, c] : poly.coefficients()) poly_norm += abs_exact(poly.ring(), c) * radius_power(sigma, index);
  out.set_tail(TailMajorant{majorant * poly_norm * ring_c, sigma});
  return out;
}

TruncatedSeries multiply_exact(const TruncatedSeries& f, const TruncatedSeries& g) {
  if (f.tail() || g.tail()) throw Error(ErrorCode::InvalidArgument, "exact product needs tail-free series");
  TruncatedSeries out = multiply(f, g, f.degree_bound() + g.degree_bound());
  return out;
}

TruncatedSeries power_exact(const TruncatedSeries& f, unsigned exponent) {
  TruncatedSeries result = TruncatedSeries::constant(f.ring(), f.variables(), 1);
  for (unsigned i = 0; i < exponent; ++i) result = multiply_exact(result, f);
  return result;
}

namespace {

void check_strictly_smaller(const PolyRadius& rho, const PolyRadius& rho_prime) {
  if (rho.size() != rho_prime.size()) throw Error(ErrorCode::DimensionMismatch, "polyradii of different lengths");
  if (!strictly_less(rho, rho_prime)) throw Error(ErrorCode::NotStrictlySmaller, "need rho < rho' in every component");
}

}  // namespace

Rational cofinality_constant(const PolyRadius& rho, const PolyRadius& rho_prime) {
  check_strictly_smaller(rho, rho_prime);
  Rational k = 0;
  for (std::size_t i = 0; i < rho.size(); ++i) k = qmax(k, rho_prime[i] / (rho_prime[i] - rho[i]));
  return k;
}

Rational product_cofinality_constant(const PolyRadius& rho, const PolyRadius& rho_prime) {
  check_strictly_smaller(rho, rho_prime);
  Rational k = 1;
  for (std::size_t i = 0; i < rho.size(); ++i) k *= rho_prime[i] / (rho_prime[i] - rho[i]);
  return k;
}

RestrictionCertificate restrict_T_to_S(const TruncatedSeries& f, const PolyRadius& rho_prime, const PolyRadius& rho) {
  if (!f.ring().non_archimedean) throw Error(ErrorCode::UnsupportedRing, "restriction with the max constant needs a non-Archimedean ring");
  RestrictionCertificate cert;
  cert.constant = cofinality_constant(rho, rho_prime);
  cert.product_constant = product_cofinality_constant(rho, rho_prime);
  cert.s_norm = norm_S(f, rho).upper();
  NormValue t = norm_T(f, rho_prime);
  cert.t_norm = t.upper();
  cert.t_norm_lower = t.lo();
  cert.holds = cert.s_norm <= cert.constant * cert.t_norm;
  cert.holds_product = cert.s_norm <= cert.product_constant * cert.t_norm;
  cert.holds_against_lower = cert.s_norm <= cert.constant * cert.t_norm_lower;
  return cert;
}

RestrictionCertificate restrict_arch(const TruncatedSeries& f, const PolyRadius& rho_prime, const PolyRadius& rho,
                                     const TorusOptions& options) {
  if (f.ring().non_archimedean) throw Error(ErrorCode::UnsupportedRing, "Cauchy restriction applies to Archimedean rings");
  RestrictionCertificate cert;
  cert.constant = product_cofinality_constant(rho, rho_prime);
  cert.product_constant = cert.constant;
  cert.s_norm = norm_S(f, rho).upper();
  NormValue t = norm_T(f, rho_prime, options);
  cert.t_norm = t.upper();
  cert.t_norm_lower = t.lo();
  cert.holds = cert.s_norm <= cert.constant * cert.t_norm;
  cert.holds_product = cert.holds;
  cert.holds_against_lower = cert.s_norm <= cert.constant * cert.t_norm_lower;
  return cert;
}

TruncatedSeries base_change(const TruncatedSeries& f, const BanachRingDesc& target) {
  if (f.ring().kind != RingKind::IntegersArchimedean) {
    throw Error(ErrorCode::InvalidArgument, "base change starts from an integer series over Z_inf");
  }
  TruncatedSeries out(target, f.variables(), f.degree_bound());
  for (const auto& [index, c] : f.coefficients()) out.set(index, c);
  // |a|_target <= |a|_inf for every integer, so the majorant carries over.
  if (f.tail()) out.set_tail(*f.tail());
  return out;
}

DaggerPresentation DaggerPresentation::free_algebra(const BanachRingDesc& ring, PolyRadius rho) {
  DaggerPresentation a{ring, rho.size(), std::move(rho), {}};
  return a;
}

void DaggerPresentation::validate() const {
  if (rho.size() != variables) throw Error(ErrorCode::DimensionMismatch, "polyradius length differs from variable count");
  for (const auto& r : relations) {
    if (!(r.ring() == ring)) throw Error(ErrorCode::InvalidArgument, "relation over a different ring");
    if (r.variables() != variables) throw Error(ErrorCode::DimensionMismatch, "relation in a different variable count");
  }
}

DaggerPresentation base_change(const DaggerPresentation& a, const BanachRingDesc& target) {
  DaggerPresentation out{target, a.variables, a.rho, {}};
  for (const auto& r : a.relations) out.relations.push_back(base_change(r, target));
  return out;
}

TruncatedSeries extend_variables(const TruncatedSeries& f, std::size_t variables) {
  if (variables < f.variables()) throw Error(ErrorCode::DimensionMismatch, "cannot drop variables");
  TruncatedSeries out(f.ring(), variables, f.degree_bound());
  for (const auto& [index, c] : f.coefficients()) {
    MultiIndex wide(variables, 0);
    std::copy(index.begin(), index.end(), wide.begin());
    out.set(wide, c);
  }
  if (f.tail()) {
    if (variables != f.variables()) throw Error(ErrorCode::InvalidArgument, "cannot re-embed a series with a tail");
    out.set_tail(*f.tail());
  }
  return out;
}

}  // namespace dagger
