#include "dagger/nonarch.hpp"

#include <algorithm>

namespace dagger {

namespace {

void require_non_archimedean(const BanachRingDesc& ring) {
  if (!ring.non_archimedean) throw Error(ErrorCode::ArchimedeanBaseRing, "pi needs a non-Archimedean base ring");
}

ModuleMap switched(const ModuleMap& f) {
  return ModuleMap(pi_module(f.source()), pi_module(f.target()), f.matrix());
}

}  // namespace

FlavoredPresentation::FlavoredPresentation(PresentedModule m) : module(std::move(m)) {
  require_non_archimedean(module.ambient.ring());
}

WeightedFreeModule pi_module(const WeightedFreeModule& m) {
  require_non_archimedean(m.ring());
  return m.with_flavor(NormFlavor::Max);
}

FlavoredPresentation pi_module(const FlavoredPresentation& m) {
  const PresentedModule& p = m.module;
  PresentedModule out{pi_module(p.ambient), std::nullopt, std::nullopt, p.kernel_basis};
  if (p.relations) out.relations = switched(*p.relations);
  if (p.restriction) out.restriction = switched(*p.restriction);
  return FlavoredPresentation(std::move(out));
}

AdjunctionReport check_adjunction(const WeightedFreeModule& v, const WeightedFreeModule& w, const Rational& r,
                                  const std::vector<Matrix>& matrices, const std::vector<Vector>& extra_samples) {
  require_non_archimedean(v.ring());
  if (!(v.ring() == w.ring())) throw Error(ErrorCode::InvalidArgument, "modules over different rings");
  if (w.flavor() != NormFlavor::Max) throw Error(ErrorCode::FlavorMismatch, "target must be Max-flavored");
  if (r <= 0) throw Error(ErrorCode::InvalidArgument, "ball radius must be positive");
  const WeightedFreeModule sum_source = v.with_flavor(NormFlavor::Sum);
  const WeightedFreeModule max_source = pi_module(v);

  std::vector<Vector> samples;
  for (std::size_t i = 0; i < v.rank(); ++i) {
    Vector e(v.rank());
    e[i] = 1;
    samples.push_back(e);
  }
  samples.insert(samples.end(), extra_samples.begin(), extra_samples.end());

  AdjunctionReport report;
  for (std::size_t k = 0; k < matrices.size(); ++k) {
    const Matrix& a = matrices[k];
    AdjunctionCase c;
    c.from_sum = operator_norm(ModuleMap(sum_source, w, a));
    Rational lower = 0;
    for (const auto& s : samples) {
      Rational denom = vector_norm_exact(max_source, s);
      if (denom == 0) continue;
      lower = qmax(lower, vector_norm_exact(w, a * s) / denom);
    }
    // |sum_i a_ji c_i| w'_j <= max_i (|a_ji| w'_j / w_i) |c_i| w_i
    Rational upper = 0;
    for (std::size_t j = 0; j < a.rows(); ++j)
      for (std::size_t i = 0; i < a.cols(); ++i)
        upper = qmax(upper, abs_exact(w.ring(), a(j, i)) * w.weights()[j] / v.weights()[i]);
    c.from_max = NormValue(lower, upper);
    c.equal = c.from_sum.is_exact() && c.from_max.is_exact() && c.from_sum == c.from_max;
    c.same_ball = (c.from_sum.upper() <= r) == (c.from_max.upper() <= r);
    if (c.equal && c.same_ball) ++report.agreed;
    else if (!report.first_mismatch) report.first_mismatch = k;
    report.cases.push_back(std::move(c));
  }
  return report;
}

PiTensorReport pi_tensor_check(const WeightedFreeModule& u, const WeightedFreeModule& v) {
  require_non_archimedean(u.ring());
  PiTensorReport report{pi_module(tensor_modules(u.with_flavor(NormFlavor::Sum), v.with_flavor(NormFlavor::Sum), NormFlavor::Sum)),
                        tensor_modules(pi_module(u), pi_module(v), NormFlavor::Max)};
  report.weights_match = report.pi_of_tensor == report.tensor_of_pi;
  report.norms_match = report.weights_match;
  const WeightedFreeModule pu = pi_module(u);
  const WeightedFreeModule pv = pi_module(v);
  for (std::size_t i = 0; report.norms_match && i < u.rank(); ++i) {
    for (std::size_t j = 0; report.norms_match && j < v.rank(); ++j) {
      Vector ei(u.rank()), ej(v.rank());
      ei[i] = 1;
      ej[j] = 1;
      TensorElement x{pu, pv, {{ei, ej}}};
      TensorNormCertificate cert = tensor_norm_certified(x, NormFlavor::Max, 1, 1);
      ++report.generators_checked;
      const Rational& weight = report.pi_of_tensor.weights()[i * v.rank() + j];
      report.norms_match = cert.value.is_finite() && cert.value.upper() == weight && cert.value.contains(weight);
    }
  }
  return report;
}

bool pi_commutes_with_cokernel(const ModuleMap& f) {
  FlavoredPresentation via_pi = pi_module(FlavoredPresentation(cokernel(f)));
  PresentedModule direct = cokernel(switched(f));
  return via_pi.module.ambient == direct.ambient && via_pi.module.relations->matrix() == direct.relations->matrix() &&
         via_pi.module.relations->source() == direct.relations->source();
}

}  // namespace dagger
