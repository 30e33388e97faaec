#include "dagger_cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>

#include <CLI11.hpp>

#include <dagger/localization.hpp>
#include <dagger/nonarch.hpp>
#include <dagger/parallel.hpp>
#include <dagger/spectrum.hpp>

#include "dagger_cli/config.hpp"
#include "dagger_cli/json_io.hpp"
#include "dagger_cli/random.hpp"
#include "dagger_cli/selftest.hpp"

namespace dagger::cli {

namespace {

constexpr const char* kSchema = "dagger-report/1";

struct Outcome {
  json report;
  int code = 0;
};

json header(const std::string& command) { return json{{"schema", kSchema}, {"command", command}}; }

struct Options {
  RunConfig cfg;
  std::string rho = "1";
  std::string rho_prime;
  std::string series, left, right, element, algebra, spec, map, v1, v2, module;
  std::string flavor = "sum";
  unsigned long coeff_bound = 10;
  unsigned long term_bound = 2;
  unsigned powers = 8;
  unsigned samples = 0;
};

Outcome cmd_norm(const Options& o) {
  TruncatedSeries f = read_series(load_json_file(o.series), "", BanachRingDesc::integers());
  PolyRadius rho = read_radius(o.rho, f.variables());
  Outcome out{header("norm")};
  out.report["anchor"] = "||f||_S = sum |a_I| rho^I; ||f||_T = sup on the polydisk (Gauss norm over non-Archimedean rings)";
  out.report["rho"] = to_json(rho.components);
  out.report["S"] = to_json(norm_S(f, rho));
  out.report["T"] = to_json(norm_T(f, rho));
  if (!o.rho_prime.empty()) {
    PolyRadius rho_prime = read_radius(o.rho_prime, f.variables());
    RestrictionCertificate cert = f.ring().non_archimedean ? restrict_T_to_S(f, rho_prime, rho) : restrict_arch(f, rho_prime, rho);
    out.report["restriction"] = json{{"anchor", f.ring().non_archimedean
                                                    ? "||f||_S(rho) <= max_i rho'_i/(rho'_i - rho_i) ||f||_T(rho')"
                                                    : "Cauchy estimates: ||f||_S(rho) <= prod_i 1/(1 - rho_i/rho'_i) ||f||_T(rho')"},
                                     {"rho_prime", to_json(rho_prime.components)},
                                     {"constant", to_json(cert.constant)},
                                     {"product_constant", to_json(cert.product_constant)},
                                     {"s_norm", to_json(cert.s_norm)},
                                     {"t_norm", to_json(cert.t_norm)},
                                     {"holds", cert.holds},
                                     {"holds_product", cert.holds_product}};
    if (!cert.holds) out.code = 2;
  }
  return out;
}

Outcome cmd_tensor(const Options& o) {
  WeightedFreeModule left = read_module(load_json_file(o.left), "");
  WeightedFreeModule right = read_module(load_json_file(o.right), "");
  TensorElement x = read_tensor_element(load_json_file(o.element), "", left, right);
  NormFlavor flavor = o.flavor == "max" ? NormFlavor::Max : NormFlavor::Sum;
  if (o.flavor != "max" && o.flavor != "sum") throw InputError("--flavor", "expected sum or max");
  TensorNormCertificate cert = tensor_norm_certified(x, flavor, o.coeff_bound, o.term_bound);
  Outcome out{header("tensor")};
  out.report["anchor"] = flavor == NormFlavor::Sum ? "projective tensor norm inf sum ||m_k|| ||n_k||"
                                                   : "non-Archimedean projective tensor norm inf max ||m_k|| ||n_k||";
  out.report["flavor"] = o.flavor;
  out.report["given_representation"] = to_json(tensor_norm_upper(x, flavor));
  out.report["norm"] = to_json(cert.value);
  json rep = json::array();
  for (const auto& [m, n] : cert.best_representation) rep.push_back(json::array({to_json(m), to_json(n)}));
  out.report["best_representation"] = rep;
  out.report["functionals_tried"] = cert.functionals_tried;
  return out;
}

Outcome cmd_localize(const Options& o) {
  DaggerPresentation a = read_algebra(load_json_file(o.algebra), "");
  LocalizationSpec spec = read_spec(load_json_file(o.spec), "", a);
  Outcome out{header("localize")};
  out.report["anchor"] = "localization presentations A<X/r>/(X - f), A<X/r, Y/s>/(X - f, gY - 1), A<X/r>/(hX - f)";
  out.report["presentation"] = to_json(present_localization(a, spec));
  return out;
}

Outcome cmd_koszul(const Options& o) {
  DaggerPresentation a = read_algebra(load_json_file(o.algebra), "");
  LocalizationSpec spec = read_spec(load_json_file(o.spec), "", a);
  Outcome out{header("koszul")};
  out.report["anchor"] = "the Koszul complex of (Y - f) or (gY - 1) is a strict resolution of A_V; B (x)^L A_V = B (x) A_V";
  out.report["degree"] = o.cfg.degree;
  try {
    KoszulReport rep;
    if (o.map.empty()) {
      rep = koszul_h_check(a, spec, o.cfg.degree);
    } else {
      json m = load_json_file(o.map);
      DaggerPresentation b = read_algebra(m.contains("algebra") ? m["algebra"] : json(), "/algebra");
      std::vector<TruncatedSeries> images;
      if (!m.contains("images") || !m["images"].is_array()) throw InputError("/images", "expected an array");
      for (std::size_t i = 0; i < m["images"].size(); ++i)
        images.push_back(read_series(m["images"][i], "/images/" + std::to_string(i), b.ring));
      rep = koszul_h_check(a, spec, b, images, o.cfg.degree);
    }
    out.report["verdict"] = rep.concentrated ? "DerivedConcentratedDegree0" : "HMinus1Witness";
    out.report["h_minus1_dimension"] = rep.h_minus1_dimension;
    out.report["source_dimension"] = rep.source_dimension;
    if (rep.witness) out.report["witness"] = to_json(*rep.witness);
    out.code = rep.concentrated ? 0 : 2;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TruncationTooSmall) throw;
    out.report["verdict"] = "TruncationTooSmall";
    out.report["message"] = e.what();
    out.code = 2;
  }
  return out;
}

Outcome cmd_mv_check(const Options& o) {
  DaggerPresentation a = read_algebra(load_json_file(o.algebra), "");
  LocalizationSpec s1 = read_spec(load_json_file(o.v1), "", a);
  LocalizationSpec s2 = read_spec(load_json_file(o.v2), "", a);
  const auto* v1 = std::get_if<WeierstrassSpec>(&s1);
  if (!v1) throw InputError("/type", "--v1 must be a Weierstrass spec");
  const auto* v2 = std::get_if<LaurentSpec>(&s2);
  if (!v2) throw InputError("/type", "--v2 must be a Laurent spec");
  Outcome out{header("mv-check")};
  out.report["anchor"] = "0 -> A_(V1 u V2) -> A_V1 x A_V2 -> A_(V1 n V2) -> 0 is strict exact";
  out.report["degree"] = o.cfg.degree;
  try {
    MayerVietorisReport rep = mayer_vietoris(a, *v1, *v2, o.cfg.degree);
    std::size_t samples = o.samples ? o.samples : 100;
    std::size_t split_ok = 0;
    for (std::size_t i = 0; i < samples; ++i) {
      Rng rng = Rng::for_item(o.cfg.seed, 5, i);
      LaurentPolynomial c;
      for (long e = rep.overlap_low; e <= static_cast<long>(rep.degree); ++e)
        if (rng.coin()) c[e] = Rational(Integer(static_cast<long>(rng.range(-9, 9))));
      if (split_overlap(rep, c).verified) ++split_ok;
    }
    out.report["covers"] = rep.covers;
    out.report["diagonal_injective"] = rep.diagonal_injective;
    out.report["kernel_is_diagonal"] = rep.kernel_is_diagonal;
    out.report["difference_surjective"] = rep.difference_surjective;
    out.report["samples_split"] = split_ok;
    out.report["samples"] = samples;
    bool exact = rep.exact && split_ok == samples;
    out.report["verdict"] = exact ? "Exact" : "NotExact";
    out.code = exact ? 0 : 2;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotACover) throw;
    out.report["verdict"] = "NotACover";
    out.report["message"] = e.what();
    out.code = 2;
  }
  return out;
}

json place_table(const GlobalSupReport& g) {
  json table = json::array();
  for (const auto& pv : g.per_place) table.push_back(json{{"place", describe(pv.place)}, {"sup", to_json(pv.value)}});
  return table;
}

Outcome cmd_spectrum(const Options& o) {
  TruncatedSeries f = read_series(load_json_file(o.series), "", BanachRingDesc::integers());
  PolyRadius rho = read_radius(o.rho, f.variables());
  GlobalSupReport g = global_sup(f, rho, o.cfg.prime_bound, o.cfg.grid, o.cfg.threads);
  PowersReport powers = spectral_via_powers(f, rho, o.powers);
  Outcome out{header("spectrum")};
  out.report["anchor"] = "|f|_sup = max over M(Z<X>) = inf_n ||f^n||^(1/n)";
  out.report["places"] = place_table(g);
  out.report["global_sup"] = to_json(g.value);
  out.report["attained_at"] = describe(g.per_place[g.argmax].place);
  out.report["prime_bound"] = g.prime_bound;
  out.report["beyond_prime_bound"] = json{{"bound", to_json(g.beyond_bound)},
                                          {"note", "integer coefficients have |a|_p <= 1, so larger primes give at most max rho^I"}};
  json raw = json::array(), running = json::array();
  for (const auto& v : powers.raw) raw.push_back(to_json(v));
  for (const auto& v : powers.running) running.push_back(to_json(v));
  out.report["powers"] = json{{"raw", raw}, {"running_min", running}};
  return out;
}

Outcome cmd_shilov(const Options& o) {
  TruncatedSeries f = read_series(load_json_file(o.series), "", BanachRingDesc::integers());
  PolyRadius rho = read_radius(o.rho, f.variables());
  ShilovReport rep = shilov_check(f, rho, o.cfg.prime_bound, o.cfg.grid, o.cfg.threads);
  Outcome out{header("shilov")};
  out.report["anchor"] = "the Archimedean fiber carries the Shilov boundary of Z<X>: every non-Archimedean fiber sup is below it";
  out.report["verdict"] = rep.confirmed ? "Confirmed" : "NotConfirmed";
  out.report["archimedean"] = to_json(rep.archimedean);
  out.report["non_archimedean"] = to_json(rep.non_archimedean);
  out.report["gauss_bound"] = to_json(rep.gauss_bound);
  out.report["places"] = place_table(rep.global);
  out.code = rep.confirmed ? 0 : 2;
  return out;
}

Outcome cmd_pi_check(const Options& o) {
  WeightedFreeModule v = read_module(load_json_file(o.module), "");
  if (!v.ring().non_archimedean) throw Error(ErrorCode::ArchimedeanBaseRing, "pi needs a non-Archimedean base ring");
  v = v.with_flavor(NormFlavor::Sum);
  std::size_t samples = o.samples ? o.samples : 500;
  const BanachRingDesc& ring = v.ring();
  auto results = parallel_map(samples, o.cfg.threads, [&](std::size_t i) {
    Rng rng = Rng::for_item(o.cfg.seed, 8, i);
    auto weight = [&] {
      if (ring.kind != RingKind::RationalsPadic) return Rational(Integer(static_cast<long>(rng.range(1, 4))));
      Rational p(static_cast<long>(ring.prime));
      long k = static_cast<long>(rng.range(-2, 2));
      return k >= 0 ? pow(p, static_cast<unsigned long>(k)) : Rational(1 / pow(p, static_cast<unsigned long>(-k)));
    };
    std::size_t m = static_cast<std::size_t>(rng.range(1, 4));
    std::vector<Rational> ww(m);
    for (auto& w : ww) w = weight();
    Matrix a(m, v.rank());
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < v.rank(); ++c) {
        Rational x(Integer(static_cast<long>(rng.range(-6, 6))));
        a(r, c) = ring.is_lattice() ? x : Rational(x * weight());
      }
    return check_adjunction(v, WeightedFreeModule(ring, ww, NormFlavor::Max), weight(), {a}).confirmed();
  });
  std::size_t agreed = static_cast<std::size_t>(std::count(results.begin(), results.end(), true));
  PiTensorReport tensor = pi_tensor_check(v, v);
  bool idempotent = pi_module(pi_module(v)) == pi_module(v);
  Outcome out{header("pi-check")};
  out.report["anchor"] = "Hom^{<=r}(pi V, W) = Hom^{<=r}(V, W) for every r > 0; pi respects the monoidal structures";
  out.report["module"] = to_json(v);
  out.report["pi_module"] = to_json(pi_module(v));
  out.report["seed"] = o.cfg.seed;
  out.report["adjunction"] = json{{"samples", samples}, {"agreed", agreed}};
  out.report["tensor"] = json{{"weights_match", tensor.weights_match},
                              {"generators_checked", tensor.generators_checked},
                              {"norms_match", tensor.norms_match}};
  out.report["idempotent"] = idempotent;
  bool ok = agreed == samples && tensor.confirmed() && idempotent;
  out.report["verdict"] = ok ? "Confirmed" : "Violation";
  out.code = ok ? 0 : 2;
  return out;
}

Outcome cmd_selftest(const Options& o) {
  std::vector<CriterionResult> results = run_selftest(o.cfg);
  Outcome out{suite_report(o.cfg, results)};
  out.code = out.report["verdict"] == "pass" ? 0 : 2;
  return out;
}

int code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ViolationWitness:
    case ErrorCode::NotACover:
    case ErrorCode::TruncationTooSmall:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  std::string command;
  try {
    o.cfg = config_from_environment();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  CLI::App app{"Exact computations with Banach modules, dagger series and spectra over Z", "dagger"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--seed", o.cfg.seed, "seed for all randomized sampling");
  app.add_option("--degree", o.cfg.degree, "truncation degree");
  app.add_option("--prime-bound", o.cfg.prime_bound, "largest prime place enumerated");
  app.add_option("--grid", o.cfg.grid, "exponent grid size for places");
  app.add_option("--rho", o.rho, "polyradius, one value or a comma list");
  app.add_option("--json-out", o.cfg.json_out, "also write the report to this file");
  app.add_option("--threads", o.cfg.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("-v,--verbose", o.cfg.verbosity, "print timings to stderr");

  std::map<std::string, std::function<Outcome(const Options&)>> handlers;
  auto sub = [&](const char* name, const char* help, std::function<Outcome(const Options&)> fn) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&command, name] { command = name; });
    handlers[name] = std::move(fn);
    return s;
  };
  CLI::App* norm = sub("norm", "S- and T-norms of a series", cmd_norm);
  norm->add_option("--series", o.series)->required();
  norm->add_option("--rho-prime", o.rho_prime, "also certify the restriction from this larger polyradius");
  CLI::App* tensor = sub("tensor", "certified projective tensor norm", cmd_tensor);
  tensor->add_option("--flavor", o.flavor)->check(CLI::IsMember({"sum", "max"}));
  tensor->add_option("--left", o.left)->required();
  tensor->add_option("--right", o.right)->required();
  tensor->add_option("--element", o.element)->required();
  tensor->add_option("--coeff-bound", o.coeff_bound);
  tensor->add_option("--term-bound", o.term_bound);
  CLI::App* localize = sub("localize", "present a localization", cmd_localize);
  localize->add_option("--algebra", o.algebra)->required();
  localize->add_option("--spec", o.spec)->required();
  CLI::App* koszul = sub("koszul", "truncated H^-1 of the Koszul complex", cmd_koszul);
  koszul->add_option("--algebra", o.algebra)->required();
  koszul->add_option("--spec", o.spec)->required();
  koszul->add_option("--map", o.map, "target algebra and images of the variables");
  CLI::App* mv = sub("mv-check", "Mayer-Vietoris exactness for a disk and annulus cover", cmd_mv_check);
  mv->add_option("--algebra", o.algebra)->required();
  mv->add_option("--v1", o.v1)->required();
  mv->add_option("--v2", o.v2)->required();
  mv->add_option("--samples", o.samples);
  CLI::App* spectrum = sub("spectrum", "fiberwise and global spectral seminorms over Z", cmd_spectrum);
  spectrum->add_option("--series", o.series)->required();
  spectrum->add_option("--powers", o.powers)->check(CLI::PositiveNumber);
  CLI::App* shilov = sub("shilov", "Archimedean dominance of the spectral seminorm", cmd_shilov);
  shilov->add_option("--series", o.series)->required();
  CLI::App* pi = sub("pi-check", "non-Archimedification adjunction and monoidality", cmd_pi_check);
  pi->add_option("--module", o.module)->required();
  pi->add_option("--samples", o.samples);
  sub("selftest", "run the acceptance property suite", cmd_selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  Outcome result;
  try {
    auto start = std::chrono::steady_clock::now();
    result = handlers.at(command)(o);
    if (o.cfg.verbosity > 0)
      err << command << ": " << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s\n";
  } catch (const InputError& e) {
    result.report = header(command);
    result.report["verdict"] = "InputError";
    result.report["pointer"] = e.pointer();
    result.report["message"] = e.what();
    result.code = 1;
    err << "error: " << e.what() << "\n";
  } catch (const Error& e) {
    result.report = header(command);
    result.report["verdict"] = to_string(e.code());
    result.report["message"] = e.what();
    result.code = code_for(e.code());
    err << "error: " << e.what() << "\n";
  }
  std::string text = result.report.dump(2) + "\n";
  out << text;
  if (!o.cfg.json_out.empty()) {
    std::ofstream file(o.cfg.json_out);
    if (!file) {
      err << "error: cannot write " << o.cfg.json_out << "\n";
      return 1;
    }
    file << text;
  }
  return result.code;
}

}  // namespace dagger::cli
