#include "dagger_cli/json_io.hpp"

#include <fstream>
#include <sstream>

namespace dagger::cli {

namespace {

std::string child(const std::string& at, const std::string& key) { return at + "/" + key; }
std::string child(const std::string& at, std::size_t index) { return at + "/" + std::to_string(index); }

const json& field(const json& j, const std::string& at, const std::string& key) {
  if (!j.is_object()) throw InputError(at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(child(at, key), "missing field");
  return *it;
}

const json& array(const json& j, const std::string& at) {
  if (!j.is_array()) throw InputError(at, "expected an array");
  return j;
}

unsigned long read_unsigned(const json& j, const std::string& at) {
  if (!j.is_number_unsigned()) throw InputError(at, "expected a non-negative integer");
  return j.get<unsigned long>();
}

template <class Fn>
auto wrap(const std::string& at, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw InputError(at, e.what());
  }
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("", "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw InputError("", path + ": syntax error at byte " + std::to_string(e.byte));
  }
}

Rational read_rational(const json& j, const std::string& at) {
  if (j.is_number_integer()) return Rational(Integer(static_cast<long>(j.get<long long>())));
  if (!j.is_string()) throw InputError(at, "expected a rational string such as \"3/2\"");
  return wrap(at, [&] { return parse_rational(j.get<std::string>()); });
}

BanachRingDesc read_ring(const json& j, const std::string& at) {
  if (!j.is_string()) throw InputError(at, "expected a ring name (Z_inf, Z_triv, Q_inf, Q_<p>)");
  std::string s = j.get<std::string>();
  if (s == "Z_inf") return BanachRingDesc::integers();
  if (s == "Z_triv") return BanachRingDesc::integers_trivial();
  if (s == "Q_inf") return BanachRingDesc::rationals();
  if (s.rfind("Q_", 0) == 0 && s.size() > 2 && s.find_first_not_of("0123456789", 2) == std::string::npos) {
    unsigned long p = std::stoul(s.substr(2));
    return wrap(at, [&] { return BanachRingDesc::padic(p); });
  }
  throw InputError(at, "unknown ring " + s);
}

std::vector<Rational> read_rationals(const json& j, const std::string& at) {
  std::vector<Rational> out;
  const json& a = array(j, at);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(read_rational(a[i], child(at, i)));
  return out;
}

PolyRadius read_radius(const std::string& text, std::size_t variables) {
  std::vector<Rational> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      parts.push_back(parse_rational(item));
    } catch (const Error& e) {
      throw InputError("--rho", e.what());
    }
  }
  if (parts.size() == 1 && variables > 1) parts.assign(variables, parts.front());
  if (parts.size() != variables) throw InputError("--rho", "expected one radius per variable");
  try {
    return PolyRadius(parts);
  } catch (const Error& e) {
    throw InputError("--rho", e.what());
  }
}

WeightedFreeModule read_module(const json& j, const std::string& at) {
  BanachRingDesc ring = read_ring(field(j, at, "ring"), child(at, "ring"));
  std::vector<Rational> weights = read_rationals(field(j, at, "weights"), child(at, "weights"));
  NormFlavor flavor = NormFlavor::Sum;
  if (j.contains("flavor")) {
    const json& f = j["flavor"];
    if (f == "sum") flavor = NormFlavor::Sum;
    else if (f == "max") flavor = NormFlavor::Max;
    else throw InputError(child(at, "flavor"), "expected \"sum\" or \"max\"");
  }
  return wrap(at, [&] { return WeightedFreeModule(ring, weights, flavor); });
}

Matrix read_matrix(const json& j, std::size_t rows, std::size_t cols, const std::string& at) {
  const json& a = array(j, at);
  if (a.size() != rows) throw InputError(at, "expected " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = array(a[r], child(at, r));
    if (row.size() != cols) throw InputError(child(at, r), "expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = read_rational(row[c], child(child(at, r), c));
  }
  return m;
}

TruncatedSeries read_series(const json& j, const std::string& at, const BanachRingDesc& default_ring) {
  BanachRingDesc ring = j.is_object() && j.contains("ring") ? read_ring(j["ring"], child(at, "ring")) : default_ring;
  std::size_t n = read_unsigned(field(j, at, "n"), child(at, "n"));
  const json& coeffs = array(field(j, at, "coeffs"), child(at, "coeffs"));
  unsigned degree = 0;
  std::vector<std::pair<MultiIndex, Rational>> entries;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    std::string here = child(child(at, "coeffs"), k);
    const json& pair = array(coeffs[k], here);
    if (pair.size() != 2) throw InputError(here, "expected [multi-index, coefficient]");
    const json& idx = array(pair[0], child(here, 0));
    if (idx.size() != n) throw InputError(child(here, 0), "multi-index length differs from n");
    MultiIndex index;
    for (std::size_t v = 0; v < n; ++v) index.push_back(static_cast<unsigned>(read_unsigned(idx[v], child(child(here, 0), v))));
    degree = std::max(degree, total_degree(index));
    entries.emplace_back(index, read_rational(pair[1], child(here, 1)));
  }
  if (j.contains("D")) degree = static_cast<unsigned>(read_unsigned(j["D"], child(at, "D")));
  TruncatedSeries f(ring, n, degree);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    wrap(child(child(at, "coeffs"), k), [&] {
      f.set(entries[k].first, f.coefficient(entries[k].first) + entries[k].second);
      return 0;
    });
  }
  if (j.contains("tail")) {
    std::string here = child(at, "tail");
    const json& t = j["tail"];
    Rational c = read_rational(field(t, here, "C"), child(here, "C"));
    std::vector<Rational> sigma = read_rationals(field(t, here, "sigma"), child(here, "sigma"));
    wrap(here, [&] {
      f.set_tail(TailMajorant{c, PolyRadius(sigma)});
      return 0;
    });
  }
  return f;
}

DaggerPresentation read_algebra(const json& j, const std::string& at) {
  DaggerPresentation a;
  a.ring = read_ring(field(j, at, "ring"), child(at, "ring"));
  a.variables = read_unsigned(field(j, at, "n"), child(at, "n"));
  std::vector<Rational> rho = read_rationals(field(j, at, "rho"), child(at, "rho"));
  a.rho = wrap(child(at, "rho"), [&] { return PolyRadius(rho); });
  if (j.contains("relations")) {
    const json& rels = array(j["relations"], child(at, "relations"));
    for (std::size_t i = 0; i < rels.size(); ++i)
      a.relations.push_back(read_series(rels[i], child(child(at, "relations"), i), a.ring));
  }
  wrap(at, [&] {
    a.validate();
    return 0;
  });
  return a;
}

LocalizationSpec read_spec(const json& j, const std::string& at, const DaggerPresentation& algebra) {
  auto series_list = [&](const char* key) {
    std::vector<TruncatedSeries> out;
    if (!j.contains(key)) return out;
    const json& a = array(j[key], child(at, key));
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(read_series(a[i], child(child(at, key), i), algebra.ring));
    return out;
  };
  auto radii = [&](const char* key) {
    return j.contains(key) ? read_rationals(j[key], child(at, key)) : std::vector<Rational>{};
  };
  const json& type = field(j, at, "type");
  if (type == "weierstrass") return WeierstrassSpec{series_list("f"), radii("r")};
  if (type == "laurent") return LaurentSpec{series_list("f"), radii("r"), series_list("g"), radii("s")};
  if (type == "rational") {
    RationalSpec spec{series_list("f"), read_series(field(j, at, "h"), child(at, "h"), algebra.ring), radii("r"), std::nullopt};
    if (j.contains("witness")) {
      std::string here = child(at, "witness");
      const json& w = j["witness"];
      UnitIdealWitness wit{read_series(field(w, here, "h"), child(here, "h"), algebra.ring), {}, {}};
      const json& fs = array(field(w, here, "f"), child(here, "f"));
      for (std::size_t i = 0; i < fs.size(); ++i)
        wit.f_cofactors.push_back(read_series(fs[i], child(child(here, "f"), i), algebra.ring));
      if (w.contains("relations")) {
        const json& rs = array(w["relations"], child(here, "relations"));
        for (std::size_t i = 0; i < rs.size(); ++i)
          wit.relation_cofactors.push_back(read_series(rs[i], child(child(here, "relations"), i), algebra.ring));
      }
      spec.witness = wit;
    }
    return spec;
  }
  throw InputError(child(at, "type"), "expected \"weierstrass\", \"laurent\" or \"rational\"");
}

TensorElement read_tensor_element(const json& j, const std::string& at, const WeightedFreeModule& left,
                                  const WeightedFreeModule& right) {
  TensorElement x{left, right, {}};
  const json& terms = array(field(j, at, "terms"), child(at, "terms"));
  for (std::size_t k = 0; k < terms.size(); ++k) {
    std::string here = child(child(at, "terms"), k);
    const json& pair = array(terms[k], here);
    if (pair.size() != 2) throw InputError(here, "expected [left vector, right vector]");
    Vector m = read_rationals(pair[0], child(here, 0));
    Vector n = read_rationals(pair[1], child(here, 1));
    if (m.size() != left.rank()) throw InputError(child(here, 0), "length differs from the left rank");
    if (n.size() != right.rank()) throw InputError(child(here, 1), "length differs from the right rank");
    x.terms.emplace_back(m, n);
  }
  return x;
}

json to_json(const Rational& q) { return format_rational(q); }

json to_json(const NormValue& v) {
  json out;
  out["lo"] = format_rational(v.lo());
  out["hi"] = v.hi() ? json(format_rational(*v.hi())) : json("inf");
  out["exact"] = v.is_exact();
  return out;
}

json to_json(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(format_rational(q));
  return out;
}

json to_json(const TruncatedSeries& f) {
  json out;
  out["ring"] = describe(f.ring());
  out["n"] = f.variables();
  out["D"] = f.degree_bound();
  json coeffs = json::array();
  for (const auto& [index, c] : f.coefficients()) coeffs.push_back(json::array({json(index), format_rational(c)}));
  out["coeffs"] = coeffs;
  if (f.tail()) out["tail"] = json{{"C", format_rational(f.tail()->constant)}, {"sigma", to_json(f.tail()->sigma.components)}};
  return out;
}

json to_json(const WeightedFreeModule& m) {
  return json{{"ring", describe(m.ring())}, {"weights", to_json(m.weights())}, {"flavor", m.flavor() == NormFlavor::Sum ? "sum" : "max"}};
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

json to_json(const DaggerPresentation& a) {
  json rels = json::array();
  for (const auto& r : a.relations) rels.push_back(to_json(r));
  return json{{"ring", describe(a.ring)}, {"n", a.variables}, {"rho", to_json(a.rho.components)}, {"relations", rels}};
}

}  // namespace dagger::cli
