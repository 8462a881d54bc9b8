#include "ltj/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ltj/errors.hpp"

namespace ltj {

double canonical(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

namespace {

json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return canonical(x);
}

template <typename T>
json optional_number(const std::optional<T>& x) {
  if (!x) return nullptr;
  if constexpr (std::is_floating_point_v<T>)
    return number(*x);
  else
    return *x;
}

json complex_to_json(cplx z) { return json::array({number(z.real()), number(z.imag())}); }

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(where.empty() ? key : where + "." + key, "missing field");
  return *it;
}

cplx complex_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw SchemaError(field, "expected a [re, im] pair of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<cplx> complex_list(const json& j, const std::string& field) {
  if (!j.is_array()) throw SchemaError(field, "expected an array of [re, im] pairs");
  std::vector<cplx> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(complex_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

Site site_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw SchemaError(field, "expected an array of integer coordinates");
  Site s;
  for (const auto& c : j) {
    if (!c.is_number_integer()) throw SchemaError(field, "coordinates must be integers");
    s.push_back(c.get<int>());
  }
  return s;
}

int positive_int(const json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() < 1) throw SchemaError(field, "expected a positive integer");
  return j.get<int>();
}

TruncationMode mode_from_json(const json& j) {
  auto it = j.find("mode");
  if (it == j.end()) return TruncationMode::Hard;
  if (!it->is_string()) throw SchemaError("mode", "expected \"hard\" or \"approximate\"");
  const std::string m = it->get<std::string>();
  if (m == "hard") return TruncationMode::Hard;
  if (m == "approximate") return TruncationMode::Approximate;
  throw SchemaError("mode", "expected \"hard\" or \"approximate\", got \"" + m + "\"");
}

json site_to_json(const Site& s) { return json(s); }

}  // namespace

OperatorSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("<root>", "expected an object");
  const json& type = member(j, "type", "");
  if (!type.is_string()) throw SchemaError("type", "expected \"jacobi1d\" or \"lattice\"");
  const std::string t = type.get<std::string>();

  try {
    if (t == "jacobi1d") {
      Jacobi1D s;
      if (j.contains("a")) s.a = complex_list(j["a"], "a");
      if (j.contains("b")) s.b = complex_list(j["b"], "b");
      if (j.contains("n")) s.truncation_size = static_cast<std::size_t>(positive_int(j["n"], "n"));
      s.mode = mode_from_json(j);
      s.validate();
      return s;
    }
    if (t == "lattice") {
      LatticeJacobi l;
      l.nu = positive_int(member(j, "nu", ""), "nu");
      l.box_side = positive_int(member(j, "box_side", ""), "box_side");
      l.mode = mode_from_json(j);
      if (j.contains("a")) {
        const json& a = j["a"];
        if (!a.is_array()) throw SchemaError("a", "expected an array of {bond, value} objects");
        for (std::size_t i = 0; i < a.size(); ++i) {
          const std::string f = "a[" + std::to_string(i) + "]";
          const json& bond = member(a[i], "bond", f);
          if (!bond.is_array() || bond.size() != 2) throw SchemaError(f + ".bond", "expected a pair of sites");
          l.set_bond(site_from_json(bond[0], f + ".bond[0]"), site_from_json(bond[1], f + ".bond[1]"),
                     complex_from_json(member(a[i], "value", f), f + ".value"));
        }
      }
      if (j.contains("b")) {
        const json& b = j["b"];
        if (!b.is_array()) throw SchemaError("b", "expected an array of {site, value} objects");
        for (std::size_t i = 0; i < b.size(); ++i) {
          const std::string f = "b[" + std::to_string(i) + "]";
          l.set_potential(site_from_json(member(b[i], "site", f), f + ".site"),
                          complex_from_json(member(b[i], "value", f), f + ".value"));
        }
      }
      l.validate();
      return l;
    }
  } catch (const InvalidSpec& e) {
    throw SchemaError(t == "jacobi1d" ? "n" : "a/b", e.what());
  }
  throw SchemaError("type", "expected \"jacobi1d\" or \"lattice\", got \"" + t + "\"");
}

json spec_to_json(const OperatorSpec& spec) {
  if (const auto* s = std::get_if<Jacobi1D>(&spec)) {
    json j{{"type", "jacobi1d"}, {"a", json::array()}, {"b", json::array()}};
    for (cplx c : s->a) j["a"].push_back(complex_to_json(c));
    for (cplx c : s->b) j["b"].push_back(complex_to_json(c));
    j["n"] = s->size();
    j["mode"] = to_string(s->mode);
    return j;
  }
  const auto& l = std::get<LatticeJacobi>(spec);
  json j{{"type", "lattice"}, {"nu", l.nu}, {"box_side", l.box_side}, {"a", json::array()}, {"b", json::array()}};
  for (const auto& [bond, v] : l.bonds)
    j["a"].push_back({{"bond", {site_to_json(bond.first), site_to_json(bond.second)}}, {"value", complex_to_json(v)}});
  for (const auto& [site, v] : l.potential)
    j["b"].push_back({{"site", site_to_json(site)}, {"value", complex_to_json(v)}});
  j["mode"] = to_string(l.mode);
  return j;
}

OperatorSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("<file>", "cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("<root>", std::string("invalid JSON: ") + e.what());
  }
  return spec_from_json(j);
}

json spectrum_to_json(const Spectrum& s) {
  json out = json::array();
  for (const auto& e : s.eigenvalues)
    out.push_back({{"re", number(e.value.real())},
                   {"im", number(e.value.imag())},
                   {"mult", e.multiplicity},
                   {"residual", number(e.residual)}});
  return out;
}

json report_to_json(const BoundReport& r) {
  return {{"theorem", to_string(r.theorem)},
          {"p", number(r.p)},
          {"alpha", optional_number(r.alpha)},
          {"theta", optional_number(r.theta)},
          {"nu", optional_number(r.nu)},
          {"lhs", number(r.lhs)},
          {"rhs", number(r.rhs)},
          {"ratio", number(r.ratio)},
          {"holds", r.holds},
          {"mode", to_string(r.mode)},
          {"diagnostics", r.diagnostics}};
}

json reports_to_json(const std::vector<BoundReport>& reports) {
  json out = json::array();
  for (const auto& r : reports) out.push_back(report_to_json(r));
  return out;
}

json majorization_to_json(const MajorizationReport& r) {
  json margins = json::array();
  for (const auto& m : r.margins)
    margins.push_back({m.n, number(m.lhs), number(m.rhs), number(m.slack)});
  return {{"alpha", number(r.alpha)}, {"branch", r.branch}, {"margins", margins}, {"holds", r.holds}};
}

void write_reports_csv(std::ostream& os, const std::vector<BoundReport>& reports) {
  auto cell = [](double x) {
    if (!std::isfinite(x)) return std::string(std::isnan(x) ? "nan" : "inf");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::string(buf);
  };
  os << "theorem,p,alpha,theta,nu,lhs,rhs,ratio,holds,mode,diagnostics\n";
  for (const auto& r : reports) {
    std::string diag = r.diagnostics;
    std::string quoted;
    for (char c : diag) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    os << to_string(r.theorem) << ',' << cell(r.p) << ',' << (r.alpha ? cell(*r.alpha) : "") << ','
       << (r.theta ? cell(*r.theta) : "") << ',' << (r.nu ? std::to_string(*r.nu) : "") << ',' << cell(r.lhs) << ','
       << cell(r.rhs) << ',' << cell(r.ratio) << ',' << (r.holds ? "true" : "false") << ',' << to_string(r.mode)
       << ",\"" << quoted << "\"\n";
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace ltj
