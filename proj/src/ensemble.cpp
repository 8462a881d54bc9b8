#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ltj/errors.hpp"
#include "ltj/harness.hpp"

namespace ltj {

namespace {

// SplitMix64 finalizer; decorrelates per-spec seeds.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// std::uniform_real_distribution is not pinned down across standard
// libraries; these draws are.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(unit(rng) * static_cast<double>(n)); }

cplx sample(Distribution d, double cap, std::mt19937_64& rng) {
  switch (d) {
    case Distribution::UniformDisc: {
      const double r = cap * std::sqrt(unit(rng));
      const double phi = 2.0 * std::numbers::pi * unit(rng);
      return std::polar(r, phi);
    }
    case Distribution::Gaussian: {
      const double u1 = 1.0 - unit(rng);
      const double u2 = unit(rng);
      const double rad = std::sqrt(-2.0 * std::log(u1)) * cap / 2.0;
      cplx z = std::polar(rad, 2.0 * std::numbers::pi * u2);
      if (std::abs(z) > cap) z *= cap / std::abs(z);
      return z;
    }
    case Distribution::RealOnly:
      return {cap * (2.0 * unit(rng) - 1.0), 0.0};
    case Distribution::ImaginaryOnly:
      return {0.0, cap * (2.0 * unit(rng) - 1.0)};
    case Distribution::Mixed:
      break;
  }
  throw std::logic_error("mixed distribution must be resolved per spec");
}

Distribution parse_distribution(const std::string& s) {
  if (s == "uniform_disc") return Distribution::UniformDisc;
  if (s == "gaussian") return Distribution::Gaussian;
  if (s == "real") return Distribution::RealOnly;
  if (s == "imaginary") return Distribution::ImaginaryOnly;
  if (s == "mixed") return Distribution::Mixed;
  throw SchemaError("distribution", "unknown distribution '" + s + "'");
}

const char* to_string(Distribution d) {
  switch (d) {
    case Distribution::UniformDisc: return "uniform_disc";
    case Distribution::Gaussian: return "gaussian";
    case Distribution::RealOnly: return "real";
    case Distribution::ImaginaryOnly: return "imaginary";
    case Distribution::Mixed: return "mixed";
  }
  return "?";
}

std::vector<double> number_list(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array()) throw SchemaError(field, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) throw SchemaError(field, "expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

Jacobi1D make_1d(const EnsembleConfig& cfg, Distribution d, std::mt19937_64& rng) {
  const std::size_t k = cfg.support_min + uniform_index(rng, cfg.support_max - cfg.support_min + 1);
  Jacobi1D s;
  s.mode = cfg.mode;
  for (std::size_t i = 0; i < k; ++i) s.b.push_back(sample(d, cfg.cap, rng));
  for (std::size_t i = 0; i + 1 < k; ++i) s.a.push_back(1.0 + sample(d, cfg.cap, rng));
  s.truncation_size = k + cfg.margin;
  return s;
}

LatticeJacobi make_lattice(const EnsembleConfig& cfg, Distribution d, std::mt19937_64& rng) {
  LatticeJacobi l;
  l.nu = cfg.nu;
  l.box_side = cfg.box_side;
  l.mode = cfg.mode;
  const std::size_t k = cfg.support_min + uniform_index(rng, cfg.support_max - cfg.support_min + 1);
  const int inner = cfg.box_side - 2;  // interior coordinates 2 .. L-1
  auto interior_site = [&] {
    Site s(static_cast<std::size_t>(cfg.nu));
    for (auto& c : s) c = 2 + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(inner)));
    return s;
  };
  for (std::size_t i = 0; i < k; ++i) l.set_potential(interior_site(), sample(d, cfg.cap, rng));
  if (inner >= 2) {
    for (std::size_t i = 0; i < k; ++i) {
      Site x = interior_site();
      const auto dim = uniform_index(rng, static_cast<std::size_t>(cfg.nu));
      Site y = x;
      y[dim] = x[dim] < cfg.box_side - 1 ? x[dim] + 1 : x[dim] - 1;
      l.set_bond(x, y, 1.0 + sample(d, cfg.cap, rng));
    }
  }
  return l;
}

}  // namespace

void EnsembleConfig::validate() const {
  if (count < 1) throw SchemaError("count", "must be >= 1");
  if (support_min < 1 || support_max < support_min) throw SchemaError("support_min", "need 1 <= support_min <= support_max");
  if (!(cap >= 0.0)) throw SchemaError("cap", "must be nonnegative");
  if (family == Family::Lattice) {
    if (nu < 1) throw SchemaError("nu", "must be positive");
    if (box_side < 3) throw SchemaError("box_side", "needs at least one interior site (box_side >= 3)");
  }
  if (grid.p.empty()) throw SchemaError("p", "grid must be nonempty");
  for (double p : grid.p)
    if (!(p >= 1.0)) throw SchemaError("p", "exponents must be >= 1");
  for (double t : grid.theta)
    if (!(t >= 0.0 && t < std::numbers::pi / 2)) throw SchemaError("theta", "angles must lie in [0, pi/2)");
}

EnsembleConfig EnsembleConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("<root>", "expected an object");
  EnsembleConfig c;
  auto get_size = [&](const char* key, std::size_t& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer() || j[key].get<long long>() < 0) throw SchemaError(key, "expected a nonnegative integer");
    out = j[key].get<std::size_t>();
  };
  if (j.contains("family")) {
    const auto f = j["family"].is_string() ? j["family"].get<std::string>() : std::string();
    if (f == "1d")
      c.family = Family::OneD;
    else if (f == "lattice")
      c.family = Family::Lattice;
    else
      throw SchemaError("family", "expected \"1d\" or \"lattice\"");
  }
  get_size("support_min", c.support_min);
  get_size("support_max", c.support_max);
  get_size("count", c.count);
  get_size("margin", c.margin);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) throw SchemaError("seed", "expected an integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("cap")) {
    if (!j["cap"].is_number()) throw SchemaError("cap", "expected a number");
    c.cap = j["cap"].get<double>();
  }
  if (j.contains("distribution")) {
    if (!j["distribution"].is_string()) throw SchemaError("distribution", "expected a string");
    c.distribution = parse_distribution(j["distribution"].get<std::string>());
  }
  if (j.contains("mode")) {
    const auto m = j["mode"].is_string() ? j["mode"].get<std::string>() : std::string();
    if (m != "hard" && m != "approximate") throw SchemaError("mode", "expected \"hard\" or \"approximate\"");
    c.mode = parse_mode(m);
  }
  if (j.contains("nu")) {
    if (!j["nu"].is_number_integer()) throw SchemaError("nu", "expected an integer");
    c.nu = j["nu"].get<int>();
  }
  if (j.contains("box_side")) {
    if (!j["box_side"].is_number_integer()) throw SchemaError("box_side", "expected an integer");
    c.box_side = j["box_side"].get<int>();
  }
  if (j.contains("p")) c.grid.p = number_list(j["p"], "p");
  if (j.contains("alpha")) c.grid.alpha = number_list(j["alpha"], "alpha");
  if (j.contains("theta")) c.grid.theta = number_list(j["theta"], "theta");
  if (j.contains("lemma_alpha")) c.lemma_alpha = number_list(j["lemma_alpha"], "lemma_alpha");
  c.validate();
  return c;
}

nlohmann::json EnsembleConfig::to_json() const {
  return {{"family", family == Family::OneD ? "1d" : "lattice"},
          {"support_min", support_min},
          {"support_max", support_max},
          {"cap", cap},
          {"distribution", to_string(distribution)},
          {"count", count},
          {"seed", seed},
          {"mode", ltj::to_string(mode)},
          {"margin", margin},
          {"nu", nu},
          {"box_side", box_side},
          {"p", grid.p},
          {"alpha", grid.alpha},
          {"theta", grid.theta},
          {"lemma_alpha", lemma_alpha}};
}

std::vector<OperatorSpec> generate_ensemble(const EnsembleConfig& cfg) {
  cfg.validate();
  std::vector<OperatorSpec> out;
  out.reserve(cfg.count);
  constexpr Distribution kCycle[] = {Distribution::UniformDisc, Distribution::Gaussian, Distribution::RealOnly,
                                     Distribution::ImaginaryOnly};
  for (std::size_t i = 0; i < cfg.count; ++i) {
    std::mt19937_64 rng(mix(cfg.seed ^ mix(i)));
    const Distribution d = cfg.distribution == Distribution::Mixed ? kCycle[i % 4] : cfg.distribution;
    if (cfg.family == Family::OneD)
      out.emplace_back(make_1d(cfg, d, rng));
    else
      out.emplace_back(make_lattice(cfg, d, rng));
  }
  return out;
}

}  // namespace ltj
