#include "ltj/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ltj/errors.hpp"

namespace ltj {

const char* to_string(TruncationMode mode) {
  return mode == TruncationMode::Hard ? "hard" : "approximate";
}

TruncationMode parse_mode(const std::string& s) {
  if (s == "hard") return TruncationMode::Hard;
  if (s == "approximate" || s == "approx") return TruncationMode::Approximate;
  throw InvalidSpec("unknown truncation mode '" + s + "'");
}

// ---- Jacobi1D ---------------------------------------------------------------

std::size_t Jacobi1D::support_extent() const { return std::max(a.size() + 1, b.size()); }

std::size_t Jacobi1D::size() const {
  return truncation_size == 0 ? support_extent() + kDefaultMargin : truncation_size;
}

void Jacobi1D::validate() const {
  if (truncation_size != 0 && truncation_size < support_extent()) {
    std::ostringstream os;
    os << "truncation_size " << truncation_size << " clips the perturbation support; required minimum is "
       << support_extent();
    throw InvalidSpec(os.str());
  }
}

ComplexMatrix build_1d(const Jacobi1D& spec) {
  spec.validate();
  const std::size_t n = spec.size();
  ComplexMatrix m(n);
  for (std::size_t k = 0; k < n; ++k) {
    m(k, k) = k < spec.b.size() ? spec.b[k] : cplx{};
    if (k + 1 < n) {
      const cplx a = k < spec.a.size() ? spec.a[k] : cplx{1.0};
      m(k, k + 1) = a;
      m(k + 1, k) = a;
    }
  }
  return m;
}

// ---- LatticeJacobi ----------------------------------------------------------

Bond make_bond(Site x, Site y) {
  if (y < x) std::swap(x, y);
  return {std::move(x), std::move(y)};
}

namespace {

bool adjacent(const Site& x, const Site& y) {
  if (x.size() != y.size()) return false;
  int dist = 0;
  for (std::size_t d = 0; d < x.size(); ++d) dist += std::abs(x[d] - y[d]);
  return dist == 1;
}

std::string site_str(const Site& s) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << ')';
  return os.str();
}

}  // namespace

void LatticeJacobi::set_bond(const Site& x, const Site& y, cplx value) { bonds[make_bond(x, y)] = value; }

void LatticeJacobi::set_potential(const Site& x, cplx value) { potential[x] = value; }

std::size_t LatticeJacobi::order() const {
  std::size_t n = 1;
  for (int d = 0; d < nu; ++d) n *= static_cast<std::size_t>(box_side);
  return n;
}

std::size_t LatticeJacobi::index_of(const Site& x) const {
  std::size_t idx = 0;
  for (int d = 0; d < nu; ++d) idx = idx * static_cast<std::size_t>(box_side) + static_cast<std::size_t>(x[d] - 1);
  return idx;
}

Site LatticeJacobi::site_at(std::size_t index) const {
  Site s(static_cast<std::size_t>(nu));
  for (int d = nu - 1; d >= 0; --d) {
    s[static_cast<std::size_t>(d)] = static_cast<int>(index % static_cast<std::size_t>(box_side)) + 1;
    index /= static_cast<std::size_t>(box_side);
  }
  return s;
}

bool LatticeJacobi::on_boundary(const Site& x) const {
  return std::any_of(x.begin(), x.end(), [&](int c) { return c == 1 || c == box_side; });
}

std::size_t LatticeJacobi::cut_bond_count() const {
  std::size_t face = 1;
  for (int d = 0; d + 1 < nu; ++d) face *= static_cast<std::size_t>(box_side);
  return 2 * static_cast<std::size_t>(nu) * face;
}

void LatticeJacobi::validate() const {
  if (nu < 1) throw InvalidSpec("lattice dimension nu must be positive");
  if (box_side < 1) throw InvalidSpec("box_side must be positive");
  auto check_site = [&](const Site& s) {
    if (s.size() != static_cast<std::size_t>(nu))
      throw InvalidSpec("site " + site_str(s) + " has wrong dimension");
    for (int c : s)
      if (c < 1 || c > box_side) throw InvalidSpec("site " + site_str(s) + " lies outside the box");
  };
  for (const auto& [site, value] : potential) check_site(site);
  for (const auto& [bond, value] : bonds) {
    check_site(bond.first);
    check_site(bond.second);
    if (!(bond.first < bond.second)) throw InvalidSpec("bond key " + site_str(bond.first) + " not normalized");
    if (!adjacent(bond.first, bond.second))
      throw InvalidSpec("bond " + site_str(bond.first) + "-" + site_str(bond.second) + " is not nearest-neighbour");
  }
}

std::vector<std::string> LatticeJacobi::warnings() const {
  std::vector<std::string> out;
  if (mode != TruncationMode::Approximate) return out;
  for (const auto& [site, value] : potential)
    if (on_boundary(site)) out.push_back("potential at " + site_str(site) + " touches the box face");
  for (const auto& [bond, value] : bonds)
    if (on_boundary(bond.first) || on_boundary(bond.second))
      out.push_back("bond " + site_str(bond.first) + "-" + site_str(bond.second) + " touches the box face");
  return out;
}

ComplexMatrix build_lattice(const LatticeJacobi& spec) {
  spec.validate();
  const std::size_t n = spec.order();
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    Site x = spec.site_at(i);
    if (auto it = spec.potential.find(x); it != spec.potential.end()) m(i, i) = it->second;
    for (int d = 0; d < spec.nu; ++d) {
      Site y = x;
      y[static_cast<std::size_t>(d)] += 1;
      if (y[static_cast<std::size_t>(d)] > spec.box_side) continue;
      const std::size_t j = spec.index_of(y);
      cplx a{1.0};
      if (auto it = spec.bonds.find(make_bond(x, y)); it != spec.bonds.end()) a = it->second;
      m(i, j) = a;
      m(j, i) = a;
    }
  }
  return m;
}

// ---- OperatorSpec -----------------------------------------------------------

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double tilt_value(cplx c, double alpha) { return c.real() + alpha * c.imag(); }

}  // namespace

double spectral_edge(const OperatorSpec& spec) {
  return std::visit(overloaded{[](const Jacobi1D&) { return 2.0; },
                               [](const LatticeJacobi& l) { return 2.0 * l.nu; }},
                    spec);
}

bool is_real(const OperatorSpec& spec) {
  auto real = [](cplx c) { return c.imag() == 0.0; };
  return std::visit(overloaded{[&](const Jacobi1D& s) {
                                 return std::all_of(s.a.begin(), s.a.end(), real) &&
                                        std::all_of(s.b.begin(), s.b.end(), real);
                               },
                               [&](const LatticeJacobi& l) {
                                 return std::all_of(l.bonds.begin(), l.bonds.end(),
                                                    [&](const auto& kv) { return real(kv.second); }) &&
                                        std::all_of(l.potential.begin(), l.potential.end(),
                                                    [&](const auto& kv) { return real(kv.second); });
                               }},
                    spec);
}

TruncationMode mode_of(const OperatorSpec& spec) {
  return std::visit([](const auto& s) { return s.mode; }, spec);
}

std::size_t order_of(const OperatorSpec& spec) {
  return std::visit(overloaded{[](const Jacobi1D& s) { return s.size(); },
                               [](const LatticeJacobi& l) { return l.order(); }},
                    spec);
}

ComplexMatrix build(const OperatorSpec& spec) {
  return std::visit(overloaded{[](const Jacobi1D& s) { return build_1d(s); },
                               [](const LatticeJacobi& l) { return build_lattice(l); }},
                    spec);
}

Jacobi1D tilt(const Jacobi1D& spec, double alpha) {
  Jacobi1D out = spec;
  for (auto& c : out.a) c = tilt_value(c, alpha);
  for (auto& c : out.b) c = tilt_value(c, alpha);
  return out;
}

LatticeJacobi tilt(const LatticeJacobi& spec, double alpha) {
  LatticeJacobi out = spec;
  for (auto& [k, c] : out.bonds) c = tilt_value(c, alpha);
  for (auto& [k, c] : out.potential) c = tilt_value(c, alpha);
  return out;
}

OperatorSpec tilt(const OperatorSpec& spec, double alpha) {
  return std::visit([&](const auto& s) -> OperatorSpec { return tilt(s, alpha); }, spec);
}

ComplexMatrix hermitian_tilt(const ComplexMatrix& m, double alpha) {
  const std::size_t n = m.order();
  const cplx i_unit{0.0, 1.0};
  ComplexMatrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const cplx x = m(r, c);
      const cplx y = std::conj(m(c, r));
      out(r, c) = 0.5 * (x + y) + alpha * (x - y) / (2.0 * i_unit);
    }
  return out;
}

Jacobi1D adjoint_spec(const Jacobi1D& spec) {
  Jacobi1D out = spec;
  for (auto& c : out.a) c = std::conj(c);
  for (auto& c : out.b) c = std::conj(c);
  return out;
}

LatticeJacobi adjoint_spec(const LatticeJacobi& spec) {
  LatticeJacobi out = spec;
  for (auto& [k, c] : out.bonds) c = std::conj(c);
  for (auto& [k, c] : out.potential) c = std::conj(c);
  return out;
}

OperatorSpec adjoint_spec(const OperatorSpec& spec) {
  return std::visit([](const auto& s) -> OperatorSpec { return adjoint_spec(s); }, spec);
}

OperatorSpec doubled(const OperatorSpec& spec) {
  return std::visit(overloaded{[](const Jacobi1D& s) -> OperatorSpec {
                                 Jacobi1D out = s;
                                 out.truncation_size = 2 * s.size();
                                 return out;
                               },
                               [](const LatticeJacobi& l) -> OperatorSpec {
                                 // Shift the support to the centre so it moves away from every face.
                                 const int shift = l.box_side / 2;
                                 auto moved = [shift](Site x) {
                                   for (auto& c : x) c += shift;
                                   return x;
                                 };
                                 LatticeJacobi out;
                                 out.nu = l.nu;
                                 out.box_side = 2 * l.box_side;
                                 out.mode = l.mode;
                                 for (const auto& [bond, v] : l.bonds) out.set_bond(moved(bond.first), moved(bond.second), v);
                                 for (const auto& [site, v] : l.potential) out.set_potential(moved(site), v);
                                 return out;
                               }},
                    spec);
}

double perturbation_terms(const OperatorSpec& spec, double q, const TermSelector& sel) {
  auto site_term = [&](cplx b) {
    const double x = tilt_value(b, sel.alpha);
    switch (sel.map) {
      case CoefficientMap::Modulus: return std::abs(b);
      case CoefficientMap::RealPart: return std::abs(b.real());
      case CoefficientMap::Tilt: return std::abs(x);
      case CoefficientMap::TiltPositive: return std::max(x, 0.0);
      case CoefficientMap::TiltNegative: return -std::min(x, 0.0);
    }
    return 0.0;
  };
  auto bond_term = [&](cplx a) {
    switch (sel.map) {
      case CoefficientMap::Modulus: return std::abs(a - 1.0);
      case CoefficientMap::RealPart: return std::abs(a.real() - 1.0);
      default: return std::abs(tilt_value(a, sel.alpha) - 1.0);
    }
  };

  double sites = 0.0;
  double bonds = 0.0;
  std::size_t cut = 0;
  std::visit(overloaded{[&](const Jacobi1D& s) {
                          for (cplx b : s.b) sites += std::pow(site_term(b), q);
                          for (cplx a : s.a) bonds += std::pow(bond_term(a), q);
                          cut = s.mode == TruncationMode::Hard ? 1 : 0;
                        },
                        [&](const LatticeJacobi& l) {
                          for (const auto& [k, b] : l.potential) sites += std::pow(site_term(b), q);
                          for (const auto& [k, a] : l.bonds) bonds += std::pow(bond_term(a), q);
                          cut = l.mode == TruncationMode::Hard ? l.cut_bond_count() : 0;
                        }},
             spec);
  // Every cut coupling is a_b = 0, mapped to |0 - 1| = 1 by all selectors.
  bonds += static_cast<double>(cut);
  return sites + sel.bond_weight * bonds;
}

}  // namespace ltj
