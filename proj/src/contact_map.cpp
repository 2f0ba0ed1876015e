#include "contactlab/contact_map.hpp"

#include <algorithm>

namespace contactlab {

ContactMap::ContactMap(int n, bool periodic_z, IntegratorSettings settings)
    : n_(n), periodic_z_(periodic_z), settings_(settings) {
  if (n < 1 || n > kMaxHalfDim)
    throw std::invalid_argument("dimension n must be in [1, " + std::to_string(kMaxHalfDim) + "]");
}

ContactMap& ContactMap::append(Atom atom) {
  if (!atom.hamiltonian) throw std::invalid_argument("atom without Hamiltonian");
  if (atom.hamiltonian->n() != n_) throw std::invalid_argument("atom dimension does not match map");
  if (atom.exponent != 1 && atom.exponent != -1) throw std::invalid_argument("atom exponent must be +1 or -1");
  if (periodic_z_ && !atom.hamiltonian->z_periodic())
    throw std::invalid_argument("atom Hamiltonian is not 1-periodic in z");
  word_.push_back(std::move(atom));
  return *this;
}

bool ContactMap::is_identity() const {
  return std::all_of(word_.begin(), word_.end(), [](const Atom& a) { return a.hamiltonian->vanishes(); });
}

bool ContactMap::commutes_with_reeb() const {
  return std::all_of(word_.begin(), word_.end(), [](const Atom& a) { return a.hamiltonian->z_independent(); });
}

bool ContactMap::commutes_with_unit_shift() const {
  return std::all_of(word_.begin(), word_.end(), [](const Atom& a) { return a.hamiltonian->z_periodic(); });
}

bool ContactMap::positive() const {
  return !word_.empty() && std::all_of(word_.begin(), word_.end(), [](const Atom& a) {
    return a.hamiltonian->positive() && a.exponent * (a.t1 - a.t0) > 0;
  });
}

double ContactMap::support_depth(const Point& q) const {
  double depth = -1.0;
  const Vec c = q.coords();
  for (const auto& a : word_) depth = std::max(depth, a.hamiltonian->support().depth(c, n_));
  return depth;
}

std::pair<double, double> ContactMap::support_half_widths() const {
  double hx = 0.0, hy = 0.0;
  for (const auto& a : word_) {
    const auto& s = a.hamiltonian->support();
    if (s.empty) continue;
    hx = std::max(hx, s.half_width_x());
    hy = std::max(hy, s.half_width_y());
  }
  return {hx, hy};
}

MapEvaluation evaluate(const ContactMap& m, const Point& q, bool variations) {
  if (q.n() != m.n()) throw std::invalid_argument("evaluate: point dimension does not match map");
  if (!q.finite()) throw std::invalid_argument("evaluate: point is not finite");
  const int d = m.dim();
  MapEvaluation out;
  out.image = q;
  out.image.periodic_z = m.periodic_z();
  if (variations) {
    out.grad_g = Vec::Zero(d);
    out.jacobian = Mat::Identity(d, d);
  }
  for (const auto& atom : m.word()) {
    const double from = atom.exponent > 0 ? atom.t0 : atom.t1;
    const double to = atom.exponent > 0 ? atom.t1 : atom.t0;
    const auto step = flow<double>(*atom.hamiltonian, out.image, from, to, m.settings(), variations);
    // g_total(q) = g_atom(current image) + g_so_far(q)
    if (variations) {
      out.grad_g = out.jacobian.transpose() * step.grad_g + out.grad_g;
      out.jacobian = step.jacobian * out.jacobian;
    }
    out.g += step.g;
    out.image = step.point;
  }
  return out;
}

ContactMap iterate(const ContactMap& m, int k) {
  if (k < 1) throw std::invalid_argument("iterate: k must be positive");
  ContactMap out(m.n(), m.periodic_z(), m.settings());
  for (int i = 0; i < k; ++i)
    for (const auto& a : m.word()) out.append(a);
  return out;
}

ContactMap inverse(const ContactMap& m) {
  ContactMap out(m.n(), m.periodic_z(), m.settings());
  for (auto it = m.word().rbegin(); it != m.word().rend(); ++it) {
    Atom a = *it;
    a.exponent = -a.exponent;
    out.append(a);
  }
  return out;
}

ContactMap compose(const ContactMap& second, const ContactMap& first) {
  if (second.n() != first.n() || second.periodic_z() != first.periodic_z())
    throw std::invalid_argument("compose: maps live on different manifolds");
  ContactMap out = first;
  for (const auto& a : second.word()) out.append(a);
  return out;
}

HamiltonianSpec make_hamiltonian(std::string_view name, const NamedParams& params, int n) {
  const Family family = family_from_name(name);
  const auto& names = family_parameter_names(family);
  std::vector<double> values = family_parameter_defaults(family);
  for (const auto& [key, value] : params) {
    auto it = std::find(names.begin(), names.end(), key);
    if (it == names.end())
      throw std::invalid_argument(std::string(name) + ": unknown parameter '" + key + "'");
    values[static_cast<std::size_t>(it - names.begin())] = value;
  }
  return HamiltonianSpec(family, values, n);
}

ContactMap make_family(std::string_view name, const NamedParams& params, int n, bool periodic_z,
                       IntegratorSettings settings) {
  ContactMap m(n, periodic_z, settings);
  m.append({std::make_shared<HamiltonianSpec>(make_hamiltonian(name, params, n)), 0.0, 1.0, 1});
  return m;
}

ContactMap make_family(std::string_view name, const std::vector<double>& params, int n, bool periodic_z,
                       IntegratorSettings settings) {
  ContactMap m(n, periodic_z, settings);
  m.append({std::make_shared<HamiltonianSpec>(family_from_name(name), params, n), 0.0, 1.0, 1});
  return m;
}

}  // namespace contactlab
