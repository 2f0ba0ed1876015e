#ifndef CONTACTLAB_CONTACT_MAP_HPP
#define CONTACTLAB_CONTACT_MAP_HPP

#include "contactlab/flow.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace contactlab {

/// One letter of a composition word: the flow of H from t0 to t1 (exponent +1)
/// or its inverse (exponent -1).
struct Atom {
  std::shared_ptr<const HamiltonianSpec> hamiltonian;
  double t0{0.0};
  double t1{1.0};
  int exponent{1};
};

struct MapEvaluation {
  Point image;
  double g{0.0};
  Vec grad_g;
  Mat jacobian;
};

/// A contactomorphism given as an unexpanded word of Hamiltonian flows,
/// applied left to right. The empty word is the identity.
class ContactMap {
 public:
  ContactMap(int n, bool periodic_z, IntegratorSettings settings = {});

  static ContactMap identity(int n, bool periodic_z = false, IntegratorSettings settings = {}) {
    return ContactMap(n, periodic_z, settings);
  }

  ContactMap& append(Atom atom);

  const std::vector<Atom>& word() const { return word_; }
  int n() const { return n_; }
  int dim() const { return 2 * n_ + 1; }
  bool periodic_z() const { return periodic_z_; }
  const IntegratorSettings& settings() const { return settings_; }
  void set_settings(const IntegratorSettings& s) { settings_ = s; }

  /// True when every atom has a vanishing Hamiltonian (or the word is empty).
  bool is_identity() const;
  /// True when every atom is z-independent, so the map commutes with the Reeb flow.
  bool commutes_with_reeb() const;
  /// True when every atom is 1-periodic in z, so the map commutes with the unit Reeb shift.
  bool commutes_with_unit_shift() const;
  /// True when every atom's Hamiltonian is positive on its support.
  bool positive() const;

  /// Largest support depth 1 - u over the atoms; > 0 exactly in the open support.
  double support_depth(const Point& q) const;
  bool in_support(const Point& q) const { return support_depth(q) > 0.0; }
  /// Half-widths (x, y) of a box containing every atom's planar support; zero if empty.
  std::pair<double, double> support_half_widths() const;

 private:
  int n_;
  bool periodic_z_;
  IntegratorSettings settings_;
  std::vector<Atom> word_;
};

/// Image, conformal factor, its gradient and the Jacobian of the composed map.
/// With `variations` false only image and g are computed.
MapEvaluation evaluate(const ContactMap& m, const Point& q, bool variations = true);

ContactMap iterate(const ContactMap& m, int k);
ContactMap inverse(const ContactMap& m);
/// second o first
ContactMap compose(const ContactMap& second, const ContactMap& first);

using NamedParams = std::map<std::string, double>;

/// Builds the time-1 map of a catalog family. Unspecified parameters take
/// their family defaults; unknown names are rejected.
ContactMap make_family(std::string_view name, const NamedParams& params, int n = 1, bool periodic_z = false,
                       IntegratorSettings settings = {});
ContactMap make_family(std::string_view name, const std::vector<double>& params, int n = 1,
                       bool periodic_z = false, IntegratorSettings settings = {});
HamiltonianSpec make_hamiltonian(std::string_view name, const NamedParams& params, int n = 1);

}  // namespace contactlab

#endif  // CONTACTLAB_CONTACT_MAP_HPP
