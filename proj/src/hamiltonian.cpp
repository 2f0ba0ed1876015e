#include "contactlab/hamiltonian.hpp"

#include <algorithm>
#include <array>

namespace contactlab {

namespace {

struct FamilyInfo {
  Family family;
  std::string_view name;
  std::vector<std::string> params;
  std::vector<double> defaults;
};

const std::array<FamilyInfo, 4>& catalog() {
  static const std::array<FamilyInfo, 4> table{{
      {Family::RadialTwist, "radial_twist", {"amplitude", "exponent", "radius"}, {1.0, 3.0, 1.0}},
      {Family::ZPerturbedTwist,
       "z_perturbed_twist",
       {"amplitude", "exponent", "radius", "epsilon"},
       {1.0, 3.0, 1.0, 0.3}},
      {Family::AnisotropicTwist, "anisotropic_twist", {"amplitude", "exponent", "a", "b"}, {1.0, 3.0, 1.0, 2.0}},
      {Family::HamiltonianLift,
       "hamiltonian_lift",
       {"amplitude", "exponent", "radius", "shear"},
       {1.0, 3.0, 1.0, 0.3}},
  }};
  return table;
}

const FamilyInfo& info(Family f) {
  for (const auto& entry : catalog())
    if (entry.family == f) return entry;
  throw std::invalid_argument("unknown family");
}

}  // namespace

std::string_view family_name(Family f) { return info(f).name; }

Family family_from_name(std::string_view name) {
  for (const auto& entry : catalog())
    if (entry.name == name) return entry.family;
  throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

const std::vector<std::string>& family_parameter_names(Family f) { return info(f).params; }
const std::vector<double>& family_parameter_defaults(Family f) { return info(f).defaults; }

HamiltonianSpec::HamiltonianSpec(Family family, std::vector<double> params, int n)
    : family_(family), params_(std::move(params)), n_(n) {
  const auto& names = family_parameter_names(family);
  if (params_.size() != names.size())
    throw std::invalid_argument(std::string(family_name(family)) + ": expected " +
                                std::to_string(names.size()) + " parameters");
  if (n < 1 || n > kMaxHalfDim)
    throw std::invalid_argument("dimension n must be in [1, " + std::to_string(kMaxHalfDim) + "]");
  for (double v : params_)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite Hamiltonian parameter");

  amplitude_ = params_[0];
  const double p = params_[1];
  if (p < 0 || p != std::floor(p) || p > 16)
    throw std::invalid_argument("exponent must be an integer in [0, 16]");
  exponent_ = static_cast<int>(p);

  switch (family) {
    case Family::RadialTwist:
    case Family::ZPerturbedTwist:
    case Family::HamiltonianLift: {
      const double radius = params_[2];
      if (!(radius > 0)) throw std::invalid_argument("radius must be positive");
      support_.a = support_.b = 1.0 / (radius * radius);
      break;
    }
    case Family::AnisotropicTwist:
      if (!(params_[2] > 0) || !(params_[3] > 0))
        throw std::invalid_argument("anisotropic_twist: a and b must be positive");
      if (params_[2] == params_[3]) throw std::invalid_argument("anisotropic_twist: a must differ from b");
      support_.a = params_[2];
      support_.b = params_[3];
      break;
  }
  if (family == Family::ZPerturbedTwist) {
    epsilon_ = params_[3];
    if (!(std::abs(epsilon_) < 1.0)) throw std::invalid_argument("z_perturbed_twist: |epsilon| must be < 1");
  }
  if (family == Family::HamiltonianLift) {
    shear_ = params_[3];
    if (!(std::abs(shear_) * support_.half_width_x() < 1.0))
      throw std::invalid_argument("hamiltonian_lift: |shear| * radius must be < 1");
  }
  support_.empty = amplitude_ == 0.0;
  positive_ = amplitude_ > 0.0;
}

double HamiltonianSpec::param(std::string_view name) const {
  const auto& names = family_parameter_names(family_);
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw std::invalid_argument("no parameter '" + std::string(name) + "'");
  return params_[static_cast<std::size_t>(it - names.begin())];
}

}  // namespace contactlab
