#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "contactlab/contact_map.hpp"
#include "oracles.hpp"

#include <numbers>
#include <random>

using namespace contactlab;
using std::numbers::pi;

namespace {

const NamedParams kQuadratic{{"amplitude", pi}, {"exponent", 2}, {"radius", 1}};

double integrator_tol(const ContactMap& m, const Point& q) {
  double est = 0.0;
  Point cur = q;
  for (const auto& a : m.word()) {
    const double from = a.exponent > 0 ? a.t0 : a.t1, to = a.exponent > 0 ? a.t1 : a.t0;
    est = std::max(est, flow_error_estimate(*a.hamiltonian, cur, from, to, m.settings()));
    cur = flow(*a.hamiltonian, cur, from, to, m.settings(), false).point;
  }
  return est;
}

double max_diff(const MapEvaluation& a, const MapEvaluation& b) {
  double d = (a.image.coords() - b.image.coords()).cwiseAbs().maxCoeff();
  d = std::max(d, std::abs(a.g - b.g));
  if (a.jacobian.size() && b.jacobian.size()) d = std::max(d, (a.jacobian - b.jacobian).cwiseAbs().maxCoeff());
  return d;
}

}  // namespace

TEST_CASE("identity word") {
  const ContactMap id = ContactMap::identity(1);
  CHECK(id.is_identity());
  const Point q = make_point(0.3, 0.4, -2.0);
  const auto e = evaluate(id, q);
  CHECK(e.image.coords() == q.coords());
  CHECK(e.g == 0.0);
  CHECK(e.jacobian == Mat::Identity(3, 3));
  CHECK(inverse(id).word().empty());
  CHECK(make_family("radial_twist", {{"amplitude", 0.0}}).is_identity());
}

TEST_CASE("quadratic radial twist on the axis") {
  const ContactMap m = make_family("radial_twist", kQuadratic);
  CHECK(m.positive());
  const auto e = evaluate(m, make_point(0, 0, 0));
  CHECK(std::abs(e.image.x(0)) < 1e-15);
  CHECK(std::abs(e.image.y(0)) < 1e-15);
  CHECK(e.image.z == doctest::Approx(pi).epsilon(1e-12));
  CHECK(e.g == 0.0);

  const auto e3 = evaluate(iterate(m, 3), make_point(0, 0, 0));
  CHECK(e3.image.z == doctest::Approx(3 * pi).epsilon(1e-12));
}

TEST_CASE("phi after phi^-1 is the identity within 10x integrator tolerance") {
  std::mt19937_64 rng(11);
  for (const char* name : {"radial_twist", "z_perturbed_twist", "anisotropic_twist", "hamiltonian_lift"}) {
    const ContactMap m = make_family(name, NamedParams{});
    const ContactMap round = compose(inverse(m), m);
    CHECK(round.word().size() == 2);
    for (int i = 0; i < 20; ++i) {
      const Point q = oracle::random_disk_point(rng, 0.9);
      const auto e = evaluate(round, q);
      const double tol = 10 * std::max(integrator_tol(m, q), 1e-13);
      CHECK((e.image.coords() - q.coords()).cwiseAbs().maxCoeff() <= tol);
      CHECK(std::abs(e.g) <= tol);
    }
  }
}

TEST_CASE("iterate") {
  const ContactMap m = make_family("z_perturbed_twist", NamedParams{});
  CHECK(iterate(m, 1).word().size() == m.word().size());
  CHECK_THROWS_AS(iterate(m, 0), std::invalid_argument);
  std::mt19937_64 rng(12);
  for (int i = 0; i < 30; ++i) {
    const Point q = oracle::random_disk_point(rng, 0.9);
    const auto e1 = evaluate(m, q);
    const auto e2 = evaluate(iterate(m, 2), q);
    const auto e1b = evaluate(m, e1.image);
    CHECK(std::abs(e2.g - (e1b.g + e1.g)) <= 1e-12);
    CHECK((e2.image.coords() - e1b.image.coords()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("cocycle g_k = sum of g along the orbit") {
  std::mt19937_64 rng(13);
  const ContactMap m = make_family("z_perturbed_twist", {{"epsilon", 0.6}});
  for (int i = 0; i < 20; ++i) {
    const Point q = oracle::random_disk_point(rng, 0.9);
    Point cur = q;
    double sum = 0.0;
    for (int k = 1; k <= 5; ++k) {
      const auto step = evaluate(m, cur, false);
      sum += step.g;
      cur = step.image;
      CHECK(std::abs(evaluate(iterate(m, k), q, false).g - sum) <= 1e-8);
    }
  }
}

TEST_CASE("inverse conformal factor is antisymmetric") {
  const ContactMap m = make_family("z_perturbed_twist", {{"epsilon", 0.5}});
  const ContactMap mi = inverse(m);
  std::mt19937_64 rng(14);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Point q = oracle::random_disk_point(rng, 1.0);
    const auto e = evaluate(m, q, false);
    worst = std::max(worst, std::abs(evaluate(mi, e.image, false).g + e.g));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("z_perturbed_twist with epsilon = 0 is radial_twist") {
  const ContactMap a = make_family("z_perturbed_twist", {{"epsilon", 0.0}});
  const ContactMap b = make_family("radial_twist", NamedParams{});
  std::mt19937_64 rng(15);
  for (int i = 0; i < 100; ++i) {
    const Point q = oracle::random_disk_point(rng, 1.0);
    CHECK(max_diff(evaluate(a, q), evaluate(b, q)) <= 1e-12);
  }
}

TEST_CASE("evaluations short-circuit outside the support") {
  for (const char* name : {"radial_twist", "z_perturbed_twist", "anisotropic_twist", "hamiltonian_lift"}) {
    const ContactMap m = make_family(name, NamedParams{});
    const auto [hx, hy] = m.support_half_widths();
    for (const Point& q : {make_point(1.01 * hx, 0, 0.3), make_point(0, -1.01 * hy, 5.0), make_point(3, 3, -1)}) {
      CHECK_FALSE(m.in_support(q));
      const auto e = evaluate(m, q);
      CHECK(e.image.coords() == q.coords());
      CHECK(e.g == 0.0);
      CHECK(e.grad_g.cwiseAbs().maxCoeff() == 0.0);
      CHECK(e.jacobian == Mat::Identity(3, 3));
    }
  }
}

TEST_CASE("composition evaluates left to right") {
  const ContactMap m1 = make_family("z_perturbed_twist", NamedParams{});
  const ContactMap m2 = make_family("anisotropic_twist", NamedParams{});
  const ContactMap c = compose(m2, m1);
  std::mt19937_64 rng(16);
  for (int i = 0; i < 20; ++i) {
    const Point q = oracle::random_disk_point(rng, 0.9);
    const auto e1 = evaluate(m1, q);
    const auto e2 = evaluate(m2, e1.image);
    const auto ec = evaluate(c, q);
    CHECK((ec.image.coords() - e2.image.coords()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(ec.g - (e1.g + e2.g)) <= 1e-12);
    CHECK((ec.jacobian - e2.jacobian * e1.jacobian).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((ec.grad_g - (e1.jacobian.transpose() * e2.grad_g + e1.grad_g)).cwiseAbs().maxCoeff() <= 1e-10);
  }
  CHECK_THROWS_AS(compose(make_family("radial_twist", NamedParams{}, 2), m1), std::invalid_argument);
  CHECK_THROWS_AS(compose(make_family("radial_twist", NamedParams{}, 1, true), m1), std::invalid_argument);
}

TEST_CASE("composed Jacobian and grad g match central differences") {
  const ContactMap m = compose(make_family("anisotropic_twist", NamedParams{}),
                               iterate(make_family("z_perturbed_twist", {{"epsilon", 0.4}}), 2));
  std::mt19937_64 rng(17);
  for (int i = 0; i < 10; ++i) {
    const Point q = oracle::random_disk_point(rng, 0.8);
    const auto e = evaluate(m, q);
    const Eigen::MatrixXd J = oracle::jacobian_fd(
        [&](const Vec& p) { return Eigen::VectorXd(evaluate(m, Point::from_coords(p), false).image.coords()); },
        q.coords());
    const Eigen::MatrixXd G = oracle::jacobian_fd(
        [&](const Vec& p) { return Eigen::VectorXd::Constant(1, evaluate(m, Point::from_coords(p), false).g); },
        q.coords());
    CHECK(oracle::rel_err(e.jacobian, J) <= 1e-5);
    CHECK(oracle::rel_err(e.grad_g.transpose(), G) <= 1e-5);
  }
}

TEST_CASE("family construction errors") {
  CHECK_THROWS_AS(make_family("spiral", NamedParams{}), std::invalid_argument);
  CHECK_THROWS_AS(make_family("z_perturbed_twist", {{"epsilon", 1.5}}), std::invalid_argument);
  CHECK_THROWS_AS(make_family("anisotropic_twist", {{"a", 1.0}, {"b", 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_family("hamiltonian_lift", {{"shear", 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_family("radial_twist", std::vector<double>{1.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(ContactMap(0, false), std::invalid_argument);
}

TEST_CASE("map flags") {
  CHECK(make_family("radial_twist", NamedParams{}).commutes_with_reeb());
  CHECK_FALSE(make_family("z_perturbed_twist", NamedParams{}).commutes_with_reeb());
  CHECK(make_family("z_perturbed_twist", NamedParams{}).commutes_with_unit_shift());
  CHECK(make_family("hamiltonian_lift", NamedParams{}).positive());
  CHECK_FALSE(inverse(make_family("radial_twist", NamedParams{})).positive());
  CHECK_FALSE(make_family("radial_twist", {{"amplitude", -1.0}}).positive());
}

// F = phi_3 - z for the lift: dF = phi^*lambda - lambda, and F agrees with a
// quadrature of dF/dx from outside the support.
TEST_CASE("hamiltonian_lift primitive") {
  const ContactMap m = make_family("hamiltonian_lift", NamedParams{});
  std::mt19937_64 rng(18);
  double worst_d = 0.0, worst_q = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Point q = oracle::random_disk_point(rng, 1.0);
    const auto e = evaluate(m, q);
    auto F = [&](const Vec& p) {
      const auto ep = evaluate(m, Point::from_coords(p), false);
      return Eigen::VectorXd::Constant(1, ep.image.z - p(2));
    };
    const Eigen::MatrixXd dF = oracle::jacobian_fd(F, q.coords());
    const double fx = e.image.y(0) * e.jacobian(0, 0) - q.y(0);
    const double fy = e.image.y(0) * e.jacobian(0, 1);
    worst_d = std::max({worst_d, std::abs(dF(0, 0) - fx), std::abs(dF(0, 1) - fy), std::abs(dF(0, 2))});
    const double Fq = e.image.z - q.z;
    worst_q = std::max(worst_q, std::abs(oracle::lift_primitive_simpson(m, q, oracle::support_entry(1, 1, q.y(0))) - Fq));
  }
  CHECK(worst_d <= 1e-5);
  CHECK(worst_q <= 1e-6);
}

TEST_CASE("maps on the solid torus keep the real lift of z") {
  const ContactMap m = make_family("radial_twist", kQuadratic, 1, true);
  const auto e = evaluate(m, make_point(0, 0, 0.75, true));
  CHECK(e.image.periodic_z);
  CHECK(e.image.z == doctest::Approx(0.75 + pi).epsilon(1e-12));
}
