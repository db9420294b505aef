#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "minact/systems.hpp"

using namespace minact;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

}  // namespace

TEST_CASE("catalog lists the expected systems") {
  auto names = list_systems();
  CHECK(names.size() == 6);
  for (const auto& n : names) CHECK_NOTHROW(make_system(n));
  CHECK_THROWS_AS(make_system("no_such_system"), std::invalid_argument);
}

TEST_CASE("drift spot values") {
  SystemSpec dw = make_system("double_well_1d");
  Vec f = dw.drift(v2(0.5, 0.2));
  CHECK(f(0) == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(f(1) == doctest::Approx(-0.2).epsilon(1e-14));

  SystemSpec s2 = make_system("sde2d");
  CHECK(s2.drift(v2(0, 0))(0) == doctest::Approx(1.0));
  CHECK(s2.drift(v2(1, 0)).norm() == doctest::Approx(0.0));  // saddle

  // planar circle of the rotational system: radial rest, unit rotation
  SystemSpec rot = make_system("sde3d_rot");
  for (double th : {0.0, M_PI / 4.0, 1.3}) {
    Vec p = v3(std::cos(th), std::sin(th), 0.0);
    Vec fr = rot.drift(p);
    CHECK(fr(0) == doctest::Approx(-std::sin(th)).epsilon(1e-12));
    CHECK(fr(1) == doctest::Approx(std::cos(th)).epsilon(1e-12));
    CHECK(fr(2) == doctest::Approx(0.0));
    // radial component vanishes
    CHECK(std::abs(p(0) * fr(0) + p(1) * fr(1)) < 1e-12);
  }

  SystemSpec nr = make_system("sde3d_nonrot");
  CHECK(nr.drift(v3(0, 0, -1)).norm() == doctest::Approx(0.0));
}

TEST_CASE("sinks are fixed points") {
  for (const auto& name :
       {"double_well_1d", "sde2d", "sde3d_rot", "sde3d_nonrot"}) {
    SystemSpec s = make_system(name);
    REQUIRE(s.sinks.size() == 2);
    for (const auto& x : s.sinks) CHECK(s.drift(x).norm() < 1e-13);
  }
}

TEST_CASE("analytic jacobians match finite differences") {
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (const auto& name :
       {"double_well_1d", "sde2d", "sde3d_rot", "sde3d_nonrot"}) {
    SystemSpec s = make_system(name);
    SystemSpec fd = s;
    fd.jacobian = nullptr;
    for (int trial = 0; trial < 3; ++trial) {
      Vec x(s.dim);
      for (int k = 0; k < s.dim; ++k) x(k) = u(gen);
      x(0) += 1.2;  // keep away from the z-axis singularities
      Mat J = s.jacobian(x);
      Mat Jfd = fd.jacobian_or_fd(x);
      CHECK((J - Jfd).cwiseAbs().maxCoeff() < 1e-5);
    }
  }
}

TEST_CASE("orthogonal decompositions reconstruct the drift") {
  std::mt19937 gen(13);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (const auto& name :
       {"double_well_1d", "sde2d", "sde3d_rot", "sde3d_nonrot"}) {
    SystemSpec s = make_system(name);
    REQUIRE(s.decomposition.has_value());
    for (int trial = 0; trial < 5; ++trial) {
      Vec x(s.dim);
      for (int k = 0; k < s.dim; ++k) x(k) = u(gen);
      x(0) += 1.1;
      CHECK(decomposition_residual(s, x) < 1e-12);
    }
  }
}

TEST_CASE("planar orbits are invariant sets") {
  // rotational: rho = 1, z = 0 circulates without radial drift
  SystemSpec rot = make_system("sde3d_rot");
  // non-rotational: x^4 + y^4 = 16, z = 0 is invariant
  SystemSpec nr = make_system("sde3d_nonrot");
  for (double th : {0.1, 0.7, 2.0, 4.5}) {
    Vec p = v3(std::cos(th), std::sin(th), 0.0);
    Vec f = rot.drift(p);
    CHECK(std::abs(p(0) * f(0) + p(1) * f(1)) < 1e-12);

    // parameterize the quartic circle by angle
    const double c = std::cos(th), s = std::sin(th);
    const double scale = 2.0 / std::pow(std::pow(c, 4) + std::pow(s, 4), 0.25);
    Vec q = v3(scale * c, scale * s, 0.0);
    CHECK(std::pow(q(0), 4) + std::pow(q(1), 4) == doctest::Approx(16.0));
    Vec fq = nr.drift(q);
    // d/dt (x^4 + y^4) = 4 x^3 fx + 4 y^3 fy = 0 on the orbit
    CHECK(std::abs(4.0 * std::pow(q(0), 3) * fq(0) +
                   4.0 * std::pow(q(1), 3) * fq(1)) < 1e-10);
    CHECK(fq(2) == doctest::Approx(0.0));
  }
}

TEST_CASE("z-axis singularity guards") {
  SystemSpec rot = make_system("sde3d_rot");
  CHECK_THROWS_AS(rot.drift(v3(0, 0, 0)), NumericError);
  CHECK_THROWS_AS(rot.jacobian(v3(0, 0, 0.5)), NumericError);
  CHECK(rot.drift(v3(0, 0, 1)).norm() == doctest::Approx(0.0));  // sink is fine

  SystemSpec nr = make_system("sde3d_nonrot");
  CHECK_THROWS_AS(nr.drift(v3(0, 0, 0.5)), NumericError);
  CHECK(nr.drift(v3(0, 0, 2)).norm() == doctest::Approx(0.0));
}

TEST_CASE("rotational symmetry of sde3d_rot") {
  SystemSpec rot = make_system("sde3d_rot");
  std::mt19937 gen(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    Vec x = v3(u(gen) + 1.5, u(gen), u(gen));
    const double a = 2.1 * u(gen);
    Mat R = Mat::Identity(3, 3);
    R(0, 0) = std::cos(a);
    R(0, 1) = -std::sin(a);
    R(1, 0) = std::sin(a);
    R(1, 1) = std::cos(a);
    Vec lhs = rot.drift(R * x);
    Vec rhs = R * rot.drift(x);
    CHECK((lhs - rhs).norm() < 1e-12);
  }
}

TEST_CASE("initial path constructors") {
  Path lin = linear_path(v2(-1, 0), v2(1, 0), 10);
  CHECK(lin.n() == 10);
  CHECK(lin.points(0, 5) == doctest::Approx(0.0));
  Path p1 = perturbed_linear_path(v2(-1, 0), v2(1, 0), 10, 0.1, 7);
  Path p2 = perturbed_linear_path(v2(-1, 0), v2(1, 0), 10, 0.1, 7);
  Path p3 = perturbed_linear_path(v2(-1, 0), v2(1, 0), 10, 0.1, 8);
  CHECK((p1.points - p2.points).cwiseAbs().maxCoeff() == 0.0);  // deterministic
  CHECK((p1.points - p3.points).cwiseAbs().maxCoeff() > 0.0);
  // endpoints untouched
  CHECK(p1.points.col(0) == lin.points.col(0));
  CHECK(p1.points.col(10) == lin.points.col(10));
  // interior actually moved
  CHECK((p1.points - lin.points).cwiseAbs().maxCoeff() > 0.01);
}
