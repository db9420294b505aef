#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "minact/gmam.hpp"
#include "minact/path.hpp"
#include "minact/systems.hpp"

using namespace minact;

namespace {

Path sine_arc(int n) {
  Mat pts(2, n + 1);
  for (int j = 0; j <= n; ++j) {
    const double t = static_cast<double>(j) / n;
    pts(0, j) = 0.2 + 0.6 * t;
    pts(1, j) = -0.8 + 1.6 * t + 0.3 * std::sin(M_PI * t);
  }
  return Path(pts);
}

Path flow_path(const SystemSpec& sys, Vec x, int steps, double h) {
  std::vector<Vec> traj{x};
  for (int i = 0; i < steps; ++i) traj.push_back(sys.step(traj.back(), h));
  Mat pts(x.size(), traj.size());
  for (size_t k = 0; k < traj.size(); ++k) pts.col(k) = traj[k];
  return Path(pts);
}

}  // namespace

TEST_CASE("straight double-well path has the barrier action") {
  // along y = 0 the uphill half integrates to 2 (V(0) - V(-1)) = 0.5 and the
  // downhill half is free
  SystemSpec sys = make_system("double_well_1d");
  Path p = linear_path((Vec(2) << -1, 0).finished(),
                       (Vec(2) << 1, 0).finished(), 400);
  CHECK(geometric_action(p, sys) == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("geometric action is nonnegative and zero under zero drift") {
  SystemSpec null_sys;
  null_sys.dim = 2;
  null_sys.drift = [](const Vec&) { return Vec::Zero(2).eval(); };
  CHECK(geometric_action(sine_arc(50), null_sys) == 0.0);

  SystemSpec sys = make_system("sde2d");
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (int trial = 0; trial < 10; ++trial) {
    Mat pts(2, 31);
    pts.col(0) << 0, -1;
    for (int j = 1; j < 30; ++j) pts.col(j) << u(gen), u(gen);
    pts.col(30) << 0, 1;
    CHECK(geometric_action(Path(pts), sys) >= 0.0);
  }
}

TEST_CASE("geometric action vanishes along the flow") {
  SystemSpec sys = make_system("sde2d");
  Path p = flow_path(sys, (Vec(2) << 1.4, 0.3).finished(), 800, 0.01);
  CHECK(geometric_action(p, sys) < 1e-4);
}

TEST_CASE("nonuniform quadrature agrees on a uniform grid") {
  SystemSpec sys = make_system("sde2d");
  Path p = sine_arc(60);
  std::vector<double> alpha(61);
  for (int j = 0; j <= 60; ++j) alpha[j] = static_cast<double>(j) / 60;
  CHECK(geometric_action_nonuniform(p.points, alpha, sys) ==
        doctest::Approx(geometric_action(p, sys)).epsilon(1e-12));
}

TEST_CASE("reparameterization leaves the action of an equal-arclength path") {
  SystemSpec sys = make_system("sde2d");
  Path r1 = reparameterize_equal_arclength(sine_arc(120));
  Path r2 = reparameterize_equal_arclength(r1);
  const double s1 = geometric_action(r1, sys);
  const double s2 = geometric_action(r2, sys);
  CHECK(std::abs(s2 - s1) / s1 < 1e-8);
}

TEST_CASE("gradient matches central finite differences of the action") {
  std::mt19937 gen(5);
  std::normal_distribution<double> g(0.0, 1.0);
  for (const auto& name : {"double_well_1d", "sde2d", "sde3d_rot"}) {
    SystemSpec sys = make_system(name);
    for (int trial = 0; trial < 3; ++trial) {
      const int n = 20;
      Mat pts(sys.dim, n + 1);
      for (int j = 0; j <= n; ++j) {
        const double t = static_cast<double>(j) / n;
        pts.col(j) = (1.0 - t) * sys.sinks[0] + t * sys.sinks[1];
        for (int k = 0; k < sys.dim; ++k) pts(k, j) += 0.25 * std::sin(M_PI * t) * g(gen);
        pts(0, j) += 0.6 * std::sin(M_PI * t);  // clear of the z-axis
      }
      Path p(pts);
      Mat grad = gmam_gradient(p, sys);
      for (int dir = 0; dir < 5; ++dir) {
        Mat eta = Mat::Zero(sys.dim, n + 1);
        for (int j = 1; j < n; ++j)
          for (int k = 0; k < sys.dim; ++k) eta(k, j) = g(gen);
        const double eps = 1e-6;
        Path pp(pts + eps * eta), pm(pts - eps * eta);
        const double fd =
            (geometric_action(pp, sys) - geometric_action(pm, sys)) / (2.0 * eps);
        double inner = 0.0;
        for (int j = 1; j < n; ++j) inner += grad.col(j).dot(eta.col(j)) / n;
        CHECK(fd == doctest::Approx(inner).epsilon(1e-4));
      }
    }
  }
}

TEST_CASE("degenerate interior node is rejected") {
  SystemSpec sys = make_system("double_well_1d");
  Path p = linear_path((Vec(2) << -1, 0).finished(),
                       (Vec(2) << 0, 0).finished(), 10);
  // interior node placed exactly at the sink (-1, 0): drift vanishes there
  p.points.col(5) << -1.0, 0.0;
  CHECK_THROWS_WITH_AS(gmam_gradient(p, sys), doctest::Contains("degenerate"),
                       NumericError);
}

TEST_CASE("minimizer reaches the known sde2d action") {
  SystemSpec sys = make_system("sde2d");
  SolverConfig cfg;
  cfg.n = 100;
  cfg.h = 0.1;
  cfg.threshold = 1e-6;
  auto rep = gmam_minimize(sys, linear_path(sys.sinks[0], sys.sinks[1], 100), cfg);
  CHECK(rep.action == doctest::Approx(0.49987).epsilon(1e-3));
  CHECK(rep.iterations > 30);
  CHECK(rep.iterations < 400);
  // history is non-increasing
  for (size_t k = 1; k < rep.history.size(); ++k)
    CHECK(rep.history[k] <= rep.history[k - 1] * (1.0 + 1e-12) + 1e-15);
  // crossing sits at the saddle (1, 0)
  REQUIRE(rep.crossing_index.has_value());
  Vec xc = rep.path.points.col(*rep.crossing_index);
  CHECK((xc - (Vec(2) << 1, 0).finished()).norm() < 0.05);
  // stationarity: restarting the solver from the minimizer barely moves it
  auto rep2 = gmam_minimize(sys, rep.path, cfg);
  CHECK(std::abs(rep2.action - rep.action) < 1e-5);
}

TEST_CASE("minimizer recovers the embedded double-well barrier") {
  SystemSpec sys = make_system("double_well_1d");
  SolverConfig cfg;
  cfg.n = 100;
  cfg.h = 0.1;
  cfg.threshold = 1e-7;
  Path init = perturbed_linear_path(sys.sinks[0], sys.sinks[1], 100, 0.1, 3);
  auto rep = gmam_minimize(sys, init, cfg);
  CHECK(rep.action == doctest::Approx(0.5).epsilon(2e-3));
}

TEST_CASE("orthogonal-type lower bound at the identified crossing") {
  SystemSpec sys = make_system("sde2d");
  SolverConfig cfg;
  cfg.n = 100;
  cfg.h = 0.1;
  cfg.threshold = 1e-6;
  auto rep = gmam_minimize(sys, linear_path(sys.sinks[0], sys.sinks[1], 100), cfg);
  const auto& d = *sys.decomposition;
  REQUIRE(rep.crossing_index.has_value());
  Vec xs = rep.path.points.col(*rep.crossing_index);
  CHECK(rep.action >= 2.0 * (d.V(xs) - d.V(sys.sinks[0])) - 0.01);
}
