#include "minact/systems.hpp"

#include <cmath>
#include <random>

#include "minact/spde.hpp"

namespace minact {

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

SystemSpec make_double_well_1d() {
  SystemSpec s;
  s.name = "double_well_1d";
  s.dim = 2;
  s.drift = [](const Vec& x) { return v2(x(0) - std::pow(x(0), 3), -x(1)); };
  s.jacobian = [](const Vec& x) {
    Mat J(2, 2);
    J << 1.0 - 3.0 * x(0) * x(0), 0.0, 0.0, -1.0;
    return J;
  };
  s.sinks = {v2(-1, 0), v2(1, 0)};
  Decomposition d;
  d.V = [](const Vec& x) {
    return 0.25 * std::pow(1.0 - x(0) * x(0), 2) + 0.5 * x(1) * x(1);
  };
  d.gradV = [](const Vec& x) {
    return v2(std::pow(x(0), 3) - x(0), x(1));
  };
  d.b = [](const Vec&) { return v2(0, 0); };
  s.decomposition = d;
  return s;
}

SystemSpec make_sde2d() {
  SystemSpec s;
  s.name = "sde2d";
  s.dim = 2;
  s.drift = [](const Vec& x) {
    const double r = x(0), z = x(1);
    return v2(1.0 - z * z - r, z - z * z * z);
  };
  s.jacobian = [](const Vec& x) {
    const double z = x(1);
    Mat J(2, 2);
    J << -1.0, -2.0 * z, 0.0, 1.0 - 3.0 * z * z;
    return J;
  };
  s.sinks = {v2(0, -1), v2(0, 1)};
  Decomposition d;
  d.V = [](const Vec& x) {
    const double z = x(1);
    return 0.25 * std::pow(1.0 - z * z, 2);
  };
  d.gradV = [](const Vec& x) {
    const double z = x(1);
    return v2(0.0, z * z * z - z);
  };
  d.b = [](const Vec& x) {
    const double r = x(0), z = x(1);
    return v2(1.0 - z * z - r, 0.0);
  };
  s.decomposition = d;
  return s;
}

// rotationally symmetric: radial relaxation to rho = 1 - z^2 with unit
// rotation in the plane. The drift is singular on the z-axis except where
// 1 - z^2 = 0 (the two sinks).
SystemSpec make_sde3d_rot() {
  SystemSpec s;
  s.name = "sde3d_rot";
  s.dim = 3;
  auto radial = [](double x, double y, double z, double& cx, double& cy) {
    const double rho = std::hypot(x, y);
    const double w = 1.0 - z * z;
    if (rho < 1e-13) {
      if (std::abs(w) < 1e-10) {
        cx = cy = 0.0;
        return;
      }
      throw NumericError("drift singularity on the z-axis");
    }
    cx = w * x / rho;
    cy = w * y / rho;
  };
  s.drift = [radial](const Vec& p) {
    const double x = p(0), y = p(1), z = p(2);
    double cx, cy;
    radial(x, y, z, cx, cy);
    return v3(cx - x - y, cy + x - y, z - z * z * z);
  };
  s.jacobian = [](const Vec& p) {
    const double x = p(0), y = p(1), z = p(2);
    const double rho = std::hypot(x, y);
    if (rho < 1e-13) throw NumericError("drift singularity on the z-axis");
    const double w = 1.0 - z * z, r3 = rho * rho * rho;
    Mat J(3, 3);
    J << w * y * y / r3 - 1.0, -w * x * y / r3 - 1.0, -2.0 * z * x / rho,
        -w * x * y / r3 + 1.0, w * x * x / r3 - 1.0, -2.0 * z * y / rho,
        0.0, 0.0, 1.0 - 3.0 * z * z;
    return J;
  };
  s.sinks = {v3(0, 0, -1), v3(0, 0, 1)};
  Decomposition d;
  d.V = [](const Vec& p) {
    const double z = p(2);
    return 0.25 * std::pow(1.0 - z * z, 2);
  };
  d.gradV = [](const Vec& p) {
    const double z = p(2);
    return v3(0.0, 0.0, z * z * z - z);
  };
  d.b = [radial](const Vec& p) {
    const double x = p(0), y = p(1), z = p(2);
    double cx, cy;
    radial(x, y, z, cx, cy);
    return v3(cx - x - y, cy + x - y, 0.0);
  };
  s.decomposition = d;
  return s;
}

// non-symmetric variant: the planar part relaxes to the quartic circle
// (x^4 + y^4)^{1/4} = -A(z), i.e. x^4 + y^4 = 16 at z = 0, and rotates
// with cubic speed (-y^3, x^3).
SystemSpec make_sde3d_nonrot() {
  SystemSpec s;
  s.name = "sde3d_nonrot";
  s.dim = 3;
  auto radial = [](double x, double y, double z, double& cx, double& cy) {
    const double sq = std::pow(std::pow(x, 4) + std::pow(y, 4), 0.25);
    const double A = (z + 1.0) * (z - 2.0);
    if (sq < 1e-13) {
      if (std::abs(A) < 1e-10) {
        cx = cy = 0.0;
        return;
      }
      throw NumericError("drift singularity on the z-axis");
    }
    cx = -A * x / sq;
    cy = -A * y / sq;
  };
  s.drift = [radial](const Vec& p) {
    const double x = p(0), y = p(1), z = p(2);
    double cx, cy;
    radial(x, y, z, cx, cy);
    return v3(cx - x - y * y * y, cy - y + x * x * x,
              -(z * z * z - z * z - 2.0 * z));
  };
  s.jacobian = [](const Vec& p) {
    const double x = p(0), y = p(1), z = p(2);
    const double s4 = std::pow(x, 4) + std::pow(y, 4);
    const double sq = std::pow(s4, 0.25);
    if (sq < 1e-13) throw NumericError("drift singularity on the z-axis");
    const double s5 = std::pow(sq, 5);
    const double A = (z + 1.0) * (z - 2.0), Ap = 2.0 * z - 1.0;
    Mat J(3, 3);
    J << -A * std::pow(y, 4) / s5 - 1.0, A * x * std::pow(y, 3) / s5 - 3.0 * y * y,
        -Ap * x / sq,
        A * y * std::pow(x, 3) / s5 + 3.0 * x * x, -A * std::pow(x, 4) / s5 - 1.0,
        -Ap * y / sq,
        0.0, 0.0, -(3.0 * z * z - 2.0 * z - 2.0);
    return J;
  };
  s.sinks = {v3(0, 0, -1), v3(0, 0, 2)};
  Decomposition d;
  d.V = [](const Vec& p) {
    const double z = p(2);
    return 0.25 * std::pow(z, 4) - std::pow(z, 3) / 3.0 - z * z;
  };
  d.gradV = [](const Vec& p) {
    const double z = p(2);
    return v3(0.0, 0.0, z * z * z - z * z - 2.0 * z);
  };
  d.b = [radial](const Vec& p) {
    const double x = p(0), y = p(1), z = p(2);
    double cx, cy;
    radial(x, y, z, cx, cy);
    return v3(cx - x - y * y * y, cy - y + x * x * x, 0.0);
  };
  s.decomposition = d;
  return s;
}

double get(const std::map<std::string, double>& params, const std::string& key,
           double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

}  // namespace

SystemSpec make_system(const std::string& name,
                       const std::map<std::string, double>& params) {
  if (name == "double_well_1d") return make_double_well_1d();
  if (name == "sde2d") return make_sde2d();
  if (name == "sde3d_rot") return make_sde3d_rot();
  if (name == "sde3d_nonrot") return make_sde3d_nonrot();
  if (name == "ac1d")
    return make_ac_system(1, get(params, "kappa", 0.01), get(params, "c", 0.1),
                          static_cast<int>(get(params, "N", 64)));
  if (name == "ac2d")
    return make_ac_system(2, get(params, "kappa", 0.01), get(params, "c", 0.1),
                          static_cast<int>(get(params, "N", 32)));
  throw std::invalid_argument("unknown system: " + name);
}

std::vector<std::string> list_systems() {
  return {"double_well_1d", "sde2d", "sde3d_rot", "sde3d_nonrot", "ac1d", "ac2d"};
}

double decomposition_residual(const SystemSpec& system, const Vec& x) {
  if (!system.decomposition) return 0.0;
  const auto& d = *system.decomposition;
  const Vec g = d.gradV(x), b = d.b(x);
  const double recon = system.norm(system.drift(x) - (-g + b));
  return std::max(recon, std::abs(system.dot(g, b)));
}

Path linear_path(const Vec& a, const Vec& b, int n) {
  Mat pts(a.size(), n + 1);
  for (int j = 0; j <= n; ++j) {
    const double t = static_cast<double>(j) / n;
    pts.col(j) = (1.0 - t) * a + t * b;
  }
  return Path(pts);
}

Path perturbed_linear_path(const Vec& a, const Vec& b, int n, double amp,
                           unsigned seed) {
  Path p = linear_path(a, b, n);
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int j = 1; j < n; ++j) {
    const double t = static_cast<double>(j) / n;
    const double bump = std::sin(M_PI * t);
    for (int k = 0; k < p.dim(); ++k) p.points(k, j) += amp * bump * u(gen);
  }
  return p;
}

}  // namespace minact
