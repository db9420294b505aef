#include "minact/spde.hpp"

#include <cmath>

#include "minact/gmam.hpp"
#include "minact/path.hpp"

namespace minact {

Vec AcParams::shear_dx(const Vec& u) const {
  Vec d = ops->dx(u);
  if (dim == 1) return c * d;
  for (int i = 0; i < d.size(); ++i) {
    const double y = static_cast<double>(i / N) / N;
    d(i) *= c * std::sin(2.0 * M_PI * y);
  }
  return d;
}

Vec ac_drift(const AcParams& p, const Vec& u) {
  return p.kappa * p.ops->laplacian(u) + u -
         p.ops->dealias(u.array().cube().matrix()) + p.shear_dx(u);
}

double ac_energy(const AcParams& p, const Vec& u) {
  Vec ux = p.ops->dx(u);
  double grad2 = ux.squaredNorm();
  if (p.dim == 2) grad2 += p.ops->dy(u).squaredNorm();
  const double well = (1.0 - u.array().square()).square().sum() / 4.0;
  return (0.5 * p.kappa * grad2 + well) / u.size();
}

Vec ac_strang_step(const AcParams& p, const Vec& u, double h) {
  auto ra = [&](const Vec& v) {
    return (v - p.ops->dealias(v.array().cube().matrix()) + p.shear_dx(v)).eval();
  };
  Vec u1 = u + 0.5 * h * ra(u);
  Vec u2 = p.ops->exp_laplacian(u1, p.kappa * h);
  return u2 + 0.5 * h * ra(u2);
}

namespace {

// J^T w for J = d(ac_drift)/du at u: kappa*Lap + I - 3u^2 P(.) - g dx
Vec jacobian_transpose_apply(const AcParams& p, const Vec& u, const Vec& w) {
  return p.kappa * p.ops->laplacian(w) + w -
         (3.0 * u.array().square() * p.ops->dealias(w).array()).matrix() -
         p.shear_dx(w);
}

Vec jacobian_apply(const AcParams& p, const Vec& u, const Vec& v) {
  return p.kappa * p.ops->laplacian(v) + v -
         p.ops->dealias((3.0 * u.array().square() * v.array()).matrix()) +
         p.shear_dx(v);
}

}  // namespace

Mat spde_gmam_gradient(const Path& path, const SystemSpec& system) {
  const AcParams& p = *system.ac;
  const int n = path.n();
  const double ds = 1.0 / n;
  Mat xp = path_derivative(path);

  Mat F(path.dim(), n + 1);
  std::vector<double> lambda(n + 1);
  for (int j = 0; j <= n; ++j) {
    F.col(j) = ac_drift(p, path.points.col(j));
    const double nf = F.col(j).norm(), nx = xp.col(j).norm();
    if (j > 0 && j < n && (nf <= 1e-12 || nx <= 1e-12))
      throw NumericError("degenerate node at index " + std::to_string(j));
    lambda[j] = nx > 0.0 ? nf / nx : 0.0;
  }

  Mat raw = Mat::Zero(path.dim(), n + 1);
  auto weight = [&](int k) { return (k == 0 || k == n) ? 0.5 * ds : ds; };
  for (int k = 1; k < n; ++k) {
    Vec q = F.col(k) / lambda[k] - xp.col(k);
    raw.col(k) += weight(k) * jacobian_transpose_apply(p, path.points.col(k), q);
  }
  for (int k = 0; k <= n; ++k) {
    Vec pk = lambda[k] * xp.col(k) - F.col(k);
    if (k == 0) {
      raw.col(1) += weight(0) / ds * pk;
    } else if (k == n) {
      raw.col(n - 1) -= weight(n) / ds * pk;
    } else {
      raw.col(k + 1) += weight(k) / (2.0 * ds) * pk;
      raw.col(k - 1) -= weight(k) / (2.0 * ds) * pk;
    }
  }
  Mat grad = raw / ds;
  grad.col(0).setZero();
  grad.col(n).setZero();
  return grad;
}

ActionReport spde_gmam_minimize(const SystemSpec& system, const Path& initial,
                                const SolverConfig& config) {
  const AcParams& p = *system.ac;
  const int n = initial.n();
  const double ds = 1.0 / n;
  Path X = reparameterize_equal_arclength(initial);

  ActionReport report;
  double S = geometric_action(X, system);
  const double S0 = S;
  report.history.push_back(S);
  double dt = config.h;
  const double kap2 = p.kappa * p.kappa;

  std::vector<double> lambda(n + 1), a(n + 1, 0.0), c(n + 1, 0.0);

  long it = 0;
  for (; it < config.max_steps; ++it) {
    Path Xnew = X;
    double Snew = S;
    bool accepted = false;
    for (int attempt = 0; attempt <= 5; ++attempt) {
      const double step = dt / (1 << attempt);

      // exact half-step for the stiff -kappa^2 Lap^2 phi piece
      Mat Y = X.points;
      for (int j = 1; j < n; ++j)
        Y.col(j) = p.ops->exp_bilaplacian(Y.col(j), kap2 * step * 0.5);

      Mat xp(X.dim(), n + 1);
      {
        Path tmp(Y);
        xp = path_derivative(tmp);
      }
      Mat F(X.dim(), n + 1);
      for (int j = 0; j <= n; ++j) {
        F.col(j) = ac_drift(p, Y.col(j));
        const double nx = xp.col(j).norm();
        lambda[j] = nx > 1e-300 ? F.col(j).norm() / nx : 0.0;
      }

      // Crank-Nicolson in s for lambda^2 phi''; everything else but the
      // bilaplacian (already handled) goes explicit
      Mat rhs = Y;
      for (int j = 1; j < n; ++j) {
        a[j] = c[j] = 0.5 * step * lambda[j] * lambda[j] / (ds * ds);
        const double lp = (lambda[j + 1] - lambda[j - 1]) / (2.0 * ds);
        Vec skew = jacobian_apply(p, Y.col(j), xp.col(j)) -
                   jacobian_transpose_apply(p, Y.col(j), xp.col(j));
        Vec jtf = jacobian_transpose_apply(p, Y.col(j), F.col(j));
        Vec expl = lambda[j] * lp * xp.col(j) - lambda[j] * skew -
                   (jtf - kap2 * p.ops->bilaplacian(Y.col(j)));
        rhs.col(j) += a[j] * (Y.col(j + 1) - 2.0 * Y.col(j) + Y.col(j - 1)) +
                      step * expl;
      }
      Mat sol(X.dim(), n + 1);
      solve_path_tridiagonal(sol, a, c, rhs);
      if (!sol.allFinite()) continue;

      for (int j = 1; j < n; ++j)
        sol.col(j) = p.ops->exp_bilaplacian(sol.col(j), kap2 * step * 0.5);

      Path cand(sol);
      cand = reparameterize_equal_arclength(cand);
      const double Sc = geometric_action(cand, system);
      Xnew = cand;
      Snew = Sc;
      if (Sc <= S * (1.0 + 1e-12) + 1e-15) {
        accepted = true;
        if (attempt > 0) dt = step;
        break;
      }
    }
    X = Xnew;
    S = Snew;
    report.history.push_back(S);
    if (accepted) dt = std::min(dt * 1.05, config.h);

    if (S > 10.0 * S0 + 1.0)
      throw NumericError("spde gmam diverged, action " + std::to_string(S));

    const int w = 10;
    if (static_cast<int>(report.history.size()) > w + 10) {
      double change = 0.0;
      const auto& hist = report.history;
      for (int k = 0; k < w; ++k) {
        const double d =
            std::abs(hist[hist.size() - 1 - k] - hist[hist.size() - 2 - k]);
        change += config.abs_change > 0.0
                      ? d
                      : d / std::max(std::abs(hist[hist.size() - 1 - k]), 1e-300);
      }
      change /= w;
      if (change < (config.abs_change > 0.0 ? config.abs_change : config.threshold)) {
        ++it;
        break;
      }
    }
  }

  report.action = S;
  report.path = X;
  report.iterations = it;
  report.crossing_index = separatrix_crossing_index(X, system);
  return report;
}

SystemSpec make_ac_system(int dim, double kappa, double c, int N) {
  auto params = std::make_shared<AcParams>();
  params->dim = dim;
  params->kappa = kappa;
  params->c = c;
  params->N = N;
  params->ops = std::make_shared<SpectralOps>(dim, N);
  const int size = params->ops->size();

  SystemSpec s;
  s.name = dim == 1 ? "ac1d" : "ac2d";
  s.dim = size;
  s.metric = 1.0 / size;
  s.ac = params;
  s.drift = [params](const Vec& u) { return ac_drift(*params, u); };

  // dense spectral linearization: fixed linear part plus the cubic's
  // diagonal pushed through the dealiasing projector
  auto lin = std::make_shared<Mat>(size, size);
  auto proj = std::make_shared<Mat>(size, size);
  for (int j = 0; j < size; ++j) {
    Vec e = Vec::Zero(size);
    e(j) = 1.0;
    lin->col(j) = kappa * params->ops->laplacian(e) + e + params->shear_dx(e);
    proj->col(j) = params->ops->dealias(e);
  }
  s.jacobian = [lin, proj](const Vec& u) {
    return (*lin - *proj * (3.0 * u.array().square()).matrix().asDiagonal()).eval();
  };

  s.sinks = {Vec::Constant(size, -1.0), Vec::Constant(size, 1.0)};
  s.flow_step = [params](const Vec& u, double h) {
    return ac_strang_step(*params, u, h);
  };
  s.minimize = [](const SystemSpec& sys, const Path& init,
                  const SolverConfig& cfg) {
    return spde_gmam_minimize(sys, init, cfg);
  };

  if (dim == 1) {
    Decomposition d;
    d.V = [params](const Vec& u) { return ac_energy(*params, u); };
    d.gradV = [params](const Vec& u) {
      return (-(params->kappa * params->ops->laplacian(u) + u -
                params->ops->dealias(u.array().cube().matrix())))
          .eval();
    };
    d.b = [params](const Vec& u) { return params->shear_dx(u); };
    s.decomposition = d;
  }
  return s;
}

Path initial_field_path(const SystemSpec& system, const std::string& kind,
                        int n) {
  const AcParams& p = *system.ac;
  const int size = p.ops->size();
  Mat pts(size, n + 1);
  pts.col(0) = Vec::Constant(size, -1.0);
  pts.col(n) = Vec::Constant(size, 1.0);

  auto coords = [&](int i, double& x, double& y) {
    if (p.dim == 1) {
      x = static_cast<double>(i) / p.N;
      y = 0.0;
    } else {
      x = static_cast<double>(i % p.N) / p.N;
      y = static_cast<double>(i / p.N) / p.N;
    }
  };

  std::function<double(double, double)> arg2;
  if (kind == "vertical")
    arg2 = [](double x, double) { return (0.5 - x) * (0.5 - x); };
  else if (kind == "double_vertical")
    arg2 = [](double x, double) {
      const double u = 0.5 - 2.0 * std::fmod(x, 0.5);
      return u * u;
    };
  else if (kind == "horizontal" && p.dim == 2)
    arg2 = [](double, double y) { return (0.5 - y) * (0.5 - y); };
  else if (kind == "double_horizontal" && p.dim == 2)
    arg2 = [](double, double y) {
      const double u = 0.5 - 2.0 * std::fmod(y, 0.5);
      return u * u;
    };
  else if (kind == "elliptical" && p.dim == 2)
    arg2 = [](double x, double y) {
      const double u = y - x / 16.0 - 15.0 / 32.0;
      const double v = y / 16.0 + x - 17.0 / 32.0;
      return u * u + v * v / 16.0;
    };
  else if (kind == "radial" && p.dim == 2)
    arg2 = [](double x, double y) {
      return (0.5 - x) * (0.5 - x) + (0.5 - y) * (0.5 - y);
    };
  else if (kind != "linear")
    throw std::invalid_argument("unknown initial field path kind: " + kind);

  for (int j = 1; j < n; ++j) {
    if (kind == "linear") {
      const double t = static_cast<double>(j) / n;
      pts.col(j) = (1.0 - t) * pts.col(0) + t * pts.col(n);
      continue;
    }
    const double t = static_cast<double>(j + 1) / n;
    const double w2 = (4.0 / 9.0) * t * t;
    for (int i = 0; i < size; ++i) {
      double x, y;
      coords(i, x, y);
      pts(i, j) = 2.0 * std::exp(-arg2(x, y) / w2) - 1.0;
    }
  }
  return Path(pts);
}

}  // namespace minact
