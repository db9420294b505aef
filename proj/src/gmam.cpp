#include "minact/gmam.hpp"

#include "minact/path.hpp"

#include <cmath>

namespace minact {

namespace {

double integrand(const Vec& xp, const Vec& f) {
  return xp.norm() * f.norm() - xp.dot(f);
}

}  // namespace

void solve_path_tridiagonal(Mat& X, const std::vector<double>& a,
                            const std::vector<double>& c, const Mat& rhs) {
  const int n = static_cast<int>(X.cols()) - 1;
  std::vector<double> diag(n + 1), sup(n + 1);
  Mat r = rhs;
  diag[0] = 1.0;
  sup[0] = 0.0;
  for (int j = 1; j < n; ++j) {
    const double m = -a[j] / diag[j - 1];
    diag[j] = 1.0 + a[j] + c[j] - m * sup[j - 1];
    sup[j] = -c[j];
    r.col(j) -= m * r.col(j - 1);
  }
  diag[n] = 1.0;
  X.col(n) = r.col(n);
  for (int j = n - 1; j >= 1; --j)
    X.col(j) = (r.col(j) + c[j] * X.col(j + 1)) / diag[j];
  X.col(0) = r.col(0);
}

double geometric_action(const Path& path, const SystemSpec& system) {
  const int n = path.n();
  Mat xp = path_derivative(path);
  double s = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double w = (j == 0 || j == n) ? 0.5 : 1.0;
    s += w * integrand(xp.col(j), system.drift(path.points.col(j)));
  }
  return system.metric * s / n;
}

double geometric_action_nonuniform(const Mat& points,
                                   const std::vector<double>& alpha,
                                   const SystemSpec& system) {
  const int n = static_cast<int>(points.cols()) - 1;
  std::vector<double> g(n + 1);
  for (int j = 0; j <= n; ++j) {
    Vec xp;
    if (j == 0)
      xp = (points.col(1) - points.col(0)) / (alpha[1] - alpha[0]);
    else if (j == n)
      xp = (points.col(n) - points.col(n - 1)) / (alpha[n] - alpha[n - 1]);
    else
      xp = (points.col(j + 1) - points.col(j - 1)) / (alpha[j + 1] - alpha[j - 1]);
    g[j] = integrand(xp, system.drift(points.col(j)));
  }
  double s = 0.0;
  for (int j = 0; j < n; ++j)
    s += 0.5 * (g[j] + g[j + 1]) * (alpha[j + 1] - alpha[j]);
  return system.metric * s;
}

Mat gmam_gradient(const Path& path, const SystemSpec& system) {
  const int n = path.n();
  const double ds = 1.0 / n;
  Mat xp = path_derivative(path);

  Mat F(path.dim(), n + 1);
  std::vector<double> lambda(n + 1);
  for (int j = 0; j <= n; ++j) {
    F.col(j) = system.drift(path.points.col(j));
    const double nf = F.col(j).norm(), nx = xp.col(j).norm();
    if (j > 0 && j < n && (nf <= 1e-12 || nx <= 1e-12))
      throw NumericError("degenerate node at index " + std::to_string(j));
    lambda[j] = nx > 0.0 ? nf / nx : 0.0;
  }

  // exact adjoint of the trapezoid/central discretization
  Mat raw = Mat::Zero(path.dim(), n + 1);
  auto weight = [&](int k) { return (k == 0 || k == n) ? 0.5 * ds : ds; };
  for (int k = 1; k < n; ++k) {
    Vec q = F.col(k) / lambda[k] - xp.col(k);
    raw.col(k) += weight(k) * (system.jacobian_or_fd(path.points.col(k)).transpose() * q);
  }
  for (int k = 0; k <= n; ++k) {
    Vec p = lambda[k] * xp.col(k) - F.col(k);
    if (k == 0) {
      raw.col(1) += weight(0) / ds * p;
    } else if (k == n) {
      raw.col(n - 1) -= weight(n) / ds * p;
    } else {
      raw.col(k + 1) += weight(k) / (2.0 * ds) * p;
      raw.col(k - 1) -= weight(k) / (2.0 * ds) * p;
    }
  }
  Mat grad = raw / ds;
  grad.col(0).setZero();
  grad.col(n).setZero();
  return grad;
}

int separatrix_crossing_index(const Path& path, const SystemSpec& system) {
  int best = 0;
  double best_d = -1.0;
  for (int j = 0; j <= path.n(); ++j) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& s : system.sinks)
      d = std::min(d, system.norm(path.points.col(j) - s));
    if (d > best_d) {
      best_d = d;
      best = j;
    }
  }
  return best;
}

ActionReport gmam_minimize(const SystemSpec& system, const Path& initial,
                           const SolverConfig& config) {
  const int n = initial.n();
  const double ds = 1.0 / n;
  Path X = reparameterize_equal_arclength(initial);

  ActionReport report;
  double S = geometric_action(X, system);
  const double S0 = S;
  report.history.push_back(S);
  double dt = config.h;

  Mat F(X.dim(), n + 1), rhs(X.dim(), n + 1);
  std::vector<double> lambda(n + 1), a(n + 1, 0.0), c(n + 1, 0.0);

  long it = 0;
  for (; it < config.max_steps; ++it) {
    Mat xp = path_derivative(X);
    for (int j = 0; j <= n; ++j) {
      F.col(j) = system.drift(X.points.col(j));
      const double nx = xp.col(j).norm();
      lambda[j] = nx > 1e-300 ? F.col(j).norm() / nx : 0.0;
    }

    // explicit part of -lambda dS/dX (the lambda^2 X'' piece goes implicit)
    rhs = X.points;
    for (int j = 1; j < n; ++j) {
      const double lp = (lambda[j + 1] - lambda[j - 1]) / (2.0 * ds);
      Mat J = system.jacobian_or_fd(X.points.col(j));
      Vec expl = lambda[j] * lp * xp.col(j) -
                 lambda[j] * (J * xp.col(j) - J.transpose() * xp.col(j)) -
                 J.transpose() * F.col(j);
      rhs.col(j) += dt * expl;
    }

    bool accepted = false;
    for (int attempt = 0; attempt <= 5; ++attempt) {
      const double step = dt / (1 << attempt);
      Mat r = X.points + (step / dt) * (rhs - X.points);
      for (int j = 1; j < n; ++j)
        a[j] = c[j] = step * lambda[j] * lambda[j] / (ds * ds);
      Mat sol(X.dim(), n + 1);
      solve_path_tridiagonal(sol, a, c, r);
      if (!sol.allFinite()) continue;
      Path cand(sol);
      cand = reparameterize_equal_arclength(cand);
      const double Sc = geometric_action(cand, system);
      if (Sc <= S * (1.0 + 1e-12) + 1e-15) {
        accepted = true;
        X = cand;
        S = Sc;
        if (attempt > 0) dt = step;
        break;
      }
    }
    report.history.push_back(S);
    if (accepted) {
      dt = std::min(dt * 1.05, config.h);
    } else {
      // every trial step raised the action: keep the path, shrink the step
      dt /= 64.0;
      if (dt < config.h * 1e-10) {
        ++it;
        break;
      }
    }

    if (S > 10.0 * S0 + 1.0)
      throw NumericError("gmam diverged, action " + std::to_string(S));

    const int w = 10;
    if (static_cast<int>(report.history.size()) > w + 10) {
      double change = 0.0;
      const auto& hist = report.history;
      for (int k = 0; k < w; ++k) {
        const double d = std::abs(hist[hist.size() - 1 - k] - hist[hist.size() - 2 - k]);
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

}  // namespace minact
