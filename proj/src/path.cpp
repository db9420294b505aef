#include "minact/path.hpp"

#include <algorithm>
#include <cmath>

namespace minact {

Vec SystemSpec::step(const Vec& x, double h) const {
  if (flow_step) return flow_step(x, h);
  // explicit midpoint
  Vec k1 = drift(x);
  return x + h * drift(x + 0.5 * h * k1);
}

Mat SystemSpec::jacobian_or_fd(const Vec& x) const {
  if (jacobian) return jacobian(x);
  const double eps = 1e-6 * (1.0 + x.norm());
  Mat J(dim, dim);
  Vec xp = x, xm = x;
  for (int k = 0; k < dim; ++k) {
    xp(k) += eps;
    xm(k) -= eps;
    J.col(k) = (drift(xp) - drift(xm)) / (2.0 * eps);
    xp(k) = x(k);
    xm(k) = x(k);
  }
  return J;
}

std::vector<double> cumulative_chord(const Path& path) {
  const int n = path.n();
  std::vector<double> c(n + 1, 0.0);
  for (int j = 1; j <= n; ++j)
    c[j] = c[j - 1] + (path.points.col(j) - path.points.col(j - 1)).norm();
  return c;
}

namespace {

// Interpolate the path at the given chord-parameter targets. Uses a natural
// cubic spline per dimension; degenerate (zero-length) segments force a
// piecewise-linear fallback.
Mat interpolate_at(const Path& path, const std::vector<double>& c,
                   const std::vector<double>& targets) {
  const int n = path.n();
  const int d = path.dim();
  const int m = static_cast<int>(targets.size());
  Mat out(d, m);

  bool degenerate = false;
  for (int j = 0; j < n; ++j)
    if (c[j + 1] - c[j] < 1e-13 * c.back()) degenerate = true;

  if (!degenerate && n >= 3) {
    // natural cubic spline: tridiagonal solve for second derivatives
    Mat M = Mat::Zero(d, n + 1);
    std::vector<double> diag(n + 1, 0.0), sup(n + 1, 0.0);
    Mat r = Mat::Zero(d, n + 1);
    for (int j = 1; j < n; ++j) {
      const double h0 = c[j] - c[j - 1], h1 = c[j + 1] - c[j];
      r.col(j) = 6.0 * ((path.points.col(j + 1) - path.points.col(j)) / h1 -
                        (path.points.col(j) - path.points.col(j - 1)) / h0);
      const double sub = (j > 1) ? h0 : 0.0;
      double piv = 2.0 * (h0 + h1);
      if (j > 1) {
        const double w = sub / diag[j - 1];
        piv -= w * sup[j - 1];
        r.col(j) -= w * r.col(j - 1);
      }
      diag[j] = piv;
      sup[j] = h1;
    }
    for (int j = n - 1; j >= 1; --j) {
      Vec rr = r.col(j);
      if (j < n - 1) rr -= sup[j] * M.col(j + 1);
      M.col(j) = rr / diag[j];
    }
    int seg = 0;
    for (int k = 0; k < m; ++k) {
      const double t = targets[k];
      while (seg + 1 < n && c[seg + 1] < t) ++seg;
      const double h = c[seg + 1] - c[seg];
      const double A = (c[seg + 1] - t) / h, B = (t - c[seg]) / h;
      out.col(k) = A * path.points.col(seg) + B * path.points.col(seg + 1) +
                   ((A * A * A - A) * M.col(seg) + (B * B * B - B) * M.col(seg + 1)) *
                       h * h / 6.0;
    }
  } else {
    int seg = 0;
    for (int k = 0; k < m; ++k) {
      const double t = targets[k];
      while (seg + 1 < n && c[seg + 1] < t) ++seg;
      const double len = c[seg + 1] - c[seg];
      const double w = len > 0.0 ? (t - c[seg]) / len : 0.0;
      out.col(k) =
          (1.0 - w) * path.points.col(seg) + w * path.points.col(seg + 1);
    }
  }
  return out;
}

}  // namespace

Path reparameterize_equal_arclength(const Path& path) {
  const int n = path.n();
  if (n < 2) throw NumericError("path too short");
  auto c = cumulative_chord(path);
  const double total = c.back();
  if (total < 1e-14) throw NumericError("collapsed path");

  std::vector<double> targets(n - 1);
  for (int j = 1; j < n; ++j)
    targets[j - 1] = total * static_cast<double>(j) / n;
  Path out = path;
  out.points.middleCols(1, n - 1) = interpolate_at(path, c, targets);
  out.points.col(0) = path.points.col(0);
  out.points.col(n) = path.points.col(n);
  return out;
}

Path resample(const Path& path, int m) {
  const int n = path.n();
  if (n < 2 || m < 2) throw NumericError("path too short");
  auto c = cumulative_chord(path);
  const double total = c.back();
  if (total < 1e-14) throw NumericError("collapsed path");

  std::vector<double> targets(m - 1);
  for (int j = 1; j < m; ++j)
    targets[j - 1] = total * static_cast<double>(j) / m;
  Mat pts(path.dim(), m + 1);
  pts.middleCols(1, m - 1) = interpolate_at(path, c, targets);
  pts.col(0) = path.points.col(0);
  pts.col(m) = path.points.col(path.n());
  Path out(pts);
  out.fixed_head = path.fixed_head;
  out.fixed_tail = path.fixed_tail;
  return out;
}

Mat path_derivative(const Path& path) {
  const int n = path.n();
  const double ds = 1.0 / n;
  Mat d(path.dim(), n + 1);
  d.col(0) = (path.points.col(1) - path.points.col(0)) / ds;
  d.col(n) = (path.points.col(n) - path.points.col(n - 1)) / ds;
  for (int j = 1; j < n; ++j)
    d.col(j) = (path.points.col(j + 1) - path.points.col(j - 1)) / (2.0 * ds);
  return d;
}

double fw_action(const Path& path, const std::vector<double>& times,
                 const SystemSpec& system) {
  const int n = path.n();
  if (static_cast<int>(times.size()) != n + 1)
    throw NumericError("times/path length mismatch");
  for (int j = 1; j <= n; ++j)
    if (!(times[j] > times[j - 1]))
      throw NumericError("times not strictly increasing");

  // finite-difference velocity on the (possibly non-uniform) time grid
  Mat v(path.dim(), n + 1);
  v.col(0) = (path.points.col(1) - path.points.col(0)) / (times[1] - times[0]);
  v.col(n) =
      (path.points.col(n) - path.points.col(n - 1)) / (times[n] - times[n - 1]);
  for (int j = 1; j < n; ++j)
    v.col(j) = (path.points.col(j + 1) - path.points.col(j - 1)) /
               (times[j + 1] - times[j - 1]);

  std::vector<double> g(n + 1);
  for (int j = 0; j <= n; ++j) {
    Vec r = v.col(j) - system.drift(path.points.col(j));
    g[j] = 0.5 * system.metric * r.squaredNorm();
  }
  double s = 0.0;
  for (int j = 0; j < n; ++j)
    s += 0.5 * (g[j] + g[j + 1]) * (times[j + 1] - times[j]);
  return s;
}

std::pair<Path, std::vector<double>> reconstruct_time_parameterization(
    const Path& path, const SystemSpec& system) {
  const int n = path.n();
  for (int j = 1; j < n; ++j)
    if (system.drift(path.points.col(j)).norm() <= 1e-12)
      throw NumericError("path touches fixed point; infinite time");

  std::vector<double> times(n + 1, 0.0);
  for (int j = 0; j < n; ++j) {
    Vec mid = 0.5 * (path.points.col(j) + path.points.col(j + 1));
    double speed = system.drift(mid).norm();
    if (speed <= 1e-12)
      throw NumericError("path touches fixed point; infinite time");
    double dl = (path.points.col(j + 1) - path.points.col(j)).norm();
    times[j + 1] = times[j] + dl / speed;
  }
  return {path, times};
}

}  // namespace minact
