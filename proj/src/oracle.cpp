#include "minact/oracle.hpp"

#include <cmath>
#include <random>

#include "minact/spde.hpp"
#include "minact/systems.hpp"

namespace minact {

double oscillator_period(double E, double kappa) {
  if (kappa <= 0.0) throw std::invalid_argument("kappa must be positive");
  if (!(E > -0.25 && E < 0.0))
    throw std::invalid_argument("E must lie in (-1/4, 0)");
  const double s = std::sqrt(-E);
  const double a2 = 1.0 - 2.0 * s, b2 = 1.0 + 2.0 * s;
  // period = 4 sqrt(2 kappa) int_0^{pi/2} dtheta / sqrt(b^2 - a^2 sin^2)
  auto simpson = [&](long m) {
    const double h = 0.5 * M_PI / m;
    double acc = 0.0;
    for (long i = 0; i <= m; ++i) {
      const double t = i * h;
      const double st = std::sin(t);
      const double f = 1.0 / std::sqrt(b2 - a2 * st * st);
      const double w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      acc += w * f;
    }
    return acc * h / 3.0;
  };
  double prev = simpson(64), cur = 0.0;
  for (long m = 128; m <= (1L << 22); m *= 2) {
    cur = simpson(m);
    if (std::abs(cur - prev) <= 1e-13 * std::abs(cur)) break;
    prev = cur;
  }
  return 4.0 * std::sqrt(2.0 * kappa) * cur;
}

Vec FixedPointProfile::sample_grid(int N) const {
  Vec out(N);
  const int last = static_cast<int>(u.size()) - 1;
  for (int i = 0; i < N; ++i) {
    const double pos = (static_cast<double>(i) / N) / step;
    const int k = std::min(static_cast<int>(pos), last - 1);
    const double t = pos - k;
    out(i) = (1.0 - t) * u(k) + t * u(k + 1);
  }
  return out;
}

FixedPointProfile find_nonuniform_fixed_point(double kappa, int n_periods) {
  const double target = 1.0 / n_periods;
  if (2.0 * M_PI * std::sqrt(kappa) >= target)
    throw NumericError("no such fixed point");

  double lo = -0.25 + 1e-14, hi = -1e-14;
  if (oscillator_period(hi, kappa) < target)
    throw NumericError("no such fixed point");
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (oscillator_period(mid, kappa) < target)
      lo = mid;
    else
      hi = mid;
    if (std::abs(oscillator_period(mid, kappa) - target) < 1e-12) break;
  }
  const double E = 0.5 * (lo + hi);

  // one period of kappa u'' + u - u^3 = 0 from the turning point (-a, 0)
  const double a = std::sqrt(1.0 - 2.0 * std::sqrt(-E));
  const long steps = static_cast<long>(std::ceil(target / 1e-5));
  const double hs = target / steps;
  auto rhs = [&](double u, double v, double& du, double& dv) {
    du = v;
    dv = (u * u * u - u) / kappa;
  };
  Vec period_u(steps + 1);
  double u = -a, v = 0.0;
  period_u(0) = u;
  for (long i = 0; i < steps; ++i) {
    double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
    rhs(u, v, k1u, k1v);
    rhs(u + 0.5 * hs * k1u, v + 0.5 * hs * k1v, k2u, k2v);
    rhs(u + 0.5 * hs * k2u, v + 0.5 * hs * k2v, k3u, k3v);
    rhs(u + hs * k3u, v + hs * k3v, k4u, k4v);
    u += hs / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    v += hs / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    period_u(i + 1) = u;
  }

  FixedPointProfile prof;
  prof.kappa = kappa;
  prof.n_periods = n_periods;
  prof.E = E;
  prof.step = hs;
  prof.u.resize(n_periods * steps + 1);
  for (long i = 0; i < n_periods * steps + 1; ++i)
    prof.u(i) = period_u(i % steps);
  prof.u(n_periods * steps) = period_u(steps);

  // V[u] = E + int (1-u^2)^2/2 dx on [0,1]; the barrier action is 2 V[u]
  double well = 0.0;
  const long total = prof.u.size() - 1;
  for (long i = 0; i <= total; ++i) {
    const double g = 0.5 * std::pow(1.0 - prof.u(i) * prof.u(i), 2);
    well += (i == 0 || i == total) ? 0.5 * g : g;
  }
  well *= hs;
  prof.action = 2.0 * (E + well);
  return prof;
}

std::vector<ExactAction> exact_action_catalog() {
  std::vector<ExactAction> table;
  auto ode_entry = [&](const std::string& name, const Vec& xs,
                       const std::string& label) {
    SystemSpec s = make_system(name);
    const auto& d = *s.decomposition;
    table.push_back({name, label, 2.0 * (d.V(xs) - d.V(s.sinks[0]))});
  };
  Vec xs2(2), xs3(3);
  xs2 << 0, 0;
  ode_entry("double_well_1d", xs2, "saddle (0,0)");
  xs2 << 1, 0;
  ode_entry("sde2d", xs2, "saddle (1,0)");
  xs3 << 1, 0, 0;
  ode_entry("sde3d_rot", xs3, "orbit point (1,0,0)");
  xs3 << 2, 0, 0;
  ode_entry("sde3d_nonrot", xs3, "orbit point (2,0,0)");

  SystemSpec ac = make_system("ac1d", {{"kappa", 0.01}});
  const auto& d = *ac.decomposition;
  table.push_back({"ac1d kappa=0.01", "uniform u=0",
                   2.0 * (d.V(Vec::Zero(ac.dim)) -
                          d.V(Vec::Constant(ac.dim, -1.0)))});
  table.push_back({"ac1d kappa=0.01", "1-nucleation",
                   find_nonuniform_fixed_point(0.01, 1).action});
  table.push_back({"ac1d kappa=0.005", "1-nucleation",
                   find_nonuniform_fixed_point(0.005, 1).action});
  table.push_back({"ac1d kappa=0.005", "2-nucleation",
                   find_nonuniform_fixed_point(0.005, 2).action});
  return table;
}

HarmonicDecompositionReport harmonic_decomposition_check() {
  // sample points in the disk r <= 1.5 (fixed seed: this is a
  // deterministic diagnostic)
  const int M = 400, K = 4;
  std::mt19937 gen(42);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Mat pts(2, M);
  for (int i = 0; i < M; ++i) {
    const double r = 1.5 * std::sqrt(unif(gen));
    const double t = 2.0 * M_PI * unif(gen);
    pts(0, i) = r * std::cos(t);
    pts(1, i) = r * std::sin(t);
  }

  // V(r) = sum_k c_k r^{2k}; residual g_i = (f + grad V).grad V at point i
  auto gradV = [&](const Vec& c, double q, double p) {
    const double r2 = q * q + p * p;
    double scal = 0.0;
    for (int k = 1; k <= K; ++k)
      scal += c(k - 1) * 2.0 * k * std::pow(r2, k - 1);
    return (Vec(2) << scal * q, scal * p).finished();
  };
  auto residuals = [&](const Vec& c) {
    Vec g(M);
    for (int i = 0; i < M; ++i) {
      const double q = pts(0, i), p = pts(1, i);
      Vec gv = gradV(c, q, p);
      Vec f(2);
      f << p, -q;
      g(i) = (f + gv).dot(gv);
    }
    return g;
  };
  auto rms = [&](const Vec& g) { return std::sqrt(g.squaredNorm() / M); };

  HarmonicDecompositionReport report;
  report.residual_zero_candidate = rms(residuals(Vec::Zero(K)));
  Vec c = Vec::Zero(K);
  c(0) = 0.5;  // V = (q^2 + p^2)/2
  report.residual_quadratic_candidate = rms(residuals(c));

  // Levenberg-Marquardt on the residual vector, Jacobian by central FD
  double mu = 1e-8;
  Vec g = residuals(c);
  for (int it = 0; it < 300; ++it) {
    Mat J(M, K);
    for (int k = 0; k < K; ++k) {
      Vec cp = c, cm = c;
      const double eps = 1e-7 * (1.0 + std::abs(c(k)));
      cp(k) += eps;
      cm(k) -= eps;
      J.col(k) = (residuals(cp) - residuals(cm)) / (2.0 * eps);
    }
    Mat A = J.transpose() * J + mu * Mat::Identity(K, K);
    Vec delta = A.ldlt().solve(-J.transpose() * g);
    Vec cn = c + delta;
    Vec gn = residuals(cn);
    if (gn.squaredNorm() < g.squaredNorm()) {
      c = cn;
      g = gn;
      mu = std::max(mu * 0.5, 1e-14);
      if (rms(g) < 1e-15) break;
    } else {
      mu *= 10.0;
      if (mu > 1e8) break;
    }
  }
  report.optimized_residual = rms(g);
  double norm2 = 0.0;
  for (int i = 0; i < M; ++i)
    norm2 += gradV(c, pts(0, i), pts(1, i)).squaredNorm();
  report.optimized_gradV_norm = std::sqrt(norm2 / M);
  return report;
}

}  // namespace minact
