#include "minact/string_method.hpp"

#include <cmath>
#include <deque>

#include "minact/gmam.hpp"
#include "minact/path.hpp"

namespace minact {

namespace {

// Piecewise-linear redistribution. The String method relies on the slight
// numerical diffusion of linear interpolation to damp node-scale wiggles;
// spline redistribution lets the string wander instead of settling into a
// steady (rotating) profile.
Path redistribute_linear(const Path& path) {
  const int n = path.n();
  auto c = cumulative_chord(path);
  const double total = c.back();
  if (total < 1e-14) throw NumericError("collapsed path");
  Path out = path;
  int seg = 0;
  for (int j = 1; j < n; ++j) {
    const double target = total * static_cast<double>(j) / n;
    while (seg + 1 < n && c[seg + 1] < target) ++seg;
    const double len = c[seg + 1] - c[seg];
    const double t = len > 0.0 ? (target - c[seg]) / len : 0.0;
    out.points.col(j) =
        (1.0 - t) * path.points.col(seg) + t * path.points.col(seg + 1);
  }
  return out;
}

}  // namespace

Path string_step(const SystemSpec& system, const Path& path, double h) {
  Path out = path;
  for (int j = 0; j <= path.n(); ++j)
    out.points.col(j) = system.step(path.points.col(j), h);
  return redistribute_linear(out);
}

namespace {

double max_node_distance(const SystemSpec& system, const Mat& A, const Mat& B) {
  double d = 0.0;
  for (int j = 0; j < A.cols(); ++j)
    d = std::max(d, system.norm(A.col(j) - B.col(j)));
  return d;
}

}  // namespace

PeriodicOrbitReport pstring_run(const SystemSpec& system, const Path& initial,
                                const SolverConfig& config) {
  const int n = initial.n();
  const double h = config.h;
  const Vec xa = initial.points.col(0), xb = initial.points.col(n);

  struct Snapshot {
    long step;
    Mat points;
    double action;
  };
  std::deque<Snapshot> ring;
  const int gap = 10;  // periodic matches are not sought among the last few
                       // steps; plain convergence handles those

  Path phi = redistribute_linear(initial);
  ring.push_back({0, phi.points, geometric_action(phi, system)});

  PeriodicOrbitReport report;
  long fired_step = -1, matched_step = -1;
  bool converged = false;

  for (long i = 1; i <= config.max_steps; ++i) {
    phi = string_step(system, phi, h);
    const double S = geometric_action(phi, system);
    report.history.push_back(S);

    double vmax = 0.0, length = 0.0;
    for (int j = 0; j <= n; ++j) {
      vmax = std::max(vmax, system.norm(system.drift(phi.points.col(j))));
      if (j > 0)
        length += system.norm(phi.points.col(j) - phi.points.col(j - 1));
    }
    const double conv_tol = 100.0 * config.threshold * length;
    const double orbit_tol = 2.0 * h * vmax;

    auto action_match = [&](double Sq) {
      return std::abs(S - Sq) / std::max({std::abs(S), std::abs(Sq), 1e-300}) <
             config.threshold;
    };

    // degenerate case: the String evolution itself converged
    const Snapshot& prev = ring.back();
    if (action_match(prev.action) &&
        max_node_distance(system, phi.points, prev.points) <= conv_tol) {
      fired_step = i;
      matched_step = i - 1;
      converged = true;
    }

    if (!converged) {
      double best = orbit_tol;
      for (const Snapshot& snap : ring) {
        if (snap.step > i - gap) break;
        if (!action_match(snap.action)) continue;
        const double d = max_node_distance(system, phi.points, snap.points);
        if (d <= best) {
          best = d;
          fired_step = i;
          matched_step = snap.step;
        }
      }
    }

    ring.push_back({i, phi.points, S});
    if (static_cast<int>(ring.size()) > config.ring_capacity) ring.pop_front();
    if (fired_step >= 0) break;
  }
  if (fired_step < 0)
    throw NumericError("p-String phase 1 did not detect periodic behavior");

  report.phase1_steps = fired_step;
  report.is_fixed_point = converged;
  report.period = converged ? 0.0 : (fired_step - matched_step - 1) * h;

  // phase 2: pointwise evolution, no reparameterization; everything but
  // the separatrix-crossing node falls into a basin
  const Mat stored = phi.points;
  Mat pts = stored;
  int j_star = -1, prev_argmax = -1;
  for (long i = 1; i <= config.max_steps; ++i) {
    for (int j = 0; j <= n; ++j) pts.col(j) = system.step(pts.col(j), h);
    int count = 0, last = -1, argmax = -1;
    double dmax = -1.0;
    for (int j = 0; j <= n; ++j) {
      const double d = std::min(system.norm(pts.col(j) - xa),
                                system.norm(pts.col(j) - xb));
      if (d > h) {
        ++count;
        last = j;
      }
      if (d > dmax) {
        dmax = d;
        argmax = j;
      }
    }
    if (count == 1) {
      j_star = last;
      report.phase2_steps = i;
      break;
    }
    if (count == 0) {
      j_star = prev_argmax >= 0 ? prev_argmax : argmax;
      report.phase2_steps = i;
      break;
    }
    prev_argmax = argmax;
  }
  if (j_star < 0)
    throw NumericError("p-String phase 2 did not isolate a single node");

  report.j_star = j_star;
  report.point = stored.col(j_star);
  report.orbit_samples =
      recover_orbit(system, report.point, report.period, config.h);
  return report;
}

Mat recover_orbit(const SystemSpec& system, const Vec& point, double period,
                  double h) {
  if (period <= 0.0) return point;
  const double sub = h / 10.0;
  const long steps = std::max<long>(1, std::llround(period / sub));
  const double escape = 10.0 * std::max(1.0, system.norm(point));
  Mat samples(point.size(), steps + 1);
  Vec x = point;
  samples.col(0) = x;
  for (long i = 1; i <= steps; ++i) {
    x = system.step(x, sub);
    if (system.norm(x) > escape)
      throw NumericError("orbit recovery escaped the neighborhood");
    samples.col(i) = x;
  }
  return samples;
}

}  // namespace minact
