#include "minact/updown.hpp"

#include <cmath>

#include "minact/gmam.hpp"
#include "minact/systems.hpp"

namespace minact {

Mat downhill_trajectory(const SystemSpec& system, const Vec& x_plus,
                        const Vec& target, const Vec& other, double h,
                        long max_steps) {
  std::vector<Vec> traj{x_plus};
  Vec x = x_plus;
  for (long i = 0; i < max_steps; ++i) {
    if (system.norm(x - target) <= h) {
      Mat out(x.size(), traj.size());
      for (size_t k = 0; k < traj.size(); ++k) out.col(k) = traj[k];
      return out;
    }
    if (system.norm(x - other) <= h)
      throw NumericError("downhill trajectory reached the wrong basin");
    x = system.step(x, h);
    traj.push_back(x);
  }
  throw NumericError("downhill trajectory did not reach the target basin");
}

ActionReport updown_gmam(const SystemSpec& system, const Vec& xa,
                         const Vec& xs, const Vec& xb,
                         const SolverConfig& config) {
  auto minimize = [&](const Path& init, const SolverConfig& cfg) {
    return system.minimize ? system.minimize(system, init, cfg)
                           : gmam_minimize(system, init, cfg);
  };

  SolverConfig up_cfg = config;
  up_cfg.n = config.n1;
  ActionReport up = minimize(linear_path(xa, xs, config.n1), up_cfg);

  SolverConfig down_cfg = config;
  down_cfg.n = config.n2;
  ActionReport down = minimize(linear_path(xs, xb, config.n2), down_cfg);

  // The coarse second node fixes the escape direction, but its distance from
  // x_s scales with the coarse spacing, and the junction segment pays action
  // proportional to that distance times its misalignment with the flow.
  // Shrink the perturbation toward x_s as far as the basin allows.
  const Vec dir = down.path.points.col(1) - xs;
  const double len = system.norm(dir);
  Mat traj;
  bool ok = false;
  for (double dist = std::min(config.h, len); !ok && dist <= len * 2.0;
       dist *= 2.0) {
    const double eps = std::min(dist / len, 1.0);
    for (double sign : {1.0, -1.0}) {
      try {
        traj = downhill_trajectory(system, xs + sign * eps * dir, xb, xa,
                                   config.h, config.max_steps);
        ok = true;
        break;
      } catch (const NumericError&) {
      }
    }
  }
  if (!ok)
    traj = downhill_trajectory(system, down.path.points.col(1), xb, xa,
                               config.h, config.max_steps);

  // downsample the integrated trajectory by delta and pin x_b at the end
  const long K = traj.cols() - 1;
  std::vector<long> keep;
  for (long k = 0; k <= K; k += config.delta) keep.push_back(k);
  const int n1 = config.n1;
  const int m = static_cast<int>(keep.size());  // downhill points before x_b
  const int total = n1 + m + 2;                 // nodes in the composite path

  Mat pts(xa.size(), total);
  std::vector<double> alpha(total);
  for (int j = 0; j <= n1; ++j) {
    pts.col(j) = up.path.points.col(j);
    alpha[j] = static_cast<double>(j) / (2.0 * n1);
  }
  const double dalpha = 0.5 / (m + 1);
  for (int j = 0; j < m; ++j) {
    pts.col(n1 + 1 + j) = traj.col(keep[j]);
    alpha[n1 + 1 + j] = 0.5 + (j + 1) * dalpha;
  }
  pts.col(total - 1) = xb;
  alpha[total - 1] = 1.0;

  ActionReport report;
  report.action = geometric_action_nonuniform(pts, alpha, system);
  report.path = Path(pts);
  report.iterations = up.iterations + down.iterations;
  report.history = up.history;
  report.crossing_index = n1;
  return report;
}

}  // namespace minact
