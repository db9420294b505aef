#ifndef MINACT_TYPES_HPP
#define MINACT_TYPES_HPP

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace minact {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Thrown on numerical failures (blow-up, singular drift, non-convergence).
/// The CLI maps this to exit code 2.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Discrete path: d x (n+1) matrix, column j is node j. Endpoints are
/// pinned by all solvers unless the fixed flags are cleared.
struct Path {
  Mat points;
  bool fixed_head = true;
  bool fixed_tail = true;

  Path() = default;
  explicit Path(Mat pts) : points(std::move(pts)) {}

  int n() const { return static_cast<int>(points.cols()) - 1; }
  int dim() const { return static_cast<int>(points.rows()); }
  Vec node(int j) const { return points.col(j); }
};

struct Decomposition {
  std::function<double(const Vec&)> V;
  std::function<Vec(const Vec&)> gradV;
  std::function<Vec(const Vec&)> b;
};

struct SolverConfig {
  int n = 100;
  int n1 = 100;
  int n2 = 10;
  int delta = 1;
  double h = 0.01;          // descent / evolution step
  double threshold = 1e-6;  // relative convergence tolerance
  double abs_change = 0.0;  // >0: absolute action-change termination instead
  long max_steps = 400000;
  unsigned seed = 0;
  int ring_capacity = 6000;  // p-String snapshot window (steps)
};

struct ActionReport {
  double action = 0.0;
  Path path;
  long iterations = 0;
  std::vector<double> history;
  std::optional<int> crossing_index;
};

struct PeriodicOrbitReport {
  Vec point;
  bool is_fixed_point = false;
  double period = 0.0;        // 0 for fixed points
  Mat orbit_samples;          // one column per sample
  std::vector<double> history;  // monitored geometric action per phase-1 step
  long phase1_steps = 0;
  long phase2_steps = 0;
  int j_star = -1;
};

struct AcParams;  // spde.hpp

/// Drift field with optional structure. All evaluations are pure; a spec
/// value is safe to share across threads.
struct SystemSpec {
  std::string name;
  int dim = 0;
  std::function<Vec(const Vec&)> drift;
  std::function<Mat(const Vec&)> jacobian;  // empty -> finite differences
  std::vector<Vec> sinks;
  std::optional<Decomposition> decomposition;

  /// Inner-product weight: <x,y> = metric * x.dot(y). 1 for ODE systems,
  /// 1/N (1/N^2) for spectral grid systems so norms are L2(torus).
  double metric = 1.0;

  /// Flow integrator for one step of dx/dt = drift(x); empty -> explicit
  /// midpoint (RK2).
  std::function<Vec(const Vec&, double)> flow_step;

  /// Action minimizer override; empty -> gmam_minimize. Spectral systems
  /// install the splitting-based solver here.
  std::function<ActionReport(const SystemSpec&, const Path&, const SolverConfig&)> minimize;

  std::shared_ptr<const AcParams> ac;  // set for ac1d/ac2d

  double norm(const Vec& v) const { return std::sqrt(metric) * v.norm(); }
  double dot(const Vec& a, const Vec& b) const { return metric * a.dot(b); }

  Vec step(const Vec& x, double h) const;
  Mat jacobian_or_fd(const Vec& x) const;
};

}  // namespace minact

#endif
