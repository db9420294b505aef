#ifndef MINACT_ORACLE_HPP
#define MINACT_ORACLE_HPP

#include "minact/types.hpp"

namespace minact {

/// Spatial period of the nonuniform steady-state oscillator
/// kappa u'' + u - u^3 = 0 at energy level E in (-1/4, 0), where
/// kappa u'^2 / 2 - (1 - u^2)^2 / 4 = E. Quadrature after the
/// u = a sin(theta) substitution that removes the turning-point
/// singularity; equals (4 sqrt(2 kappa) / b) K(a/b) with
/// a^2 = 1 - 2 sqrt(-E), b^2 = 1 + 2 sqrt(-E). Throws
/// std::invalid_argument for E outside the open interval or kappa <= 0.
double oscillator_period(double E, double kappa);

/// Nonuniform fixed point of the 1D Allen-Cahn energy with n_periods
/// humps per unit length.
struct FixedPointProfile {
  double kappa = 0.0;
  int n_periods = 0;
  double E = 0.0;       // oscillator energy level
  double action = 0.0;  // exact barrier action 2 V[u]
  double step = 0.0;    // dense sample spacing
  Vec u;                // samples of u on [0, 1], spacing `step`

  /// Linear interpolation onto the N-point grid x_i = i/N.
  Vec sample_grid(int N) const;
};

/// Bisect E so the oscillator period equals 1/n_periods, then integrate
/// the steady-state ODE with RK4 (step ~1e-5) from the turning point
/// (-a, 0) over one period and tile. Requires 2 pi sqrt(kappa) <
/// 1/n_periods; otherwise throws NumericError("no such fixed point").
FixedPointProfile find_nonuniform_fixed_point(double kappa, int n_periods);

struct ExactAction {
  std::string system;
  std::string crossing;
  double action = 0.0;
};

/// Analytic barrier actions 2 (V(x_s) - V(x_a)), each recomputed from the
/// potential rather than hard-coded: the four ODE systems plus 1D
/// Allen-Cahn entries (uniform and nucleated crossings).
std::vector<ExactAction> exact_action_catalog();

/// Numerical check that the planar harmonic oscillator f(q,p) = (p,-q)
/// admits only trivial orthogonal decompositions: minimizing the
/// orthogonality residual over band-limited radial potentials drives
/// ||grad V|| to zero.
struct HarmonicDecompositionReport {
  double residual_zero_candidate = 0.0;
  double residual_quadratic_candidate = 0.0;
  double optimized_residual = 0.0;
  double optimized_gradV_norm = 0.0;
};

HarmonicDecompositionReport harmonic_decomposition_check();

}  // namespace minact

#endif
