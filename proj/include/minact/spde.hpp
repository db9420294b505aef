#ifndef MINACT_SPDE_HPP
#define MINACT_SPDE_HPP

#include "minact/spectral.hpp"
#include "minact/types.hpp"

namespace minact {

/// Sheared Allen-Cahn on the 1- or 2-torus, pseudospectral in space:
///   phi_t = kappa*Lap(phi) + phi - phi^3 + g(y) dphi/dx,
/// g = c in 1D and g(y) = c sin(2*pi*y) in 2D. States are grid-value
/// vectors (see SpectralOps for the 2D flattening).
struct AcParams {
  int dim = 1;
  double kappa = 0.01;
  double c = 0.1;
  int N = 64;
  std::shared_ptr<SpectralOps> ops;

  /// g(y) * du/dx
  Vec shear_dx(const Vec& u) const;
};

/// Catalog entry: finite-dimensional SystemSpec over grid values with
/// metric 1/N^dim (so norms are L2(torus)), Strang flow integrator,
/// spectral dense Jacobian, and the splitting-based action minimizer
/// installed as the `minimize` hook. dim==1 also carries the
/// orthogonal decomposition V + b with b = c*du/dx.
SystemSpec make_ac_system(int dim, double kappa, double c, int N);

/// kappa*Lap(u) + u - P(u^3) + g(y) du/dx, with P the 2/3-rule
/// dealiasing projector applied to the cubic term.
Vec ac_drift(const AcParams& p, const Vec& u);

/// Energy V[u] = int kappa/2 |grad u|^2 + (1 - u^2)^2 / 4 over the torus
/// (spectral derivatives, grid-point quadrature).
double ac_energy(const AcParams& p, const Vec& u);

/// One Strang step: half-step Euler for reaction + advection, full
/// exponential step for diffusion, half-step Euler again.
Vec ac_strang_step(const AcParams& p, const Vec& u, double h);

/// Geometric-action gradient density on a field path, same discretization
/// and normalization as gmam_gradient but built from operator
/// applications (no dense Jacobians). Endpoint columns zero.
Mat spde_gmam_gradient(const Path& path, const SystemSpec& system);

/// Splitting-based descent for field paths: the kappa^2 Lap^2 phi piece of
/// the gradient flow is integrated exactly by spectral exponential
/// half-steps, the lambda^2 phi'' piece by Crank-Nicolson in s
/// (tridiagonal), and the remainder explicitly; equal-arclength
/// redistribution after every step.
ActionReport spde_gmam_minimize(const SystemSpec& system, const Path& initial,
                                const SolverConfig& config);

/// Field paths from u = -1 to u = +1 used to seed evolutions while
/// breaking symmetry in a chosen way. kinds: linear, vertical,
/// double_vertical (any dim); horizontal, double_horizontal, elliptical,
/// radial (2D only).
Path initial_field_path(const SystemSpec& system, const std::string& kind,
                        int n);

}  // namespace minact

#endif
