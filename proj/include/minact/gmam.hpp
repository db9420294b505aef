#ifndef MINACT_GMAM_HPP
#define MINACT_GMAM_HPP

#include "minact/types.hpp"

namespace minact {

/// Geometric action S^ = int (||X'|| ||f|| - <X',f>) ds on the uniform
/// parameter grid: central-difference X', trapezoid quadrature, norms in
/// the system metric.
double geometric_action(const Path& path, const SystemSpec& system);

/// Same functional on an explicit non-uniform grid alpha[0..n].
double geometric_action_nonuniform(const Mat& points,
                                   const std::vector<double>& alpha,
                                   const SystemSpec& system);

/// Functional gradient density of the geometric action,
///   dS^/dX = -lambda X'' + (Df - Df^T) X' + lambda^-1 Df^T f - lambda' X',
/// discretized as the exact adjoint of `geometric_action`, so central
/// finite differences of the action match <grad, eta> to roundoff.
/// Endpoint columns are zero. Throws on a degenerate node
/// (||X'|| or ||f|| below 1e-12).
Mat gmam_gradient(const Path& path, const SystemSpec& system);

/// Preconditioned descent X_t = -lambda dS^/dX with the lambda^2 X''
/// term implicit (tridiagonal in s) and equal-arclength redistribution
/// after every step.
ActionReport gmam_minimize(const SystemSpec& system, const Path& initial,
                           const SolverConfig& config);

/// Node index farthest (in metric norm) from the nearer sink.
int separatrix_crossing_index(const Path& path, const SystemSpec& system);

/// Thomas solve of the path-wise tridiagonal system with interior rows
/// (-a_j, 1 + a_j + c_j, -c_j) and identity end rows, one solve per state
/// dimension. Shared by the implicit descent steps.
void solve_path_tridiagonal(Mat& X, const std::vector<double>& a,
                            const std::vector<double>& c, const Mat& rhs);

}  // namespace minact

#endif
