#ifndef MINACT_PATH_HPP
#define MINACT_PATH_HPP

#include "minact/types.hpp"

namespace minact {

/// Cumulative Euclidean chord lengths, c[0]=0 .. c[n]=total length.
std::vector<double> cumulative_chord(const Path& path);

/// Redistribute nodes to equal chord fractions by piecewise-linear
/// interpolation in cumulative chord length. Endpoints are copied bitwise.
/// Throws NumericError("collapsed path") when total length < 1e-14.
Path reparameterize_equal_arclength(const Path& path);

/// Spline-resample onto m+1 nodes equally spaced in arclength; endpoints
/// are copied bitwise.
Path resample(const Path& path, int m);

/// Node derivatives dX/ds on the uniform parameter grid s_j = j/n:
/// 2nd-order central in the interior, 1st-order one-sided at the ends.
Mat path_derivative(const Path& path);

/// Freidlin-Wentzell action (1/2) int ||Xdot - f(X)||^2 dt with
/// finite-difference Xdot on the given time grid and trapezoid quadrature.
double fw_action(const Path& path, const std::vector<double>& times,
                 const SystemSpec& system);

/// Physical-time reconstruction dt = ||dX|| / ||f(midpoint)|| along the
/// path. Throws when an interior node has ||f|| <= 1e-12 ("path touches
/// fixed point; infinite time").
std::pair<Path, std::vector<double>> reconstruct_time_parameterization(
    const Path& path, const SystemSpec& system);

}  // namespace minact

#endif
