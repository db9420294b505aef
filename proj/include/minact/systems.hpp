#ifndef MINACT_SYSTEMS_HPP
#define MINACT_SYSTEMS_HPP

#include <map>

#include "minact/types.hpp"

namespace minact {

/// Build a catalog system by name:
///   double_well_1d        gradient double well embedded in 2D
///   sde2d                 orthogonal-type planar system, saddle at (1,0)
///   sde3d_rot             rotationally symmetric 3D system, orbit rho=1, z=0
///   sde3d_nonrot          non-symmetric 3D system, orbit x^4+y^4=16, z=0
///   ac1d, ac2d            Allen-Cahn with shear on the 1-/2-torus
/// params (ac systems): kappa, c, N. Throws std::invalid_argument for an
/// unknown name.
SystemSpec make_system(const std::string& name,
                       const std::map<std::string, double>& params = {});

std::vector<std::string> list_systems();

/// max of ||f(x) - (-gradV(x) + b(x))|| and |<gradV(x), b(x)>| in the
/// system metric; 0 when no decomposition is attached.
double decomposition_residual(const SystemSpec& system, const Vec& x);

Path linear_path(const Vec& a, const Vec& b, int n);

/// Linear path plus a seeded random transverse bump that vanishes at the
/// endpoints; used to take initial conditions off symmetry axes.
Path perturbed_linear_path(const Vec& a, const Vec& b, int n, double amp,
                           unsigned seed);

}  // namespace minact

#endif
