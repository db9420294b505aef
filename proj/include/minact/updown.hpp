#ifndef MINACT_UPDOWN_HPP
#define MINACT_UPDOWN_HPP

#include "minact/types.hpp"

namespace minact {

/// Integrate dx/dt = f(x) from x_plus until within h (metric norm) of
/// target; columns are the discrete trajectory including both ends.
/// Throws when max_steps is exhausted or the trajectory lands at `other`
/// (the wrong basin) instead.
Mat downhill_trajectory(const SystemSpec& system, const Vec& x_plus,
                        const Vec& target, const Vec& other, double h,
                        long max_steps);

/// Up-down gMAM: gMAM with n1+1 points for the uphill x_a -> x_s leg, a
/// coarse gMAM with n2+1 points from x_s to x_b whose second node seeds a
/// plain flow integration down to x_b, downsampling by delta, and the
/// geometric action of the composite path on the non-uniform alpha grid
/// (uphill spacing 1/(2 n1), downhill spacing 1/2 divided evenly). If the
/// coarse perturbation falls into the x_a basin it is retried mirrored
/// through x_s. The returned crossing_index is n1.
ActionReport updown_gmam(const SystemSpec& system, const Vec& xa,
                         const Vec& xs, const Vec& xb,
                         const SolverConfig& config);

}  // namespace minact

#endif
