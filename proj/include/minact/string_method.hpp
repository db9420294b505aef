#ifndef MINACT_STRING_METHOD_HPP
#define MINACT_STRING_METHOD_HPP

#include "minact/types.hpp"

namespace minact {

/// One String-method step: advance every node by the system flow over
/// time h (endpoints included), then redistribute to equal arclength.
Path string_step(const SystemSpec& system, const Path& path, double h);

/// p-String method: locate the attracting fixed point or periodic orbit
/// on the separatrix between the basins of the two path endpoints.
///
/// Phase 1 evolves the string and stores every step in a sliding window
/// of config.ring_capacity paths; it stops at step f once the geometric
/// action and the path itself match an earlier step i~ (i~ = f-1 with a
/// tight tolerance means plain convergence; an older match means periodic
/// behavior with period (f - i~ - 1) h). Phase 2 re-evolves the stored
/// path pointwise without reparameterization until all nodes but one are
/// within h of an endpoint; the stored node j* at that index is returned.
PeriodicOrbitReport pstring_run(const SystemSpec& system, const Path& initial,
                                const SolverConfig& config);

/// Integrate the flow from `point` over one period at step h/10 and
/// collect the samples (a single column when period == 0). Throws when
/// the trajectory escapes to 10x the larger of 1 and the metric norm of
/// `point`.
Mat recover_orbit(const SystemSpec& system, const Vec& point, double period,
                  double h);

}  // namespace minact

#endif
