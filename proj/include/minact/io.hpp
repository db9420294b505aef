#ifndef MINACT_IO_HPP
#define MINACT_IO_HPP

#include <iosfwd>

#include <json.hpp>

#include "minact/types.hpp"

namespace minact {

/// CSV with header x0,...,x{d-1}, one row per node, 17 significant digits
/// (doubles round-trip bit exactly).
void write_path_csv(std::ostream& os, const Path& path);
Path read_path_csv(std::istream& is);

nlohmann::json config_to_json(const SolverConfig& config);

/// {"system": ..., "config": ..., "points": [[...]...], "action": ...}
/// plus iterations / crossing_index when available.
nlohmann::json report_to_json(const std::string& system_name,
                              const SolverConfig& config,
                              const ActionReport& report);

nlohmann::json orbit_to_json(const std::string& system_name,
                             const SolverConfig& config,
                             const PeriodicOrbitReport& report);

}  // namespace minact

#endif
