#include "minact/io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace minact {

void write_path_csv(std::ostream& os, const Path& path) {
  const int d = path.dim();
  for (int k = 0; k < d; ++k) os << (k ? "," : "") << "x" << k;
  os << "\n";
  char buf[40];
  for (int j = 0; j <= path.n(); ++j) {
    for (int k = 0; k < d; ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g", path.points(k, j));
      os << (k ? "," : "") << buf;
    }
    os << "\n";
  }
}

Path read_path_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw NumericError("empty CSV path");
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (!rows.empty() && row.size() != rows.front().size())
      throw NumericError("ragged CSV path");
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2) throw NumericError("CSV path needs at least two rows");
  Mat pts(rows.front().size(), rows.size());
  for (size_t j = 0; j < rows.size(); ++j)
    for (size_t k = 0; k < rows[j].size(); ++k) pts(k, j) = rows[j][k];
  return Path(pts);
}

nlohmann::json config_to_json(const SolverConfig& c) {
  return {{"n", c.n},
          {"n1", c.n1},
          {"n2", c.n2},
          {"delta", c.delta},
          {"h", c.h},
          {"threshold", c.threshold},
          {"abs_change", c.abs_change},
          {"max_steps", c.max_steps},
          {"seed", c.seed},
          {"ring_capacity", c.ring_capacity}};
}

namespace {

nlohmann::json points_to_json(const Mat& pts) {
  nlohmann::json cols = nlohmann::json::array();
  for (int j = 0; j < pts.cols(); ++j) {
    nlohmann::json col = nlohmann::json::array();
    for (int k = 0; k < pts.rows(); ++k) col.push_back(pts(k, j));
    cols.push_back(std::move(col));
  }
  return cols;
}

}  // namespace

nlohmann::json report_to_json(const std::string& system_name,
                              const SolverConfig& config,
                              const ActionReport& report) {
  nlohmann::json j = {{"system", system_name},
                      {"config", config_to_json(config)},
                      {"points", points_to_json(report.path.points)},
                      {"action", report.action},
                      {"iterations", report.iterations}};
  if (report.crossing_index) j["crossing_index"] = *report.crossing_index;
  return j;
}

nlohmann::json orbit_to_json(const std::string& system_name,
                             const SolverConfig& config,
                             const PeriodicOrbitReport& report) {
  nlohmann::json pt = nlohmann::json::array();
  for (int k = 0; k < report.point.size(); ++k) pt.push_back(report.point(k));
  return {{"system", system_name},
          {"config", config_to_json(config)},
          {"point", std::move(pt)},
          {"is_fixed_point", report.is_fixed_point},
          {"period", report.period},
          {"j_star", report.j_star},
          {"phase1_steps", report.phase1_steps},
          {"phase2_steps", report.phase2_steps},
          {"orbit_samples", points_to_json(report.orbit_samples)}};
}

}  // namespace minact
