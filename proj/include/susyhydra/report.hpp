#pragma once

#include <cstddef>
#include <string>

namespace susyhydra {

/// Outcome of one operator identity checked on a grid.
struct ResidualReport {
  std::string identity;
  double relative_residual = 0.0;
  // Inclusive node index range entering the norm.
  std::size_t node_first = 0;
  std::size_t node_last = 0;
  double tolerance = 0.0;
  bool pass = false;
  double worst_radius = 0.0;
};

/// Nodes dropped at each grid edge before taking residual norms.
inline constexpr std::size_t kEdgeNodes = 3;
/// Floor of the residual weight, relative to its largest value.
inline constexpr double kWeightFloor = 1e-3;

std::string to_json(const ResidualReport &rep);

} // namespace susyhydra
