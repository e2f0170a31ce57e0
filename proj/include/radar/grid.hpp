#ifndef RADAR_GRID_HPP_
#define RADAR_GRID_HPP_

#include <vector>

#include "radar/config.hpp"

namespace radar {

/// Discrete set of two-target parameter differences.
struct DeltaGrid {
  std::vector<DeltaTheta> points;
  double du_min = 0.0, du_max = 0.0;
  double dv_min = 0.0, dv_max = 0.0;
  double exclusion_radius = 0.0;

  size_t size() const { return points.size(); }
};

/// Cartesian product of nu x nv linearly spaced differences with points
/// inside the exclusion radius of (0,0) dropped. The radius is measured
/// after normalizing each axis by its span (degenerate axes count as 0).
/// Throws std::invalid_argument if every point is excluded.
DeltaGrid build_grid(double du_min, double du_max, double dv_min, double dv_max,
                     int nu, int nv, double exclusion_radius);

}  // namespace radar

#endif  // RADAR_GRID_HPP_
