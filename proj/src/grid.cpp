#include "radar/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace radar {

DeltaGrid build_grid(double du_min, double du_max, double dv_min, double dv_max,
                     int nu, int nv, double exclusion_radius) {
  if (nu < 1 || nv < 1) throw std::invalid_argument("build_grid: nu, nv must be >= 1");
  if (du_max < du_min || dv_max < dv_min)
    throw std::invalid_argument("build_grid: empty range");
  if (exclusion_radius < 0)
    throw std::invalid_argument("build_grid: negative exclusion radius");

  DeltaGrid g;
  g.du_min = du_min;
  g.du_max = du_max;
  g.dv_min = dv_min;
  g.dv_max = dv_max;
  g.exclusion_radius = exclusion_radius;

  const double du_span = du_max - du_min;
  const double dv_span = dv_max - dv_min;
  for (int a = 0; a < nu; ++a) {
    const double du = nu == 1 ? du_min : du_min + du_span * a / (nu - 1);
    for (int bIdx = 0; bIdx < nv; ++bIdx) {
      const double dv = nv == 1 ? dv_min : dv_min + dv_span * bIdx / (nv - 1);
      const double xu = du_span > 0 ? du / du_span : 0.0;
      const double xv = dv_span > 0 ? dv / dv_span : 0.0;
      if (std::hypot(xu, xv) < exclusion_radius) continue;
      if (du == 0.0 && dv == 0.0) continue;  // coincident targets are singular
      g.points.push_back({du, dv});
    }
  }
  if (g.points.empty())
    throw std::invalid_argument("build_grid: all grid points excluded");
  return g;
}

}  // namespace radar
