#ifndef RADAR_FIM_HPP_
#define RADAR_FIM_HPP_

#include <vector>

#include <Eigen/Dense>

#include "radar/config.hpp"
#include "radar/grid.hpp"
#include "radar/selection.hpp"

namespace radar {
namespace fim {

/// Per-sample single-target 2x2 information block; independent of theta.
Eigen::Matrix2d single_target_block(const RadarConfig& cfg, int r, int i, int p,
                                    int n, int q);

/// Per-sample 2x2 cross-correlation block between the two targets.
Eigen::Matrix2cd cross_block(const RadarConfig& cfg, int r, int i, int p, int n,
                             const DeltaTheta& dtheta);

/// 4x4 per-(receiver, transmitter, pulse) information contribution at one
/// grid point, summed over samples, with the real part taken blockwise.
Eigen::Matrix4d atom(const RadarConfig& cfg, int r, int i, int p,
                     const DeltaTheta& dtheta);

/// Dense precomputed atoms over (r, i, p) x grid. Unweighted unless built
/// with apply_gamma = true.
struct FimCache {
  RadarConfig cfg;
  DeltaGrid grid;
  bool weighted = false;
  std::vector<Eigen::Matrix4d> atoms;  // index [(((r*I)+i)*P+p)*D + d]

  static FimCache build(const RadarConfig& cfg, const DeltaGrid& grid,
                        bool apply_gamma = false);

  size_t index(int r, int i, int p, int dIdx) const {
    return ((static_cast<size_t>(r) * cfg.I + i) * cfg.P + p) * grid.size() + dIdx;
  }
  const Eigen::Matrix4d& at(int r, int i, int p, int dIdx) const {
    return atoms[index(r, i, p, dIdx)];
  }
};

/// Selection-weighted FIM per grid point (Boolean selection).
std::vector<Eigen::Matrix4d> assemble(const FimCache& cache, const Selection& sel);

/// Fractional-weight assembly: weight of atom (r, i, p) is b_w[r] * A_w(i, p).
std::vector<Eigen::Matrix4d> assemble(const FimCache& cache,
                                      const Eigen::MatrixXd& A_w,
                                      const Eigen::VectorXd& b_w);

/// diag(gamma)^-1 * F * diag(gamma)^-1. Throws on nonpositive gamma.
Eigen::MatrixXd apply_weights(const Eigen::MatrixXd& F, const Eigen::VectorXd& gamma);

}  // namespace fim
}  // namespace radar

#endif  // RADAR_FIM_HPP_
