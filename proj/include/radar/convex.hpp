#ifndef RADAR_CONVEX_HPP_
#define RADAR_CONVEX_HPP_

#include <cstdint>

#include <Eigen/Dense>

#include "radar/fim.hpp"
#include "radar/sdp.hpp"
#include "radar/selection.hpp"

namespace radar {
namespace convex {

/// E-optimality relaxation over the lifted selection matrix W. Layout of
/// the SDP variable vector: upper-triangle entries of W (row-major,
/// i <= j, ground-set order: pulses then receivers) followed by gamma.
struct Relaxation {
  sdp::SdpProblem problem;
  int n = 0;             // IP + R
  double scale = 1.0;    // atom normalization divisor
  int gamma_index = 0;
  Eigen::VectorXd x0;    // strictly feasible start
};

struct SolverStats {
  int iterations = 0;
  bool converged = false;
  double gap = 0.0;
  double min_block_eigen = 0.0;
};

struct RelaxedSolution {
  Eigen::VectorXd w;       // diag(W), length IP + R, in [0, 1]
  Eigen::MatrixXd W;
  double gamma_star = 0.0; // min over grid of lambda_min of relaxed FIM
  SolverStats stats;
};

/// Encodes: maximize gamma subject to, per grid point,
/// sum_{r,i,p} W[(i,p), r] * F_{r,i,p} >= gamma*I; [[W, w],[w',1]] >= 0
/// with w = diag(W); budget sums; 0 <= w <= 1. Uses the cache's atoms as
/// given (weighted or not). Throws on infeasible budgets or empty grid.
Relaxation build_relaxation(const fim::FimCache& cache, int K_P, int K_R);

RelaxedSolution solve_relaxation(const fim::FimCache& cache, int K_P, int K_R,
                                 double tol = 1e-6, int max_iter = 2000);

/// min over the grid of lambda_min of the selection-weighted FIM; the
/// Boolean counterpart of gamma_star.
double boolean_gamma(const fim::FimCache& cache, const Selection& sel);

/// Randomized rounding with deterministic sort-rounding as round 0 and
/// repair to exact budgets by w magnitude; returns the candidate with the
/// largest boolean_gamma.
Selection round(const fim::FimCache& cache, const RelaxedSolution& sol,
                int K_P, int K_R, int rounds, uint64_t seed);

}  // namespace convex
}  // namespace radar

#endif  // RADAR_CONVEX_HPP_
