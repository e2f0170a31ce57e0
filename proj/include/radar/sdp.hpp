#ifndef RADAR_SDP_HPP_
#define RADAR_SDP_HPP_

#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace radar {
namespace sdp {

/// One PSD constraint: F0 + sum_k x[var_k] * C_k >= 0.
struct SdpBlock {
  Eigen::MatrixXd F0;
  std::vector<std::pair<int, Eigen::MatrixXd>> coeffs;
};

/// maximize b.x subject to every block being PSD.
struct SdpProblem {
  int num_vars = 0;
  Eigen::VectorXd b;
  std::vector<SdpBlock> blocks;
};

struct SdpResult {
  Eigen::VectorXd x;
  double objective = 0.0;
  int newton_iterations = 0;
  bool converged = false;
  double gap = 0.0;            // barrier duality-gap bound at exit
  double min_block_eigen = 0.0;  // worst slack eigenvalue at exit
};

/// Log-barrier interior-point method. x0 must be strictly feasible
/// (every block positive definite). Throws std::invalid_argument
/// otherwise. Returns converged = false if max_iter Newton steps are
/// exhausted before the gap bound drops below tol.
SdpResult solve_sdp(const SdpProblem& problem, const Eigen::VectorXd& x0,
                    double tol = 1e-6, int max_iter = 500);

}  // namespace sdp
}  // namespace radar

#endif  // RADAR_SDP_HPP_
