#ifndef RADAR_GREEDY_HPP_
#define RADAR_GREEDY_HPP_

#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "radar/fim.hpp"
#include "radar/measures.hpp"
#include "radar/selection.hpp"

namespace radar {
namespace greedy {

struct GreedyOptions {
  bool lazy = true;  // memoized-gain priority queue; results are identical
};

struct GreedyResult {
  Selection selection;
  double objective = 0.0;       // native objective of the algorithm
  long gain_evaluations = 0;
};

/// Algorithm: matroid-constrained greedy maximization of
/// G(Sc) = MFP(U) - MFP(U \ Sc) over the discarded set; returns the kept
/// selection with exactly K_P pulses and K_R receivers. Ties broken by
/// lowest ground-set index.
GreedyResult greedy_mfp(const measures::MfpEvaluator& mfp, int K_P, int K_R,
                        const GreedyOptions& opts = {});

/// Incremental state for log-det pulse removal with fixed receivers.
class LogdetState {
 public:
  LogdetState(const fim::FimCache& cache, double epsilon,
              const std::vector<uint8_t>& fixed_b);

  /// h(S \ {p}) - h(S), via low-rank determinant updates with an
  /// eigen-decomposition fallback on indefinite updates.
  double removal_gain(int pulse) const;
  /// h(S ∪ {p}) - h(S) for pulses outside the set.
  double addition_gain(int pulse) const;

  void remove(int pulse);
  void add(int pulse);
  void clear();  // empty set

  double h() const;  // grid-mean regularized log-det of the current set
  const std::vector<uint8_t>& in_set() const { return in_; }
  double epsilon() const { return epsilon_; }
  int pulse_count() const;

 private:
  void refresh_factorizations();

  const fim::FimCache* cache_;
  double epsilon_;
  std::vector<uint8_t> fixed_b_;
  std::vector<uint8_t> in_;                       // per pulse element id
  std::vector<Eigen::Matrix4d> contrib_;          // [pulse * D + d]
  std::vector<Eigen::MatrixXd> lowrank_;          // factor U of each contrib
  std::vector<Eigen::Matrix4d> F_;                // per grid point
  std::vector<Eigen::LLT<Eigen::Matrix4d>> chol_; // of F + eps*I
};

/// Algorithm: start from all pulses, repeatedly drop the pulse whose
/// removal keeps the grid-mean regularized log-det largest, down to K_P.
/// Receivers in fixed_b are frozen. epsilon <= 0 selects the default.
GreedyResult greedy_logdet(const fim::FimCache& cache, double epsilon, int K_P,
                           const std::vector<uint8_t>& fixed_b,
                           const GreedyOptions& opts = {});

/// Forward (insertion) variant carrying the 1 - 1/e guarantee.
GreedyResult greedy_logdet_forward(const fim::FimCache& cache, double epsilon,
                                   int K_P, const std::vector<uint8_t>& fixed_b,
                                   const GreedyOptions& opts = {});

}  // namespace greedy
}  // namespace radar

#endif  // RADAR_GREEDY_HPP_
