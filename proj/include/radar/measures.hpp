#ifndef RADAR_MEASURES_HPP_
#define RADAR_MEASURES_HPP_

#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "radar/fim.hpp"
#include "radar/grid.hpp"
#include "radar/selection.hpp"

namespace radar {
namespace measures {

enum class Kind { A_OPT, D_OPT, E_OPT, MFP, FP };
enum class Aggregation { MAX_OVER_GRID, MEAN_OVER_GRID };
enum class MfpNorm { PRINTED, COSINE };

/// Scalarization of the (weighted) FIM over the difference grid.
/// param_mask restricts estimation to a subset of (u1, v1, u2, v2);
/// {0, 1} reduces to the single-target criterion. epsilon == 0 requests
/// the default log-det regularization for D_OPT.
struct Criterion {
  Kind kind = Kind::A_OPT;
  Aggregation aggregation = Aggregation::MEAN_OVER_GRID;
  double epsilon = 0.0;
  MfpNorm mfp_norm = MfpNorm::PRINTED;
  std::vector<int> param_mask = {0, 1, 2, 3};
};

struct CrlbResult {
  Eigen::MatrixXd C;
  bool singular = false;
};

/// F^-1, or the pseudo-inverse (dropping singular values below
/// |F| * 1e-12) with the singular flag set when cond(F) >= 1e12.
CrlbResult crlb(const Eigen::MatrixXd& F);

/// tr(crlb(F)); +inf when F is singular.
double a_opt(const Eigen::MatrixXd& F);
/// lambda_max(crlb(F)) = 1/lambda_min(F); +inf when F is singular.
double e_opt(const Eigen::MatrixXd& F);
/// logdet(F + eps*I) - dim*log(eps), normalized so d_opt(0) = 0.
double d_opt(const Eigen::MatrixXd& F, double epsilon);

/// 1e-6 * median atom trace; keeps the regularized log-det normalized
/// and monotone on singular sub-FIMs.
double default_epsilon(const fim::FimCache& cache);

double aggregate(const std::vector<double>& values, Aggregation agg);

/// Frame-potential machinery over measurement derivative rows.
/// Ground-set ids follow GroundSet (pulses then receivers).
class MfpEvaluator {
 public:
  enum class Norm { NONE, PRINTED, COSINE };  // NONE = plain FP

  MfpEvaluator(const RadarConfig& cfg, const DeltaGrid& grid, Norm norm);

  const GroundSet& ground() const { return gs_; }

  /// Grid-mean (M)FP of the measurements spanned by the kept elements.
  double value(const std::vector<int>& kept) const;
  /// (M)FP at a single grid point.
  double value_at(const std::vector<int>& kept, const DeltaTheta& dtheta) const;
  /// value(kept) - value(kept \ {u}); the marginal gain of discarding u.
  double removal_weight(const std::vector<int>& kept, int u) const;
  /// MFP of the full ground set.
  double total() const { return total_; }
  /// G(X) = MFP(U) - MFP(U \ X), grid-mean aggregation.
  double g(const std::vector<int>& removed) const;

 private:
  struct Meas {
    int r;      // receiver index
    int pulse;  // pulse element id
  };

  double pair_term(const Meas& a, const Meas& b) const;
  double pair_block(const std::vector<Meas>& s1, const std::vector<Meas>& s2) const;
  std::vector<Meas> measurements(const std::vector<int>& kept) const;
  double g2(int dD, int dp) const {
    return g2_[(dD + dD_max_) * (2 * cfg_.P - 1) + (dp + cfg_.P - 1)];
  }

  RadarConfig cfg_;
  DeltaGrid grid_;
  Norm norm_;
  GroundSet gs_;
  int dD_max_;
  double s_alpha_;   // |a1|^2 + |a2|^2
  double a4_, a22_;  // |a1|^4 + |a2|^4 and |a1|^2 |a2|^2
  double k2_;        // (2*pi/lambda)^2
  std::vector<double> g2_;  // grid-mean |c|^2 by (delta D, delta p)
  double total_ = 0.0;
};

/// Plain frame potential at one grid point (Eq.-level operation).
double frame_potential(const RadarConfig& cfg, const Selection& sel,
                       const DeltaTheta& dtheta);
/// Row-normalized frame potential at one grid point.
double modified_frame_potential(const RadarConfig& cfg, const Selection& sel,
                                const DeltaTheta& dtheta,
                                MfpNorm norm = MfpNorm::PRINTED);

/// Scalar cost of a selection under a criterion; lower is better for
/// every kind (D-optimality is negated log-det). Applies the gamma
/// compensation weights and the parameter mask. MFP/FP kinds require a
/// matching evaluator.
double criterion_cost(const fim::FimCache& cache, const Selection& sel,
                      const Criterion& crit,
                      const MfpEvaluator* mfp = nullptr);

/// Cost from already-assembled unweighted per-grid-point FIMs.
double criterion_cost(const std::vector<Eigen::Matrix4d>& fims,
                      const RadarConfig& cfg, const Criterion& crit);

inline MfpEvaluator::Norm to_evaluator_norm(Kind kind, MfpNorm norm) {
  if (kind == Kind::FP) return MfpEvaluator::Norm::NONE;
  return norm == MfpNorm::PRINTED ? MfpEvaluator::Norm::PRINTED
                                  : MfpEvaluator::Norm::COSINE;
}

}  // namespace measures
}  // namespace radar

#endif  // RADAR_MEASURES_HPP_
