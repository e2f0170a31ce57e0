#ifndef RADAR_ORACLE_HPP_
#define RADAR_ORACLE_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "radar/fim.hpp"
#include "radar/measures.hpp"
#include "radar/selection.hpp"

namespace radar {
namespace oracle {

enum class SearchSpace { PULSES, TRANSMITTERS };

struct SearchOptions {
  SearchSpace space = SearchSpace::PULSES;
  // TRANSMITTERS mode: pick K_I transmitters, all pulses of each
  int K_I = 0;
  uint64_t enumeration_cap = 10'000'000;
};

struct SearchResult {
  Selection selection;
  double objective = 0.0;   // criterion cost; lower is better
  uint64_t evaluated = 0;
};

/// Enumerates all feasible Boolean selections and returns the minimizer
/// of the aggregated criterion cost. Ties break to the lexicographically
/// smallest selected set. Throws when the enumeration exceeds the cap.
SearchResult exhaustive_search(const fim::FimCache& cache,
                               const measures::Criterion& crit, int K_P,
                               int K_R, const SearchOptions& opts = {});

struct SubmodularReport {
  bool normalized = false;
  bool monotone = false;
  bool submodular = false;
  bool pass = false;
  std::string counterexample;  // empty when pass
};

/// Exhaustive check of f(empty) = 0, monotonicity, and diminishing
/// returns over every S1 subset of S2 and u outside S2. Ground sets are
/// capped at 16 elements (3^n submask scan). tol absorbs round-off.
SubmodularReport check_submodular(
    const std::function<double(const std::vector<int>&)>& f, int ground_size,
    double tol = 1e-9);

struct Trace {
  std::vector<double> axis;
  std::vector<double> db;  // normalized, 0 dB peak, floored at -80
};

struct Surface {
  std::vector<double> du_axis;
  std::vector<double> dv_axis;
  std::vector<double> db;  // row-major over (du, dv)
};

/// Coherent normalized response of the selection pattern:
/// |sum_{r,ip,n} exp(j 2 pi D du / lambda) exp(j 4 pi dv t / lambda)|
/// over the element count, in dB. Throws on an empty selection.
Trace ambiguity_velocity(const RadarConfig& cfg, const Selection& sel,
                         const std::vector<double>& dv_axis);
Trace beampattern(const RadarConfig& cfg, const Selection& sel,
                  const std::vector<double>& du_axis);
Surface ambiguity_joint(const RadarConfig& cfg, const Selection& sel,
                        const std::vector<double>& du_axis,
                        const std::vector<double>& dv_axis);

struct MleGrid {
  double u_min = -1.0, u_max = 1.0;
  int nu = 101;
  double v_min = 0.0, v_max = 0.0;
  int nv = 101;
};

struct MleResult {
  double mse_u = 0.0, mse_v = 0.0;
  double ci_u = 0.0, ci_v = 0.0;  // 95% confidence half-widths on the MSE
  int trials = 0;
};

/// Monte-Carlo MSE of the single-target maximum-likelihood estimate of
/// (u, v) with known amplitude: coarse grid search plus quadratic peak
/// refinement. Throws when the grid excludes the true parameters.
MleResult mle_mse(const RadarConfig& cfg, const Selection& sel,
                  const TargetParams& truth, int trials, uint64_t seed,
                  const MleGrid& grid);

}  // namespace oracle
}  // namespace radar

#endif  // RADAR_ORACLE_HPP_
