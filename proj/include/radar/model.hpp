#ifndef RADAR_MODEL_HPP_
#define RADAR_MODEL_HPP_

#include <array>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "radar/config.hpp"
#include "radar/selection.hpp"

namespace radar {
namespace model {

/// Transmitters at -(i+1)*d, receivers at (r+1)*d (zero-based indices).
std::pair<std::vector<double>, std::vector<double>> element_positions(
    const RadarConfig& cfg);

inline double tx_position(const RadarConfig& cfg, int i) { return -(i + 1) * cfg.d; }
inline double rx_position(const RadarConfig& cfg, int r) { return (r + 1) * cfg.d; }

/// d_i + d_r, the virtual element coordinate of pair (i, r).
inline double pair_coordinate(const RadarConfig& cfg, int r, int i) {
  return rx_position(cfg, r) + tx_position(cfg, i);
}

/// Sample time of sample n in pulse p (zero-based n and p).
inline double sample_time(const RadarConfig& cfg, int p, int n) {
  return p * cfg.Tp + n * cfg.Ts;
}

/// Noiseless contribution of one target to sample (r, i, p, n).
std::complex<double> noiseless_term(const RadarConfig& cfg, const TargetParams& t,
                                    int r, int i, int p, int n);

/// Post-matched-filter noiseless sample: sum of per-target terms.
std::complex<double> noiseless_sample(const RadarConfig& cfg,
                                      const std::vector<TargetParams>& targets,
                                      int r, int i, int p, int n);

/// Length-4 derivative of the two-target sample w.r.t. (u1, v1, u2, v2).
Eigen::Vector4cd derivative_vector(const RadarConfig& cfg,
                                   const std::array<TargetParams, 2>& targets,
                                   int r, int i, int p, int n);

struct Measurement {
  int r = 0, i = 0, p = 0;
  std::vector<std::complex<double>> samples;  // length N
};

/// Noisy measurements for the selected (r, i, p) triples, deterministic in
/// the seed. Noise is circular complex Gaussian with per-component
/// variance sigma_e^2 (sigma_e/sqrt(2) per real/imag part).
std::vector<Measurement> simulate_measurements(
    const RadarConfig& cfg, const std::vector<TargetParams>& targets,
    const Selection& sel, uint64_t rng_seed);

}  // namespace model
}  // namespace radar

#endif  // RADAR_MODEL_HPP_
