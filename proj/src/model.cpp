#include "radar/model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace radar {
namespace model {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;

void check_indices(const RadarConfig& cfg, int r, int i, int p, int n) {
  if (r < 0 || r >= cfg.R || i < 0 || i >= cfg.I || p < 0 || p >= cfg.P ||
      n < 0 || n >= cfg.N)
    throw std::out_of_range("model: index out of range");
}
}  // namespace

std::pair<std::vector<double>, std::vector<double>> element_positions(
    const RadarConfig& cfg) {
  std::vector<double> tx(cfg.I), rx(cfg.R);
  for (int i = 0; i < cfg.I; ++i) tx[i] = tx_position(cfg, i);
  for (int r = 0; r < cfg.R; ++r) rx[r] = rx_position(cfg, r);
  return {tx, rx};
}

std::complex<double> noiseless_term(const RadarConfig& cfg, const TargetParams& t,
                                    int r, int i, int p, int n) {
  const double lambda = cfg.wavelength();
  const double time = sample_time(cfg, p, n);
  const double D = pair_coordinate(cfg, r, i);
  // h(t; v) * beta(nTs) * phi_{r,i}(u); the common 2Rq/c delay phase is
  // folded into beta.
  const double phase = kTwoPi * (2.0 * t.v * time / lambda) +
                       kTwoPi * (2.0 * cfg.chirp_rate() * n * cfg.Ts * t.Rq /
                                 kSpeedOfLight) +
                       kTwoPi * (D * t.u / lambda);
  return std::polar(1.0, phase);
}

std::complex<double> noiseless_sample(const RadarConfig& cfg,
                                      const std::vector<TargetParams>& targets,
                                      int r, int i, int p, int n) {
  check_indices(cfg, r, i, p, n);
  if (targets.empty()) throw std::invalid_argument("model: no targets");
  std::complex<double> y = 0.0;
  for (size_t q = 0; q < targets.size(); ++q) {
    const std::complex<double> a = q < 2 ? cfg.alpha[q] : std::complex<double>(1.0);
    y += a * noiseless_term(cfg, targets[q], r, i, p, n);
  }
  return y;
}

Eigen::Vector4cd derivative_vector(const RadarConfig& cfg,
                                   const std::array<TargetParams, 2>& targets,
                                   int r, int i, int p, int n) {
  check_indices(cfg, r, i, p, n);
  const double lambda = cfg.wavelength();
  const double D = pair_coordinate(cfg, r, i);
  const double time = sample_time(cfg, p, n);
  const std::complex<double> j2pi_over_lambda(0.0, kTwoPi / lambda);
  const std::complex<double> y1 = cfg.alpha[0] * noiseless_term(cfg, targets[0], r, i, p, n);
  const std::complex<double> y2 = cfg.alpha[1] * noiseless_term(cfg, targets[1], r, i, p, n);
  Eigen::Vector4cd dy;
  dy << D * y1, 2.0 * time * y1, D * y2, 2.0 * time * y2;
  return j2pi_over_lambda * dy;
}

std::vector<Measurement> simulate_measurements(
    const RadarConfig& cfg, const std::vector<TargetParams>& targets,
    const Selection& sel, uint64_t rng_seed) {
  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> gauss(0.0, cfg.sigma_e / std::sqrt(2.0));
  std::vector<Measurement> out;
  for (int r = 0; r < cfg.R; ++r) {
    if (!sel.b[r]) continue;
    for (int i = 0; i < cfg.I; ++i) {
      for (int p = 0; p < cfg.P; ++p) {
        if (!sel.at(i, p)) continue;
        Measurement m{r, i, p, {}};
        m.samples.resize(cfg.N);
        for (int n = 0; n < cfg.N; ++n) {
          const std::complex<double> noise(gauss(rng), gauss(rng));
          m.samples[n] = noiseless_sample(cfg, targets, r, i, p, n) + noise;
        }
        out.push_back(std::move(m));
      }
    }
  }
  return out;
}

}  // namespace model
}  // namespace radar
