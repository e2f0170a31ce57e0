#include "radar/fim.hpp"

#include <cmath>
#include <stdexcept>

#include "radar/model.hpp"

namespace radar {
namespace fim {

namespace {

// Structural matrix [[D^2/2, D*t], [D*t, 2*t^2]] shared by Eqs. of both
// the single-target and cross blocks.
Eigen::Matrix2d structural(double D, double t) {
  Eigen::Matrix2d m;
  m << 0.5 * D * D, D * t, D * t, 2.0 * t * t;
  return m;
}

double prefactor(const RadarConfig& cfg) {
  const double lambda = cfg.wavelength();
  return 32.0 * M_PI * M_PI / (lambda * lambda * cfg.sigma_e * cfg.sigma_e);
}

}  // namespace

Eigen::Matrix2d single_target_block(const RadarConfig& cfg, int r, int i, int p,
                                    int n, int q) {
  const double D = model::pair_coordinate(cfg, r, i);
  const double t = model::sample_time(cfg, p, n);
  const double a2 = std::norm(cfg.alpha[q]);
  return prefactor(cfg) * a2 * structural(D, t);
}

Eigen::Matrix2cd cross_block(const RadarConfig& cfg, int r, int i, int p, int n,
                             const DeltaTheta& dtheta) {
  const double lambda = cfg.wavelength();
  const double D = model::pair_coordinate(cfg, r, i);
  const double t = model::sample_time(cfg, p, n);
  const std::complex<double> a12 = cfg.alpha[0] * std::conj(cfg.alpha[1]);
  const double chi =
      4.0 * M_PI * dtheta.dv * t / lambda + 2.0 * M_PI * D * dtheta.du / lambda;
  return prefactor(cfg) * a12 * std::polar(1.0, chi) * structural(D, t);
}

Eigen::Matrix4d atom(const RadarConfig& cfg, int r, int i, int p,
                     const DeltaTheta& dtheta) {
  Eigen::Matrix4d F = Eigen::Matrix4d::Zero();
  for (int n = 0; n < cfg.N; ++n) {
    const Eigen::Matrix2d j1a = single_target_block(cfg, r, i, p, n, 0);
    const Eigen::Matrix2d j1b = single_target_block(cfg, r, i, p, n, 1);
    const Eigen::Matrix2d j2 = cross_block(cfg, r, i, p, n, dtheta).real();
    F.topLeftCorner<2, 2>() += j1a;
    F.bottomRightCorner<2, 2>() += j1b;
    F.topRightCorner<2, 2>() += j2;
    F.bottomLeftCorner<2, 2>() += j2.transpose();
  }
  return F;
}

FimCache FimCache::build(const RadarConfig& cfg, const DeltaGrid& grid,
                         bool apply_gamma) {
  FimCache cache;
  cache.cfg = cfg;
  cache.grid = grid;
  cache.weighted = apply_gamma;
  cache.atoms.resize(static_cast<size_t>(cfg.R) * cfg.I * cfg.P * grid.size());
  Eigen::Vector4d g;
  for (int k = 0; k < 4; ++k) g[k] = cfg.gamma[k];
  for (int r = 0; r < cfg.R; ++r)
    for (int i = 0; i < cfg.I; ++i)
      for (int p = 0; p < cfg.P; ++p)
        for (size_t dIdx = 0; dIdx < grid.size(); ++dIdx) {
          Eigen::Matrix4d F = atom(cfg, r, i, p, grid.points[dIdx]);
          if (apply_gamma) F = apply_weights(F, g);
          cache.atoms[cache.index(r, i, p, static_cast<int>(dIdx))] = F;
        }
  return cache;
}

std::vector<Eigen::Matrix4d> assemble(const FimCache& cache, const Selection& sel) {
  const RadarConfig& cfg = cache.cfg;
  if (sel.I != cfg.I || sel.P != cfg.P || sel.R != cfg.R)
    throw std::invalid_argument("assemble: selection dimensions mismatch");
  Eigen::MatrixXd A_w(cfg.I, cfg.P);
  Eigen::VectorXd b_w(cfg.R);
  for (int i = 0; i < cfg.I; ++i)
    for (int p = 0; p < cfg.P; ++p) A_w(i, p) = sel.at(i, p) ? 1.0 : 0.0;
  for (int r = 0; r < cfg.R; ++r) b_w[r] = sel.b[r] ? 1.0 : 0.0;
  return assemble(cache, A_w, b_w);
}

std::vector<Eigen::Matrix4d> assemble(const FimCache& cache,
                                      const Eigen::MatrixXd& A_w,
                                      const Eigen::VectorXd& b_w) {
  const RadarConfig& cfg = cache.cfg;
  if (A_w.rows() != cfg.I || A_w.cols() != cfg.P || b_w.size() != cfg.R)
    throw std::invalid_argument("assemble: weight dimensions mismatch");
  std::vector<Eigen::Matrix4d> out(cache.grid.size(), Eigen::Matrix4d::Zero());
  for (int r = 0; r < cfg.R; ++r) {
    if (b_w[r] == 0.0) continue;
    for (int i = 0; i < cfg.I; ++i)
      for (int p = 0; p < cfg.P; ++p) {
        const double w = b_w[r] * A_w(i, p);
        if (w == 0.0) continue;
        for (size_t dIdx = 0; dIdx < cache.grid.size(); ++dIdx)
          out[dIdx] += w * cache.at(r, i, p, static_cast<int>(dIdx));
      }
  }
  return out;
}

Eigen::MatrixXd apply_weights(const Eigen::MatrixXd& F, const Eigen::VectorXd& gamma) {
  if (gamma.size() != F.rows() || F.rows() != F.cols())
    throw std::invalid_argument("apply_weights: dimension mismatch");
  for (int k = 0; k < gamma.size(); ++k)
    if (!(gamma[k] > 0)) throw std::invalid_argument("apply_weights: gamma must be positive");
  const Eigen::VectorXd inv = gamma.cwiseInverse();
  return inv.asDiagonal() * F * inv.asDiagonal();
}

}  // namespace fim
}  // namespace radar
