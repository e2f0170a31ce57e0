#include "radar/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace radar {
namespace convex {

namespace {

// upper-triangle (i <= j) row-major index into the W variable vector
int tri(int n, int i, int j) {
  return i * n - i * (i - 1) / 2 + (j - i);
}

Eigen::MatrixXd sym_unit(int dim, int a, int b) {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim, dim);
  M(a, b) += 1.0;
  M(b, a) += 1.0;
  if (a == b) M(a, b) = 1.0;
  return M;
}

}  // namespace

Relaxation build_relaxation(const fim::FimCache& cache, int K_P, int K_R) {
  const RadarConfig& cfg = cache.cfg;
  const int IP = cfg.num_pulse_elements();
  const int n = IP + cfg.R;
  const size_t D = cache.grid.size();
  if (D == 0) throw std::invalid_argument("build_relaxation: empty grid");
  if (K_P < 1 || K_P > IP || K_R < 1 || K_R > cfg.R)
    throw std::invalid_argument("build_relaxation: infeasible budgets");

  Relaxation rel;
  rel.n = n;
  rel.gamma_index = n * (n + 1) / 2;
  const int m = rel.gamma_index + 1;
  rel.problem.num_vars = m;
  rel.problem.b = Eigen::VectorXd::Zero(m);
  rel.problem.b[rel.gamma_index] = 1.0;

  // normalize atoms so the LMI lives at unit scale
  double scale = 0.0;
  for (size_t d = 0; d < D; ++d) {
    Eigen::Matrix4d full = Eigen::Matrix4d::Zero();
    for (int r = 0; r < cfg.R; ++r)
      for (int i = 0; i < cfg.I; ++i)
        for (int p = 0; p < cfg.P; ++p)
          full += cache.at(r, i, p, static_cast<int>(d));
    scale = std::max(scale, full.norm());
  }
  if (scale <= 0.0) scale = 1.0;
  rel.scale = scale;

  GroundSet gs{cfg.I, cfg.P, cfg.R};

  // per-grid-point LMI: sum W[(i,p), r] * F / scale - gamma*I >= 0
  for (size_t d = 0; d < D; ++d) {
    sdp::SdpBlock blk;
    blk.F0 = Eigen::MatrixXd::Zero(4, 4);
    for (int r = 0; r < cfg.R; ++r)
      for (int i = 0; i < cfg.I; ++i)
        for (int p = 0; p < cfg.P; ++p)
          blk.coeffs.emplace_back(
              tri(n, gs.pulse_id(i, p), gs.rx_id(r)),
              Eigen::MatrixXd(cache.at(r, i, p, static_cast<int>(d)) / scale));
    blk.coeffs.emplace_back(rel.gamma_index, -Eigen::MatrixXd::Identity(4, 4));
    rel.problem.blocks.push_back(std::move(blk));
  }

  // Schur block [[W, w],[w', 1]] with w = diag(W)
  {
    sdp::SdpBlock blk;
    blk.F0 = Eigen::MatrixXd::Zero(n + 1, n + 1);
    blk.F0(n, n) = 1.0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Eigen::MatrixXd C = sym_unit(n + 1, i, j);
        if (i == j) C += sym_unit(n + 1, i, n);
        blk.coeffs.emplace_back(tri(n, i, j), std::move(C));
      }
    rel.problem.blocks.push_back(std::move(blk));
  }

  auto scalar_block = [&](double f0, std::vector<std::pair<int, double>> terms) {
    sdp::SdpBlock blk;
    blk.F0 = Eigen::MatrixXd::Constant(1, 1, f0);
    for (auto [k, c] : terms)
      blk.coeffs.emplace_back(k, Eigen::MatrixXd::Constant(1, 1, c));
    rel.problem.blocks.push_back(std::move(blk));
  };

  // budgets on diag(W)
  {
    std::vector<std::pair<int, double>> terms;
    for (int e = 0; e < IP; ++e) terms.emplace_back(tri(n, e, e), -1.0);
    scalar_block(static_cast<double>(K_P), std::move(terms));
  }
  {
    std::vector<std::pair<int, double>> terms;
    for (int r = 0; r < cfg.R; ++r) {
      const int e = gs.rx_id(r);
      terms.emplace_back(tri(n, e, e), -1.0);
    }
    scalar_block(static_cast<double>(K_R), std::move(terms));
  }
  // box 0 <= w <= 1
  for (int e = 0; e < n; ++e) {
    scalar_block(0.0, {{tri(n, e, e), 1.0}});
    scalar_block(1.0, {{tri(n, e, e), -1.0}});
  }

  // strictly feasible start: W = c*I, gamma < 0
  const double c =
      0.5 * std::min({1.0 / n, static_cast<double>(K_P) / IP,
                      static_cast<double>(K_R) / cfg.R});
  rel.x0 = Eigen::VectorXd::Zero(m);
  for (int e = 0; e < n; ++e) rel.x0[tri(n, e, e)] = c;
  rel.x0[rel.gamma_index] = -1.0;
  return rel;
}

RelaxedSolution solve_relaxation(const fim::FimCache& cache, int K_P, int K_R,
                                 double tol, int max_iter) {
  const Relaxation rel = build_relaxation(cache, K_P, K_R);
  const sdp::SdpResult r = sdp::solve_sdp(rel.problem, rel.x0, tol, max_iter);

  RelaxedSolution sol;
  const int n = rel.n;
  sol.W.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = r.x[tri(n, i, j)];
      sol.W(i, j) = v;
      sol.W(j, i) = v;
    }
  sol.w = sol.W.diagonal();

  // report gamma from the lifted FIM itself, back at physical scale
  const RadarConfig& cfg = cache.cfg;
  GroundSet gs{cfg.I, cfg.P, cfg.R};
  double gamma = std::numeric_limits<double>::infinity();
  for (size_t d = 0; d < cache.grid.size(); ++d) {
    Eigen::Matrix4d F = Eigen::Matrix4d::Zero();
    for (int r2 = 0; r2 < cfg.R; ++r2)
      for (int i = 0; i < cfg.I; ++i)
        for (int p = 0; p < cfg.P; ++p)
          F += sol.W(gs.pulse_id(i, p), gs.rx_id(r2)) *
               cache.at(r2, i, p, static_cast<int>(d));
    gamma = std::min(
        gamma, Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(F).eigenvalues().minCoeff());
  }
  sol.gamma_star = gamma;
  sol.stats.iterations = r.newton_iterations;
  sol.stats.converged = r.converged;
  sol.stats.gap = r.gap * rel.scale;
  sol.stats.min_block_eigen = r.min_block_eigen;
  return sol;
}

double boolean_gamma(const fim::FimCache& cache, const Selection& sel) {
  const std::vector<Eigen::Matrix4d> fims = fim::assemble(cache, sel);
  double gamma = std::numeric_limits<double>::infinity();
  for (const auto& F : fims)
    gamma = std::min(
        gamma, Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(F).eigenvalues().minCoeff());
  return gamma;
}

namespace {

// pick the k largest-weight indices; ties go to the lowest index
std::vector<int> top_k(const Eigen::VectorXd& w, int offset, int count, int k) {
  std::vector<int> idx(count);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return w[offset + a] > w[offset + b];
  });
  idx.resize(k);
  return idx;
}

// repair a Bernoulli draw to exactly k elements by weight magnitude
void repair(std::vector<uint8_t>& sel, const Eigen::VectorXd& w, int offset,
            int k) {
  const int count = static_cast<int>(sel.size());
  int have = 0;
  for (uint8_t s : sel) have += s;
  while (have > k) {
    int worst = -1;
    for (int e = 0; e < count; ++e)
      if (sel[e] && (worst < 0 || w[offset + e] < w[offset + worst])) worst = e;
    sel[worst] = 0;
    --have;
  }
  while (have < k) {
    int best = -1;
    for (int e = 0; e < count; ++e)
      if (!sel[e] && (best < 0 || w[offset + e] > w[offset + best])) best = e;
    sel[best] = 1;
    ++have;
  }
}

}  // namespace

Selection round(const fim::FimCache& cache, const RelaxedSolution& sol,
                int K_P, int K_R, int rounds, uint64_t seed) {
  const RadarConfig& cfg = cache.cfg;
  const int IP = cfg.num_pulse_elements();
  if (sol.w.size() != IP + cfg.R)
    throw std::invalid_argument("round: solution dimension mismatch");

  auto make_selection = [&](const std::vector<uint8_t>& A,
                            const std::vector<uint8_t>& b) {
    Selection s(cfg.I, cfg.P, cfg.R);
    s.A = A;
    s.b = b;
    s.K_P = K_P;
    s.K_R = K_R;
    return s;
  };

  // round 0: deterministic sort rounding
  std::vector<uint8_t> A0(IP, 0), b0(cfg.R, 0);
  for (int e : top_k(sol.w, 0, IP, K_P)) A0[e] = 1;
  for (int r : top_k(sol.w, IP, cfg.R, K_R)) b0[r] = 1;
  Selection best = make_selection(A0, b0);
  double best_gamma = boolean_gamma(cache, best);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int round_i = 1; round_i < rounds; ++round_i) {
    std::vector<uint8_t> A(IP, 0), b(cfg.R, 0);
    for (int e = 0; e < IP; ++e) A[e] = unif(rng) < sol.w[e] ? 1 : 0;
    for (int r = 0; r < cfg.R; ++r) b[r] = unif(rng) < sol.w[IP + r] ? 1 : 0;
    repair(A, sol.w, 0, K_P);
    repair(b, sol.w, IP, K_R);
    Selection cand = make_selection(A, b);
    const double g = boolean_gamma(cache, cand);
    if (g > best_gamma) {
      best_gamma = g;
      best = cand;
    }
  }
  return best;
}

}  // namespace convex
}  // namespace radar
