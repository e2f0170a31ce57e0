#include "radar/sdp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace radar {
namespace sdp {

namespace {

struct BlockState {
  Eigen::MatrixXd S;
  Eigen::LLT<Eigen::MatrixXd> llt;
  bool pd = false;
  double logdet = 0.0;
};

void evaluate_block(const SdpBlock& blk, const Eigen::VectorXd& x,
                    BlockState& st) {
  st.S = blk.F0;
  for (const auto& [k, C] : blk.coeffs) st.S += x[k] * C;
  st.llt.compute(st.S);
  st.pd = (st.llt.info() == Eigen::Success);
  if (st.pd) {
    st.logdet = 0.0;
    const auto& L = st.llt.matrixLLT();
    for (int i = 0; i < st.S.rows(); ++i) {
      if (L(i, i) <= 0.0) {
        st.pd = false;
        return;
      }
      st.logdet += 2.0 * std::log(L(i, i));
    }
  }
}

}  // namespace

SdpResult solve_sdp(const SdpProblem& problem, const Eigen::VectorXd& x0,
                    double tol, int max_iter) {
  const int m = problem.num_vars;
  if (x0.size() != m)
    throw std::invalid_argument("solve_sdp: start point dimension mismatch");

  double nu = 0.0;  // total barrier parameter
  for (const auto& blk : problem.blocks) nu += blk.F0.rows();

  std::vector<BlockState> states(problem.blocks.size());
  auto eval_all = [&](const Eigen::VectorXd& x) {
    bool all_pd = true;
    for (size_t j = 0; j < problem.blocks.size(); ++j) {
      evaluate_block(problem.blocks[j], x, states[j]);
      all_pd = all_pd && states[j].pd;
      if (!all_pd) return false;
    }
    return true;
  };

  Eigen::VectorXd x = x0;
  if (!eval_all(x))
    throw std::invalid_argument("solve_sdp: start point is not strictly feasible");

  // vec(C_k) per block, built once; Hessian assembly is then a GEMM.
  std::vector<Eigen::MatrixXd> vecs(problem.blocks.size());
  std::vector<std::vector<int>> vars(problem.blocks.size());
  for (size_t j = 0; j < problem.blocks.size(); ++j) {
    const SdpBlock& blk = problem.blocks[j];
    const int dim = static_cast<int>(blk.F0.rows());
    vecs[j].resize(dim * dim, blk.coeffs.size());
    vars[j].resize(blk.coeffs.size());
    for (size_t k = 0; k < blk.coeffs.size(); ++k) {
      vecs[j].col(k) = Eigen::Map<const Eigen::VectorXd>(
          blk.coeffs[k].second.data(), dim * dim);
      vars[j][k] = blk.coeffs[k].first;
    }
  }

  SdpResult res;
  double t = 1.0;
  const double mu = 10.0;
  int total_newton = 0;

  while (true) {
    // center for the current t
    for (;;) {
      if (total_newton >= max_iter) {
        res.x = x;
        res.objective = problem.b.dot(x);
        res.newton_iterations = total_newton;
        res.converged = false;
        res.gap = nu / t;
        double worst = std::numeric_limits<double>::infinity();
        for (auto& st : states)
          worst = std::min(worst,
                           Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(st.S)
                               .eigenvalues()
                               .minCoeff());
        res.min_block_eigen = worst;
        return res;
      }
      Eigen::VectorXd g = t * problem.b;
      Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m, m);
      for (size_t j = 0; j < problem.blocks.size(); ++j) {
        const SdpBlock& blk = problem.blocks[j];
        const int dim = static_cast<int>(blk.F0.rows());
        const Eigen::MatrixXd Sinv =
            states[j].llt.solve(Eigen::MatrixXd::Identity(dim, dim));
        Eigen::MatrixXd tilted(dim * dim, blk.coeffs.size());
        for (size_t k = 0; k < blk.coeffs.size(); ++k) {
          const Eigen::MatrixXd A = Sinv * blk.coeffs[k].second * Sinv;
          tilted.col(k) = Eigen::Map<const Eigen::VectorXd>(A.data(), dim * dim);
          g[vars[j][k]] +=
              (Sinv.array() * blk.coeffs[k].second.array()).sum();
        }
        const Eigen::MatrixXd Hb = tilted.transpose() * vecs[j];
        for (size_t k = 0; k < blk.coeffs.size(); ++k)
          for (size_t l = 0; l < blk.coeffs.size(); ++l)
            H(vars[j][k], vars[j][l]) += Hb(k, l);
      }
      // small ridge keeps the factorization honest on flat directions
      H.diagonal().array() += 1e-12 * (1.0 + H.diagonal().maxCoeff());
      Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
      const Eigen::VectorXd dx = ldlt.solve(g);
      const double decrement2 = g.dot(dx);
      ++total_newton;
      if (!(decrement2 > 1e-9)) break;

      // backtracking line search keeping every block PD
      double f0 = t * problem.b.dot(x);
      for (const auto& st : states) f0 += st.logdet;
      double alpha = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls) {
        const Eigen::VectorXd xn = x + alpha * dx;
        if (eval_all(xn)) {
          double fn = t * problem.b.dot(xn);
          for (const auto& st : states) fn += st.logdet;
          if (fn >= f0 + 0.25 * alpha * decrement2 || fn > f0) {
            x = xn;
            moved = true;
            break;
          }
        }
        alpha *= 0.5;
      }
      if (!moved) {
        eval_all(x);  // restore states at x
        break;
      }
    }

    if (nu / t < tol) break;
    t *= mu;
  }

  res.x = x;
  res.objective = problem.b.dot(x);
  res.newton_iterations = total_newton;
  res.converged = true;
  res.gap = nu / t;
  double worst = std::numeric_limits<double>::infinity();
  for (auto& st : states)
    worst = std::min(worst, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(st.S)
                                .eigenvalues()
                                .minCoeff());
  res.min_block_eigen = worst;
  return res;
}

}  // namespace sdp
}  // namespace radar
