#include "radar/greedy.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace radar {
namespace greedy {

namespace {

struct PoolEntry {
  double gain;
  int version;  // kept-set version at evaluation time
  int id;
};

struct PoolOrder {
  bool operator()(const PoolEntry& a, const PoolEntry& b) const {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.id > b.id;  // lowest index wins ties
  }
};

using Pool = std::priority_queue<PoolEntry, std::vector<PoolEntry>, PoolOrder>;

}  // namespace

bool is_independent_impl(const PartitionMatroid& m, const GroundSet& gs,
                         const std::vector<int>& set) {
  int pulses = 0, rxs = 0;
  for (int e : set) {
    if (e < 0 || e >= gs.size())
      throw std::out_of_range("is_independent: element outside ground set");
    (gs.is_pulse(e) ? pulses : rxs)++;
  }
  return pulses <= m.pulse_budget && rxs <= m.receiver_budget;
}

GreedyResult greedy_mfp(const measures::MfpEvaluator& mfp, int K_P, int K_R,
                        const GreedyOptions& opts) {
  const GroundSet& gs = mfp.ground();
  if (K_P < 0 || K_P > gs.pulse_count() || K_R < 0 || K_R > gs.R)
    throw std::invalid_argument("greedy_mfp: infeasible budgets");
  const int pulse_budget = gs.pulse_count() - K_P;
  const int rx_budget = gs.R - K_R;

  std::vector<uint8_t> kept_flag(gs.size(), 1);
  std::vector<int> kept(gs.size());
  for (int e = 0; e < gs.size(); ++e) kept[e] = e;

  GreedyResult res;
  int removed_pulses = 0, removed_rxs = 0;
  int version = 0;

  auto rebuild_kept = [&] {
    kept.clear();
    for (int e = 0; e < gs.size(); ++e)
      if (kept_flag[e]) kept.push_back(e);
  };
  auto accept = [&](int u) {
    kept_flag[u] = 0;
    rebuild_kept();
    (gs.is_pulse(u) ? removed_pulses : removed_rxs)++;
    ++version;
  };
  auto feasible = [&](int u) {
    return gs.is_pulse(u) ? removed_pulses < pulse_budget
                          : removed_rxs < rx_budget;
  };

  if (opts.lazy) {
    Pool pool;
    for (int e = 0; e < gs.size(); ++e) {
      pool.push({mfp.removal_weight(kept, e), version, e});
      ++res.gain_evaluations;
    }
    while (!pool.empty()) {
      PoolEntry top = pool.top();
      pool.pop();
      if (top.version != version) {
        pool.push({mfp.removal_weight(kept, top.id), version, top.id});
        ++res.gain_evaluations;
        continue;
      }
      if (feasible(top.id)) accept(top.id);
      // infeasible candidates leave the pool either way
    }
  } else {
    std::vector<uint8_t> in_pool(gs.size(), 1);
    int pool_size = gs.size();
    while (pool_size > 0) {
      int best = -1;
      double best_gain = -1.0;
      for (int e = 0; e < gs.size(); ++e) {
        if (!in_pool[e]) continue;
        const double g = mfp.removal_weight(kept, e);
        ++res.gain_evaluations;
        if (g > best_gain) {
          best_gain = g;
          best = e;
        }
      }
      in_pool[best] = 0;
      --pool_size;
      if (feasible(best)) accept(best);
    }
  }

  Selection sel(gs.I, gs.P, gs.R);
  sel.K_P = K_P;
  sel.K_R = K_R;
  for (int e = 0; e < gs.pulse_count(); ++e) sel.A[e] = kept_flag[e];
  for (int r = 0; r < gs.R; ++r) sel.b[r] = kept_flag[gs.rx_id(r)];
  res.selection = sel;
  res.objective = mfp.total() - mfp.value(kept);  // G of the discarded set
  return res;
}

LogdetState::LogdetState(const fim::FimCache& cache, double epsilon,
                         const std::vector<uint8_t>& fixed_b)
    : cache_(&cache), epsilon_(epsilon), fixed_b_(fixed_b) {
  const RadarConfig& cfg = cache.cfg;
  if (static_cast<int>(fixed_b.size()) != cfg.R)
    throw std::invalid_argument("LogdetState: fixed_b size mismatch");
  if (!(epsilon_ > 0)) epsilon_ = measures::default_epsilon(cache);
  const size_t D = cache.grid.size();
  const int IP = cfg.num_pulse_elements();
  in_.assign(IP, 1);
  contrib_.assign(static_cast<size_t>(IP) * D, Eigen::Matrix4d::Zero());
  for (int e = 0; e < IP; ++e) {
    const int i = e / cfg.P, p = e % cfg.P;
    for (int r = 0; r < cfg.R; ++r) {
      if (!fixed_b_[r]) continue;
      for (size_t d = 0; d < D; ++d)
        contrib_[e * D + d] += cache.at(r, i, p, static_cast<int>(d));
    }
  }
  lowrank_.resize(contrib_.size());
  for (size_t k = 0; k < contrib_.size(); ++k) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(contrib_[k]);
    const double lmax = std::max(es.eigenvalues().maxCoeff(), 0.0);
    int rank = 0;
    for (int c = 0; c < 4; ++c)
      if (es.eigenvalues()[c] > lmax * 1e-14) ++rank;
    Eigen::MatrixXd U(4, rank);
    int col = 0;
    for (int c = 0; c < 4; ++c)
      if (es.eigenvalues()[c] > lmax * 1e-14)
        U.col(col++) = es.eigenvectors().col(c) * std::sqrt(es.eigenvalues()[c]);
    lowrank_[k] = U;
  }
  F_.assign(D, Eigen::Matrix4d::Zero());
  for (int e = 0; e < IP; ++e)
    for (size_t d = 0; d < D; ++d) F_[d] += contrib_[e * D + d];
  refresh_factorizations();
}

void LogdetState::refresh_factorizations() {
  chol_.resize(F_.size());
  for (size_t d = 0; d < F_.size(); ++d)
    chol_[d].compute(F_[d] + epsilon_ * Eigen::Matrix4d::Identity());
}

int LogdetState::pulse_count() const {
  int c = 0;
  for (uint8_t x : in_) c += x;
  return c;
}

double LogdetState::h() const {
  const size_t D = F_.size();
  double sum = 0.0;
  for (size_t d = 0; d < D; ++d)
    sum += measures::d_opt(F_[d], epsilon_);
  return sum / static_cast<double>(D);
}

double LogdetState::removal_gain(int pulse) const {
  if (!in_[pulse]) throw std::invalid_argument("removal_gain: pulse not in set");
  const size_t D = F_.size();
  double sum = 0.0;
  for (size_t d = 0; d < D; ++d) {
    const Eigen::MatrixXd& U = lowrank_[pulse * D + d];
    bool ok = false;
    if (U.cols() > 0) {
      const Eigen::MatrixXd M = chol_[d].matrixL().solve(U);
      const Eigen::MatrixXd B =
          Eigen::MatrixXd::Identity(U.cols(), U.cols()) - M.transpose() * M;
      Eigen::LLT<Eigen::MatrixXd> lltB(B);
      if (lltB.info() == Eigen::Success) {
        double ld = 0.0;
        for (int c = 0; c < U.cols(); ++c)
          ld += std::log(lltB.matrixL()(c, c));
        sum += 2.0 * ld;
        ok = true;
      }
    } else {
      ok = true;  // zero atom, zero gain
    }
    if (!ok) {
      // numerically indefinite update: evaluate from scratch
      const Eigen::Matrix4d Fm = F_[d] - contrib_[pulse * D + d];
      sum += measures::d_opt(Fm, epsilon_) - measures::d_opt(F_[d], epsilon_);
    }
  }
  return sum / static_cast<double>(D);
}

double LogdetState::addition_gain(int pulse) const {
  if (in_[pulse]) throw std::invalid_argument("addition_gain: pulse already in set");
  const size_t D = F_.size();
  double sum = 0.0;
  for (size_t d = 0; d < D; ++d) {
    const Eigen::MatrixXd& U = lowrank_[pulse * D + d];
    if (U.cols() == 0) continue;
    const Eigen::MatrixXd M = chol_[d].matrixL().solve(U);
    const Eigen::MatrixXd B =
        Eigen::MatrixXd::Identity(U.cols(), U.cols()) + M.transpose() * M;
    Eigen::LLT<Eigen::MatrixXd> lltB(B);
    double ld = 0.0;
    for (int c = 0; c < U.cols(); ++c) ld += std::log(lltB.matrixL()(c, c));
    sum += 2.0 * ld;
  }
  return sum / static_cast<double>(D);
}

void LogdetState::remove(int pulse) {
  const size_t D = F_.size();
  in_[pulse] = 0;
  for (size_t d = 0; d < D; ++d) F_[d] -= contrib_[pulse * D + d];
  refresh_factorizations();
}

void LogdetState::add(int pulse) {
  const size_t D = F_.size();
  in_[pulse] = 1;
  for (size_t d = 0; d < D; ++d) F_[d] += contrib_[pulse * D + d];
  refresh_factorizations();
}

void LogdetState::clear() {
  std::fill(in_.begin(), in_.end(), uint8_t{0});
  std::fill(F_.begin(), F_.end(), Eigen::Matrix4d::Zero());
  refresh_factorizations();
}

namespace {

Selection selection_from_state(const fim::FimCache& cache,
                               const LogdetState& state, int K_P) {
  const RadarConfig& cfg = cache.cfg;
  Selection sel(cfg.I, cfg.P, cfg.R);
  sel.K_P = K_P;
  sel.K_R = 0;
  for (int e = 0; e < cfg.num_pulse_elements(); ++e) sel.A[e] = state.in_set()[e];
  // fixed receivers are reported as selected
  return sel;
}

}  // namespace

GreedyResult greedy_logdet(const fim::FimCache& cache, double epsilon, int K_P,
                           const std::vector<uint8_t>& fixed_b,
                           const GreedyOptions& opts) {
  const int IP = cache.cfg.num_pulse_elements();
  if (K_P < 0 || K_P > IP) throw std::invalid_argument("greedy_logdet: bad K_P");
  LogdetState state(cache, epsilon, fixed_b);
  GreedyResult res;

  if (opts.lazy) {
    Pool pool;
    int version = 0;
    for (int e = 0; e < IP; ++e) {
      pool.push({state.removal_gain(e), version, e});
      ++res.gain_evaluations;
    }
    int remaining = IP;
    while (remaining > K_P) {
      PoolEntry top = pool.top();
      pool.pop();
      if (top.version != version) {
        pool.push({state.removal_gain(top.id), version, top.id});
        ++res.gain_evaluations;
        continue;
      }
      state.remove(top.id);
      --remaining;
      ++version;
    }
  } else {
    while (state.pulse_count() > K_P) {
      int best = -1;
      double best_gain = -std::numeric_limits<double>::infinity();
      for (int e = 0; e < IP; ++e) {
        if (!state.in_set()[e]) continue;
        const double g = state.removal_gain(e);
        ++res.gain_evaluations;
        if (g > best_gain) {
          best_gain = g;
          best = e;
        }
      }
      state.remove(best);
    }
  }

  Selection sel = selection_from_state(cache, state, K_P);
  for (int r = 0; r < cache.cfg.R; ++r) sel.b[r] = fixed_b[r];
  sel.K_R = sel.receivers_selected();
  res.selection = sel;
  res.objective = state.h();
  return res;
}

GreedyResult greedy_logdet_forward(const fim::FimCache& cache, double epsilon,
                                   int K_P, const std::vector<uint8_t>& fixed_b,
                                   const GreedyOptions& opts) {
  const int IP = cache.cfg.num_pulse_elements();
  if (K_P < 0 || K_P > IP)
    throw std::invalid_argument("greedy_logdet_forward: bad K_P");
  LogdetState state(cache, epsilon, fixed_b);
  state.clear();
  GreedyResult res;

  if (opts.lazy) {
    Pool pool;
    int version = 0;
    for (int e = 0; e < IP; ++e) {
      pool.push({state.addition_gain(e), version, e});
      ++res.gain_evaluations;
    }
    int chosen = 0;
    while (chosen < K_P && !pool.empty()) {
      PoolEntry top = pool.top();
      pool.pop();
      if (top.version != version) {
        pool.push({state.addition_gain(top.id), version, top.id});
        ++res.gain_evaluations;
        continue;
      }
      state.add(top.id);
      ++chosen;
      ++version;
    }
  } else {
    while (state.pulse_count() < K_P) {
      int best = -1;
      double best_gain = -std::numeric_limits<double>::infinity();
      for (int e = 0; e < IP; ++e) {
        if (state.in_set()[e]) continue;
        const double g = state.addition_gain(e);
        ++res.gain_evaluations;
        if (g > best_gain) {
          best_gain = g;
          best = e;
        }
      }
      state.add(best);
    }
  }

  Selection sel = selection_from_state(cache, state, K_P);
  for (int r = 0; r < cache.cfg.R; ++r) sel.b[r] = fixed_b[r];
  sel.K_R = sel.receivers_selected();
  res.selection = sel;
  res.objective = state.h();
  return res;
}

}  // namespace greedy

bool is_independent(const PartitionMatroid& m, const GroundSet& gs,
                    const std::vector<int>& set) {
  return greedy::is_independent_impl(m, gs, set);
}

}  // namespace radar
