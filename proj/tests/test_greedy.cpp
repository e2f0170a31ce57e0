#include <doctest.h>

#include <cmath>
#include <random>

#include "radar/fim.hpp"
#include "radar/greedy.hpp"
#include "radar/grid.hpp"
#include "radar/measures.hpp"

using namespace radar;

namespace {

RadarConfig small_config(int I, int P, int R, uint64_t seed = 0) {
  RadarConfig cfg;
  cfg.I = I;
  cfg.P = P;
  cfg.R = R;
  cfg.N = 4;
  std::mt19937_64 rng(seed + 1);
  std::uniform_real_distribution<double> unif(0.4, 1.6);
  cfg.alpha[0] = std::polar(unif(rng), unif(rng));
  cfg.alpha[1] = std::polar(unif(rng), unif(rng));
  cfg.finalize();
  return cfg;
}

DeltaGrid small_grid() { return build_grid(0.05, 0.4, 0.5, 5.0, 3, 3, 0.0); }

}  // namespace

TEST_CASE("partition independence counts per class") {
  const GroundSet gs{2, 2, 2};  // pulses 0..3, receivers 4..5
  const PartitionMatroid m{2, 1};
  CHECK(is_independent(m, gs, {}));
  CHECK(is_independent(m, gs, {0, 3, 4}));
  CHECK_FALSE(is_independent(m, gs, {0, 1, 2}));
  CHECK_FALSE(is_independent(m, gs, {0, 1, 4, 5}));
  CHECK_THROWS_AS(is_independent(m, gs, {7}), std::out_of_range);
}

TEST_CASE("frame-potential greedy returns exact cardinalities") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 15; ++trial) {
    RadarConfig cfg = small_config(2, 3, 3, trial);
    measures::MfpEvaluator ev(cfg, small_grid(),
                              measures::MfpEvaluator::Norm::PRINTED);
    const int K_P = 1 + static_cast<int>(rng() % 5);
    const int K_R = 1 + static_cast<int>(rng() % 3);
    const auto res = greedy::greedy_mfp(ev, K_P, K_R);
    CHECK(res.selection.pulses_selected() == K_P);
    CHECK(res.selection.receivers_selected() == K_R);
  }
}

TEST_CASE("full budgets return the full selection") {
  RadarConfig cfg = small_config(2, 2, 2);
  measures::MfpEvaluator ev(cfg, small_grid(),
                            measures::MfpEvaluator::Norm::PRINTED);
  const auto res = greedy::greedy_mfp(ev, 4, 2);
  CHECK(res.selection.pulses_selected() == 4);
  CHECK(res.selection.receivers_selected() == 2);
  CHECK(res.objective == 0.0);
}

TEST_CASE("lazy and exhaustive gain evaluation agree") {
  for (int trial = 0; trial < 5; ++trial) {
    RadarConfig cfg = small_config(2, 3, 2, 100 + trial);
    measures::MfpEvaluator ev(cfg, small_grid(),
                              measures::MfpEvaluator::Norm::PRINTED);
    greedy::GreedyOptions lazy, eager;
    eager.lazy = false;
    const auto a = greedy::greedy_mfp(ev, 3, 1, lazy);
    const auto b = greedy::greedy_mfp(ev, 3, 1, eager);
    CHECK(a.selection.A == b.selection.A);
    CHECK(a.selection.b == b.selection.b);
    CHECK(a.objective == doctest::Approx(b.objective));
    CHECK(a.gain_evaluations <= b.gain_evaluations);
  }
}

TEST_CASE("matroid greedy meets the half-optimality bound") {
  RadarConfig cfg = small_config(2, 2, 2, 7);
  measures::MfpEvaluator ev(cfg, small_grid(),
                            measures::MfpEvaluator::Norm::PRINTED);
  const int K_P = 2, K_R = 1;
  const auto res = greedy::greedy_mfp(ev, K_P, K_R);
  const GroundSet gs = ev.ground();
  double opt = 0.0;
  for (uint32_t mask = 0; mask < (1u << gs.size()); ++mask) {
    std::vector<int> removed;
    int pr = 0, rr = 0;
    for (int e = 0; e < gs.size(); ++e)
      if (mask & (1u << e)) {
        removed.push_back(e);
        (gs.is_pulse(e) ? pr : rr)++;
      }
    if (pr != gs.pulse_count() - K_P || rr != gs.R - K_R) continue;
    opt = std::max(opt, ev.g(removed));
  }
  CHECK(res.objective >= 0.5 * opt - 1e-12 * opt);
  CHECK(res.objective <= opt + 1e-12 * opt);
}

TEST_CASE("log-det removal gains match naive recomputation and telescope") {
  RadarConfig cfg = small_config(2, 3, 2, 21);
  const fim::FimCache cache = fim::FimCache::build(cfg, small_grid());
  const std::vector<uint8_t> all_rx(cfg.R, 1);
  greedy::LogdetState state(cache, 0.0, all_rx);
  const double eps = state.epsilon();

  auto naive_h = [&](const std::vector<uint8_t>& in) {
    std::vector<double> vals;
    for (size_t d = 0; d < cache.grid.size(); ++d) {
      Eigen::Matrix4d F = Eigen::Matrix4d::Zero();
      for (int r = 0; r < cfg.R; ++r)
        for (int e = 0; e < cfg.num_pulse_elements(); ++e)
          if (in[e]) F += cache.at(r, e / cfg.P, e % cfg.P, static_cast<int>(d));
      vals.push_back(measures::d_opt(F, eps));
    }
    return measures::aggregate(vals, measures::Aggregation::MEAN_OVER_GRID);
  };

  std::vector<uint8_t> in(cfg.num_pulse_elements(), 1);
  const double h_full = state.h();
  CHECK(h_full == doctest::Approx(naive_h(in)).epsilon(1e-10));

  for (int e = 0; e < cfg.num_pulse_elements(); ++e) {
    auto reduced = in;
    reduced[e] = 0;
    const double gain = state.removal_gain(e);
    CHECK(gain == doctest::Approx(naive_h(reduced) - h_full).epsilon(1e-8));
    CHECK(gain <= 1e-9);  // removals never help
  }

  // telescoping along an arbitrary removal sequence
  double acc = 0.0;
  for (int e : {4, 1, 5}) {
    acc += state.removal_gain(e);
    state.remove(e);
  }
  CHECK(state.h() - h_full == doctest::Approx(acc).epsilon(1e-8));
}

TEST_CASE("zero information atoms produce zero gain") {
  RadarConfig cfg = small_config(2, 1, 1);
  cfg.N = 1;  // single sample at t = 0
  cfg.finalize();
  const fim::FimCache cache = fim::FimCache::build(cfg, small_grid());
  // pulse (i=0, p=0) with the only receiver r=0 has D = 0 and t = 0
  CHECK(cache.at(0, 0, 0, 0).norm() == 0.0);
  greedy::LogdetState state(cache, 0.0, {1});
  CHECK(state.removal_gain(0) == doctest::Approx(0.0));
}

TEST_CASE("log-det pulse removal nests across budgets") {
  RadarConfig cfg = small_config(2, 3, 2, 33);
  const fim::FimCache cache = fim::FimCache::build(cfg, small_grid());
  const std::vector<uint8_t> all_rx(cfg.R, 1);

  const auto at_full = greedy::greedy_logdet(cache, 0.0, 6, all_rx);
  CHECK(at_full.selection.pulses_selected() == 6);

  const auto k4 = greedy::greedy_logdet(cache, 0.0, 4, all_rx);
  const auto k2 = greedy::greedy_logdet(cache, 0.0, 2, all_rx);
  for (int e = 0; e < 6; ++e)
    if (k2.selection.A[e]) CHECK(k4.selection.A[e]);

  // objective h is monotone in the budget
  CHECK(k2.objective <= k4.objective + 1e-12);
  CHECK(k4.objective <= at_full.objective + 1e-12);
}

TEST_CASE("forward log-det greedy meets the 1 - 1/e bound") {
  RadarConfig cfg = small_config(2, 3, 2, 55);
  const fim::FimCache cache = fim::FimCache::build(cfg, small_grid());
  const std::vector<uint8_t> all_rx(cfg.R, 1);
  const int K_P = 3;
  const auto res = greedy::greedy_logdet_forward(cache, 0.0, K_P, all_rx);

  greedy::LogdetState state(cache, 0.0, all_rx);
  state.clear();
  double opt = -1.0;
  const int IP = cfg.num_pulse_elements();
  for (uint32_t mask = 0; mask < (1u << IP); ++mask) {
    if (__builtin_popcount(mask) != K_P) continue;
    greedy::LogdetState s = state;
    for (int e = 0; e < IP; ++e)
      if (mask & (1u << e)) s.add(e);
    opt = std::max(opt, s.h());
  }
  CHECK(res.objective >= (1.0 - std::exp(-1.0)) * opt - 1e-9);
  CHECK(res.objective <= opt + 1e-9);
}
