#include <doctest.h>

#include <cmath>
#include <vector>

#include "radar/fim.hpp"
#include "radar/grid.hpp"
#include "radar/measures.hpp"
#include "radar/oracle.hpp"

using namespace radar;

namespace {

RadarConfig small_config(int I, int P, int R) {
  RadarConfig cfg;
  cfg.I = I;
  cfg.P = P;
  cfg.R = R;
  cfg.N = 4;
  cfg.alpha[0] = {0.9, 0.2};
  cfg.alpha[1] = {-0.4, 1.1};
  cfg.finalize();
  return cfg;
}

}  // namespace

TEST_CASE("exhaustive search enumerates combinations and handles ties") {
  RadarConfig cfg = small_config(1, 12, 1);
  const DeltaGrid grid = build_grid(0.0, 0.0, 0.5, 5.0, 1, 8, 0.0);
  const fim::FimCache cache = fim::FimCache::build(cfg, grid);
  measures::Criterion crit;
  crit.kind = measures::Kind::A_OPT;
  crit.param_mask = {1, 3};  // velocity-only two-target estimation
  const auto res = oracle::exhaustive_search(cache, crit, 5, 1);
  CHECK(res.evaluated == 792);  // C(12, 5)
  CHECK(res.selection.pulses_selected() == 5);
  CHECK(std::isfinite(res.objective));

  // budgets equal to totals return the full design
  const auto full = oracle::exhaustive_search(cache, crit, 12, 1);
  CHECK(full.evaluated == 1);
  CHECK(full.selection.pulses_selected() == 12);

  oracle::SearchOptions tight;
  tight.enumeration_cap = 100;
  CHECK_THROWS_AS(oracle::exhaustive_search(cache, crit, 5, 1, tight),
                  std::invalid_argument);
}

TEST_CASE("transmitter-selection mode enumerates antennas") {
  RadarConfig cfg = small_config(4, 1, 2);
  const DeltaGrid grid = build_grid(0.05, 0.5, 0.0, 0.0, 8, 1, 0.0);
  const fim::FimCache cache = fim::FimCache::build(cfg, grid);
  measures::Criterion crit;
  crit.kind = measures::Kind::A_OPT;
  crit.param_mask = {0, 2};  // angle-only two-target estimation
  oracle::SearchOptions opts;
  opts.space = oracle::SearchSpace::TRANSMITTERS;
  opts.K_I = 2;
  const auto res = oracle::exhaustive_search(cache, crit, 0, 1, opts);
  CHECK(res.evaluated == 6 * 2);  // C(4,2) * C(2,1)
  CHECK(res.selection.transmitters_selected() == 2);
  CHECK(res.selection.receivers_selected() == 1);
}

TEST_CASE("submodularity checker flags a known counterexample") {
  auto bad = [](const std::vector<int>& s) {
    return static_cast<double>(s.size() * s.size());
  };
  const auto rep = oracle::check_submodular(bad, 4);
  CHECK_FALSE(rep.pass);
  CHECK(rep.normalized);
  CHECK(rep.monotone);
  CHECK_FALSE(rep.submodular);
  CHECK_FALSE(rep.counterexample.empty());

  auto good = [](const std::vector<int>& s) {
    return s.empty() ? 0.0 : 1.0;  // coverage-style, submodular
  };
  CHECK(oracle::check_submodular(good, 4).pass);
  CHECK_THROWS_AS(oracle::check_submodular(good, 20), std::invalid_argument);
}

TEST_CASE("ambiguity traces peak at zero offset and hit Dirichlet nulls") {
  RadarConfig cfg = small_config(1, 12, 1);
  const Selection full = Selection::full(1, 12, 1);

  const double lambda = cfg.wavelength();
  const double null_dv = lambda / (2.0 * cfg.P * cfg.Tp);
  const auto t = oracle::ambiguity_velocity(cfg, full, {0.0, null_dv});
  CHECK(t.db[0] == doctest::Approx(0.0));
  CHECK(t.db[1] == doctest::Approx(-80.0));  // floored at the null

  // Dirichlet magnitude at an intermediate offset (single antenna pair,
  // slow-time kernel times the fast-time kernel)
  const double dv = 0.37 * null_dv;
  const auto mid = oracle::ambiguity_velocity(cfg, full, {dv});
  const double phi_p = 4.0 * M_PI * dv * cfg.Tp / lambda;
  const double phi_n = 4.0 * M_PI * dv * cfg.Ts / lambda;
  const double dir_p = std::abs(std::sin(0.5 * cfg.P * phi_p) /
                                (cfg.P * std::sin(0.5 * phi_p)));
  const double dir_n = std::abs(std::sin(0.5 * cfg.N * phi_n) /
                                (cfg.N * std::sin(0.5 * phi_n)));
  CHECK(mid.db[0] == doctest::Approx(20.0 * std::log10(dir_p * dir_n)).epsilon(1e-9));

  const Selection empty(1, 12, 1);
  CHECK_THROWS_AS(oracle::ambiguity_velocity(cfg, empty, {0.0}),
                  std::invalid_argument);
}

TEST_CASE("beampattern of the full virtual array is an array factor") {
  RadarConfig cfg = small_config(2, 1, 2);
  const Selection full = Selection::full(2, 1, 2);
  const auto bp = oracle::beampattern(cfg, full, {0.0, 0.2});
  CHECK(bp.db[0] == doctest::Approx(0.0));
  CHECK(bp.db[1] < 0.0);

  const auto surf = oracle::ambiguity_joint(cfg, full, {0.0, 0.2}, {0.0, 1.0});
  CHECK(surf.db.size() == 4);
  CHECK(surf.db[0] == doctest::Approx(0.0));
}

TEST_CASE("maximum-likelihood error collapses in the noiseless limit") {
  RadarConfig cfg = small_config(2, 4, 2);
  cfg.sigma_e = 1e-9;
  cfg.finalize();
  const Selection sel = Selection::full(2, 4, 2);
  const TargetParams truth{0.21, 3.7, 0.0};
  oracle::MleGrid grid;
  grid.u_min = -0.5;
  grid.u_max = 0.5;
  grid.nu = 41;
  grid.v_min = 0.0;
  grid.v_max = 8.0;
  grid.nv = 41;
  const auto res = oracle::mle_mse(cfg, sel, truth, 4, 2, grid);
  // refinement resolution: a fraction of one coarse cell
  const double cell_u = 1.0 / 40.0, cell_v = 8.0 / 40.0;
  CHECK(std::sqrt(res.mse_u) < 0.5 * cell_u);
  CHECK(std::sqrt(res.mse_v) < 0.5 * cell_v);

  TargetParams outside{0.9, 3.7, 0.0};
  CHECK_THROWS_AS(oracle::mle_mse(cfg, sel, outside, 1, 2, grid),
                  std::invalid_argument);
}

TEST_CASE("high-SNR maximum-likelihood error tracks the single-target bound") {
  RadarConfig cfg = small_config(2, 4, 2);
  cfg.sigma_e = 0.03;
  cfg.finalize();
  const Selection sel = Selection::full(2, 4, 2);
  const TargetParams truth{0.15, 3.0, 0.0};

  // single-target CRLB diagonal from the top-left information block
  RadarConfig scfg = cfg;
  scfg.alpha[1] = 0.0;
  scfg.finalize();
  Eigen::Matrix2d F = Eigen::Matrix2d::Zero();
  for (int r = 0; r < cfg.R; ++r)
    for (int i = 0; i < cfg.I; ++i)
      for (int p = 0; p < cfg.P; ++p)
        for (int n = 0; n < cfg.N; ++n)
          F += fim::single_target_block(scfg, r, i, p, n, 0);
  const Eigen::Matrix2d C = F.inverse();

  oracle::MleGrid grid;
  grid.u_min = 0.0;
  grid.u_max = 0.3;
  grid.nu = 121;
  grid.v_min = 2.0;
  grid.v_max = 4.0;
  grid.nv = 121;
  const auto res = oracle::mle_mse(cfg, sel, truth, 60, 11, grid);
  CHECK(res.mse_u < 3.0 * C(0, 0));
  CHECK(res.mse_u > C(0, 0) / 3.0);
  CHECK(res.mse_v < 3.0 * C(1, 1));
  CHECK(res.mse_v > C(1, 1) / 3.0);
}
