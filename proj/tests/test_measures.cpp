#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "radar/fim.hpp"
#include "radar/grid.hpp"
#include "radar/measures.hpp"
#include "radar/model.hpp"

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

struct Pair {
  int r, i, p;
};

// straight double-loop recomputation from raw derivative vectors
double brute_force_mfp(const RadarConfig& cfg, const std::vector<Pair>& meas,
                       const DeltaTheta& dt, measures::MfpEvaluator::Norm norm) {
  const std::array<TargetParams, 2> th{
      TargetParams{0.1, 2.0, 0.0},
      TargetParams{0.1 - dt.du, 2.0 - dt.dv, 0.0}};
  double total = 0.0;
  for (const Pair& a : meas)
    for (const Pair& b : meas)
      for (int n = 0; n < cfg.N; ++n) {
        const Eigen::Vector4cd da =
            model::derivative_vector(cfg, th, a.r, a.i, a.p, n);
        const Eigen::Vector4cd db =
            model::derivative_vector(cfg, th, b.r, b.i, b.p, n);
        const double num = std::norm(da.dot(db));
        const double na = da.squaredNorm();
        const double nb = db.squaredNorm();
        switch (norm) {
          case measures::MfpEvaluator::Norm::NONE:
            total += num;
            break;
          case measures::MfpEvaluator::Norm::PRINTED:
            if (na > 0.0 && nb > 0.0) total += num / ((na * nb) * (na * nb));
            break;
          case measures::MfpEvaluator::Norm::COSINE:
            if (na > 0.0 && nb > 0.0) total += num / (na * nb);
            break;
        }
      }
  return total;
}

}  // namespace

TEST_CASE("matrix inversion with singularity flag") {
  CHECK((measures::crlb(Eigen::Matrix4d::Identity()).C -
         Eigen::Matrix4d::Identity())
            .norm() < 1e-14);

  Eigen::Vector4d d;
  d << 4.0, 1.0, 4.0, 1.0;
  const auto res = measures::crlb(Eigen::Matrix4d(d.asDiagonal()));
  CHECK_FALSE(res.singular);
  Eigen::Vector4d expect;
  expect << 0.25, 1.0, 0.25, 1.0;
  CHECK((res.C - Eigen::Matrix4d(expect.asDiagonal())).norm() < 1e-14);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Matrix4d A;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) A(a, b) = gauss(rng);
    const Eigen::Matrix4d F =
        A * A.transpose() + 0.1 * Eigen::Matrix4d::Identity();
    const auto r = measures::crlb(F);
    CHECK_FALSE(r.singular);
    CHECK((F * r.C - Eigen::Matrix4d::Identity()).norm() < 1e-9);
  }

  Eigen::Matrix4d sing = Eigen::Matrix4d::Zero();
  sing(0, 0) = 1.0;
  CHECK(measures::crlb(sing).singular);
}

TEST_CASE("scalarizations at reference points") {
  const Eigen::Matrix4d I4 = Eigen::Matrix4d::Identity();
  CHECK(measures::a_opt(I4) == doctest::Approx(4.0));
  CHECK(measures::e_opt(I4) == doctest::Approx(1.0));
  CHECK(measures::d_opt(Eigen::Matrix4d::Zero(), 1e-6) == doctest::Approx(0.0));

  std::mt19937_64 rng(9);
  std::normal_distribution<double> gauss;
  Eigen::Matrix4d A;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) A(a, b) = gauss(rng);
  const Eigen::Matrix4d F = A * A.transpose() + 0.5 * Eigen::Matrix4d::Identity();
  const double lmin =
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(F).eigenvalues().minCoeff();
  CHECK(measures::e_opt(F) == doctest::Approx(1.0 / lmin));

  // singular information yields an infinite cost, not a crash
  Eigen::Matrix4d sing = Eigen::Matrix4d::Zero();
  sing(0, 0) = 1.0;
  CHECK(std::isinf(measures::a_opt(sing)));
  CHECK(std::isinf(measures::e_opt(sing)));
}

TEST_CASE("aggregation over the grid") {
  CHECK(measures::aggregate({1.0, 2.0, 3.0},
                            measures::Aggregation::MAX_OVER_GRID) == 3.0);
  CHECK(measures::aggregate({1.0, 2.0, 3.0},
                            measures::Aggregation::MEAN_OVER_GRID) == 2.0);
  CHECK(measures::aggregate({7.0}, measures::Aggregation::MAX_OVER_GRID) ==
        measures::aggregate({7.0}, measures::Aggregation::MEAN_OVER_GRID));
  CHECK_THROWS_AS(measures::aggregate({}, measures::Aggregation::MAX_OVER_GRID),
                  std::invalid_argument);
}

TEST_CASE("frame potentials match the brute-force double loop") {
  RadarConfig cfg = small_config(2, 2, 2);
  const DeltaGrid grid = build_grid(0.05, 0.4, 0.5, 5.0, 2, 2, 0.0);
  const DeltaTheta dt = grid.points[1];

  const GroundSet gs{cfg.I, cfg.P, cfg.R};
  // three measurements: (r=0,(0,0)), (r=1,(0,1)), (r=1,(1,0))
  Selection sel(2, 2, 2);
  sel.at(0, 0) = 1;
  sel.at(0, 1) = 1;
  sel.at(1, 0) = 1;
  sel.b[0] = 1;
  sel.b[1] = 1;
  std::vector<Pair> meas;
  for (int r = 0; r < 2; ++r)
    if (sel.b[r])
      for (int i = 0; i < 2; ++i)
        for (int p = 0; p < 2; ++p)
          if (sel.at(i, p)) meas.push_back({r, i, p});

  for (auto norm : {measures::MfpEvaluator::Norm::NONE,
                    measures::MfpEvaluator::Norm::PRINTED,
                    measures::MfpEvaluator::Norm::COSINE}) {
    measures::MfpEvaluator ev(cfg, grid, norm);
    const double fast = ev.value_at(sel.kept_elements(), dt);
    const double ref = brute_force_mfp(cfg, meas, dt, norm);
    CHECK(fast == doctest::Approx(ref).epsilon(1e-12));
  }

  CHECK(measures::frame_potential(cfg, sel, dt) ==
        doctest::Approx(brute_force_mfp(cfg, meas, dt,
                                        measures::MfpEvaluator::Norm::NONE)));
  CHECK(measures::modified_frame_potential(cfg, sel, dt) ==
        doctest::Approx(brute_force_mfp(cfg, meas, dt,
                                        measures::MfpEvaluator::Norm::PRINTED)));

  // empty selection
  Selection empty(2, 2, 2);
  CHECK(measures::frame_potential(cfg, empty, dt) == 0.0);
  // single measurement: diagonal term only, strictly positive
  Selection one(2, 2, 2);
  one.at(0, 1) = 1;
  one.b[1] = 1;
  CHECK(measures::frame_potential(cfg, one, dt) > 0.0);
}

TEST_CASE("set-function form of the frame-potential reduction") {
  RadarConfig cfg = small_config(2, 2, 2);
  const DeltaGrid grid = build_grid(0.05, 0.4, 0.5, 5.0, 2, 2, 0.0);
  measures::MfpEvaluator ev(cfg, grid, measures::MfpEvaluator::Norm::PRINTED);
  const GroundSet gs = ev.ground();

  CHECK(ev.g({}) == 0.0);
  std::vector<int> all(gs.size());
  for (int e = 0; e < gs.size(); ++e) all[e] = e;
  CHECK(ev.g(all) == doctest::Approx(ev.total()));

  // monotone over a full enumeration of the 6-element ground set
  for (uint32_t mask = 0; mask < (1u << gs.size()); ++mask) {
    std::vector<int> removed;
    for (int e = 0; e < gs.size(); ++e)
      if (mask & (1u << e)) removed.push_back(e);
    const double base = ev.g(removed);
    for (int e = 0; e < gs.size(); ++e) {
      if (mask & (1u << e)) continue;
      auto more = removed;
      more.push_back(e);
      CHECK(ev.g(more) >= base - 1e-9 * (1.0 + std::abs(base)));
    }
  }
  CHECK_THROWS_AS(ev.g({99}), std::out_of_range);
}

TEST_CASE("criterion masks select parameter subsets") {
  RadarConfig cfg = small_config(2, 2, 2);
  cfg.gamma = {1.0, 3.0, 1.0, 3.0};
  cfg.finalize();
  const DeltaGrid grid = build_grid(0.05, 0.4, 0.5, 5.0, 2, 2, 0.0);
  const fim::FimCache cache = fim::FimCache::build(cfg, grid);
  const Selection sel = Selection::full(2, 2, 2);

  measures::Criterion crit;
  crit.kind = measures::Kind::A_OPT;
  crit.param_mask = {0, 1};  // single-target criterion
  const double cost = measures::criterion_cost(cache, sel, crit);

  // reference: top-left block of the assembled FIM, weighted by hand
  const auto fims = fim::assemble(cache, sel);
  std::vector<double> vals;
  for (const auto& F : fims) {
    Eigen::Matrix2d blk = F.topLeftCorner<2, 2>();
    Eigen::Vector2d g(cfg.gamma[0], cfg.gamma[1]);
    const Eigen::Matrix2d W =
        g.cwiseInverse().asDiagonal() * blk * g.cwiseInverse().asDiagonal();
    vals.push_back(W.inverse().trace());
  }
  CHECK(cost == doctest::Approx(measures::aggregate(
                    vals, measures::Aggregation::MEAN_OVER_GRID)));
}
