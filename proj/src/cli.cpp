#include "radar/cli.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "radar/convex.hpp"
#include "radar/fim.hpp"
#include "radar/greedy.hpp"
#include "radar/measures.hpp"
#include "radar/model.hpp"
#include "radar/oracle.hpp"

namespace radar {
namespace cli {

namespace {

using nlohmann::json;

Eigen::MatrixXd masked(const Eigen::Matrix4d& F, const std::vector<int>& mask) {
  Eigen::MatrixXd out(mask.size(), mask.size());
  for (size_t a = 0; a < mask.size(); ++a)
    for (size_t b = 0; b < mask.size(); ++b) out(a, b) = F(mask[a], mask[b]);
  return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int k = 0; k < n; ++k)
    v[k] = n > 1 ? lo + (hi - lo) * k / (n - 1) : lo;
  return v;
}

struct DesignOutcome {
  io::SelectionRecord record;
  std::vector<std::vector<double>> crlb_rows;  // du, dv, tr, lmax, logdet
  double crlb_trace_summary = 0.0;
};

std::vector<uint8_t> resolved_receivers(const io::JobConfig& job) {
  if (job.fixed_receivers.empty())
    return std::vector<uint8_t>(job.radar.R, 1);
  if (static_cast<int>(job.fixed_receivers.size()) != job.radar.R)
    throw std::invalid_argument("fixed_receivers length must equal R");
  return job.fixed_receivers;
}

DesignOutcome run_design(const io::JobConfig& job, int K_P, int K_R) {
  const RadarConfig& cfg = job.radar;
  const DeltaGrid grid = job.grid.build();
  const measures::Criterion& crit = job.criterion;
  const uint64_t hash = io::config_hash(job);

  io::SelectionRecord rec;
  rec.criterion = io::criterion_name(crit);
  rec.solver = job.solver;
  rec.seed = job.seed;
  json stats;
  stats["config_hash"] = hash;

  if (job.solver == "greedy_mfp") {
    if (crit.kind != measures::Kind::MFP && crit.kind != measures::Kind::FP)
      throw std::invalid_argument("greedy_mfp requires a frame-potential criterion");
    measures::MfpEvaluator ev(cfg, grid,
                              measures::to_evaluator_norm(crit.kind, crit.mfp_norm));
    const greedy::GreedyResult res = greedy::greedy_mfp(ev, K_P, K_R);
    rec.selection = res.selection;
    rec.objective = res.objective;
    stats["gain_evaluations"] = res.gain_evaluations;
  } else if (job.solver == "greedy_logdet") {
    if (crit.kind != measures::Kind::D_OPT)
      throw std::invalid_argument("greedy_logdet requires the log-det criterion");
    const std::vector<uint8_t> fixed_b = resolved_receivers(job);
    const fim::FimCache cache = fim::FimCache::build(cfg, grid);
    const greedy::GreedyResult res =
        greedy::greedy_logdet(cache, crit.epsilon, K_P, fixed_b);
    rec.selection = res.selection;
    rec.objective = res.objective;
    stats["gain_evaluations"] = res.gain_evaluations;
  } else if (job.solver == "convex") {
    if (crit.kind != measures::Kind::E_OPT)
      throw std::invalid_argument("convex requires the extreme-eigenvalue criterion");
    if (crit.param_mask.size() != 4)
      throw std::invalid_argument("convex requires the full parameter set");
    const fim::FimCache wcache = fim::FimCache::build(cfg, grid, true);
    const convex::RelaxedSolution sol = convex::solve_relaxation(wcache, K_P, K_R);
    rec.selection = convex::round(wcache, sol, K_P, K_R, 200, job.seed);
    rec.objective = convex::boolean_gamma(wcache, rec.selection);
    stats["gamma_star"] = sol.gamma_star;
    stats["iterations"] = sol.stats.iterations;
    stats["gap"] = sol.stats.gap;
    stats["converged"] = sol.stats.converged;
  } else if (job.solver == "exhaustive") {
    const fim::FimCache cache = fim::FimCache::build(cfg, grid);
    oracle::SearchOptions opts;
    if (job.budgets.K_I > 0) {
      opts.space = oracle::SearchSpace::TRANSMITTERS;
      opts.K_I = job.budgets.K_I;
    }
    const oracle::SearchResult res =
        oracle::exhaustive_search(cache, crit, K_P, K_R, opts);
    rec.selection = res.selection;
    rec.objective = res.objective;
    stats["evaluated"] = res.evaluated;
  } else {
    throw std::invalid_argument("unknown solver: " + job.solver);
  }
  rec.stats_json = stats.dump();

  // weighted CRLB table of the chosen design
  DesignOutcome out;
  const fim::FimCache cache = fim::FimCache::build(cfg, grid);
  const std::vector<Eigen::Matrix4d> fims = fim::assemble(cache, rec.selection);
  Eigen::VectorXd gamma(crit.param_mask.size());
  for (size_t k = 0; k < crit.param_mask.size(); ++k)
    gamma[k] = cfg.gamma[crit.param_mask[k]];
  std::vector<double> traces;
  for (size_t d = 0; d < grid.size(); ++d) {
    const Eigen::MatrixXd Fw =
        fim::apply_weights(masked(fims[d], crit.param_mask), gamma);
    const measures::CrlbResult cr = measures::crlb(Fw);
    double tr, lmax, ld;
    if (cr.singular) {
      tr = lmax = ld = std::numeric_limits<double>::infinity();
    } else {
      tr = cr.C.trace();
      const Eigen::VectorXd ev =
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(cr.C).eigenvalues();
      lmax = ev.maxCoeff();
      ld = ev.array().log().sum();
    }
    traces.push_back(tr);
    out.crlb_rows.push_back({grid.points[d].du, grid.points[d].dv, tr, lmax, ld});
  }
  out.crlb_trace_summary = measures::aggregate(traces, crit.aggregation);
  out.record = rec;
  return out;
}

}  // namespace

int cmd_design(const io::JobConfig& job) {
  const DesignOutcome out = run_design(job, job.budgets.K_P, job.budgets.K_R);
  io::atomic_write(job.output_dir + "/selection.json",
                   io::selection_to_json(out.record));
  io::atomic_write(job.output_dir + "/crlb.csv",
                   io::to_csv({"du", "dv", "trace", "lambda_max", "logdet"},
                              out.crlb_rows));
  std::cout << "design: objective " << out.record.objective << ", tr(CRLB) "
            << out.crlb_trace_summary << "\n";
  return 0;
}

int cmd_sweep(const io::JobConfig& job,
              const std::vector<std::pair<int, int>>& budgets) {
  if (budgets.empty()) throw std::invalid_argument("sweep: empty budget list");
  for (size_t k = 1; k < budgets.size(); ++k)
    if (budgets[k] < budgets[k - 1])
      throw std::invalid_argument("sweep: budgets must be sorted ascending");

  std::vector<std::vector<double>> rows;
  bool failed = false;
  std::string failure;
  for (const auto& [kp, kr] : budgets) {
    const auto start = std::chrono::steady_clock::now();
    try {
      const DesignOutcome out = run_design(job, kp, kr);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
              .count();
      rows.push_back({static_cast<double>(kp), static_cast<double>(kr),
                      out.record.objective, out.crlb_trace_summary, secs});
      std::cout << "sweep: K_P=" << kp << " K_R=" << kr << " objective "
                << out.record.objective << " tr(CRLB) "
                << out.crlb_trace_summary << " (" << secs << " s)\n";
    } catch (const std::exception& e) {
      failed = true;
      failure = e.what();
      break;
    }
  }
  io::atomic_write(job.output_dir + "/sweep.csv",
                   io::to_csv({"K_P", "K_R", "objective", "crlb_trace",
                               "wall_time_s"},
                              rows));
  if (failed) {
    std::cerr << "sweep: aborted, partial results written: " << failure << "\n";
    return 1;
  }
  return 0;
}

int cmd_evaluate(const io::JobConfig& job, const std::string& selection_path) {
  const RadarConfig& cfg = job.radar;
  const io::SelectionRecord rec = io::load_selection(selection_path);
  const Selection& sel = rec.selection;
  if (sel.I != cfg.I || sel.P != cfg.P || sel.R != cfg.R)
    throw std::invalid_argument("evaluate: selection dimensions do not match config");

  const std::vector<double> du_axis =
      linspace(job.grid.du_min, job.grid.du_max, std::max(job.grid.nu, 201));
  const std::vector<double> dv_axis =
      linspace(job.grid.dv_min, job.grid.dv_max, std::max(job.grid.nv, 201));

  const oracle::Trace vel = oracle::ambiguity_velocity(cfg, sel, dv_axis);
  std::vector<std::vector<double>> rows;
  for (size_t k = 0; k < vel.axis.size(); ++k)
    rows.push_back({vel.axis[k], vel.db[k]});
  io::atomic_write(job.output_dir + "/af_velocity.csv",
                   io::to_csv({"dv", "db"}, rows));

  const oracle::Trace bp = oracle::beampattern(cfg, sel, du_axis);
  rows.clear();
  for (size_t k = 0; k < bp.axis.size(); ++k)
    rows.push_back({bp.axis[k], bp.db[k]});
  io::atomic_write(job.output_dir + "/beampattern.csv",
                   io::to_csv({"du", "db"}, rows));

  const std::vector<double> du_j =
      linspace(job.grid.du_min, job.grid.du_max, std::max(job.grid.nu, 41));
  const std::vector<double> dv_j =
      linspace(job.grid.dv_min, job.grid.dv_max, std::max(job.grid.nv, 41));
  const oracle::Surface surf = oracle::ambiguity_joint(cfg, sel, du_j, dv_j);
  rows.clear();
  for (size_t a = 0; a < du_j.size(); ++a)
    for (size_t b = 0; b < dv_j.size(); ++b)
      rows.push_back({du_j[a], dv_j[b], surf.db[a * dv_j.size() + b]});
  io::atomic_write(job.output_dir + "/af_joint.csv",
                   io::to_csv({"du", "dv", "db"}, rows));

  if (job.mle.enabled) {
    oracle::MleGrid grid;
    grid.u_min = job.mle.u_min;
    grid.u_max = job.mle.u_max;
    grid.nu = job.mle.nu;
    grid.v_min = job.mle.v_min;
    grid.v_max = job.mle.v_max;
    grid.nv = job.mle.nv;
    const oracle::MleResult res =
        oracle::mle_mse(cfg, sel, job.mle.truth, job.mle.trials, job.seed, grid);
    json j;
    j["mse_u"] = res.mse_u;
    j["mse_v"] = res.mse_v;
    j["ci_u"] = res.ci_u;
    j["ci_v"] = res.ci_v;
    j["trials"] = res.trials;
    j["seed"] = job.seed;
    j["config_hash"] = io::config_hash(job);
    io::atomic_write(job.output_dir + "/mle_mse.json", j.dump(2) + "\n");
  }
  return 0;
}

namespace {

bool report(const char* name, bool ok, std::ostringstream& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  " << name;
  const std::string d = detail.str();
  if (!d.empty()) std::cout << "  (" << d << ")";
  std::cout << "\n";
  detail.str("");
  return ok;
}

RadarConfig toy_config(int I, int P, int R, std::mt19937_64& rng) {
  RadarConfig cfg;
  cfg.I = I;
  cfg.P = P;
  cfg.R = R;
  cfg.N = 4;
  std::uniform_real_distribution<double> unif(0.5, 1.5);
  cfg.alpha[0] = std::polar(unif(rng), unif(rng));
  cfg.alpha[1] = std::polar(unif(rng), unif(rng));
  cfg.finalize();
  return cfg;
}

}  // namespace

int cmd_verify(uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif01(0.0, 1.0);
  bool all_ok = true;
  std::ostringstream detail;

  // derivative vs central finite differences
  {
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      RadarConfig cfg = toy_config(2, 3, 2, rng);
      std::array<TargetParams, 2> th{
          TargetParams{2.0 * unif01(rng) - 1.0, 20.0 * unif01(rng), 0.0},
          TargetParams{2.0 * unif01(rng) - 1.0, 20.0 * unif01(rng), 0.0}};
      const int r = 0, i = 1, p = 2, n = 1;
      const Eigen::Vector4cd dy = model::derivative_vector(cfg, th, r, i, p, n);
      const double h = 1e-6;
      auto sample = [&](const std::array<TargetParams, 2>& t) {
        return model::noiseless_sample(cfg, {t[0], t[1]}, r, i, p, n);
      };
      for (int k = 0; k < 4; ++k) {
        auto tp = th, tm = th;
        double* fields_p[4] = {&tp[0].u, &tp[0].v, &tp[1].u, &tp[1].v};
        double* fields_m[4] = {&tm[0].u, &tm[0].v, &tm[1].u, &tm[1].v};
        *fields_p[k] += h;
        *fields_m[k] -= h;
        const std::complex<double> fd = (sample(tp) - sample(tm)) / (2.0 * h);
        worst = std::max(worst, std::abs(fd - dy[k]) / std::max(std::abs(dy[k]), 1e-30));
      }
    }
    detail << "max rel err " << worst;
    all_ok &= report("derivative matches finite differences", worst < 1e-5, detail);
  }

  // information atom vs outer product of derivatives
  {
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      RadarConfig cfg = toy_config(2, 2, 2, rng);
      const DeltaTheta dt{0.4 * unif01(rng) + 0.01, 5.0 * unif01(rng) + 0.1};
      // the difference convention is theta1 - theta2
      std::array<TargetParams, 2> th{TargetParams{0.1, 3.0, 0.0},
                                     TargetParams{0.1 - dt.du, 3.0 - dt.dv, 0.0}};
      const int r = trial % cfg.R, i = trial % cfg.I, p = trial % cfg.P;
      Eigen::Matrix4d ref = Eigen::Matrix4d::Zero();
      for (int n = 0; n < cfg.N; ++n) {
        const Eigen::Vector4cd dy = model::derivative_vector(cfg, th, r, i, p, n);
        ref += (4.0 / (cfg.sigma_e * cfg.sigma_e)) *
               (dy * dy.adjoint()).real();
      }
      const Eigen::Matrix4d F = fim::atom(cfg, r, i, p, dt);
      worst = std::max(worst, (F - ref).norm() / ref.norm());
    }
    detail << "max rel err " << worst;
    all_ok &= report("information atom matches derivative outer product",
                     worst < 1e-10, detail);
  }

  // submodularity of the frame-potential reduction objective
  {
    RadarConfig cfg = toy_config(2, 2, 2, rng);
    const DeltaGrid grid = build_grid(0.05, 0.4, 0.5, 4.0, 3, 3, 0.0);
    measures::MfpEvaluator ev(cfg, grid, measures::MfpEvaluator::Norm::PRINTED);
    auto f = [&](const std::vector<int>& removed) { return ev.g(removed); };
    const oracle::SubmodularReport rep =
        oracle::check_submodular(f, ev.ground().size());
    detail << rep.counterexample;
    all_ok &= report("frame-potential reduction is normalized monotone submodular",
                     rep.pass, detail);
  }

  // submodularity of the regularized log-det over pulses
  {
    RadarConfig cfg = toy_config(2, 3, 2, rng);
    const DeltaGrid grid = build_grid(0.05, 0.4, 0.5, 4.0, 2, 2, 0.0);
    const fim::FimCache cache = fim::FimCache::build(cfg, grid);
    const std::vector<uint8_t> all_rx(cfg.R, 1);
    greedy::LogdetState state(cache, 0.0, all_rx);
    auto f = [&](const std::vector<int>& kept) {
      greedy::LogdetState s = state;
      s.clear();
      for (int e : kept) s.add(e);
      return s.h();
    };
    const oracle::SubmodularReport rep =
        oracle::check_submodular(f, cfg.num_pulse_elements());
    detail << rep.counterexample;
    all_ok &= report("regularized log-det is normalized monotone submodular",
                     rep.pass, detail);
  }

  // greedy guarantee against enumeration
  {
    RadarConfig cfg = toy_config(2, 2, 2, rng);
    const DeltaGrid grid = build_grid(0.05, 0.4, 0.5, 4.0, 3, 3, 0.0);
    measures::MfpEvaluator ev(cfg, grid, measures::MfpEvaluator::Norm::PRINTED);
    const int K_P = 2, K_R = 1;
    const greedy::GreedyResult res = greedy::greedy_mfp(ev, K_P, K_R);
    const GroundSet gs = ev.ground();
    double opt = 0.0;
    const int n = gs.size();
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> removed;
      int pr = 0, rr = 0;
      for (int e = 0; e < n; ++e)
        if (mask & (1u << e)) {
          removed.push_back(e);
          (gs.is_pulse(e) ? pr : rr)++;
        }
      if (pr != gs.pulse_count() - K_P || rr != gs.R - K_R) continue;
      opt = std::max(opt, ev.g(removed));
    }
    detail << "greedy " << res.objective << " vs opt " << opt;
    all_ok &= report("matroid greedy meets the 1/2 bound",
                     res.objective >= 0.5 * opt - 1e-12, detail);
  }

  // relaxation sandwich on a toy instance
  {
    RadarConfig cfg = toy_config(2, 2, 2, rng);
    const DeltaGrid grid = build_grid(0.05, 0.4, 0.5, 4.0, 2, 2, 0.0);
    const fim::FimCache cache = fim::FimCache::build(cfg, grid, true);
    const int K_P = 2, K_R = 1;
    const convex::RelaxedSolution sol = convex::solve_relaxation(cache, K_P, K_R);
    const Selection rounded = convex::round(cache, sol, K_P, K_R, 50, seed);
    const double round_gamma = convex::boolean_gamma(cache, rounded);
    double opt = -std::numeric_limits<double>::infinity();
    for (uint32_t am = 0; am < (1u << 4); ++am) {
      if (__builtin_popcount(am) != K_P) continue;
      for (uint32_t bm = 0; bm < (1u << 2); ++bm) {
        if (__builtin_popcount(bm) != K_R) continue;
        Selection s(2, 2, 2);
        for (int e = 0; e < 4; ++e) s.A[e] = (am >> e) & 1;
        for (int r = 0; r < 2; ++r) s.b[r] = (bm >> r) & 1;
        opt = std::max(opt, convex::boolean_gamma(cache, s));
      }
    }
    const double tol = 1e-6 * std::abs(sol.gamma_star) + 1e-12;
    detail << "round " << round_gamma << " <= opt " << opt << " <= relax "
           << sol.gamma_star;
    all_ok &= report("relaxation sandwich holds",
                     round_gamma <= opt + tol && opt <= sol.gamma_star + tol,
                     detail);
  }

  std::cout << (all_ok ? "verify: all checks passed"
                       : "verify: FAILURES detected")
            << "\n";
  return all_ok ? 0 : 1;
}

}  // namespace cli
}  // namespace radar
