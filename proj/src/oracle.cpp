#include "radar/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "radar/model.hpp"

namespace radar {
namespace oracle {

namespace {

constexpr double kDbFloor = -80.0;
constexpr double kTwoPi = 2.0 * M_PI;

uint64_t binomial_capped(int n, int k, uint64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > cap) return cap + 1;
  }
  return c;
}

bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<int> first_combination(int k) {
  std::vector<int> c(k);
  std::iota(c.begin(), c.end(), 0);
  return c;
}

std::string set_to_string(const std::vector<int>& s) {
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << '}';
  return os.str();
}

}  // namespace

SearchResult exhaustive_search(const fim::FimCache& cache,
                               const measures::Criterion& crit, int K_P,
                               int K_R, const SearchOptions& opts) {
  const RadarConfig& cfg = cache.cfg;
  const int IP = cfg.num_pulse_elements();
  if (K_R < 0 || K_R > cfg.R)
    throw std::invalid_argument("exhaustive_search: bad K_R");

  uint64_t pulse_count;
  int pulse_n, pulse_k;
  if (opts.space == SearchSpace::PULSES) {
    if (K_P < 0 || K_P > IP)
      throw std::invalid_argument("exhaustive_search: bad K_P");
    pulse_n = IP;
    pulse_k = K_P;
  } else {
    if (opts.K_I < 0 || opts.K_I > cfg.I)
      throw std::invalid_argument("exhaustive_search: bad K_I");
    pulse_n = cfg.I;
    pulse_k = opts.K_I;
  }
  pulse_count = binomial_capped(pulse_n, pulse_k, opts.enumeration_cap);
  const uint64_t rx_count = binomial_capped(cfg.R, K_R, opts.enumeration_cap);
  if (pulse_count > opts.enumeration_cap ||
      pulse_count * rx_count > opts.enumeration_cap)
    throw std::invalid_argument("exhaustive_search: enumeration cap exceeded");

  // MFP criteria reuse one evaluator across the whole enumeration
  std::unique_ptr<measures::MfpEvaluator> mfp;
  if (crit.kind == measures::Kind::MFP || crit.kind == measures::Kind::FP)
    mfp = std::make_unique<measures::MfpEvaluator>(
        cfg, cache.grid, measures::to_evaluator_norm(crit.kind, crit.mfp_norm));

  SearchResult res;
  double best = std::numeric_limits<double>::infinity();
  bool have = false;

  std::vector<int> pc = first_combination(pulse_k);
  do {
    std::vector<int> rc = first_combination(K_R);
    do {
      Selection sel(cfg.I, cfg.P, cfg.R);
      sel.K_R = K_R;
      if (opts.space == SearchSpace::PULSES) {
        sel.K_P = K_P;
        for (int e : pc) sel.A[e] = 1;
      } else {
        sel.K_P = opts.K_I * cfg.P;
        for (int i : pc)
          for (int p = 0; p < cfg.P; ++p) sel.at(i, p) = 1;
      }
      for (int r : rc) sel.b[r] = 1;
      const double cost = measures::criterion_cost(cache, sel, crit, mfp.get());
      ++res.evaluated;
      // strict improvement keeps the lexicographically smallest tie
      if (!have || cost < best) {
        best = cost;
        res.selection = sel;
        have = true;
      }
    } while (next_combination(rc, cfg.R));
  } while (next_combination(pc, pulse_n));

  res.objective = best;
  return res;
}

SubmodularReport check_submodular(
    const std::function<double(const std::vector<int>&)>& f, int ground_size,
    double tol) {
  if (ground_size < 0 || ground_size > 16)
    throw std::invalid_argument("check_submodular: ground set too large");
  const uint32_t full = (1u << ground_size) - 1;

  std::vector<double> val(full + 1);
  std::vector<int> members;
  double fmax = 0.0;
  for (uint32_t s = 0; s <= full; ++s) {
    members.clear();
    for (int e = 0; e < ground_size; ++e)
      if (s & (1u << e)) members.push_back(e);
    val[s] = f(members);
    fmax = std::max(fmax, std::abs(val[s]));
  }
  const double slack = tol * (1.0 + fmax);

  SubmodularReport rep;
  rep.normalized = std::abs(val[0]) <= slack;
  if (!rep.normalized)
    rep.counterexample = "f(empty) = " + std::to_string(val[0]);

  rep.monotone = true;
  for (uint32_t s = 0; s <= full && rep.monotone; ++s)
    for (int e = 0; e < ground_size; ++e) {
      if (s & (1u << e)) continue;
      if (val[s | (1u << e)] < val[s] - slack) {
        rep.monotone = false;
        if (rep.counterexample.empty()) {
          members.clear();
          for (int x = 0; x < ground_size; ++x)
            if (s & (1u << x)) members.push_back(x);
          rep.counterexample = "monotonicity fails adding " +
                               std::to_string(e) + " to " +
                               set_to_string(members);
        }
        break;
      }
    }

  rep.submodular = true;
  for (uint32_t s2 = 0; s2 <= full && rep.submodular; ++s2) {
    // every submask s1 of s2, including the empty set
    uint32_t s1 = s2;
    while (true) {
      for (int e = 0; e < ground_size; ++e) {
        if (s2 & (1u << e)) continue;
        const double g1 = val[s1 | (1u << e)] - val[s1];
        const double g2 = val[s2 | (1u << e)] - val[s2];
        if (g1 < g2 - slack) {
          rep.submodular = false;
          if (rep.counterexample.empty()) {
            std::vector<int> m1, m2;
            for (int x = 0; x < ground_size; ++x) {
              if (s1 & (1u << x)) m1.push_back(x);
              if (s2 & (1u << x)) m2.push_back(x);
            }
            rep.counterexample = "diminishing returns fails for u = " +
                                 std::to_string(e) + ", S1 = " +
                                 set_to_string(m1) + ", S2 = " +
                                 set_to_string(m2);
          }
          break;
        }
      }
      if (!rep.submodular || s1 == 0) break;
      s1 = (s1 - 1) & s2;
    }
  }

  rep.pass = rep.normalized && rep.monotone && rep.submodular;
  if (rep.pass) rep.counterexample.clear();
  return rep;
}

namespace {

double response_db(const RadarConfig& cfg, const Selection& sel, double du,
                   double dv) {
  const double lambda = cfg.wavelength();
  std::complex<double> acc = 0.0;
  int pulses = 0;
  // spatial and slow/fast-time factors separate
  std::complex<double> rx_sum = 0.0;
  for (int r = 0; r < cfg.R; ++r)
    if (sel.b[r])
      rx_sum += std::polar(1.0, 2.0 * M_PI * model::rx_position(cfg, r) * du / lambda);
  std::complex<double> tp_sum = 0.0;
  for (int i = 0; i < cfg.I; ++i)
    for (int p = 0; p < cfg.P; ++p)
      if (sel.at(i, p)) {
        ++pulses;
        tp_sum += std::polar(1.0, 2.0 * M_PI * model::tx_position(cfg, i) * du / lambda +
                                      4.0 * M_PI * dv * p * cfg.Tp / lambda);
      }
  std::complex<double> n_sum = 0.0;
  for (int n = 0; n < cfg.N; ++n)
    n_sum += std::polar(1.0, 4.0 * M_PI * dv * n * cfg.Ts / lambda);
  acc = rx_sum * tp_sum * n_sum;
  const int rxs = sel.receivers_selected();
  const double chi = std::abs(acc) / (static_cast<double>(rxs) * pulses * cfg.N);
  return std::max(20.0 * std::log10(std::max(chi, 1e-300)), kDbFloor);
}

void require_nonempty(const Selection& sel) {
  if (sel.pulses_selected() == 0 || sel.receivers_selected() == 0)
    throw std::invalid_argument("ambiguity: empty selection");
}

}  // namespace

Trace ambiguity_velocity(const RadarConfig& cfg, const Selection& sel,
                         const std::vector<double>& dv_axis) {
  require_nonempty(sel);
  Trace t;
  t.axis = dv_axis;
  for (double dv : dv_axis) t.db.push_back(response_db(cfg, sel, 0.0, dv));
  return t;
}

Trace beampattern(const RadarConfig& cfg, const Selection& sel,
                  const std::vector<double>& du_axis) {
  require_nonempty(sel);
  Trace t;
  t.axis = du_axis;
  for (double du : du_axis) t.db.push_back(response_db(cfg, sel, du, 0.0));
  return t;
}

Surface ambiguity_joint(const RadarConfig& cfg, const Selection& sel,
                        const std::vector<double>& du_axis,
                        const std::vector<double>& dv_axis) {
  require_nonempty(sel);
  Surface s;
  s.du_axis = du_axis;
  s.dv_axis = dv_axis;
  for (double du : du_axis)
    for (double dv : dv_axis) s.db.push_back(response_db(cfg, sel, du, dv));
  return s;
}

namespace {

// Re<y, s(u,v)> on the full search grid, up to constants; |s| does not
// depend on (u, v). The matched filter factorizes over fast time, slow
// time, and the virtual coordinate D = (r - i) d, so the scan costs
// O(nv (M N + M) + nu nv G) instead of O(nu nv M N).
struct LikelihoodField {
  const RadarConfig* cfg;
  const std::vector<model::Measurement>* meas;
  double Rq;

  // field[a * nv + b] = L(u_a, v_b)
  std::vector<double> scan(double u_min, double du, int nu, double v_min,
                           double dv, int nv) const {
    const double lambda = cfg->wavelength();
    const int G = cfg->I + cfg->R - 1;  // distinct r - i offsets
    std::vector<int> group(meas->size()), pulse(meas->size());
    for (size_t m = 0; m < meas->size(); ++m) {
      group[m] = (*meas)[m].r - (*meas)[m].i + cfg->I - 1;
      pulse[m] = (*meas)[m].p;
    }
    std::vector<double> field(static_cast<size_t>(nu) * nv);
    std::vector<std::complex<double>> fast(cfg->N), slow(cfg->P), coord(G);
    for (int b = 0; b < nv; ++b) {
      const double v = v_min + b * dv;
      for (int n = 0; n < cfg->N; ++n)
        fast[n] = std::polar(
            1.0, -kTwoPi * n * cfg->Ts *
                     (2.0 * v / lambda +
                      2.0 * cfg->chirp_rate() * Rq / kSpeedOfLight));
      for (int p = 0; p < cfg->P; ++p)
        slow[p] = std::polar(1.0, -kTwoPi * 2.0 * v * p * cfg->Tp / lambda);
      std::fill(coord.begin(), coord.end(), std::complex<double>(0.0));
      for (size_t m = 0; m < meas->size(); ++m) {
        std::complex<double> acc = 0.0;
        const auto& samples = (*meas)[m].samples;
        for (int n = 0; n < cfg->N; ++n) acc += fast[n] * samples[n];
        coord[group[m]] += slow[pulse[m]] * acc;
      }
      for (int a = 0; a < nu; ++a) {
        const double u = u_min + a * du;
        std::complex<double> acc = 0.0;
        for (int g = 0; g < G; ++g)
          acc += std::polar(1.0, -kTwoPi * (g - cfg->I + 1) * cfg->d * u /
                                     lambda) *
                 coord[g];
        field[static_cast<size_t>(a) * nv + b] =
            (std::conj(cfg->alpha[0]) * acc).real();
      }
    }
    return field;
  }
};

// quadratic peak interpolation from three equispaced samples
double parabolic_offset(double lm, double c, double rp) {
  const double denom = lm - 2.0 * c + rp;
  if (denom >= 0.0) return 0.0;  // not a local max shape
  double off = 0.5 * (lm - rp) / denom;
  return std::clamp(off, -0.5, 0.5);
}

}  // namespace

MleResult mle_mse(const RadarConfig& cfg, const Selection& sel,
                  const TargetParams& truth, int trials, uint64_t seed,
                  const MleGrid& grid) {
  if (trials < 1) throw std::invalid_argument("mle_mse: trials < 1");
  if (truth.u < grid.u_min || truth.u > grid.u_max || truth.v < grid.v_min ||
      truth.v > grid.v_max)
    throw std::invalid_argument("mle_mse: search grid excludes the truth");
  if (grid.nu < 1 || grid.nv < 1)
    throw std::invalid_argument("mle_mse: empty search grid");

  const double du = grid.nu > 1 ? (grid.u_max - grid.u_min) / (grid.nu - 1) : 0.0;
  const double dv = grid.nv > 1 ? (grid.v_max - grid.v_min) / (grid.nv - 1) : 0.0;

  RadarConfig scfg = cfg;
  scfg.alpha[1] = 0.0;  // single-target benchmark
  const std::vector<TargetParams> targets{truth, TargetParams{}};

  std::vector<double> se_u, se_v;
  se_u.reserve(trials);
  se_v.reserve(trials);
  std::mt19937_64 seeder(seed);

  for (int trial = 0; trial < trials; ++trial) {
    const uint64_t trial_seed = seeder();
    const auto meas = model::simulate_measurements(scfg, targets, sel, trial_seed);
    LikelihoodField L{&scfg, &meas, truth.Rq};

    int bu = 0, bv = 0;
    double best = -std::numeric_limits<double>::infinity();
    const std::vector<double> field =
        L.scan(grid.u_min, du, grid.nu, grid.v_min, dv, grid.nv);
    for (int a = 0; a < grid.nu; ++a)
      for (int b = 0; b < grid.nv; ++b) {
        const double l = field[static_cast<size_t>(a) * grid.nv + b];
        if (l > best) {
          best = l;
          bu = a;
          bv = b;
        }
      }
    auto at = [&](int a, int b) {
      return field[static_cast<size_t>(a) * grid.nv + b];
    };
    double u_hat = grid.u_min + bu * du;
    double v_hat = grid.v_min + bv * dv;
    if (bu > 0 && bu < grid.nu - 1)
      u_hat += du * parabolic_offset(at(bu - 1, bv), at(bu, bv), at(bu + 1, bv));
    if (bv > 0 && bv < grid.nv - 1)
      v_hat += dv * parabolic_offset(at(bu, bv - 1), at(bu, bv), at(bu, bv + 1));

    se_u.push_back((u_hat - truth.u) * (u_hat - truth.u));
    se_v.push_back((v_hat - truth.v) * (v_hat - truth.v));
  }

  auto summarize = [&](const std::vector<double>& se, double& mse, double& ci) {
    mse = std::accumulate(se.begin(), se.end(), 0.0) / se.size();
    double var = 0.0;
    for (double x : se) var += (x - mse) * (x - mse);
    var /= std::max<size_t>(se.size() - 1, 1);
    ci = 1.96 * std::sqrt(var / se.size());
  };

  MleResult res;
  res.trials = trials;
  summarize(se_u, res.mse_u, res.ci_u);
  summarize(se_v, res.mse_v, res.ci_v);
  return res;
}

}  // namespace oracle
}  // namespace radar
