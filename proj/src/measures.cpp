#include "radar/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radar {
namespace measures {

namespace {
constexpr double kCondCap = 1e12;
constexpr double kDropTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::MatrixXd masked(const Eigen::MatrixXd& F, const std::vector<int>& mask) {
  Eigen::MatrixXd out(mask.size(), mask.size());
  for (size_t a = 0; a < mask.size(); ++a)
    for (size_t b = 0; b < mask.size(); ++b) out(a, b) = F(mask[a], mask[b]);
  return out;
}
}  // namespace

CrlbResult crlb(const Eigen::MatrixXd& F) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(F);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double lmax = ev.maxCoeff();
  const double lmin = ev.minCoeff();
  CrlbResult res;
  res.singular = !(lmin > 0.0) || lmax / lmin >= kCondCap;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
  for (int k = 0; k < ev.size(); ++k)
    if (ev[k] > lmax * kDropTol) inv[k] = 1.0 / ev[k];
  res.C = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
  return res;
}

double a_opt(const Eigen::MatrixXd& F) {
  const CrlbResult c = crlb(F);
  return c.singular ? kInf : c.C.trace();
}

double e_opt(const Eigen::MatrixXd& F) {
  const CrlbResult c = crlb(F);
  if (c.singular) return kInf;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.C);
  return es.eigenvalues().maxCoeff();
}

double d_opt(const Eigen::MatrixXd& F, double epsilon) {
  if (!(epsilon > 0)) throw std::invalid_argument("d_opt: epsilon must be positive");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(F);
  double v = 0.0;
  for (int k = 0; k < es.eigenvalues().size(); ++k)
    v += std::log(es.eigenvalues()[k] + epsilon) - std::log(epsilon);
  return v;
}

double default_epsilon(const fim::FimCache& cache) {
  std::vector<double> traces;
  traces.reserve(cache.atoms.size());
  for (const auto& a : cache.atoms) traces.push_back(a.trace());
  const size_t mid = traces.size() / 2;
  std::nth_element(traces.begin(), traces.begin() + mid, traces.end());
  return 1e-6 * std::max(traces[mid], 1e-300);
}

double aggregate(const std::vector<double>& values, Aggregation agg) {
  if (values.empty()) throw std::invalid_argument("aggregate: empty grid");
  if (agg == Aggregation::MAX_OVER_GRID)
    return *std::max_element(values.begin(), values.end());
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

MfpEvaluator::MfpEvaluator(const RadarConfig& cfg, const DeltaGrid& grid, Norm norm)
    : cfg_(cfg), grid_(grid), norm_(norm), gs_{cfg.I, cfg.P, cfg.R} {
  dD_max_ = cfg.I + cfg.R - 2;
  const double a1 = std::norm(cfg.alpha[0]);
  const double a2 = std::norm(cfg.alpha[1]);
  s_alpha_ = a1 + a2;
  a4_ = a1 * a1 + a2 * a2;
  a22_ = a1 * a2;
  const double k = 2.0 * M_PI / cfg.wavelength();
  k2_ = k * k;
  if (grid_.points.empty()) return;  // value_at-only use
  g2_.assign(static_cast<size_t>(2 * dD_max_ + 1) * (2 * cfg.P - 1), 0.0);
  for (int dD = -dD_max_; dD <= dD_max_; ++dD)
    for (int dp = -(cfg.P - 1); dp <= cfg.P - 1; ++dp) {
      double mc = 0.0;
      for (const DeltaTheta& dt : grid_.points)
        mc += std::cos(k * (2.0 * dt.dv * dp * cfg.Tp + dt.du * dD * cfg.d));
      mc /= static_cast<double>(grid_.points.size());
      g2_[(dD + dD_max_) * (2 * cfg.P - 1) + (dp + cfg.P - 1)] =
          a4_ + 2.0 * a22_ * mc;
    }
  std::vector<int> all(gs_.size());
  for (int e = 0; e < gs_.size(); ++e) all[e] = e;
  total_ = value(all);
}

std::vector<MfpEvaluator::Meas> MfpEvaluator::measurements(
    const std::vector<int>& kept) const {
  std::vector<int> pulses, rxs;
  for (int e : kept)
    (gs_.is_pulse(e) ? pulses : rxs).push_back(e);
  std::vector<Meas> out;
  out.reserve(pulses.size() * rxs.size());
  for (int e : rxs)
    for (int q : pulses) out.push_back({gs_.rx_of(e), q});
  return out;
}

double MfpEvaluator::pair_term(const Meas& a, const Meas& b) const {
  const int ia = a.pulse / cfg_.P, pa = a.pulse % cfg_.P;
  const int ib = b.pulse / cfg_.P, pb = b.pulse % cfg_.P;
  const double Da = (a.r - ia) * cfg_.d;
  const double Db = (b.r - ib) * cfg_.d;
  const double g2val = g2((b.r - ib) - (a.r - ia), pb - pa);
  double sum = 0.0;
  for (int n = 0; n < cfg_.N; ++n) {
    const double ta = pa * cfg_.Tp + n * cfg_.Ts;
    const double tb = pb * cfg_.Tp + n * cfg_.Ts;
    const double inner = k2_ * (Da * Db + 4.0 * ta * tb);
    const double num = inner * inner * g2val;
    if (norm_ == Norm::NONE) {
      sum += num;
      continue;
    }
    const double na = k2_ * (Da * Da + 4.0 * ta * ta) * s_alpha_;
    const double nb = k2_ * (Db * Db + 4.0 * tb * tb) * s_alpha_;
    if (na == 0.0 || nb == 0.0) continue;  // zero-norm rows contribute 0
    sum += norm_ == Norm::PRINTED ? num / (na * na * nb * nb) : num / (na * nb);
  }
  return sum;
}

double MfpEvaluator::pair_block(const std::vector<Meas>& s1,
                                const std::vector<Meas>& s2) const {
  double sum = 0.0;
  for (const Meas& a : s1)
    for (const Meas& b : s2) sum += pair_term(a, b);
  return sum;
}

double MfpEvaluator::value(const std::vector<int>& kept) const {
  if (g2_.empty()) throw std::logic_error("MfpEvaluator: built without a grid");
  const std::vector<Meas> m = measurements(kept);
  double sum = 0.0;
  for (size_t x = 0; x < m.size(); ++x) {
    sum += pair_term(m[x], m[x]);
    for (size_t y = x + 1; y < m.size(); ++y) sum += 2.0 * pair_term(m[x], m[y]);
  }
  return sum;
}

double MfpEvaluator::value_at(const std::vector<int>& kept,
                              const DeltaTheta& dtheta) const {
  // Single-point evaluation bypasses the grid-mean table.
  MfpEvaluator point(*this);
  point.grid_.points = {dtheta};
  const double k = std::sqrt(k2_);
  point.g2_.assign(static_cast<size_t>(2 * dD_max_ + 1) * (2 * cfg_.P - 1), 0.0);
  for (int dD = -dD_max_; dD <= dD_max_; ++dD)
    for (int dp = -(cfg_.P - 1); dp <= cfg_.P - 1; ++dp)
      point.g2_[(dD + dD_max_) * (2 * cfg_.P - 1) + (dp + cfg_.P - 1)] =
          a4_ + 2.0 * a22_ * std::cos(k * (2.0 * dtheta.dv * dp * cfg_.Tp +
                                           dtheta.du * dD * cfg_.d));
  return point.value(kept);
}

double MfpEvaluator::removal_weight(const std::vector<int>& kept, int u) const {
  std::vector<int> pulses, rxs;
  for (int e : kept)
    (gs_.is_pulse(e) ? pulses : rxs).push_back(e);
  std::vector<Meas> mine, others;
  if (gs_.is_pulse(u)) {
    for (int e : rxs) {
      mine.push_back({gs_.rx_of(e), u});
      for (int q : pulses)
        if (q != u) others.push_back({gs_.rx_of(e), q});
    }
  } else {
    for (int q : pulses) {
      mine.push_back({gs_.rx_of(u), q});
      for (int e : rxs)
        if (e != u) others.push_back({gs_.rx_of(e), q});
    }
  }
  return 2.0 * pair_block(mine, others) + pair_block(mine, mine);
}

double MfpEvaluator::g(const std::vector<int>& removed) const {
  std::vector<uint8_t> drop(gs_.size(), 0);
  for (int e : removed) {
    if (e < 0 || e >= gs_.size())
      throw std::out_of_range("g_function: element outside ground set");
    drop[e] = 1;
  }
  std::vector<int> kept;
  for (int e = 0; e < gs_.size(); ++e)
    if (!drop[e]) kept.push_back(e);
  return total_ - value(kept);
}

double frame_potential(const RadarConfig& cfg, const Selection& sel,
                       const DeltaTheta& dtheta) {
  MfpEvaluator ev(cfg, DeltaGrid{}, MfpEvaluator::Norm::NONE);
  return ev.value_at(sel.kept_elements(), dtheta);
}

double modified_frame_potential(const RadarConfig& cfg, const Selection& sel,
                                const DeltaTheta& dtheta, MfpNorm norm) {
  MfpEvaluator ev(cfg, DeltaGrid{},
                  norm == MfpNorm::PRINTED ? MfpEvaluator::Norm::PRINTED
                                           : MfpEvaluator::Norm::COSINE);
  return ev.value_at(sel.kept_elements(), dtheta);
}

double criterion_cost(const std::vector<Eigen::Matrix4d>& fims,
                      const RadarConfig& cfg, const Criterion& crit) {
  if (crit.kind == Kind::MFP || crit.kind == Kind::FP)
    throw std::invalid_argument("criterion_cost: MFP/FP need an evaluator");
  if (crit.param_mask.empty())
    throw std::invalid_argument("criterion_cost: empty parameter mask");
  Eigen::VectorXd gamma(crit.param_mask.size());
  for (size_t k = 0; k < crit.param_mask.size(); ++k)
    gamma[k] = cfg.gamma[crit.param_mask[k]];
  double epsilon = crit.epsilon;
  if (crit.kind == Kind::D_OPT && !(epsilon > 0)) {
    std::vector<double> traces;
    for (const auto& F : fims) traces.push_back(F.trace());
    const size_t mid = traces.size() / 2;
    std::nth_element(traces.begin(), traces.begin() + mid, traces.end());
    epsilon = 1e-6 * std::max(traces[mid], 1e-300);
  }
  std::vector<double> vals;
  vals.reserve(fims.size());
  for (const Eigen::Matrix4d& F : fims) {
    const Eigen::MatrixXd Fw =
        fim::apply_weights(masked(F, crit.param_mask), gamma);
    switch (crit.kind) {
      case Kind::A_OPT: vals.push_back(a_opt(Fw)); break;
      case Kind::E_OPT: vals.push_back(e_opt(Fw)); break;
      case Kind::D_OPT: vals.push_back(-d_opt(Fw, epsilon)); break;
      default: break;
    }
  }
  return aggregate(vals, crit.aggregation);
}

double criterion_cost(const fim::FimCache& cache, const Selection& sel,
                      const Criterion& crit, const MfpEvaluator* mfp) {
  if (crit.kind == Kind::MFP || crit.kind == Kind::FP) {
    MfpEvaluator local =
        mfp ? *mfp
            : MfpEvaluator(cache.cfg, cache.grid,
                           to_evaluator_norm(crit.kind, crit.mfp_norm));
    const std::vector<int> kept = sel.kept_elements();
    if (crit.aggregation == Aggregation::MEAN_OVER_GRID) return local.value(kept);
    std::vector<double> vals;
    for (const DeltaTheta& dt : cache.grid.points)
      vals.push_back(local.value_at(kept, dt));
    return aggregate(vals, crit.aggregation);
  }
  if (cache.weighted)
    throw std::invalid_argument("criterion_cost: cache must hold unweighted atoms");
  return criterion_cost(fim::assemble(cache, sel), cache.cfg, crit);
}

}  // namespace measures
}  // namespace radar
