#include "radar/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace radar {
namespace io {

using nlohmann::json;

DeltaGrid GridSpec::build() const {
  return build_grid(du_min, du_max, dv_min, dv_max, nu, nv, exclusion_radius);
}

namespace {

measures::Kind parse_kind(const std::string& s) {
  if (s == "a_opt") return measures::Kind::A_OPT;
  if (s == "d_opt") return measures::Kind::D_OPT;
  if (s == "e_opt") return measures::Kind::E_OPT;
  if (s == "mfp") return measures::Kind::MFP;
  if (s == "fp") return measures::Kind::FP;
  throw std::invalid_argument("unknown criterion kind: " + s);
}

std::string kind_name(measures::Kind k) {
  switch (k) {
    case measures::Kind::A_OPT: return "a_opt";
    case measures::Kind::D_OPT: return "d_opt";
    case measures::Kind::E_OPT: return "e_opt";
    case measures::Kind::MFP: return "mfp";
    case measures::Kind::FP: return "fp";
  }
  return "?";
}

measures::Aggregation parse_agg(const std::string& s) {
  if (s == "mean") return measures::Aggregation::MEAN_OVER_GRID;
  if (s == "max") return measures::Aggregation::MAX_OVER_GRID;
  throw std::invalid_argument("unknown aggregation: " + s);
}

measures::MfpNorm parse_norm(const std::string& s) {
  if (s == "printed") return measures::MfpNorm::PRINTED;
  if (s == "cosine") return measures::MfpNorm::COSINE;
  throw std::invalid_argument("unknown mfp_norm: " + s);
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (j.contains(key)) return j.at(key).get<T>();
  return fallback;
}

}  // namespace

JobConfig parse_job_config(const std::string& json_text) {
  json j = json::parse(json_text);
  JobConfig job;
  job.schema_version = j.at("schema_version").get<int>();
  if (job.schema_version != 1)
    throw std::invalid_argument("unsupported schema_version");

  const json& r = j.at("radar");
  RadarConfig& cfg = job.radar;
  cfg.fc = get_or(r, "fc", cfg.fc);
  cfg.B = get_or(r, "B", cfg.B);
  cfg.Tc = get_or(r, "Tc", cfg.Tc);
  cfg.Tp = get_or(r, "Tp", cfg.Tp);
  cfg.t_sh = get_or(r, "t_sh", cfg.t_sh);
  cfg.Ts = get_or(r, "Ts", cfg.Ts);
  cfg.N = get_or(r, "N", cfg.N);
  cfg.I = r.at("I").get<int>();
  cfg.R = r.at("R").get<int>();
  cfg.P = r.at("P").get<int>();
  cfg.d = get_or(r, "d", cfg.d);
  cfg.sigma_e = get_or(r, "sigma_e", cfg.sigma_e);
  if (r.contains("alpha")) {
    const json& a = r.at("alpha");
    for (int q = 0; q < 2; ++q)
      cfg.alpha[q] = {a.at(q).at(0).get<double>(), a.at(q).at(1).get<double>()};
  }
  if (r.contains("gamma")) {
    const json& g = r.at("gamma");
    for (int k = 0; k < 4; ++k) cfg.gamma[k] = g.at(k).get<double>();
  }
  cfg.finalize();

  const json& g = j.at("grid");
  job.grid.du_min = g.at("du_min").get<double>();
  job.grid.du_max = g.at("du_max").get<double>();
  job.grid.nu = g.at("nu").get<int>();
  job.grid.dv_min = g.at("dv_min").get<double>();
  job.grid.dv_max = g.at("dv_max").get<double>();
  job.grid.nv = g.at("nv").get<int>();
  job.grid.exclusion_radius = get_or(g, "exclusion_radius", 0.0);

  if (j.contains("criterion")) {
    const json& c = j.at("criterion");
    job.criterion.kind = parse_kind(get_or<std::string>(c, "kind", "a_opt"));
    job.criterion.aggregation =
        parse_agg(get_or<std::string>(c, "aggregation", "mean"));
    job.criterion.epsilon = get_or(c, "epsilon", 0.0);
    job.criterion.mfp_norm =
        parse_norm(get_or<std::string>(c, "mfp_norm", "printed"));
    if (c.contains("param_mask"))
      job.criterion.param_mask = c.at("param_mask").get<std::vector<int>>();
  }

  const json& b = j.at("budgets");
  job.budgets.K_P = b.at("K_P").get<int>();
  job.budgets.K_R = b.at("K_R").get<int>();
  job.budgets.K_I = get_or(b, "K_I", 0);

  job.solver = get_or<std::string>(j, "solver", "greedy_mfp");
  job.seed = get_or<uint64_t>(j, "seed", 0);
  job.output_dir = get_or<std::string>(j, "output_dir", ".");
  if (j.contains("fixed_receivers"))
    job.fixed_receivers = j.at("fixed_receivers").get<std::vector<uint8_t>>();

  if (j.contains("mle")) {
    const json& m = j.at("mle");
    job.mle.enabled = true;
    job.mle.trials = get_or(m, "trials", 100);
    const json& t = m.at("truth");
    job.mle.truth.u = t.at("u").get<double>();
    job.mle.truth.v = t.at("v").get<double>();
    job.mle.truth.Rq = get_or(t, "Rq", 0.0);
    job.mle.u_min = get_or(m, "u_min", -1.0);
    job.mle.u_max = get_or(m, "u_max", 1.0);
    job.mle.nu = get_or(m, "nu", 101);
    job.mle.v_min = get_or(m, "v_min", 0.0);
    job.mle.v_max = get_or(m, "v_max", 0.0);
    job.mle.nv = get_or(m, "nv", 1);
  }
  return job;
}

JobConfig load_job_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_job_config(ss.str());
}

std::string criterion_name(const measures::Criterion& crit) {
  std::string name = kind_name(crit.kind);
  name += crit.aggregation == measures::Aggregation::MEAN_OVER_GRID ? "/mean"
                                                                    : "/max";
  if (crit.kind == measures::Kind::MFP)
    name += crit.mfp_norm == measures::MfpNorm::PRINTED ? "/printed" : "/cosine";
  name += "/mask=";
  for (size_t k = 0; k < crit.param_mask.size(); ++k)
    name += (k ? "," : "") + std::to_string(crit.param_mask[k]);
  return name;
}

namespace {

std::string canonical_config(const JobConfig& job) {
  json j;
  const RadarConfig& c = job.radar;
  j["radar"] = {{"fc", c.fc},   {"B", c.B},     {"Tc", c.Tc},
                {"Tp", c.Tp},   {"t_sh", c.t_sh}, {"Ts", c.Ts},
                {"N", c.N},     {"I", c.I},     {"R", c.R},
                {"P", c.P},     {"d", c.d},     {"sigma_e", c.sigma_e},
                {"alpha",
                 {{c.alpha[0].real(), c.alpha[0].imag()},
                  {c.alpha[1].real(), c.alpha[1].imag()}}},
                {"gamma", c.gamma}};
  j["grid"] = {{"du_min", job.grid.du_min}, {"du_max", job.grid.du_max},
               {"nu", job.grid.nu},         {"dv_min", job.grid.dv_min},
               {"dv_max", job.grid.dv_max}, {"nv", job.grid.nv},
               {"exclusion_radius", job.grid.exclusion_radius}};
  j["criterion"] = criterion_name(job.criterion);
  j["epsilon"] = job.criterion.epsilon;
  j["budgets"] = {job.budgets.K_P, job.budgets.K_R, job.budgets.K_I};
  j["solver"] = job.solver;
  j["seed"] = job.seed;
  j["fixed_receivers"] = job.fixed_receivers;
  return j.dump();
}

}  // namespace

uint64_t config_hash(const JobConfig& job) {
  const std::string s = canonical_config(job);
  uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string selection_to_json(const SelectionRecord& rec) {
  const Selection& s = rec.selection;
  json a = json::array();
  for (int i = 0; i < s.I; ++i) {
    json row = json::array();
    for (int p = 0; p < s.P; ++p) row.push_back(static_cast<int>(s.at(i, p)));
    a.push_back(row);
  }
  json b = json::array();
  for (int r = 0; r < s.R; ++r) b.push_back(static_cast<int>(s.b[r]));
  json j;
  j["A"] = a;
  j["b"] = b;
  j["K_P"] = s.K_P;
  j["K_R"] = s.K_R;
  j["objective"] = rec.objective;
  j["criterion"] = rec.criterion;
  j["solver"] = rec.solver;
  j["seed"] = rec.seed;
  j["stats"] = json::parse(rec.stats_json);
  return j.dump(2) + "\n";
}

SelectionRecord selection_from_json(const std::string& json_text) {
  json j = json::parse(json_text);
  SelectionRecord rec;
  const json& a = j.at("A");
  const json& b = j.at("b");
  const int I = static_cast<int>(a.size());
  const int P = I > 0 ? static_cast<int>(a.at(0).size()) : 0;
  const int R = static_cast<int>(b.size());
  Selection s(I, P, R);
  for (int i = 0; i < I; ++i) {
    if (static_cast<int>(a.at(i).size()) != P)
      throw std::invalid_argument("selection: ragged A matrix");
    for (int p = 0; p < P; ++p) s.at(i, p) = a.at(i).at(p).get<int>() ? 1 : 0;
  }
  for (int r = 0; r < R; ++r) s.b[r] = b.at(r).get<int>() ? 1 : 0;
  s.K_P = j.at("K_P").get<int>();
  s.K_R = j.at("K_R").get<int>();
  rec.selection = s;
  rec.objective = j.at("objective").get<double>();
  rec.criterion = j.at("criterion").get<std::string>();
  rec.solver = j.at("solver").get<std::string>();
  rec.seed = j.at("seed").get<uint64_t>();
  rec.stats_json = j.at("stats").dump();
  return rec;
}

SelectionRecord load_selection(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open selection: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return selection_from_json(ss.str());
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write: " + tmp.string());
    out << content;
  }
  fs::rename(tmp, target);
}

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  for (size_t k = 0; k < header.size(); ++k) os << (k ? "," : "") << header[k];
  os << '\n';
  char buf[40];
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("to_csv: row width mismatch");
    for (size_t k = 0; k < row.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", row[k]);
      os << (k ? "," : "") << buf;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace io
}  // namespace radar
