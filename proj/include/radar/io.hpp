#ifndef RADAR_IO_HPP_
#define RADAR_IO_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "radar/config.hpp"
#include "radar/grid.hpp"
#include "radar/measures.hpp"
#include "radar/selection.hpp"

namespace radar {
namespace io {

struct GridSpec {
  double du_min = 0.0, du_max = 0.0;
  int nu = 1;
  double dv_min = 0.0, dv_max = 0.0;
  int nv = 1;
  double exclusion_radius = 0.0;

  DeltaGrid build() const;
};

struct Budgets {
  int K_P = 0;
  int K_R = 0;
  int K_I = 0;  // transmitter-selection variant; 0 means unused
};

struct MleSpec {
  bool enabled = false;
  int trials = 100;
  TargetParams truth;
  double u_min = -1.0, u_max = 1.0;
  int nu = 101;
  double v_min = 0.0, v_max = 0.0;
  int nv = 1;
};

/// One structured document drives one job. schema_version must be 1.
struct JobConfig {
  int schema_version = 1;
  RadarConfig radar;
  GridSpec grid;
  measures::Criterion criterion;
  Budgets budgets;
  std::string solver = "greedy_mfp";
  uint64_t seed = 0;
  std::string output_dir = ".";
  std::vector<uint8_t> fixed_receivers;  // greedy_logdet; empty = all
  MleSpec mle;
};

JobConfig parse_job_config(const std::string& json_text);
JobConfig load_job_config(const std::string& path);

/// FNV-1a over a canonical serialization of the config; embedded in every
/// artifact for exact reproduction.
uint64_t config_hash(const JobConfig& job);

struct SelectionRecord {
  Selection selection;
  double objective = 0.0;
  std::string criterion;
  std::string solver;
  uint64_t seed = 0;
  std::string stats_json = "{}";  // carries config_hash and solver stats
};

std::string selection_to_json(const SelectionRecord& rec);
SelectionRecord selection_from_json(const std::string& json_text);
SelectionRecord load_selection(const std::string& path);

/// Writes via a temp file in the same directory plus rename.
void atomic_write(const std::string& path, const std::string& content);

std::string criterion_name(const measures::Criterion& crit);

/// CSV with a header row; full-precision decimal floats.
std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows);

}  // namespace io
}  // namespace radar

#endif  // RADAR_IO_HPP_
