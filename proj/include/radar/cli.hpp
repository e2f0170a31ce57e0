#ifndef RADAR_CLI_HPP_
#define RADAR_CLI_HPP_

#include <string>
#include <utility>
#include <vector>

#include "radar/io.hpp"

namespace radar {
namespace cli {

/// Runs the configured solver and writes selection.json plus crlb.csv to
/// the output directory. Returns a process exit code.
int cmd_design(const io::JobConfig& job);

/// One design per (K_P, K_R) pair; writes sweep.csv. Budgets must be
/// sorted ascending and nonempty. A failing design point stops the sweep;
/// partial rows are still written and the exit code is nonzero.
int cmd_sweep(const io::JobConfig& job,
              const std::vector<std::pair<int, int>>& budgets);

/// Ambiguity and beampattern traces (plus optional Monte-Carlo MSE) for a
/// stored selection; writes af_velocity.csv, beampattern.csv, af_joint.csv
/// and mle_mse.json when requested by the config.
int cmd_evaluate(const io::JobConfig& job, const std::string& selection_path);

/// Self-contained property suite on toy instances: derivative and
/// information-matrix cross-checks, submodularity enumeration, greedy
/// bounds, relaxation sandwich. Prints one line per check; nonzero exit
/// on any failure.
int cmd_verify(uint64_t seed);

}  // namespace cli
}  // namespace radar

#endif  // RADAR_CLI_HPP_
