#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mwlan/dcf_slot_sim.hpp"
#include "mwlan/scenario.hpp"
#include "mwlan/splitter.hpp"

namespace mwlan {

enum class SweepScale { linear, log };

struct LambdaSweep {
  double min = 1e-4;  // files/s
  double max = 10.0;
  int points = 41;
  SweepScale scale = SweepScale::log;

  /// Grid values in increasing order; a single point yields {min}.
  std::vector<double> values() const;
};

struct SimSettings {
  std::int64_t slot_events = 1'000'000;
  int batches = 20;
  double warmup_fraction = 0.05;
  BackoffCountdown countdown = BackoffCountdown::every_slot;
  std::vector<int> dcf_stations{1, 2, 5, 10, 20};
  double horizon_transfers = 1e5;  // expected completed files per flow run
};

struct SplitSettings {
  double file_size = 128e6;  // bits
  std::vector<LinkSpec> links{{2e6, 0.0}, {12e6, 0.0}};
  int chunks = 0;        // 0: not requested
  bool optimal = false;  // restrict the report to 50/50 vs optimal
};

struct ExperimentConfig {
  ScenarioConfig scenario;
  LambdaSweep sweep;
  std::vector<double> file_sizes{1e6, 1e7, 1e8};  // bits
  std::vector<int> cw_values{8, 32, 128, 512};
  std::string figure;  // fig6, fig7, fig8, split, sim-dcf, sim-flow or empty
  std::string output_path;
  std::vector<std::uint64_t> seeds;
  SimSettings sim;
  SplitSettings split;

  /// Throws ParseError naming the offending key.
  void validate() const;
};

/// Parses the plain-text key/value configuration format:
///
///   # comment
///   n_stations = 10
///   cw_min = 32          # top-level DCF keys apply to both APs
///   [ap2]
///   slot_time = 20e-6    # per-AP override
///   [sweep]
///   file_sizes = 1e6, 1e7
///
/// Sections: (top level), ap1, ap2, sweep, sim, split. Each key may be
/// assigned once per section; omitted keys keep their defaults. Unknown
/// keys, malformed lines and out-of-range values throw ParseError with the
/// key and line number.
ExperimentConfig parse_config(std::string_view text);

ExperimentConfig load_config(const std::string& path);

}  // namespace mwlan
