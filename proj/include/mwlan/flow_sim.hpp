#pragma once

#include <cstdint>
#include <vector>

#include "mwlan/scenario.hpp"

namespace mwlan {

struct FlowMetrics {
  double horizon = 0.0;           // s
  std::int64_t completions = 0;
  std::vector<double> empirical_pi;  // time fraction spent in each state
  double empirical_E_S = 0.0;     // time average of S_i(M), bits/s
  double empirical_E_D = 0.0;     // mean per-file transfer time, s
  double mean_active = 0.0;       // time average of the state
  double ci95_E_S = 0.0;
  double ci95_E_D = 0.0;
};

struct FlowSimOptions {
  double horizon = 1e5;  // s
  std::uint64_t seed = 1;
  int batches = 20;
};

/// Continuous-time simulation of the active-station process.
///
/// In state i each idle station activates at rate lambda and each active
/// station completes at rate mu_i(M) = S_i(M) / F. The next event is drawn
/// from the exponential race between (N - i) lambda and i mu_i; a completion
/// retires an active file chosen uniformly and records its transfer time.
/// The run starts empty; confidence intervals come from time batches.
FlowMetrics simulate_flows(const ScenarioConfig& cfg, const FlowSimOptions& options);

}  // namespace mwlan
