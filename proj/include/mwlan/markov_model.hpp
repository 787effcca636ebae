#pragma once

#include <vector>

#include "mwlan/scenario.hpp"

namespace mwlan {

/// Birth-death chain over the number of active stations 0..N.
///
/// Both rate vectors are indexed by state and have N + 1 entries:
/// forward_rates[i] = (N - i) lambda (so forward_rates[N] = 0) and
/// backward_rates[i] = i mu_i(M) (so backward_rates[0] = 0).
struct BirthDeathChain {
  int n_stations = 0;
  double arrival_rate = 0.0;
  std::vector<double> forward_rates;
  std::vector<double> backward_rates;

  int n_states() const { return n_stations + 1; }
};

struct EquilibriumDistribution {
  std::vector<double> pi;
  double arrival_rate = 0.0;

  int n_stations() const { return static_cast<int>(pi.size()) - 1; }
  /// sum_i i pi_i
  double mean_active() const;
  /// sum_j (N - j) lambda pi_j, the long-run file arrival rate.
  double effective_arrival_rate() const;
};

BirthDeathChain build_chain(const ScenarioConfig& cfg);

/// Product-form solution of the chain. The running products are kept in
/// log space so large N or extreme lambda/mu ratios neither overflow nor
/// underflow. Throws DomainError when a backward rate is zero while
/// arrivals are possible (absorbing saturation).
EquilibriumDistribution equilibrium(const BirthDeathChain& chain);

enum class ThroughputAveraging {
  all_states,       // sum_{i>=0} pi_i S_i
  given_busy,       // sum_{i>=1} pi_i S_i / (1 - pi_0)
};

/// E[S] = sum_i pi_i S_i(M), with S_0 per cfg.idle_throughput.
double expected_per_user_throughput(const EquilibriumDistribution& dist,
                                    const ScenarioConfig& cfg,
                                    ThroughputAveraging averaging = ThroughputAveraging::all_states);

/// E[D] = sum_i i pi_i / sum_j (N - j) lambda pi_j (Little's law).
/// Throws DomainError for lambda = 0.
double expected_transfer_time(const EquilibriumDistribution& dist, const ScenarioConfig& cfg);

/// Largest |pi_{i-1} f_{i-1} - pi_i b_i| over the chain's cuts.
double detailed_balance_residual(const BirthDeathChain& chain, const std::vector<double>& pi);

/// Largest per-state global balance residual.
double global_balance_residual(const BirthDeathChain& chain, const std::vector<double>& pi);

/// Analytical summary of one scenario point.
struct ModelPoint {
  double per_user_throughput = 0.0;  // E[S], bits/s
  double transfer_time = 0.0;        // E[D], s; NaN when lambda = 0
  double pi0 = 0.0;
  double mean_active = 0.0;
};

ModelPoint analyze(const ScenarioConfig& cfg);

}  // namespace mwlan
