#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "mwlan/config.hpp"

namespace mwlan {

using Cell = std::variant<std::int64_t, double, std::string>;

/// A CSV table: header row plus rows of cells, written with '.' decimals,
/// shortest round-trip formatting for doubles and '\n' line ends.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
  void write_csv(std::ostream& out) const;
  std::string to_csv() const;
};

// Column layouts (stable):
//   bianchi : cw_min,n,tau,p,p_tr,p_s,aggregate_bps,per_station_bps
//   fig6    : cw_min,i,M,throughput_bps
//   fig7/8  : lambda,M,F,E_S_bps,E_D_s,pi_0,mean_active
//             [,sim_E_S_bps,sim_E_S_ci95,sim_E_D_s,sim_E_D_ci95]
//   sim-dcf : n,cw_min,seed,model_tau,model_p,model_per_station_bps,
//             sim_per_station_bps,sim_per_station_ci95,sim_collision_prob,
//             sim_collision_prob_ci95,rel_error,slot_events
//   sim-flow: lambda,M,F,E_S_bps,E_D_s,pi_0,mean_active,sim_E_S_bps,
//             sim_E_S_ci95,sim_E_D_s,sim_E_D_ci95,sim_pi_0,sim_mean_active,
//             tv_distance,completions,horizon_s,seeds
//   split   : plan,chunks,fraction_<j>...,time_<j>_s...,makespan_s,
//             reduction_vs_even,speedup_vs_single

Table run_bianchi(const ExperimentConfig& cfg);

/// Per-station throughput S_i(M) for every cw in cfg.cw_values (applied to
/// both APs), i = 1..N and M in {1, 2}.
Table run_fig6(const ExperimentConfig& cfg);

/// Analytical E[S], E[D] over the lambda grid for M in {1, 2} and each file
/// size. With cfg.seeds non-empty, flow-simulation columns are appended.
/// E_D_s is the string "undefined" when lambda = 0.
Table run_fig7_fig8(const ExperimentConfig& cfg);

Table run_sim_dcf(const ExperimentConfig& cfg);
Table run_sim_flow(const ExperimentConfig& cfg);
Table run_split(const ExperimentConfig& cfg);

/// Flow-simulation horizon covering cfg.sim.horizon_transfers expected
/// transfers and at least that many mean transfer times.
double flow_horizon(const ScenarioConfig& scenario, double transfers);

/// Total-variation distance between two distributions of equal length.
double total_variation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace mwlan
