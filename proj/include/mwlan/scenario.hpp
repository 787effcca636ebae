#pragma once

#include <cstdint>
#include <random>

#include "mwlan/dcf_model.hpp"

namespace mwlan {

/// How S_0 (no active station) is defined for metrics summed from state 0.
enum class IdleThroughput {
  first_active,  // S_0 := S_1, what an arriving station would receive
  zero,          // S_0 := 0
};

/// Two APs on orthogonal channels, N stations with M interfaces each.
/// M = 1 is the single-interface scenario (stations split across the APs),
/// M = 2 has every station associated to both APs at once.
struct ScenarioConfig {
  int n_stations = 10;
  int interfaces_per_station = 1;
  double arrival_rate = 0.1;     // files/s per idle station
  double mean_file_size = 1e8;   // bits
  DcfParams ap1;
  DcfParams ap2;
  std::uint64_t rng_seed = 1;
  IdleThroughput idle_throughput = IdleThroughput::first_active;

  void validate() const;
};

/// S_i(M): mean throughput of one station when i stations are active.
///
///   M = 1: (B_AP1(ceil(i/2)) + B_AP2(floor(i/2))) / 2
///   M = 2:  B_AP1(i) + B_AP2(i)
///
/// i = 0 follows cfg.idle_throughput. Throws DomainError for i outside
/// [0, N] or M not in {1, 2}.
double station_throughput(int i, int interfaces, const ScenarioConfig& cfg);

/// mu_i(M) = S_i(M) / F, files/s. Requires 1 <= i <= N.
double service_rate(int i, int interfaces, const ScenarioConfig& cfg);

struct StationSplit {
  int ap1 = 0;
  int ap2 = 0;
};

/// Spreads N single-interface stations evenly over the two APs; for odd N
/// the AP of the last station is drawn uniformly from rng.
StationSplit assign_stations(int n, std::mt19937_64& rng);

}  // namespace mwlan
