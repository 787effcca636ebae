#include "mwlan/scenario.hpp"

#include <string>

#include "mwlan/errors.hpp"

namespace mwlan {

void ScenarioConfig::validate() const {
  if (n_stations < 1) throw DomainError("n_stations must be >= 1");
  if (interfaces_per_station != 1 && interfaces_per_station != 2)
    throw DomainError("interfaces_per_station must be 1 or 2, got " +
                      std::to_string(interfaces_per_station));
  if (!(arrival_rate >= 0.0)) throw DomainError("arrival_rate must be >= 0");
  if (!(mean_file_size > 0.0)) throw DomainError("mean_file_size must be > 0");
  ap1.validate();
  ap2.validate();
}

double station_throughput(int i, int interfaces, const ScenarioConfig& cfg) {
  if (i < 0 || i > cfg.n_stations)
    throw DomainError("active station count " + std::to_string(i) + " outside [0, " +
                      std::to_string(cfg.n_stations) + "]");
  if (interfaces != 1 && interfaces != 2)
    throw DomainError("interfaces must be 1 or 2, got " + std::to_string(interfaces));

  if (i == 0) {
    if (cfg.idle_throughput == IdleThroughput::zero) return 0.0;
    i = 1;
  }
  if (interfaces == 1) return 0.5 * (b_ap((i + 1) / 2, cfg.ap1) + b_ap(i / 2, cfg.ap2));
  return b_ap(i, cfg.ap1) + b_ap(i, cfg.ap2);
}

double service_rate(int i, int interfaces, const ScenarioConfig& cfg) {
  if (i < 1) throw DomainError("no service in the empty state");
  return station_throughput(i, interfaces, cfg) / cfg.mean_file_size;
}

StationSplit assign_stations(int n, std::mt19937_64& rng) {
  if (n < 0) throw DomainError("negative station count");
  StationSplit split{n / 2, n / 2};
  if (n % 2 == 1) {
    std::bernoulli_distribution coin(0.5);
    (coin(rng) ? split.ap1 : split.ap2) += 1;
  }
  return split;
}

}  // namespace mwlan
