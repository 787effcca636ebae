#include "mwlan/markov_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mwlan/errors.hpp"

namespace mwlan {

double EquilibriumDistribution::mean_active() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i) sum += static_cast<double>(i) * pi[i];
  return sum;
}

double EquilibriumDistribution::effective_arrival_rate() const {
  const int n = n_stations();
  double sum = 0.0;
  for (int j = 0; j <= n; ++j) sum += (n - j) * arrival_rate * pi[j];
  return sum;
}

BirthDeathChain build_chain(const ScenarioConfig& cfg) {
  cfg.validate();
  const int n = cfg.n_stations;
  BirthDeathChain chain;
  chain.n_stations = n;
  chain.arrival_rate = cfg.arrival_rate;
  chain.forward_rates.resize(n + 1);
  chain.backward_rates.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    chain.forward_rates[i] = (n - i) * cfg.arrival_rate;
    chain.backward_rates[i] =
        i == 0 ? 0.0 : i * service_rate(i, cfg.interfaces_per_station, cfg);
  }
  return chain;
}

EquilibriumDistribution equilibrium(const BirthDeathChain& chain) {
  const int n = chain.n_stations;
  EquilibriumDistribution dist;
  dist.arrival_rate = chain.arrival_rate;
  dist.pi.assign(n + 1, 0.0);

  // log of prod_{j=1..i} f_{j-1} / b_j; -inf once a forward rate is zero.
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  std::vector<double> log_weight(n + 1, 0.0);
  for (int i = 1; i <= n; ++i) {
    const double f = chain.forward_rates[i - 1];
    const double b = chain.backward_rates[i];
    if (f == 0.0 || log_weight[i - 1] == kNegInf) {
      log_weight[i] = kNegInf;
      continue;
    }
    if (!(b > 0.0)) throw DomainError("absorbing saturation: zero service rate in state " +
                                      std::to_string(i));
    log_weight[i] = log_weight[i - 1] + std::log(f) - std::log(b);
  }

  const double peak = *std::max_element(log_weight.begin(), log_weight.end());
  double total = 0.0;
  for (int i = 0; i <= n; ++i) {
    dist.pi[i] = std::exp(log_weight[i] - peak);
    total += dist.pi[i];
  }
  for (double& x : dist.pi) x /= total;
  return dist;
}

double expected_per_user_throughput(const EquilibriumDistribution& dist,
                                    const ScenarioConfig& cfg, ThroughputAveraging averaging) {
  const int n = dist.n_stations();
  const int m = cfg.interfaces_per_station;
  if (averaging == ThroughputAveraging::given_busy) {
    if (dist.pi[0] >= 1.0) throw DomainError("network never busy: pi_0 = 1");
    double sum = 0.0;
    for (int i = 1; i <= n; ++i) sum += dist.pi[i] * station_throughput(i, m, cfg);
    return sum / (1.0 - dist.pi[0]);
  }
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) sum += dist.pi[i] * station_throughput(i, m, cfg);
  return sum;
}

double expected_transfer_time(const EquilibriumDistribution& dist, const ScenarioConfig& cfg) {
  if (!(cfg.arrival_rate > 0.0)) throw DomainError("transfer time undefined without arrivals");
  return dist.mean_active() / dist.effective_arrival_rate();
}

double detailed_balance_residual(const BirthDeathChain& chain, const std::vector<double>& pi) {
  double worst = 0.0;
  for (int i = 1; i <= chain.n_stations; ++i) {
    const double r = pi[i - 1] * chain.forward_rates[i - 1] - pi[i] * chain.backward_rates[i];
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

double global_balance_residual(const BirthDeathChain& chain, const std::vector<double>& pi) {
  const int n = chain.n_stations;
  double worst = 0.0;
  for (int i = 0; i <= n; ++i) {
    double r = pi[i] * (chain.forward_rates[i] + chain.backward_rates[i]);
    if (i > 0) r -= pi[i - 1] * chain.forward_rates[i - 1];
    if (i < n) r -= pi[i + 1] * chain.backward_rates[i + 1];
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

ModelPoint analyze(const ScenarioConfig& cfg) {
  const BirthDeathChain chain = build_chain(cfg);
  const EquilibriumDistribution dist = equilibrium(chain);
  ModelPoint point;
  point.per_user_throughput = expected_per_user_throughput(dist, cfg);
  point.transfer_time = cfg.arrival_rate > 0.0 ? expected_transfer_time(dist, cfg)
                                               : std::numeric_limits<double>::quiet_NaN();
  point.pi0 = dist.pi[0];
  point.mean_active = dist.mean_active();
  return point;
}

}  // namespace mwlan
