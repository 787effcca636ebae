#include "mwlan/flow_sim.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "mwlan/errors.hpp"
#include "mwlan/stats.hpp"

namespace mwlan {

namespace {

struct Batch {
  double throughput_area = 0.0;  // integral of S_state dt
  double delay_sum = 0.0;
  std::int64_t completions = 0;
};

}  // namespace

FlowMetrics simulate_flows(const ScenarioConfig& cfg, const FlowSimOptions& options) {
  cfg.validate();
  if (!(options.horizon > 0.0)) throw DomainError("horizon must be > 0");
  if (options.batches < 1) throw DomainError("batches must be >= 1");

  const int n = cfg.n_stations;
  const int m = cfg.interfaces_per_station;
  const double lambda = cfg.arrival_rate;

  std::vector<double> s(n + 1);
  std::vector<double> departure(n + 1, 0.0);  // i * mu_i
  for (int i = 0; i <= n; ++i) {
    s[i] = station_throughput(i, m, cfg);
    if (i > 0) departure[i] = i * s[i] / cfg.mean_file_size;
  }

  std::mt19937_64 rng(options.seed);
  std::exponential_distribution<double> unit_exp(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const double batch_len = options.horizon / options.batches;
  std::vector<Batch> batches(options.batches);
  std::vector<double> occupancy(n + 1, 0.0);
  std::vector<double> started;  // arrival times of active files
  started.reserve(n);

  double delay_sum = 0.0;
  std::int64_t completions = 0;
  double t = 0.0;
  int state = 0;
  int batch = 0;

  // Credits [t, t_end) in the current state to occupancy and batches.
  auto advance = [&](double t_end) {
    while (t < t_end) {
      const double edge = batch + 1 == options.batches ? options.horizon : (batch + 1) * batch_len;
      const double upto = std::min(t_end, edge);
      occupancy[state] += upto - t;
      batches[batch].throughput_area += (upto - t) * s[state];
      t = upto;
      if (t >= edge && batch + 1 < options.batches) ++batch;
      if (t >= options.horizon) break;
    }
  };

  while (t < options.horizon) {
    const double up = (n - state) * lambda;
    const double down = departure[state];
    const double total = up + down;
    if (total <= 0.0) {
      advance(options.horizon);
      break;
    }
    const double next = t + unit_exp(rng) / total;
    if (next >= options.horizon) {
      advance(options.horizon);
      break;
    }
    advance(next);
    if (unit(rng) * total < up) {
      started.push_back(t);
      ++state;
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, started.size() - 1);
      const std::size_t k = pick(rng);
      const double delay = t - started[k];
      started[k] = started.back();
      started.pop_back();
      --state;
      delay_sum += delay;
      ++completions;
      batches[batch].delay_sum += delay;
      ++batches[batch].completions;
    }
  }

  FlowMetrics out;
  out.horizon = options.horizon;
  out.completions = completions;
  out.empirical_pi.resize(n + 1);
  double es = 0.0;
  double active = 0.0;
  for (int i = 0; i <= n; ++i) {
    out.empirical_pi[i] = occupancy[i] / options.horizon;
    es += out.empirical_pi[i] * s[i];
    active += out.empirical_pi[i] * i;
  }
  out.empirical_E_S = es;
  out.mean_active = active;
  out.empirical_E_D =
      completions > 0 ? delay_sum / completions : std::numeric_limits<double>::quiet_NaN();

  std::vector<double> es_batches;
  std::vector<double> ed_batches;
  for (const Batch& b : batches) {
    es_batches.push_back(b.throughput_area / batch_len);
    if (b.completions > 0) ed_batches.push_back(b.delay_sum / b.completions);
  }
  out.ci95_E_S = mean_interval(es_batches).half_width;
  out.ci95_E_D = mean_interval(ed_batches).half_width;
  return out;
}

}  // namespace mwlan
