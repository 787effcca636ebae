#include "mwlan/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fmt/format.h>
#include <ostream>
#include <sstream>
#include <thread>

#include "mwlan/dcf_model.hpp"
#include "mwlan/dcf_slot_sim.hpp"
#include "mwlan/errors.hpp"
#include "mwlan/flow_sim.hpp"
#include "mwlan/markov_model.hpp"
#include "mwlan/stats.hpp"

namespace mwlan {

namespace {

// Runs task(k) for k in [0, count) on a small worker pool. Callers write
// into slot k, so output order never depends on scheduling.
template <typename Task>
void parallel_for(std::size_t count, Task task) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) task(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < count; k = next++) {
          try {
            task(k);
          } catch (...) {
            errors[k] = std::current_exception();
          }
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string format_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, double>) {
          if (std::isnan(v)) return "nan";
          if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
          return fmt::format("{}", v);
        } else {
          return fmt::format("{}", v);
        }
      },
      cell);
}

ScenarioConfig with_cw(ScenarioConfig sc, int cw) {
  sc.ap1.cw_min = cw;
  sc.ap2.cw_min = cw;
  return sc;
}

std::vector<std::uint64_t> seeds_of(const ExperimentConfig& cfg) {
  if (!cfg.seeds.empty()) return cfg.seeds;
  return {cfg.scenario.rng_seed};
}

struct FlowEstimate {
  MeanInterval es;
  MeanInterval ed;
  double pi0 = 0.0;
  double mean_active = 0.0;
  std::vector<double> pi;
  std::int64_t completions = 0;
  double horizon = 0.0;
};

FlowEstimate estimate_flows(const ScenarioConfig& sc, const ExperimentConfig& cfg,
                            const std::vector<std::uint64_t>& seeds) {
  FlowEstimate est;
  est.horizon = flow_horizon(sc, cfg.sim.horizon_transfers);
  std::vector<double> es;
  std::vector<double> ed;
  est.pi.assign(sc.n_stations + 1, 0.0);
  FlowMetrics last;
  for (std::uint64_t seed : seeds) {
    FlowSimOptions opt;
    opt.horizon = est.horizon;
    opt.seed = seed;
    opt.batches = cfg.sim.batches;
    last = simulate_flows(sc, opt);
    es.push_back(last.empirical_E_S);
    if (last.completions > 0) ed.push_back(last.empirical_E_D);
    est.completions += last.completions;
    est.mean_active += last.mean_active / seeds.size();
    for (std::size_t i = 0; i < est.pi.size(); ++i)
      est.pi[i] += last.empirical_pi[i] / seeds.size();
  }
  est.es = mean_interval(es);
  est.ed = mean_interval(ed);
  if (ed.empty()) est.ed.mean = std::nan("");
  if (seeds.size() == 1) {
    est.es.half_width = last.ci95_E_S;
    est.ed.half_width = last.ci95_E_D;
  }
  est.pi0 = est.pi[0];
  return est;
}

}  // namespace

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw DomainError("no column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

double Table::number(std::size_t row, const std::string& name) const {
  const Cell& c = rows.at(row).at(column(name));
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  return std::nan("");
}

void Table::write_csv(std::ostream& out) const {
  for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_cell(row[k]);
    out << '\n';
  }
}

std::string Table::to_csv() const {
  std::ostringstream out;
  write_csv(out);
  return out.str();
}

double flow_horizon(const ScenarioConfig& scenario, double transfers) {
  if (!(scenario.arrival_rate > 0.0))
    return transfers * scenario.mean_file_size /
           station_throughput(1, scenario.interfaces_per_station, scenario);
  const BirthDeathChain chain = build_chain(scenario);
  const EquilibriumDistribution dist = equilibrium(chain);
  return std::max(transfers / dist.effective_arrival_rate(),
                  transfers * expected_transfer_time(dist, scenario));
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw DomainError("distribution sizes differ");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return 0.5 * sum;
}

Table run_bianchi(const ExperimentConfig& cfg) {
  Table t;
  t.header = {"cw_min", "n", "tau", "p", "p_tr", "p_s", "aggregate_bps", "per_station_bps"};
  for (int cw : cfg.cw_values) {
    DcfParams params = cfg.scenario.ap1;
    params.cw_min = cw;
    for (int n = 1; n <= cfg.scenario.n_stations; ++n) {
      const BianchiSolution s = solve_bianchi(n, params);
      t.rows.push_back({std::int64_t{cw}, std::int64_t{n}, s.tau, s.p, s.p_tr, s.p_s,
                        s.aggregate_throughput, s.per_station_throughput});
    }
  }
  return t;
}

Table run_fig6(const ExperimentConfig& cfg) {
  Table t;
  t.header = {"cw_min", "i", "M", "throughput_bps"};
  for (int cw : cfg.cw_values) {
    const ScenarioConfig sc = with_cw(cfg.scenario, cw);
    for (int i = 1; i <= sc.n_stations; ++i)
      for (int m = 1; m <= 2; ++m)
        t.rows.push_back({std::int64_t{cw}, std::int64_t{i}, std::int64_t{m},
                          station_throughput(i, m, sc)});
  }
  return t;
}

Table run_fig7_fig8(const ExperimentConfig& cfg) {
  struct Point {
    double lambda;
    int m;
    double f;
  };
  std::vector<Point> grid;
  for (double f : cfg.file_sizes)
    for (int m = 1; m <= 2; ++m)
      for (double lambda : cfg.sweep.values()) grid.push_back({lambda, m, f});

  const bool simulate = !cfg.seeds.empty();
  Table t;
  t.header = {"lambda", "M", "F", "E_S_bps", "E_D_s", "pi_0", "mean_active"};
  if (simulate)
    t.header.insert(t.header.end(), {"sim_E_S_bps", "sim_E_S_ci95", "sim_E_D_s", "sim_E_D_ci95"});
  t.rows.resize(grid.size());

  parallel_for(grid.size(), [&](std::size_t k) {
    ScenarioConfig sc = cfg.scenario;
    sc.arrival_rate = grid[k].lambda;
    sc.interfaces_per_station = grid[k].m;
    sc.mean_file_size = grid[k].f;
    const ModelPoint mp = analyze(sc);
    std::vector<Cell> row{grid[k].lambda, std::int64_t{grid[k].m}, grid[k].f,
                          mp.per_user_throughput};
    if (std::isnan(mp.transfer_time)) {
      row.emplace_back(std::string("undefined"));
    } else {
      row.emplace_back(mp.transfer_time);
    }
    row.insert(row.end(), {mp.pi0, mp.mean_active});
    if (simulate) {
      const FlowEstimate est = estimate_flows(sc, cfg, cfg.seeds);
      row.insert(row.end(), {est.es.mean, est.es.half_width, est.ed.mean, est.ed.half_width});
    }
    t.rows[k] = std::move(row);
  });
  return t;
}

Table run_sim_dcf(const ExperimentConfig& cfg) {
  struct Point {
    int n;
    int cw;
    std::uint64_t seed;
  };
  std::vector<Point> grid;
  for (int cw : cfg.cw_values)
    for (int n : cfg.sim.dcf_stations)
      for (std::uint64_t seed : seeds_of(cfg)) grid.push_back({n, cw, seed});

  Table t;
  t.header = {"n",
              "cw_min",
              "seed",
              "model_tau",
              "model_p",
              "model_per_station_bps",
              "sim_per_station_bps",
              "sim_per_station_ci95",
              "sim_collision_prob",
              "sim_collision_prob_ci95",
              "rel_error",
              "slot_events"};
  t.rows.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) {
    DcfParams params = cfg.scenario.ap1;
    params.cw_min = grid[k].cw;
    const BianchiSolution model = solve_bianchi(grid[k].n, params);
    SlotSimOptions opt;
    opt.slot_events = cfg.sim.slot_events;
    opt.batches = cfg.sim.batches;
    opt.warmup_fraction = cfg.sim.warmup_fraction;
    opt.countdown = cfg.sim.countdown;
    opt.seed = grid[k].seed;
    const SlotSimResult r = simulate_dcf(grid[k].n, params, opt);
    t.rows[k] = {std::int64_t{grid[k].n},
                 std::int64_t{grid[k].cw},
                 static_cast<std::int64_t>(grid[k].seed),
                 model.tau,
                 model.p,
                 model.per_station_throughput,
                 r.per_station_throughput,
                 r.ci95_throughput / grid[k].n,
                 r.measured_collision_prob,
                 r.ci95_collision_prob,
                 r.per_station_throughput / model.per_station_throughput - 1.0,
                 r.n_slots_simulated};
  });
  return t;
}

Table run_sim_flow(const ExperimentConfig& cfg) {
  struct Point {
    double lambda;
    int m;
    double f;
  };
  std::vector<Point> grid;
  for (double f : cfg.file_sizes)
    for (int m = 1; m <= 2; ++m)
      for (double lambda : cfg.sweep.values()) grid.push_back({lambda, m, f});
  const std::vector<std::uint64_t> seeds = seeds_of(cfg);

  Table t;
  t.header = {"lambda",      "M",           "F",           "E_S_bps",         "E_D_s",
              "pi_0",        "mean_active", "sim_E_S_bps", "sim_E_S_ci95",    "sim_E_D_s",
              "sim_E_D_ci95", "sim_pi_0",   "sim_mean_active", "tv_distance", "completions",
              "horizon_s",   "seeds"};
  t.rows.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) {
    ScenarioConfig sc = cfg.scenario;
    sc.arrival_rate = grid[k].lambda;
    sc.interfaces_per_station = grid[k].m;
    sc.mean_file_size = grid[k].f;
    const EquilibriumDistribution dist = equilibrium(build_chain(sc));
    const ModelPoint mp = analyze(sc);
    const FlowEstimate est = estimate_flows(sc, cfg, seeds);
    std::vector<Cell> row{grid[k].lambda, std::int64_t{grid[k].m}, grid[k].f,
                          mp.per_user_throughput};
    if (std::isnan(mp.transfer_time)) {
      row.emplace_back(std::string("undefined"));
    } else {
      row.emplace_back(mp.transfer_time);
    }
    row.insert(row.end(),
               {mp.pi0, mp.mean_active, est.es.mean, est.es.half_width, est.ed.mean,
                est.ed.half_width, est.pi0, est.mean_active, total_variation(est.pi, dist.pi),
                est.completions, est.horizon, static_cast<std::int64_t>(seeds.size())});
    t.rows[k] = std::move(row);
  });
  return t;
}

Table run_split(const ExperimentConfig& cfg) {
  const auto& links = cfg.split.links;
  const double size = cfg.split.file_size;
  const SplitPlan even = even_plan(size, links);

  std::vector<SplitPlan> plans{even};
  const bool chunked_only = cfg.split.chunks > 0 && !cfg.split.optimal;
  const bool optimal_only = cfg.split.optimal && cfg.split.chunks == 0;
  if (!optimal_only && links.size() == 2)
    plans.push_back(chunk_plan(size, cfg.split.chunks > 0 ? cfg.split.chunks : 2, links));
  if (!chunked_only) plans.push_back(optimal_plan(size, links));

  Table t;
  t.header = {"plan", "chunks"};
  for (std::size_t j = 0; j < links.size(); ++j) t.header.push_back(fmt::format("fraction_{}", j + 1));
  for (std::size_t j = 0; j < links.size(); ++j) t.header.push_back(fmt::format("time_{}_s", j + 1));
  t.header.insert(t.header.end(), {"makespan_s", "reduction_vs_even", "speedup_vs_single"});

  for (const SplitPlan& plan : plans) {
    std::vector<Cell> row{to_string(plan.origin), std::int64_t{plan.chunks}};
    for (double f : plan.fractions) row.emplace_back(f);
    for (double s : plan.per_link_time) row.emplace_back(s);
    row.emplace_back(plan.makespan);
    row.emplace_back(reduction(plan, even));
    double speedup = std::nan("");
    try {
      speedup = speedup_vs_single(size, links, plan);
    } catch (const DomainError&) {
      // dead baseline link: leave undefined
    }
    row.emplace_back(speedup);
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace mwlan
