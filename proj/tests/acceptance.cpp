// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Tolerances are fixed here and not tuned per run.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "mwlan/config.hpp"
#include "mwlan/dcf_model.hpp"
#include "mwlan/dcf_slot_sim.hpp"
#include "mwlan/experiments.hpp"
#include "mwlan/flow_sim.hpp"
#include "mwlan/markov_model.hpp"
#include "mwlan/splitter.hpp"
#include "mwlan/stats.hpp"

using namespace mwlan;

namespace {

int failures = 0;

void report(const std::string& id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("[%s] %-3s %s  (%s)\n", ok ? "PASS" : "FAIL", id.c_str(), what.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

DcfParams dcf(int cw) {
  DcfParams p;
  p.cw_min = cw;
  return p;
}

ScenarioConfig scenario(int n, double lambda, int m, double f) {
  ScenarioConfig cfg;
  cfg.n_stations = n;
  cfg.arrival_rate = lambda;
  cfg.interfaces_per_station = m;
  cfg.mean_file_size = f;
  return cfg;
}

std::vector<double> direct_balance_solve(const BirthDeathChain& c) {
  const int s = c.n_states();
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(s, s);
  for (int i = 0; i < s; ++i) {
    if (i + 1 < s) q(i, i + 1) = c.forward_rates[i];
    if (i > 0) q(i, i - 1) = c.backward_rates[i];
    q(i, i) = -(c.forward_rates[i] + c.backward_rates[i]);
  }
  Eigen::MatrixXd a = q.transpose();
  a.row(s - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s);
  rhs(s - 1) = 1.0;
  const Eigen::VectorXd pi = a.fullPivLu().solve(rhs);
  return {pi.data(), pi.data() + s};
}

void criterion_1() {
  Stopwatch clock;
  double worst = 0.0;
  bool lone_exact = true;
  for (int w : {8, 32, 128, 512}) {
    const DcfParams params = dcf(w);
    for (int n = 1; n <= 200; ++n) {
      const BianchiSolution s = solve_bianchi(n, params);
      worst = std::max(worst, fixed_point_residual(n, s.p, params));
      if (n == 1) lone_exact = lone_exact && s.p == 0.0 && s.tau == 2.0 / (w + 1);
    }
  }
  const double t = clock.seconds();
  report("1", worst < 1e-10 && lone_exact && t < 1.0, "Bianchi fixed point",
         fmt::format("max residual {:.2e}, n=1 exact {}, {:.3f} s", worst, lone_exact, t));
}

void criterion_2() {
  Stopwatch clock;
  double worst_rel = 0.0;
  int p_outside = 0;
  std::string p_misses;
  int points = 0;
  for (int w : {8, 32, 128}) {
    for (int n : {1, 2, 5, 10, 20}) {
      const DcfParams params = dcf(w);
      const BianchiSolution model = solve_bianchi(n, params);
      SlotSimOptions opt;
      opt.slot_events = 1'000'000;
      opt.batches = 20;
      opt.seed = 1000 + 37 * w + n;
      const SlotSimResult r = simulate_dcf(n, params, opt);
      worst_rel = std::max(worst_rel,
                           std::abs(r.per_station_throughput / model.per_station_throughput - 1));
      const double gap = std::abs(r.measured_collision_prob - model.p);
      if (gap > r.ci95_collision_prob) {
        ++p_outside;
        p_misses += fmt::format(" W{}n{}:{:.4f}vs{:.4f}+-{:.4f}", w, n, r.measured_collision_prob,
                                model.p, r.ci95_collision_prob);
      }
      ++points;
    }
  }
  const double t = clock.seconds();
  report("2a", worst_rel < 0.03 && t < 120.0, "slot simulator throughput vs model (3%)",
         fmt::format("worst rel error {:.4f} over {} points, {:.1f} s", worst_rel, points, t));
  report("2b", p_outside == 0, "slot simulator collision prob: model p inside 95% CI",
         fmt::format("{} of {} points outside{}", p_outside, points, p_misses));
}

void criterion_3() {
  double worst_sum = 0.0;
  double worst_detailed = 0.0;
  for (int m = 1; m <= 2; ++m)
    for (int n : {1, 2, 10, 50})
      for (double lambda : {1e-4, 1e-2, 1.0, 100.0}) {
        const BirthDeathChain c = build_chain(scenario(n, lambda, m, 1e8));
        const EquilibriumDistribution d = equilibrium(c);
        double sum = 0.0;
        for (double x : d.pi) sum += x;
        worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
        worst_detailed = std::max(worst_detailed, detailed_balance_residual(c, d.pi));
      }

  double worst_two_state = 0.0;
  for (int m = 1; m <= 2; ++m)
    for (double lambda : {1e-3, 0.1, 3.0, 50.0}) {
      const ScenarioConfig cfg = scenario(1, lambda, m, 1e8);
      const double rho = lambda / service_rate(1, m, cfg);
      const double pi1 = equilibrium(build_chain(cfg)).pi[1];
      worst_two_state = std::max(worst_two_state, std::abs(pi1 - rho / (1 + rho)) / (rho / (1 + rho)));
    }

  double worst_direct = 0.0;
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> log_rate(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    BirthDeathChain c;
    c.n_stations = 2;
    c.arrival_rate = std::pow(10.0, log_rate(rng));
    c.forward_rates = {2 * c.arrival_rate, c.arrival_rate, 0.0};
    c.backward_rates = {0.0, std::pow(10.0, log_rate(rng)), 2 * std::pow(10.0, log_rate(rng))};
    const std::vector<double> expected = direct_balance_solve(c);
    const EquilibriumDistribution d = equilibrium(c);
    for (int i = 0; i < 3; ++i) worst_direct = std::max(worst_direct, std::abs(d.pi[i] - expected[i]));
  }
  for (int m = 1; m <= 2; ++m)
    for (double lambda : {1e-3, 0.5, 20.0}) {
      const BirthDeathChain c = build_chain(scenario(2, lambda, m, 1e7));
      const std::vector<double> expected = direct_balance_solve(c);
      const EquilibriumDistribution d = equilibrium(c);
      for (int i = 0; i < 3; ++i) worst_direct = std::max(worst_direct, std::abs(d.pi[i] - expected[i]));
    }

  const bool ok = worst_sum < 1e-12 && worst_detailed < 1e-10 &&
                  worst_two_state < 4 * std::numeric_limits<double>::epsilon() &&
                  worst_direct < 1e-10;
  report("3", ok, "equilibrium correctness",
         fmt::format("|sum-1| {:.1e}, detailed balance {:.1e}, N=1 rel {:.1e}, N=2 vs LU {:.1e}",
                     worst_sum, worst_detailed, worst_two_state, worst_direct));
}

void criterion_4() {
  Stopwatch clock;
  constexpr int kSeeds = 20;
  bool ok = true;
  std::string detail;
  for (int m = 1; m <= 2; ++m) {
    for (double lambda : {0.01, 0.1, 1.0}) {
      const ScenarioConfig cfg = scenario(10, lambda, m, 1e8);
      const EquilibriumDistribution d = equilibrium(build_chain(cfg));
      const double es = expected_per_user_throughput(d, cfg);
      const double ed = expected_transfer_time(d, cfg);
      const double horizon = flow_horizon(cfg, 1e5);

      std::vector<double> es_runs;
      std::vector<double> ed_runs;
      std::vector<double> pi(d.pi.size(), 0.0);
      for (int s = 0; s < kSeeds; ++s) {
        FlowSimOptions opt;
        opt.horizon = horizon;
        opt.seed = 500 + s;
        const FlowMetrics r = simulate_flows(cfg, opt);
        es_runs.push_back(r.empirical_E_S);
        ed_runs.push_back(r.empirical_E_D);
        for (std::size_t i = 0; i < pi.size(); ++i) pi[i] += r.empirical_pi[i] / kSeeds;
      }
      const MeanInterval sim_es = mean_interval(es_runs);
      const MeanInterval sim_ed = mean_interval(ed_runs);
      const double tv = total_variation(pi, d.pi);
      // The whole 95% interval must sit inside the 3% band.
      const double es_err = (std::abs(sim_es.mean - es) + sim_es.half_width) / es;
      const double ed_err = (std::abs(sim_ed.mean - ed) + sim_ed.half_width) / ed;
      const bool point_ok = tv < 0.02 && es_err < 0.03 && ed_err < 0.03;
      ok = ok && point_ok;
      detail += fmt::format("{}M{} l={}: tv {:.4f} E_S {:.4f} E_D {:.4f}", detail.empty() ? "" : "; ",
                            m, lambda, tv, es_err, ed_err);
    }
  }
  const double t = clock.seconds();
  report("4", ok && t < 300.0, "flow simulator vs Markov model",
         fmt::format("{}; {:.1f} s", detail, t));
}

void criterion_5() {
  ScenarioConfig cfg = scenario(20, 0.1, 1, 1e8);
  bool decreasing = true;
  for (int i = 2; i <= 20; ++i) decreasing = decreasing && b_ap(i, dcf(8)) < b_ap(i - 1, dcf(8));

  bool cw8_best = true;
  for (int w : {32, 128, 512}) cw8_best = cw8_best && b_ap(1, dcf(8)) > b_ap(1, dcf(w));

  const double b1 = b_ap(1, dcf(8));
  const bool lone = station_throughput(1, 2, cfg) == 2.0 * b1 &&
                    station_throughput(1, 2, cfg) > station_throughput(1, 1, cfg);

  bool crowded = true;
  for (int i = 2; i <= 20; ++i)
    crowded = crowded && station_throughput(i, 2, cfg) <= station_throughput(i, 1, cfg);

  report("5", decreasing && cw8_best && lone && crowded, "per-station throughput properties",
         fmt::format("B decreasing {}, cw 8 best {}, S_1(2)=2B(1)>S_1(1) {}, S_i(2)<=S_i(1) {}",
                     decreasing, cw8_best, lone, crowded));
}

void criterion_6() {
  const ExperimentConfig defaults = parse_config("");
  const std::vector<double> grid = defaults.sweep.values();
  constexpr double kSlack = 1e-12;

  for (int m = 1; m <= 2; ++m) {
    bool monotone = true;
    std::string where;
    for (double f : defaults.file_sizes) {
      double prev_s = INFINITY;
      double prev_d = 0.0;
      for (double lambda : grid) {
        const ModelPoint p = analyze(scenario(10, lambda, m, f));
        const bool ok = p.per_user_throughput <= prev_s * (1 + kSlack) &&
                        p.transfer_time >= prev_d * (1 - kSlack);
        if (!ok && monotone)
          where = fmt::format(", first break F={:g} lambda={:.3g}: E_S {:.4g}->{:.4g}, E_D {:.4g}->{:.4g}",
                              f, lambda, prev_s, p.per_user_throughput, prev_d, p.transfer_time);
        monotone = monotone && ok;
        prev_s = p.per_user_throughput;
        prev_d = p.transfer_time;
      }
    }
    report(fmt::format("6{}", m == 1 ? 'a' : 'b'), monotone,
           fmt::format("E[S] nonincreasing, E[D] nondecreasing in lambda (M={})", m),
           fmt::format("{} lambdas x {} file sizes{}", grid.size(), defaults.file_sizes.size(), where));
  }

  bool gain = true;
  std::string gains;
  for (double f : defaults.file_sizes) {
    double lo = NAN;
    double hi = NAN;
    for (double lambda : grid) {
      const ModelPoint one = analyze(scenario(10, lambda, 1, f));
      const ModelPoint two = analyze(scenario(10, lambda, 2, f));
      if (two.per_user_throughput > one.per_user_throughput && two.transfer_time < one.transfer_time) {
        if (std::isnan(lo)) lo = lambda;
        hi = lambda;
      }
    }
    gain = gain && !std::isnan(lo);
    gains += fmt::format(" F={:g}:[{:.3g},{:.3g}]", f, lo, hi);
  }
  report("6c", gain, "two interfaces strictly better on both metrics somewhere", gains.substr(1));

  double worst = 0.0;
  for (int m = 1; m <= 2; ++m)
    for (double f : defaults.file_sizes) {
      const ScenarioConfig cfg = scenario(10, 1e-8, m, f);
      const double limit = f / station_throughput(1, m, cfg);
      worst = std::max(worst, std::abs(analyze(cfg).transfer_time / limit - 1));
    }
  report("6d", worst < 1e-3, "light-load E[D] -> F/S_1(M) within 0.1%",
         fmt::format("worst rel gap {:.2e} at lambda=1e-8", worst));
}

void criterion_7() {
  const std::vector<LinkSpec> equal{{10e6, 0.0}, {10e6, 0.0}};
  const double f = 128e6;
  const double speedup = speedup_vs_single(f, equal, even_plan(f, equal));

  const std::vector<LinkSpec> unbalanced{{2e6, 0.0}, {12e6, 0.0}};
  const std::vector<double> opt = optimal_fractions(unbalanced);
  const double red = reduction(optimal_plan(f, unbalanced), even_plan(f, unbalanced));
  const bool fractions_ok = std::abs(opt[0] - 1.0 / 7) < 1e-15 && std::abs(opt[1] - 6.0 / 7) < 1e-15;

  const auto c2 = chunk_plan(f, 2, unbalanced).fractions;
  const auto c4 = chunk_plan(f, 4, std::vector<LinkSpec>{{12e6, 10e6}, {12e6, 0.0}}).fractions;
  const auto c6 = chunk_plan(f, 6, unbalanced).fractions;
  const bool chunks_ok = c2[0] == 0.5 && c2[1] == 0.5 && c4[0] == 0.25 && c4[1] == 0.75 &&
                         c6[0] == 1.0 / 6 && c6[1] == 5.0 / 6;

  const bool ok = speedup == 0.5 && fractions_ok && std::abs(red - 0.71) <= 0.03 && chunks_ok;
  report("7", ok, "split plans",
         fmt::format("equal-link speedup {}, optimal ({:.6f}, {:.6f}), reduction {:.2f}%, chunks {}",
                     speedup, opt[0], opt[1], 100 * red, chunks_ok));
}

void criterion_8() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> cap(1e6, 100e6);
  std::uniform_real_distribution<double> load(0.0, 0.95);
  double worst = 0.0;
  for (int trial = 0; trial < 25; ++trial) {
    const double c1 = cap(rng);
    const double c2 = cap(rng);
    const std::vector<LinkSpec> links{{c1, load(rng) * c1}, {c2, load(rng) * c2}};
    const double size = 1e8;
    const double best = optimal_plan(size, links).makespan;
    double grid = INFINITY;
    for (int k = 0; k <= 1000; ++k) {
      const std::vector<double> fr{k / 1000.0, 1.0 - k / 1000.0};
      grid = std::min(grid, predict_transfer_time(size, fr, links).makespan);
    }
    worst = std::max(worst, (best - grid) / best);
  }
  report("8", worst <= 0.002, "optimal split vs 1e-3 grid search",
         fmt::format("largest grid advantage {:.2e} over 25 instances", worst));
}

void criterion_9() {
  const ExperimentConfig cfg = parse_config(
      "seeds = 3, 4\n[sweep]\npoints = 4\nfile_sizes = 1e7\ncw_values = 8, 32\n"
      "[sim]\nslot_events = 100000\nhorizon_transfers = 5000\n");
  const bool dcf_same = run_sim_dcf(cfg).to_csv() == run_sim_dcf(cfg).to_csv();
  const bool flow_same = run_sim_flow(cfg).to_csv() == run_sim_flow(cfg).to_csv();
  const bool fig_same = run_fig7_fig8(cfg).to_csv() == run_fig7_fig8(cfg).to_csv();
  report("9", dcf_same && flow_same && fig_same, "simulator reruns give identical CSV",
         fmt::format("sim-dcf {}, sim-flow {}, fig7/8 with seeds {}", dcf_same, flow_same, fig_same));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  std::printf("%s: %d failing line(s)\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
