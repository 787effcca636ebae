#include "mwlan/dcf_model.hpp"

#include <cmath>
#include <string>

#include "mwlan/errors.hpp"

namespace mwlan {

namespace {

constexpr int kMaxBisectionSteps = 200;
constexpr double kResidualTolerance = 1e-10;

// (1 - x)^k computed without cancellation for small x.
double pow_one_minus(double x, int k) {
  if (k == 0) return 1.0;
  if (x >= 1.0) return 0.0;
  return std::exp(k * std::log1p(-x));
}

}  // namespace

void DcfParams::validate() const {
  if (cw_min < 2) throw DomainError("cw_min must be >= 2, got " + std::to_string(cw_min));
  if (max_backoff_stage < 0 || max_backoff_stage > 20)
    throw DomainError("max_backoff_stage must be in [0, 20], got " +
                      std::to_string(max_backoff_stage));
  if (!(payload_bits > 0.0)) throw DomainError("payload_bits must be > 0");
  if (!(slot_time > 0.0)) throw DomainError("slot_time must be > 0");
  if (!(t_success > 0.0)) throw DomainError("t_success must be > 0");
  if (!(t_collision > 0.0)) throw DomainError("t_collision must be > 0");
}

double transmit_probability(double p, const DcfParams& params) {
  const double w = params.cw_min;
  double geometric = 0.0;
  double term = 1.0;
  for (int k = 0; k < params.max_backoff_stage; ++k) {
    geometric += term;
    term *= 2.0 * p;
  }
  return 2.0 / (w + 1.0 + p * w * geometric);
}

double fixed_point_residual(int n, double p, const DcfParams& params) {
  const double tau = transmit_probability(p, params);
  return std::abs(p - (1.0 - pow_one_minus(tau, n - 1)));
}

BianchiSolution solve_bianchi(int n, const DcfParams& params) {
  if (n < 1) throw DomainError("no contenders");
  params.validate();

  double p = 0.0;
  if (n > 1) {
    // g(p) = p - (1 - (1 - tau(p))^(n-1)) is increasing: g(0) < 0 < g(1).
    auto g = [&](double x) {
      return x - (1.0 - pow_one_minus(transmit_probability(x, params), n - 1));
    };
    double lo = 0.0;
    double hi = 1.0;
    for (int step = 0; step < kMaxBisectionSteps && hi - lo > 1e-16; ++step) {
      const double mid = 0.5 * (lo + hi);
      if (g(mid) < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    p = std::abs(g(lo)) <= std::abs(g(hi)) ? lo : hi;
    if (!(fixed_point_residual(n, p, params) < kResidualTolerance))
      throw NumericError("bianchi fixed point did not converge for n=" + std::to_string(n));
  }

  BianchiSolution sol;
  sol.n = n;
  sol.p = p;
  sol.tau = transmit_probability(p, params);
  sol.p_tr = 1.0 - pow_one_minus(sol.tau, n);
  const double success = n * sol.tau * pow_one_minus(sol.tau, n - 1);
  sol.p_s = sol.p_tr > 0.0 ? success / sol.p_tr : 0.0;
  const Throughput s = throughput(n, sol.tau, params);
  sol.aggregate_throughput = s.aggregate;
  sol.per_station_throughput = s.per_station;
  return sol;
}

Throughput throughput(int n, double tau, const DcfParams& params) {
  if (n < 1) throw DomainError("no contenders");
  if (tau <= 0.0) return {};
  const double p_tr = 1.0 - pow_one_minus(tau, n);
  const double p_success = n * tau * pow_one_minus(tau, n - 1);  // P_s * P_tr
  const double mean_slot = (1.0 - p_tr) * params.slot_time + p_success * params.t_success +
                           (p_tr - p_success) * params.t_collision;
  Throughput out;
  out.aggregate = p_success * params.payload_bits / mean_slot;
  out.per_station = out.aggregate / n;
  return out;
}

double b_ap(int u, const DcfParams& params) {
  if (u < 0) throw DomainError("negative station count");
  if (u == 0) return 0.0;
  return solve_bianchi(u, params).per_station_throughput;
}

}  // namespace mwlan
