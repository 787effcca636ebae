#pragma once

// Saturation model of IEEE 802.11 DCF basic access (Bianchi).
//
// n saturated stations share one channel. Each one transmits in a slot with
// probability tau; a transmission collides with conditional probability p.
// The pair (tau, p) is the fixed point of
//
//   tau(p) = 2 (1 - 2p) / [ (1 - 2p)(W + 1) + p W (1 - (2p)^m) ]
//   p      = 1 - (1 - tau)^(n - 1)
//
// and the channel throughput follows from the slot-type probabilities.

namespace mwlan {

struct DcfParams {
  int cw_min = 8;              // W, initial window (slots)
  int max_backoff_stage = 5;   // m, window at stage k is 2^min(k,m) * W
  double payload_bits = 12000.0;
  double slot_time = 9e-6;     // seconds
  double t_success = 253e-6;   // seconds
  double t_collision = 253e-6; // seconds

  int cw_max() const { return cw_min << max_backoff_stage; }

  /// Throws DomainError when any field is out of range.
  void validate() const;

  friend bool operator==(const DcfParams&, const DcfParams&) = default;
};

struct BianchiSolution {
  int n = 0;
  double tau = 0.0;
  double p = 0.0;
  double p_tr = 0.0;  // P(at least one transmission in a slot)
  double p_s = 0.0;   // P(success | at least one transmission)
  double aggregate_throughput = 0.0;    // bits/s
  double per_station_throughput = 0.0;  // bits/s
};

struct Throughput {
  double aggregate = 0.0;    // bits/s
  double per_station = 0.0;  // bits/s
};

/// tau as a function of the conditional collision probability p.
///
/// Evaluated through the geometric-sum form
/// tau = 2 / (W + 1 + p W sum_{k<m} (2p)^k), which is algebraically identical
/// to the rational expression above but has no 0/0 at p = 1/2.
double transmit_probability(double p, const DcfParams& params);

/// Solves the (tau, p) fixed point by bisection on p in [0, 1).
///
/// Throws DomainError if n < 1 or params are invalid, NumericError if the
/// residual is not below 1e-10 after the iteration budget.
BianchiSolution solve_bianchi(int n, const DcfParams& params);

/// Channel throughput for n stations each transmitting with probability tau.
/// tau == 0 gives zero throughput.
Throughput throughput(int n, double tau, const DcfParams& params);

/// Saturation throughput of one station when u stations contend on the AP.
/// B(0) is 0 by convention.
double b_ap(int u, const DcfParams& params);

/// |p - (1 - (1 - tau(p))^(n-1))| at the given p.
double fixed_point_residual(int n, double p, const DcfParams& params);

}  // namespace mwlan
