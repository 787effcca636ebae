#pragma once

#include <cstdint>

#include "mwlan/dcf_model.hpp"

namespace mwlan {

/// When a station's backoff counter advances.
enum class BackoffCountdown {
  // Advances once per slot event, busy or idle: the slot time scale of the
  // analytical model, where a busy period counts as one (long) slot.
  every_slot,
  // Frozen while the medium is busy; only idle slots count down.
  idle_slots,
};

struct SlotSimOptions {
  std::int64_t slot_events = 1'000'000;  // total budget, warm-up included
  int batches = 20;
  double warmup_fraction = 0.05;
  std::uint64_t seed = 1;
  BackoffCountdown countdown = BackoffCountdown::every_slot;
};

/// Counters cover the measured (post warm-up) slot events only.
struct SlotSimResult {
  int n = 0;
  std::int64_t n_slots_simulated = 0;
  std::int64_t successes = 0;
  std::int64_t collisions = 0;
  std::int64_t idle_slots = 0;
  std::int64_t attempts = 0;
  std::int64_t collided_attempts = 0;
  double busy_time = 0.0;   // s
  double total_time = 0.0;  // s
  double measured_throughput = 0.0;      // aggregate, bits/s
  double per_station_throughput = 0.0;   // bits/s
  double measured_collision_prob = 0.0;  // per transmission attempt
  double ci95_throughput = 0.0;          // half-width of aggregate, bits/s
  double ci95_collision_prob = 0.0;
};

/// Slot-level Monte Carlo of n saturated stations running binary
/// exponential backoff on one channel (basic access, infinite retries,
/// window capped at stage m). Confidence intervals come from batch means.
SlotSimResult simulate_dcf(int n, const DcfParams& params, const SlotSimOptions& options);

}  // namespace mwlan
