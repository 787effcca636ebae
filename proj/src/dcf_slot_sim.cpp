#include "mwlan/dcf_slot_sim.hpp"

#include <algorithm>
#include <random>
#include <vector>

#include "mwlan/errors.hpp"
#include "mwlan/stats.hpp"

namespace mwlan {

namespace {

struct Tally {
  std::int64_t idle = 0;
  std::int64_t successes = 0;
  std::int64_t collisions = 0;
  std::int64_t attempts = 0;
  std::int64_t collided_attempts = 0;

  std::int64_t events() const { return idle + successes + collisions; }

  void add(const Tally& o) {
    idle += o.idle;
    successes += o.successes;
    collisions += o.collisions;
    attempts += o.attempts;
    collided_attempts += o.collided_attempts;
  }

  double elapsed(const DcfParams& params) const {
    return idle * params.slot_time + successes * params.t_success +
           collisions * params.t_collision;
  }

  double throughput(const DcfParams& params) const {
    const double t = elapsed(params);
    return t > 0.0 ? successes * params.payload_bits / t : 0.0;
  }

  double collision_prob() const {
    return attempts > 0 ? static_cast<double>(collided_attempts) / attempts : 0.0;
  }
};

class Channel {
 public:
  Channel(int n, const DcfParams& params, std::uint64_t seed, BackoffCountdown countdown)
      : params_(params), countdown_(countdown), rng_(seed), stage_(n, 0), counter_(n, 0) {
    for (int s = 0; s < n; ++s) counter_[s] = draw(0);
  }

  // Advances by at most max_events slot events and records them in tally.
  // Returns the number of events consumed (>= 1).
  std::int64_t step(std::int64_t max_events, Tally& tally) {
    const int lowest = *std::min_element(counter_.begin(), counter_.end());
    if (lowest > 0) {
      const std::int64_t run = std::min<std::int64_t>(lowest, max_events);
      for (int& c : counter_) c -= static_cast<int>(run);
      tally.idle += run;
      return run;
    }

    transmitters_.clear();
    for (int s = 0; s < static_cast<int>(counter_.size()); ++s) {
      if (counter_[s] == 0) {
        transmitters_.push_back(s);
      } else if (countdown_ == BackoffCountdown::every_slot) {
        --counter_[s];
      }
    }
    const auto k = static_cast<std::int64_t>(transmitters_.size());
    tally.attempts += k;
    const bool collided = k > 1;
    if (collided) {
      ++tally.collisions;
      tally.collided_attempts += k;
    } else {
      ++tally.successes;
    }
    for (int s : transmitters_) {
      stage_[s] = collided ? std::min(stage_[s] + 1, params_.max_backoff_stage) : 0;
      counter_[s] = draw(stage_[s]);
    }
    return 1;
  }

 private:
  int draw(int stage) {
    std::uniform_int_distribution<int> backoff(0, (params_.cw_min << stage) - 1);
    return backoff(rng_);
  }

  DcfParams params_;
  BackoffCountdown countdown_;
  std::mt19937_64 rng_;
  std::vector<int> stage_;
  std::vector<int> counter_;
  std::vector<int> transmitters_;
};

}  // namespace

SlotSimResult simulate_dcf(int n, const DcfParams& params, const SlotSimOptions& options) {
  if (n < 1) throw DomainError("no contenders");
  params.validate();
  if (options.slot_events < 1) throw DomainError("slot_events must be >= 1");
  if (options.batches < 1) throw DomainError("batches must be >= 1");
  if (!(options.warmup_fraction >= 0.0 && options.warmup_fraction < 1.0))
    throw DomainError("warmup_fraction must be in [0, 1)");

  const auto warmup = static_cast<std::int64_t>(options.warmup_fraction * options.slot_events);
  const std::int64_t measured = options.slot_events - warmup;
  if (measured < options.batches) throw DomainError("fewer measured slot events than batches");

  Channel channel(n, params, options.seed, options.countdown);

  Tally discard;
  for (std::int64_t left = warmup; left > 0;) left -= channel.step(left, discard);

  std::vector<Tally> batches(options.batches);
  const std::int64_t per_batch = measured / options.batches;
  for (int b = 0; b < options.batches; ++b) {
    std::int64_t left = b + 1 == options.batches ? measured - per_batch * b : per_batch;
    while (left > 0) left -= channel.step(left, batches[b]);
  }

  Tally total;
  std::vector<double> thr;
  std::vector<double> coll;
  for (const Tally& t : batches) {
    total.add(t);
    thr.push_back(t.throughput(params));
    coll.push_back(t.collision_prob());
  }

  SlotSimResult r;
  r.n = n;
  r.n_slots_simulated = total.events();
  r.successes = total.successes;
  r.collisions = total.collisions;
  r.idle_slots = total.idle;
  r.attempts = total.attempts;
  r.collided_attempts = total.collided_attempts;
  r.busy_time = total.successes * params.t_success + total.collisions * params.t_collision;
  r.total_time = total.elapsed(params);
  r.measured_throughput = total.throughput(params);
  r.per_station_throughput = r.measured_throughput / n;
  r.measured_collision_prob = total.collision_prob();
  r.ci95_throughput = mean_interval(thr).half_width;
  r.ci95_collision_prob = mean_interval(coll).half_width;
  return r;
}

}  // namespace mwlan
