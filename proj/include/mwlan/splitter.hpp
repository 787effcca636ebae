#pragma once

#include <span>
#include <string>
#include <vector>

namespace mwlan {

/// A link modeled as an ideal constant-rate pipe.
struct LinkSpec {
  double capacity = 0.0;         // bits/s
  double background_load = 0.0;  // bits/s of cross traffic
};

enum class SplitOrigin { even, chunked, optimal, custom };

std::string to_string(SplitOrigin origin);

/// How a file is spread over links; fractions[j] rides links[j].
struct SplitPlan {
  double file_size = 0.0;  // bits
  std::vector<double> fractions;
  std::vector<double> per_link_time;  // s, +inf when a dead link gets data
  double makespan = 0.0;              // s
  SplitOrigin origin = SplitOrigin::custom;
  int chunks = 0;  // split factor n for chunked plans
};

struct TransferPrediction {
  std::vector<double> per_link_time;
  double makespan = 0.0;
};

/// Capacity left after background traffic, floored at zero.
double available_bandwidth(const LinkSpec& link);

/// Per-link finish times and makespan for the given fractions. A positive
/// fraction on a zero-bandwidth link yields an infinite time.
TransferPrediction predict_transfer_time(double file_size, std::span<const double> fractions,
                                         std::span<const LinkSpec> links);
TransferPrediction predict_transfer_time(const SplitPlan& plan, std::span<const LinkSpec> links);

/// Builds a plan from explicit fractions (validated to be >= 0, sum 1).
SplitPlan make_plan(double file_size, std::vector<double> fractions,
                    std::span<const LinkSpec> links, SplitOrigin origin = SplitOrigin::custom);

/// Equal share on every link.
SplitPlan even_plan(double file_size, std::span<const LinkSpec> links);

/// Split factor n over two links: the file is cut into n chunks, one goes
/// to the slower link (by available bandwidth, first link on ties) and
/// n - 1 to the faster one. Throws DomainError for n < 2 or != 2 links.
SplitPlan chunk_plan(double file_size, int n, std::span<const LinkSpec> links);

/// Fractions proportional to available bandwidth, which equalizes the
/// finish time of every live link. Throws DomainError if all are dead.
std::vector<double> optimal_fractions(std::span<const LinkSpec> links);

SplitPlan optimal_plan(double file_size, std::span<const LinkSpec> links);

/// makespan(plan) over the time needed to push the whole file through the
/// slowest link alone. Throws DomainError if that link is dead.
double speedup_vs_single(double file_size, std::span<const LinkSpec> links, const SplitPlan& plan);

/// 1 - makespan(plan) / makespan(reference).
double reduction(const SplitPlan& plan, const SplitPlan& reference);

}  // namespace mwlan
