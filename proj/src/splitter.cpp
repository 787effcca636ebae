#include "mwlan/splitter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mwlan/errors.hpp"

namespace mwlan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_links(std::span<const LinkSpec> links) {
  if (links.empty()) throw DomainError("no links");
  for (const LinkSpec& l : links) {
    if (!(l.capacity > 0.0)) throw DomainError("link capacity must be > 0");
    if (!(l.background_load >= 0.0)) throw DomainError("background load must be >= 0");
  }
}

}  // namespace

std::string to_string(SplitOrigin origin) {
  switch (origin) {
    case SplitOrigin::even: return "even";
    case SplitOrigin::chunked: return "chunked";
    case SplitOrigin::optimal: return "optimal";
    case SplitOrigin::custom: return "custom";
  }
  return "custom";
}

double available_bandwidth(const LinkSpec& link) {
  return std::max(0.0, link.capacity - link.background_load);
}

TransferPrediction predict_transfer_time(double file_size, std::span<const double> fractions,
                                         std::span<const LinkSpec> links) {
  if (fractions.size() != links.size())
    throw DomainError("plan and link count differ");
  TransferPrediction out;
  out.per_link_time.resize(links.size(), 0.0);
  for (std::size_t j = 0; j < links.size(); ++j) {
    if (fractions[j] <= 0.0) continue;
    const double rate = available_bandwidth(links[j]);
    out.per_link_time[j] = rate > 0.0 ? fractions[j] * file_size / rate : kInf;
  }
  out.makespan = *std::max_element(out.per_link_time.begin(), out.per_link_time.end());
  return out;
}

TransferPrediction predict_transfer_time(const SplitPlan& plan, std::span<const LinkSpec> links) {
  return predict_transfer_time(plan.file_size, plan.fractions, links);
}

SplitPlan make_plan(double file_size, std::vector<double> fractions,
                    std::span<const LinkSpec> links, SplitOrigin origin) {
  check_links(links);
  if (!(file_size > 0.0)) throw DomainError("file size must be > 0");
  double sum = 0.0;
  for (double f : fractions) {
    if (!(f >= 0.0)) throw DomainError("negative split fraction");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw DomainError("split fractions do not sum to 1");

  const TransferPrediction t = predict_transfer_time(file_size, fractions, links);
  SplitPlan plan;
  plan.file_size = file_size;
  plan.fractions = std::move(fractions);
  plan.per_link_time = t.per_link_time;
  plan.makespan = t.makespan;
  plan.origin = origin;
  return plan;
}

SplitPlan even_plan(double file_size, std::span<const LinkSpec> links) {
  check_links(links);
  std::vector<double> f(links.size(), 1.0 / links.size());
  return make_plan(file_size, std::move(f), links, SplitOrigin::even);
}

SplitPlan chunk_plan(double file_size, int n, std::span<const LinkSpec> links) {
  if (n < 2) throw DomainError("split factor must be >= 2");
  if (links.size() != 2) throw DomainError("chunked split needs exactly two links");
  const std::size_t slow =
      available_bandwidth(links[1]) < available_bandwidth(links[0]) ? 1 : 0;
  std::vector<double> f(2);
  f[slow] = 1.0 / n;
  f[1 - slow] = (n - 1.0) / n;
  SplitPlan plan = make_plan(file_size, std::move(f), links, SplitOrigin::chunked);
  plan.chunks = n;
  return plan;
}

std::vector<double> optimal_fractions(std::span<const LinkSpec> links) {
  check_links(links);
  double total = 0.0;
  for (const LinkSpec& l : links) total += available_bandwidth(l);
  if (!(total > 0.0)) throw DomainError("every link is saturated by background traffic");
  std::vector<double> f;
  f.reserve(links.size());
  for (const LinkSpec& l : links) f.push_back(available_bandwidth(l) / total);
  return f;
}

SplitPlan optimal_plan(double file_size, std::span<const LinkSpec> links) {
  return make_plan(file_size, optimal_fractions(links), links, SplitOrigin::optimal);
}

double speedup_vs_single(double file_size, std::span<const LinkSpec> links, const SplitPlan& plan) {
  check_links(links);
  double slowest = kInf;
  for (const LinkSpec& l : links) slowest = std::min(slowest, available_bandwidth(l));
  if (!(slowest > 0.0)) throw DomainError("single-link baseline is dead");
  return predict_transfer_time(plan, links).makespan / (file_size / slowest);
}

double reduction(const SplitPlan& plan, const SplitPlan& reference) {
  return 1.0 - plan.makespan / reference.makespan;
}

}  // namespace mwlan
