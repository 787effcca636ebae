#include "mwlan/stats.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>

namespace mwlan {

double t_quantile_975(int dof) {
  boost::math::students_t dist(dof);
  return boost::math::quantile(dist, 0.975);
}

MeanInterval mean_interval(std::span<const double> samples) {
  MeanInterval out;
  out.samples = static_cast<int>(samples.size());
  if (samples.empty()) return out;
  double sum = 0.0;
  for (double x : samples) sum += x;
  out.mean = sum / samples.size();
  if (samples.size() < 2) return out;
  double ss = 0.0;
  for (double x : samples) ss += (x - out.mean) * (x - out.mean);
  const double sd = std::sqrt(ss / (samples.size() - 1));
  out.half_width = t_quantile_975(out.samples - 1) * sd / std::sqrt(double(samples.size()));
  return out;
}

}  // namespace mwlan
