#pragma once

#include <span>

namespace mwlan {

struct MeanInterval {
  double mean = 0.0;
  double half_width = 0.0;  // 95% two-sided, Student t
  int samples = 0;
};

/// Two-sided 95% Student-t quantile for the given degrees of freedom.
double t_quantile_975(int dof);

/// Mean and 95% confidence half-width of (approximately i.i.d.) samples,
/// e.g. batch means or per-seed estimates. Fewer than two samples give a
/// zero half-width.
MeanInterval mean_interval(std::span<const double> samples);

}  // namespace mwlan
