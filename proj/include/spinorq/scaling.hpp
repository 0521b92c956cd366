#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace spinorq {

struct ScalingPoint {
  double n = 0.0;
  double value = 0.0;
};

/// chi(N) = offset_a + amplitude_b * N^(-exponent_gamma).
///
/// exponent_gamma is a decay exponent. A quantity growing like N^p has
/// exponent_gamma = -p; growth_exponent() returns p.
struct ScalingFit {
  double offset_a = 0.0;
  double amplitude_b = 0.0;
  double exponent_gamma = 0.0;
  double r_squared = 0.0;
  double rmse = 0.0;
  double sse = 0.0;
  std::size_t n_points = 0;

  double growth_exponent() const { return -exponent_gamma; }
  double operator()(double n) const;
};

struct OffsetFitOptions {
  double gamma_min = -0.2;
  double gamma_max = 2.0;
  double gamma_step = 1e-3;
};

/// Grid search over gamma with closed-form (a, b) at every grid point,
/// then golden-section refinement around the best grid point. Needs at least
/// four points with positive, not all equal N.
ScalingFit fit_power_law_with_offset(std::span<const ScalingPoint> points,
                                     const OffsetFitOptions& options = {});

/// log chi = log b - gamma log N by ordinary least squares; offset_a = 0.
/// r_squared, rmse and sse refer to the log-log regression. Needs at least
/// two points and chi > 0.
ScalingFit fit_pure_power_law(std::span<const ScalingPoint> points);

std::vector<ScalingPoint> make_points(std::span<const double> n, std::span<const double> values);

/// The default system-size ladder for scaling scans.
std::vector<int> default_size_ladder();

}  // namespace spinorq
