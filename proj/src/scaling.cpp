#include "spinorq/scaling.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "spinorq/errors.hpp"

namespace spinorq {
namespace {

struct LinearSolution {
  double a = 0.0;
  double b = 0.0;
  double sse = 0.0;
};

// Least squares for y = a + b x.
LinearSolution solve_linear(std::span<const double> x, std::span<const double> y) {
  const double m = static_cast<double>(x.size());
  double xm = 0.0;
  double ym = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= m;
  ym /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - xm) * (x[i] - xm);
    sxy += (x[i] - xm) * (y[i] - ym);
  }
  LinearSolution s;
  // A constant abscissa (gamma = 0) leaves b undetermined; the model is then
  // the mean alone.
  if (sxx <= 1e-14 * std::max(1.0, xm * xm) * m) {
    s.a = ym;
    s.b = 0.0;
  } else {
    s.b = sxy / sxx;
    s.a = ym - s.b * xm;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (s.a + s.b * x[i]);
    s.sse += r * r;
  }
  return s;
}

void check_points(std::span<const ScalingPoint> points, std::size_t minimum) {
  if (points.size() < minimum) {
    throw FitError(fmt::format("need at least {} points, got {}", minimum, points.size()));
  }
  for (const auto& p : points) {
    if (!std::isfinite(p.n) || !std::isfinite(p.value)) throw FitError("non-finite data point");
    if (!(p.n > 0.0)) throw FitError("system sizes must be positive");
  }
  const auto [lo, hi] = std::minmax_element(
      points.begin(), points.end(),
      [](const ScalingPoint& a, const ScalingPoint& b) { return a.n < b.n; });
  if (lo->n == hi->n) throw FitError("degenerate design: all system sizes are equal");
}

void fill_quality(ScalingFit& fit, std::span<const double> y, double sse) {
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double sst = 0.0;
  for (double v : y) sst += (v - mean) * (v - mean);
  fit.sse = sse;
  fit.rmse = std::sqrt(sse / static_cast<double>(y.size()));
  fit.r_squared = sst > 0.0 ? std::clamp(1.0 - sse / sst, 0.0, 1.0) : (sse == 0.0 ? 1.0 : 0.0);
  fit.n_points = y.size();
}

}  // namespace

double ScalingFit::operator()(double n) const {
  return offset_a + amplitude_b * std::pow(n, -exponent_gamma);
}

ScalingFit fit_power_law_with_offset(std::span<const ScalingPoint> points,
                                     const OffsetFitOptions& options) {
  check_points(points, 4);
  if (!(options.gamma_step > 0.0) || !(options.gamma_max > options.gamma_min)) {
    throw FitError("invalid gamma bracket");
  }
  const std::size_t m = points.size();
  std::vector<double> logn(m), y(m), x(m);
  for (std::size_t i = 0; i < m; ++i) {
    logn[i] = std::log(points[i].n);
    y[i] = points[i].value;
  }
  auto evaluate = [&](double gamma) {
    for (std::size_t i = 0; i < m; ++i) x[i] = std::exp(-gamma * logn[i]);
    return solve_linear(x, y);
  };

  const auto steps = static_cast<std::size_t>(
      std::floor((options.gamma_max - options.gamma_min) / options.gamma_step + 1e-9));
  double best_gamma = options.gamma_min;
  double best_sse = evaluate(best_gamma).sse;
  for (std::size_t s = 1; s <= steps; ++s) {
    const double g = options.gamma_min + options.gamma_step * static_cast<double>(s);
    const double sse = evaluate(g).sse;
    if (sse < best_sse) {
      best_sse = sse;
      best_gamma = g;
    }
  }

  // Golden-section search on the bracketing grid cells.
  double lo = std::max(options.gamma_min, best_gamma - options.gamma_step);
  double hi = std::min(options.gamma_max, best_gamma + options.gamma_step);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - ratio * (hi - lo);
  double d = lo + ratio * (hi - lo);
  double fc = evaluate(c).sse;
  double fd = evaluate(d).sse;
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - ratio * (hi - lo);
      fc = evaluate(c).sse;
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + ratio * (hi - lo);
      fd = evaluate(d).sse;
    }
  }
  const double refined = 0.5 * (lo + hi);
  if (evaluate(refined).sse <= best_sse) best_gamma = refined;

  const LinearSolution s = evaluate(best_gamma);
  ScalingFit fit;
  fit.offset_a = s.a;
  fit.amplitude_b = s.b;
  fit.exponent_gamma = best_gamma;
  fill_quality(fit, y, s.sse);
  return fit;
}

ScalingFit fit_pure_power_law(std::span<const ScalingPoint> points) {
  check_points(points, 2);
  const std::size_t m = points.size();
  std::vector<double> x(m), y(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(points[i].value > 0.0)) {
      throw FitError(fmt::format("pure power law needs positive values, got {}", points[i].value));
    }
    x[i] = std::log(points[i].n);
    y[i] = std::log(points[i].value);
  }
  const LinearSolution s = solve_linear(x, y);
  ScalingFit fit;
  fit.offset_a = 0.0;
  fit.amplitude_b = std::exp(s.a);
  fit.exponent_gamma = -s.b;
  fill_quality(fit, y, s.sse);
  return fit;
}

std::vector<ScalingPoint> make_points(std::span<const double> n,
                                      std::span<const double> values) {
  if (n.size() != values.size()) throw FitError("size and value columns differ in length");
  std::vector<ScalingPoint> out(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) out[i] = {n[i], values[i]};
  return out;
}

std::vector<int> default_size_ladder() { return {500, 1000, 2000, 4000, 8000, 16000}; }

}  // namespace spinorq
