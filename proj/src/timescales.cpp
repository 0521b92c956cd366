#include "spinorq/timescales.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "spinorq/errors.hpp"
#include "spinorq/parallel.hpp"

namespace spinorq {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double period(double frequency_difference, const char* what) {
  const double d = std::abs(frequency_difference);
  if (!(d > 0.0)) {
    throw UndefinedTimescale(fmt::format("{}: vanishing frequency difference", what));
  }
  return kTwoPi / d;
}

}  // namespace

std::vector<OverlapPeak> overlap_peaks(const OverlapDistribution& dist) {
  const std::size_t n = dist.amplitudes.size();
  std::vector<OverlapPeak> peaks;
  for (std::size_t i = 0; i < n; ++i) {
    const double h = std::abs(dist.amplitudes[i]);
    if (h == 0.0) continue;
    const bool left = i == 0 || h > std::abs(dist.amplitudes[i - 1]);
    const bool right = i + 1 == n || h >= std::abs(dist.amplitudes[i + 1]);
    if (left && right) peaks.push_back({dist.indices[i], h});
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const OverlapPeak& a, const OverlapPeak& b) { return a.height > b.height; });
  return peaks;
}

TimescaleReport predict_timescales(const QuenchResult& result,
                                   const TimescaleOptions& options) {
  const OverlapDistribution dist = overlap_distribution(result);
  const std::size_t n = dist.amplitudes.size();

  std::size_t peak = 0;
  double top = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(dist.amplitudes[i]) > top) {
      top = std::abs(dist.amplitudes[i]);
      peak = i;
    }
  }
  if (top == 0.0) throw UndefinedTimescale("overlap distribution is empty");

  TimescaleReport r;
  for (double a : dist.amplitudes) {
    if (std::abs(a) >= options.significance * top) ++r.significant_points;
  }
  if (r.significant_points < 3) {
    throw UndefinedTimescale(fmt::format(
        "overlap distribution has {} significant points, need 3", r.significant_points));
  }

  // A rival peak counts only if a valley separates it from the main one.
  for (const auto& p : overlap_peaks(dist)) {
    if (p.index == dist.indices[peak]) continue;
    if (p.height < options.comparable_peak * top) break;
    const std::size_t pos = static_cast<std::size_t>(
        std::find(dist.indices.begin(), dist.indices.end(), p.index) - dist.indices.begin());
    const std::size_t lo = std::min(pos, peak);
    const std::size_t hi = std::max(pos, peak);
    double valley = p.height;
    for (std::size_t i = lo; i <= hi; ++i) valley = std::min(valley, std::abs(dist.amplitudes[i]));
    if (valley <= options.comparable_peak * p.height) {
      throw UndefinedTimescale(fmt::format(
          "overlap distribution has comparable peaks at {} and {}", dist.indices[peak], p.index));
    }
  }

  double total = 0.0;
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += std::abs(dist.amplitudes[i]);
    mean += std::abs(dist.amplitudes[i]) * static_cast<double>(dist.indices[i]);
  }
  mean /= total;
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = static_cast<double>(dist.indices[i]) - mean;
    var += std::abs(dist.amplitudes[i]) * d * d;
  }
  r.sigma = std::sqrt(var / total);
  r.m_index = dist.indices[peak];
  r.sigma_index_offset = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(options.sigma_multiplier * r.sigma)));

  const auto& e = result.energies;
  const std::size_t gaps = e.size() - 1;
  auto gap = [&](std::size_t j) { return e[j + 1] - e[j]; };
  auto gap_change = [&](std::size_t j) { return 0.5 * (gap(j - 1) - gap(j + 1)); };
  const std::size_t m = r.m_index;
  const std::size_t s = r.sigma_index_offset;
  if (m < s + 1 || m + s + 1 >= gaps) {
    throw UndefinedTimescale(fmt::format(
        "overlap peak {} with offset {} reaches past the spectrum edge", m, s));
  }

  auto weight_at = [&](std::size_t alpha) {
    const auto it = std::find(dist.indices.begin(), dist.indices.end(), alpha);
    return it == dist.indices.end()
               ? 0.0
               : std::abs(dist.amplitudes[static_cast<std::size_t>(it - dist.indices.begin())]);
  };
  r.revival_neighbor = weight_at(m + 1) > weight_at(m - 1) ? m + 1 : m - 1;

  r.t_collapse = period(gap(m + s) - gap(m - s), "collapse time");
  r.t_revival = period(gap(m) - gap(r.revival_neighbor), "revival time");
  r.t_oscillation = period(gap(m), "oscillation time");
  r.t_randomize = period(gap_change(m + s) - gap_change(m - s), "randomizing time");
  return r;
}

TimescaleScaling scaling_of_timescales(const QuenchSpec& base, std::span<const int> sizes,
                                       const TimescaleOptions& options, unsigned threads) {
  if (sizes.size() < 5) {
    throw InvalidArgument(
        fmt::format("timescale scaling needs at least 5 system sizes, got {}", sizes.size()));
  }
  TimescaleScaling out;
  out.sizes.assign(sizes.begin(), sizes.end());
  out.reports.resize(sizes.size());
  parallel_for(sizes.size(), threads, [&](std::size_t i) {
    QuenchSpec spec = base;
    spec.n_atoms = sizes[i];
    out.reports[i] = predict_timescales(run_quench(spec), options);
  });
  std::vector<ScalingPoint> tc, tr;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    tc.push_back({static_cast<double>(sizes[i]), out.reports[i].t_collapse});
    tr.push_back({static_cast<double>(sizes[i]), out.reports[i].t_revival});
  }
  out.collapse = fit_pure_power_law(tc);
  out.revival = fit_pure_power_law(tr);
  return out;
}

double to_seconds(double time, double c1_hz) {
  if (!(std::abs(c1_hz) > 0.0)) throw InvalidArgument("c1 in Hz must be nonzero");
  return time / (kTwoPi * std::abs(c1_hz));
}

}  // namespace spinorq
