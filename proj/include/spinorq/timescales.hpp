#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spinorq/quench.hpp"
#include "spinorq/scaling.hpp"

namespace spinorq {

struct TimescaleOptions {
  /// sigma offset used for t_c and t_rz is round(multiplier * sigma), at least 1.
  double sigma_multiplier = 1.0;
  /// Points with |A| >= significance * max |A| count as significant.
  double significance = 1e-3;
  /// A second local maximum at least this fraction of the main peak, separated
  /// from it by a valley below the same fraction of its own height, makes the
  /// distribution multi-peaked.
  double comparable_peak = 0.5;
};

/// Times in units of 1/|c1|. Gaps are g_j = E_{j+1} - E_j; m is the argmax of
/// |A_{m,m+1}| and s the rounded |A|-weighted standard deviation of the index.
///   t_collapse    = 2 pi / |g_{m+s} - g_{m-s}|
///   t_revival     = 2 pi / |g_m - g_n|, n the heavier neighbour of m
///   t_oscillation = 2 pi / g_m
///   t_randomize   = 2 pi / |g'_{m+s} - g'_{m-s}|, g'_j = (g_{j-1} - g_{j+1}) / 2
struct TimescaleReport {
  double t_collapse = 0.0;
  double t_revival = 0.0;
  double t_oscillation = 0.0;
  double t_randomize = 0.0;
  std::size_t m_index = 0;
  std::size_t sigma_index_offset = 0;
  std::size_t revival_neighbor = 0;
  double sigma = 0.0;
  std::size_t significant_points = 0;
};

struct OverlapPeak {
  std::size_t index = 0;  // alpha of the pair (alpha, alpha + 1)
  double height = 0.0;    // |A|
};

/// Local maxima of |A| over the overlap distribution, tallest first.
std::vector<OverlapPeak> overlap_peaks(const OverlapDistribution& dist);

/// Throws UndefinedTimescale for fewer than three significant points, for a
/// multi-peaked distribution, or when an index m +- s falls off the spectrum.
TimescaleReport predict_timescales(const QuenchResult& result,
                                   const TimescaleOptions& options = {});

struct TimescaleScaling {
  std::vector<int> sizes;
  std::vector<TimescaleReport> reports;
  ScalingFit collapse;  // pure power law of t_collapse against N
  ScalingFit revival;
};

/// Runs the quench family over `sizes` (at least five) and fits t_c and t_r.
TimescaleScaling scaling_of_timescales(const QuenchSpec& base, std::span<const int> sizes,
                                       const TimescaleOptions& options = {},
                                       unsigned threads = 1);

/// Converts a time in units of 1/|c1| to seconds for c1 given in Hz
/// (|c1| = 2 pi c1_hz rad/s).
double to_seconds(double time, double c1_hz);

}  // namespace spinorq
