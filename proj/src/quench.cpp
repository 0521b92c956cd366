#include "spinorq/quench.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "spinorq/errors.hpp"
#include "spinorq/parallel.hpp"

namespace spinorq {
namespace {

constexpr double kDegenerateGap = 1e-12;
constexpr double kRequiredRetention = 1e-8;

double matrix_element(std::span<const double> a, std::span<const double> b,
                      const std::vector<double>& n0) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n0.size(); ++k) acc += (a[k] * b[k]) * n0[k];
  return acc;
}

std::vector<std::size_t> retain(const std::vector<double>& eon, double tolerance,
                                double& weight) {
  std::vector<std::size_t> order(eon.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return eon[a] > eon[b]; });
  std::vector<std::size_t> kept;
  weight = 0.0;
  for (std::size_t idx : order) {
    kept.push_back(idx);
    weight += eon[idx];
    if (tolerance > 0.0 && weight >= 1.0 - tolerance) break;
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace

void QuenchSpec::validate() const {
  initial_model().validate();
  final_model().validate();
}

double QuenchResult::truncation_error() const {
  double total = 0.0;
  for (const auto& e : overlap_band) total += e.amplitude;
  return std::abs(total - initial_n0);
}

QuenchResult run_quench(const QuenchSpec& spec, const QuenchOptions& options) {
  spec.validate();
  return run_quench(spec, decompose(build_hamiltonian(spec.final_model())), options);
}

QuenchResult run_quench(const QuenchSpec& spec, const EigenSystem& final_system,
                        const QuenchOptions& options) {
  spec.validate();
  if (!(options.retention_tolerance >= 0.0 && options.retention_tolerance < 1.0)) {
    throw InvalidArgument("retention_tolerance must lie in [0, 1)");
  }
  if (!(options.band_tolerance >= 0.0)) throw InvalidArgument("band_tolerance must be >= 0");
  const std::size_t dim = static_cast<std::size_t>(spec.n_atoms / 2 + 1);
  if (final_system.dim != dim) {
    throw InvalidArgument(fmt::format(
        "eigensystem dimension {} does not match N = {}", final_system.dim, spec.n_atoms));
  }

  const EigenPair initial = extremal_state(
      build_hamiltonian(spec.initial_model()),
      spec.initial == InitialState::ground ? Extremum::ground : Extremum::most_excited);
  const std::vector<double> n0 = build_observable_n0(spec.final_model());

  QuenchResult r;
  r.n_atoms = spec.n_atoms;
  r.dim = dim;
  r.energies = final_system.values;
  r.operator_norm = final_system.operator_norm;
  r.degeneracy_threshold = kDegenerateGap * final_system.operator_norm;
  r.amplitudes.resize(dim);
  r.eon.resize(dim);
  r.eev.resize(dim);

  for (std::size_t k = 0; k < dim; ++k) {
    r.initial_n0 += initial.vector[k] * initial.vector[k] * n0[k];
  }

  double fourth = 0.0;
  for (std::size_t a = 0; a < dim; ++a) {
    const auto psi = final_system.vector(a);
    const double c =
        std::inner_product(psi.begin(), psi.end(), initial.vector.begin(), 0.0);
    r.amplitudes[a] = c;
    r.eon[a] = c * c;
    r.eev[a] = matrix_element(psi, psi, n0);
    r.pde += r.eon[a] * r.eev[a];
    r.mean_energy += r.eon[a] * r.energies[a];
    fourth += r.eon[a] * r.eon[a];
  }
  r.effective_dimension = 1.0 / fourth;

  r.retained = retain(r.eon, options.retention_tolerance, r.retained_weight);
  std::vector<char> kept(dim, 0);
  for (std::size_t a : r.retained) kept[a] = 1;

  // Exact t = 0 value of the retained projection, the target of the band.
  std::vector<double> projected(dim, 0.0);
  for (std::size_t a : r.retained) {
    const auto psi = final_system.vector(a);
    for (std::size_t k = 0; k < dim; ++k) projected[k] += r.amplitudes[a] * psi[k];
  }
  const double target = matrix_element(projected, projected, n0);
  const double tolerance = options.band_tolerance * spec.n_atoms;

  double total = 0.0;
  for (std::size_t a : r.retained) {
    const double ca = r.amplitudes[a];
    r.overlap_band.push_back({a, a, (ca * ca) * r.eev[a], 0.0});
    total += r.overlap_band.back().amplitude;
  }
  // Off-diagonal layers d = 1, 2, ...; required up to band_width, then only
  // while the t = 0 sum is still off target.
  std::size_t width = 0;
  for (std::size_t d = 1; d < dim; ++d) {
    if (d > options.band_width && std::abs(total - target) <= tolerance) break;
    for (std::size_t a : r.retained) {
      const std::size_t b = a + d;
      if (b >= dim || !kept[b]) continue;
      const double element =
          matrix_element(final_system.vector(a), final_system.vector(b), n0);
      r.overlap_band.push_back(
          {a, b, 2.0 * (r.amplitudes[a] * r.amplitudes[b]) * element,
           r.energies[b] - r.energies[a]});
      total += r.overlap_band.back().amplitude;
    }
    width = d;
  }
  r.band_width = width;
  std::sort(r.overlap_band.begin(), r.overlap_band.end(),
            [](const OverlapEntry& x, const OverlapEntry& y) {
              return x.alpha != y.alpha ? x.alpha < y.alpha : x.beta < y.beta;
            });
  return r;
}

std::vector<double> evolve_n0(const QuenchResult& result, std::span<const double> times,
                              unsigned threads) {
  if (result.retained_weight < 1.0 - kRequiredRetention) {
    throw RetentionError(fmt::format(
        "retained EON weight {:.12f} is below 1 - {:.0e}; lower the retention tolerance",
        result.retained_weight, kRequiredRetention));
  }
  for (double t : times) {
    if (!std::isfinite(t)) throw InvalidArgument("evolution times must be finite");
  }

  double constant = 0.0;
  std::vector<OverlapEntry> oscillating;
  for (const auto& e : result.overlap_band) {
    if (e.gap < result.degeneracy_threshold) {
      constant += e.amplitude;
    } else {
      oscillating.push_back(e);
    }
  }

  std::vector<double> out(times.size());
  parallel_for(times.size(), threads, [&](std::size_t i) {
    const double t = times[i];
    double acc = constant;
    for (const auto& e : oscillating) acc += e.amplitude * std::cos(e.gap * t);
    out[i] = acc;
  });
  return out;
}

double long_time_average(const QuenchResult& result) {
  double acc = 0.0;
  for (const auto& e : result.overlap_band) {
    if (e.gap < result.degeneracy_threshold) acc += e.amplitude;
  }
  return acc;
}

OverlapDistribution overlap_distribution(const QuenchResult& result) {
  OverlapDistribution dist;
  for (const auto& e : result.overlap_band) {
    if (e.beta != e.alpha + 1) continue;
    dist.indices.push_back(e.alpha);
    dist.amplitudes.push_back(e.amplitude);
    dist.gaps.push_back(e.gap);
  }
  double total = 0.0;
  for (double a : dist.amplitudes) total += std::abs(a);
  dist.weights.resize(dist.amplitudes.size(), 0.0);
  if (total > 0.0) {
    for (std::size_t i = 0; i < dist.weights.size(); ++i) {
      dist.weights[i] = std::abs(dist.amplitudes[i]) / total;
    }
  }
  return dist;
}

std::vector<double> log_time_grid(double t_min, double t_max, std::size_t count) {
  if (!(t_min > 0.0) || !(t_max >= t_min) || !std::isfinite(t_max) || count == 0) {
    throw InvalidArgument("log_time_grid needs 0 < t_min <= t_max and count >= 1");
  }
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = t_min;
    return grid;
  }
  const double lo = std::log(t_min);
  const double step = (std::log(t_max) - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = std::exp(lo + step * static_cast<double>(i));
  }
  grid.back() = t_max;
  return grid;
}

}  // namespace spinorq
