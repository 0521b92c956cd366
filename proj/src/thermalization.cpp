#include "spinorq/thermalization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "spinorq/errors.hpp"

namespace spinorq {
namespace {

std::size_t fraction_of(std::size_t dim, double fraction) {
  return static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(dim)));
}

bool in_window(double e, double center, double half_width, WindowVariant variant) {
  switch (variant) {
    case WindowVariant::below: return e >= center - half_width && e <= center;
    case WindowVariant::symmetric:
      return e >= center - half_width && e <= center + half_width;
    case WindowVariant::above: return e >= center && e <= center + half_width;
  }
  return false;
}

std::vector<std::size_t> members_of(std::span<const double> energies, double center,
                                    double half_width, WindowVariant variant) {
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    if (in_window(energies[i], center, half_width, variant)) members.push_back(i);
  }
  return members;
}

double mean_over(const std::vector<std::size_t>& members, std::span<const double> eev) {
  double acc = 0.0;
  for (std::size_t i : members) acc += eev[i];
  return acc / static_cast<double>(members.size());
}

// Solves the 3x3 system m x = rhs by Gaussian elimination with partial pivoting.
std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> m,
                             std::array<double, 3> rhs) {
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    if (m[col][col] == 0.0) throw InvalidArgument("singular local fit for the EEV curve");
    for (int r = col + 1; r < 3; ++r) {
      const double f = m[r][col] / m[col][col];
      for (int c = col; c < 3; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::array<double, 3> x{};
  for (int r = 2; r >= 0; --r) {
    double acc = rhs[r];
    for (int c = r + 1; c < 3; ++c) acc -= m[r][c] * x[c];
    x[r] = acc / m[r][r];
  }
  return x;
}

}  // namespace

std::string_view to_string(WindowVariant v) {
  switch (v) {
    case WindowVariant::below: return "below";
    case WindowVariant::symmetric: return "symmetric";
    case WindowVariant::above: return "above";
  }
  return "?";
}

std::string_view to_string(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    case Region::IV: return "IV";
  }
  return "?";
}

McWindow make_window(std::span<const double> energies, double center, double half_width,
                     WindowVariant variant) {
  if (!std::isfinite(center) || !(half_width >= 0.0) || !std::isfinite(half_width)) {
    throw InvalidArgument("window centre and half-width must be finite, half-width >= 0");
  }
  McWindow w{center, half_width, variant, members_of(energies, center, half_width, variant)};
  if (w.members.empty()) {
    throw NoValidWindow(fmt::format("no eigenstates in the {} window {} +- {}",
                                    to_string(variant), center, half_width));
  }
  return w;
}

double median_energy(std::span<const double> energies) {
  if (energies.empty()) throw InvalidArgument("median of an empty spectrum");
  std::vector<double> sorted(energies.begin(), energies.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  return n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

McWindow fixed_interval(std::span<const double> energies, double width) {
  return make_window(energies, median_energy(energies), 0.5 * width,
                     WindowVariant::symmetric);
}

McWindow select_window(const QuenchResult& result, WindowVariant variant,
                       const WindowSweepOptions& options) {
  const auto& energies = result.energies;
  if (energies.size() < 2) throw NoValidWindow("spectrum too small for a window sweep");
  if (options.steps < 2 || !(options.min_fraction > 0.0) ||
      !(options.max_fraction > options.min_fraction) || !(options.sensitivity_tol > 0.0)) {
    throw InvalidArgument("invalid window sweep options");
  }
  const double span = energies.back() - energies.front();
  const double e0 = result.mean_energy;
  const double lo = std::log(span * options.min_fraction);
  const double step = (std::log(span * options.max_fraction) - lo) /
                      static_cast<double>(options.steps - 1);

  std::optional<double> previous;
  std::optional<double> accepted;
  for (std::size_t s = 0; s < options.steps; ++s) {
    const double de = std::exp(lo + step * static_cast<double>(s));
    const auto below = members_of(energies, e0, de, WindowVariant::below);
    const auto above = members_of(energies, e0, de, WindowVariant::above);
    if (below.empty() || above.empty()) continue;
    const auto sym = members_of(energies, e0, de, WindowVariant::symmetric);
    const double pb = mean_over(below, result.eev);
    const double ps = mean_over(sym, result.eev);
    const double pa = mean_over(above, result.eev);
    const double spread = std::max({pb, ps, pa}) - std::min({pb, ps, pa});
    const double tol = options.sensitivity_tol * std::abs(ps);
    const bool stable = spread <= tol && (!previous || std::abs(ps - *previous) <= tol);
    if (!stable) break;
    previous = ps;
    accepted = de;
  }
  if (!accepted) {
    throw NoValidWindow(fmt::format(
        "microcanonical prediction has no plateau around E_o = {:.6g}", e0));
  }
  return make_window(energies, e0, *accepted, variant);
}

double mc_prediction(const McWindow& window, std::span<const double> eev) {
  if (window.members.empty()) throw NoValidWindow("empty microcanonical window");
  return mean_over(window.members, eev);
}

EthCondition eth_condition(std::span<const double> energies, std::span<const double> eev,
                           const McWindow& window) {
  const std::size_t dim = energies.size();
  if (eev.size() != dim || dim < 3) {
    throw InvalidArgument("eth_condition needs matching energies/eev with D >= 3");
  }
  const std::size_t half = fraction_of(dim, 1.0 / 200.0);
  const double e0 = window.center;
  const auto nearest = static_cast<std::size_t>(
      std::min_element(energies.begin(), energies.end(),
                       [&](double a, double b) { return std::abs(a - e0) < std::abs(b - e0); }) -
      energies.begin());
  std::size_t first = nearest > half ? nearest - half : 0;
  std::size_t last = std::min(dim - 1, first + 2 * half);
  first = last >= 2 * half ? last - 2 * half : 0;

  double mean = 0.0;
  for (std::size_t i = first; i <= last; ++i) mean += eev[i];
  mean /= static_cast<double>(last - first + 1);

  // Fit in a scaled abscissa to keep the normal equations well conditioned.
  const double scale = std::max(std::abs(energies[last] - e0), std::abs(energies[first] - e0));
  const double h = scale > 0.0 ? scale : 1.0;
  std::array<std::array<double, 3>, 3> m{};
  std::array<double, 3> rhs{};
  for (std::size_t i = first; i <= last; ++i) {
    const double x = (energies[i] - e0) / h;
    const std::array<double, 3> basis{1.0, x, x * x};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) m[r][c] += basis[r] * basis[c];
      rhs[r] += basis[r] * (eev[i] - mean);
    }
  }
  const auto p = solve3(m, rhs);

  EthCondition out;
  out.smoothed = mean + p[0];
  out.curvature = 2.0 * p[2] / (h * h);
  const double de2 = window.half_width * window.half_width;
  if (out.smoothed == 0.0 ||
      std::abs(out.smoothed) < std::numeric_limits<double>::epsilon() * std::abs(mean)) {
    out.division_hazard = true;
    out.value = out.curvature == 0.0
                    ? 0.0
                    : std::copysign(std::numeric_limits<double>::infinity(), out.curvature);
    return out;
  }
  out.value = de2 * std::abs(out.curvature / out.smoothed);
  return out;
}

EthReport eth_indicators(const McWindow& window, std::span<const double> eev) {
  if (window.members.size() < 2) {
    throw InvalidArgument("ETH indicators need a window with at least two members");
  }
  EthReport r;
  r.n_members = window.members.size();
  r.mc_prediction = mean_over(window.members, eev);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double sq = 0.0;
  double steps = 0.0;
  for (std::size_t j = 0; j < window.members.size(); ++j) {
    const double x = eev[window.members[j]];
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    sq += (x - r.mc_prediction) * (x - r.mc_prediction);
    r.max_divergence = std::max(r.max_divergence, std::abs(x - r.mc_prediction));
    if (j > 0) steps += std::abs(x - eev[window.members[j - 1]]);
  }
  r.noise = std::sqrt(sq / static_cast<double>(r.n_members));
  r.support = hi - lo;
  r.mean_eev_difference = steps / static_cast<double>(r.n_members - 1);
  return r;
}

double participation_ratio(std::span<const double> vector) {
  double norm2 = 0.0;
  double fourth = 0.0;
  for (double x : vector) {
    const double x2 = x * x;
    norm2 += x2;
    fourth += x2 * x2;
  }
  if (std::abs(norm2 - 1.0) > 1e-8) {
    throw InvalidArgument(
        fmt::format("participation ratio needs a unit vector, squared norm is {}", norm2));
  }
  return 1.0 / fourth;
}

std::vector<double> participation_ratios(const EigenSystem& system) {
  std::vector<double> out(system.dim);
  for (std::size_t a = 0; a < system.dim; ++a) out[a] = participation_ratio(system.vector(a));
  return out;
}

std::vector<double> eigenstate_expectations(const EigenSystem& system,
                                            std::span<const double> n0) {
  if (n0.size() != system.dim) throw InvalidArgument("observable dimension mismatch");
  std::vector<double> out(system.dim);
  for (std::size_t a = 0; a < system.dim; ++a) {
    const auto psi = system.vector(a);
    double acc = 0.0;
    for (std::size_t k = 0; k < system.dim; ++k) acc += (psi[k] * psi[k]) * n0[k];
    out[a] = acc;
  }
  return out;
}

KinkReport detect_kink(const EigenSystem& system, std::span<const double> eev,
                       const KinkOptions& options) {
  const std::size_t dim = system.dim;
  if (eev.size() != dim) throw InvalidArgument("eev length does not match the eigensystem");
  KinkReport k;
  k.margin = std::max<std::size_t>(1, fraction_of(dim, options.margin_fraction));
  if (dim < 2 * k.margin + 3) {
    throw NoKink(fmt::format("spectrum of dimension {} too small for a {}-state margin", dim,
                             k.margin));
  }
  const std::size_t first = k.margin;
  const std::size_t last = dim - k.margin - 1;

  const auto pr = participation_ratios(system);
  k.index = first;
  for (std::size_t a = first; a <= last; ++a) {
    if (pr[a] < pr[k.index]) k.index = a;
  }
  if (k.index == first || k.index == last) {
    throw NoKink(fmt::format(
        "participation ratio has no interior minimum (edge of range at index {})", k.index));
  }
  // Edge fluctuations of a monotone PR can put the argmin a few states inside
  // the range; a dip must rise on both sides.
  const double left = *std::max_element(pr.begin() + first, pr.begin() + k.index + 1);
  const double right = *std::max_element(pr.begin() + k.index, pr.begin() + last + 1);
  if (std::min(left, right) < options.prominence * pr[k.index]) {
    throw NoKink(fmt::format(
        "participation ratio minimum at index {} is not a dip (rise {:.3g} / {:.3g})", k.index,
        left / pr[k.index], right / pr[k.index]));
  }

  double best_curvature = -1.0;
  for (std::size_t a = first; a <= last; ++a) {
    const double c = std::abs(eev[a + 1] - 2.0 * eev[a] + eev[a - 1]);
    if (c > best_curvature) {
      best_curvature = c;
      k.curvature_index = a;
    }
  }
  double best_gap = std::numeric_limits<double>::infinity();
  for (std::size_t a = first; a < last; ++a) {
    const double g = system.values[a + 1] - system.values[a];
    if (g < best_gap) {
      best_gap = g;
      k.spacing_index = a;
    }
  }
  const double tol = options.agreement_fraction * static_cast<double>(dim);
  auto close = [&](std::size_t other) {
    return std::abs(static_cast<double>(other) - static_cast<double>(k.index)) <= tol;
  };
  k.curvature_agrees = close(k.curvature_index);
  k.spacing_agrees = close(k.spacing_index);
  return k;
}

double kink_overlap(const QuenchResult& result, const KinkReport& kink,
                    const ClassifyOptions& options) {
  const std::size_t h = fraction_of(result.dim, options.overlap_half_width_fraction);
  const std::size_t lo = kink.index > h ? kink.index - h : 0;
  const std::size_t hi = std::min(result.dim - 1, kink.index + h);
  double w = 0.0;
  for (std::size_t a = lo; a <= hi; ++a) w += result.eon[a];
  return w;
}

Region classify_region(const QuenchSpec& spec, const QuenchResult& result,
                       const std::optional<KinkReport>& kink,
                       const ClassifyOptions& options) {
  double qi = spec.q_initial;
  double qf = spec.q_final;
  bool from_ground = spec.initial == InitialState::ground;
  if (spec.c1 > 0.0) {
    qi = -qi;
    qf = -qf;
    from_ground = !from_ground;
  }

  if (from_ground) {
    if ((qi > 4.0 && qf > 0.0 && qf < 4.0) || (qi < -4.0 && qf > -4.0 && qf < 0.0)) {
      return Region::III;
    }
    if (std::abs(qi) < 4.0) {
      const bool traces =
          kink && kink_overlap(result, *kink, options) > options.overlap_threshold;
      return traces ? Region::II : Region::I;
    }
    return Region::IV;
  }
  // Most-excited state of the FM Hamiltonian, i.e. the AFM ground state.
  if ((qi < 0.0 && qf > 0.0 && qf < 4.0) || (qi > 0.0 && qf > -4.0 && qf < 0.0)) {
    return Region::III;
  }
  return Region::IV;
}

Region classify_region(const QuenchSpec& spec, const QuenchResult& result,
                       const EigenSystem& final_system, const ClassifyOptions& options) {
  std::optional<KinkReport> kink;
  try {
    kink = detect_kink(final_system, result.eev);
  } catch (const NoKink&) {
  }
  return classify_region(spec, result, kink, options);
}

}  // namespace spinorq
