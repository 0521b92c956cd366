#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "spinorq/eigensolver.hpp"
#include "spinorq/quench.hpp"

namespace spinorq {

enum class WindowVariant { below, symmetric, above };

std::string_view to_string(WindowVariant v);

/// Microcanonical energy window: [c - dE, c], [c - dE, c + dE] or [c, c + dE].
struct McWindow {
  double center = 0.0;
  double half_width = 0.0;
  WindowVariant variant = WindowVariant::symmetric;
  std::vector<std::size_t> members;  // ascending eigenstate indices
};

/// Throws NoValidWindow if no eigenvalue falls inside the window.
McWindow make_window(std::span<const double> energies, double center, double half_width,
                     WindowVariant variant = WindowVariant::symmetric);

double median_energy(std::span<const double> energies);

/// Symmetric window of total width `width` centred on the median eigenvalue.
McWindow fixed_interval(std::span<const double> energies, double width);

struct WindowSweepOptions {
  double sensitivity_tol = 1e-3;
  std::size_t steps = 40;
  double min_fraction = 1e-4;  // of the spectral span
  double max_fraction = 0.1;
};

/// Sweeps dE geometrically around E_o and returns the widest window (of the
/// requested variant) up to which the three variant predictions agree and
/// the symmetric prediction is stable between successive steps, both to
/// sensitivity_tol relative. Throws NoValidWindow if no such window exists.
McWindow select_window(const QuenchResult& result, WindowVariant variant,
                       const WindowSweepOptions& options = {});

/// Mean of eev over the window members.
double mc_prediction(const McWindow& window, std::span<const double> eev);

struct EthCondition {
  double value = 0.0;       // dE^2 |f''(E_o) / f(E_o)|
  double smoothed = 0.0;    // f(E_o)
  double curvature = 0.0;   // f''(E_o)
  bool division_hazard = false;  // f(E_o) vanished; value is +-infinity
};

/// f is a local quadratic least-squares fit of eev against energy over the
/// 2 ceil(D/200) + 1 eigenstates closest to the window centre.
EthCondition eth_condition(std::span<const double> energies, std::span<const double> eev,
                           const McWindow& window);

struct EthReport {
  double mc_prediction = 0.0;
  double noise = 0.0;                // RMS deviation from mc_prediction
  double support = 0.0;              // max - min
  double max_divergence = 0.0;       // max |EEV - mc_prediction|
  double mean_eev_difference = 0.0;  // mean |EEV_{n+1} - EEV_n| over members
  std::size_t n_members = 0;
};

/// Requires at least two members.
EthReport eth_indicators(const McWindow& window, std::span<const double> eev);

/// (sum_n psi_n^4)^-1. Rejects vectors whose squared norm differs from 1 by
/// more than 1e-8.
double participation_ratio(std::span<const double> vector);

std::vector<double> participation_ratios(const EigenSystem& system);

/// EEVs of the eigenstates of `system` for the observable with diagonal n0.
std::vector<double> eigenstate_expectations(const EigenSystem& system,
                                            std::span<const double> n0);

struct KinkOptions {
  double margin_fraction = 0.02;     // edge exclusion on each end, fraction of D
  double agreement_fraction = 0.02;  // cross-check tolerance, fraction of D
  double prominence = 2.0;  // PR must rise by this factor on both sides of the dip
};

struct KinkReport {
  std::size_t index = 0;             // PR minimum
  std::size_t curvature_index = 0;   // max |second difference of EEV|
  std::size_t spacing_index = 0;     // min nearest-neighbour level spacing
  std::size_t margin = 0;
  bool curvature_agrees = false;
  bool spacing_agrees = false;
};

/// Locates the nonthermal kink. Throws NoKink when the PR minimum over the
/// interior is not a dip: it sits on the edge of the search range, or PR does
/// not rise by `prominence` on both sides of it.
KinkReport detect_kink(const EigenSystem& system, std::span<const double> eev,
                       const KinkOptions& options = {});

enum class Region { I, II, III, IV };

std::string_view to_string(Region r);

struct ClassifyOptions {
  double overlap_half_width_fraction = 0.02;  // of D, around the kink index
  double overlap_threshold = 1e-2;            // EON weight flagging "traces"
};

/// EON weight within +-ceil(fraction * D) of the kink index.
double kink_overlap(const QuenchResult& result, const KinkReport& kink,
                    const ClassifyOptions& options = {});

/// Quench-map region. AFM quenches are mapped onto the FM frame through
/// H(c1, q) = -H(-c1, -q), which exchanges ground and most-excited states.
/// Pass std::nullopt for `kink` when the final Hamiltonian has none.
Region classify_region(const QuenchSpec& spec, const QuenchResult& result,
                       const std::optional<KinkReport>& kink,
                       const ClassifyOptions& options = {});

/// Runs kink detection on `final_system` and classifies.
Region classify_region(const QuenchSpec& spec, const QuenchResult& result,
                       const EigenSystem& final_system,
                       const ClassifyOptions& options = {});

}  // namespace spinorq
