#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spinorq/eigensolver.hpp"
#include "spinorq/quench.hpp"
#include "spinorq/thermalization.hpp"
#include "spinorq/timescales.hpp"

// Multi-run scans built from the module operations. Each scan point is
// independent; results are stored by index, so output does not depend on the
// thread count or scheduling.
namespace spinorq {

/// lo, lo + step, ... up to hi inclusive (within step/1000); values are
/// computed as lo + i * step and rounded to 12 decimals.
std::vector<double> linear_grid(double lo, double hi, double step);

/// x positions where the piecewise-linear curve (x, y) crosses `level`.
std::vector<double> level_crossings(std::span<const double> x, std::span<const double> y,
                                    double level);

struct GroundScan {
  std::vector<double> q;
  std::vector<double> n0_fraction;  // <N0>/N in the ground state
};

GroundScan ground_scan(int n_atoms, double c1, std::span<const double> qs,
                       unsigned threads = 1);

struct QuenchMapCell {
  double q_initial = 0.0;
  double q_final = 0.0;
  double pde = 0.0;
  std::optional<Region> region;
  std::string error;
};

struct QuenchMapOptions {
  QuenchOptions quench;
  KinkOptions kink;
  ClassifyOptions classify;
};

/// Cells are ordered q_initial-major. Per-cell failures are recorded in
/// QuenchMapCell::error and the map still completes.
struct QuenchMap {
  std::vector<double> q_initial;
  std::vector<double> q_final;
  std::vector<QuenchMapCell> cells;

  const QuenchMapCell& at(std::size_t i, std::size_t f) const {
    return cells[i * q_final.size() + f];
  }
};

QuenchMap quench_map(int n_atoms, double c1, InitialState initial,
                     std::span<const double> q_initial, std::span<const double> q_final,
                     const QuenchMapOptions& options = {}, unsigned threads = 1);

/// Called once per system size with the decomposition and its EEVs.
using SpectrumSink =
    std::function<void(int n_atoms, const EigenSystem&, std::span<const double> eev)>;

struct EthScanRow {
  int n_atoms = 0;
  double center = 0.0;
  EthReport report;  // indicators of N0/N
};

/// ETH indicators of the per-particle observable N0/N on the fixed interval
/// of total width `width` around the median eigenvalue of H(c1, q).
std::vector<EthScanRow> eth_scan(double c1, double q, double width, std::span<const int> sizes,
                                 unsigned threads = 1, const SpectrumSink& sink = {});

struct PrScanRow {
  int n_atoms = 0;
  double ground = 0.0;
  double most_excited = 0.0;
  double mid_window = 0.0;  // mean PR within mid_width around the median energy
  std::optional<std::size_t> kink_index;
  std::optional<double> kink_window;  // mean PR within kink_width around E_kink
};

std::vector<PrScanRow> pr_scan(double c1, double q, double mid_width, double kink_width,
                               std::span<const int> sizes, const KinkOptions& kink = {},
                               unsigned threads = 1);

struct SizeScanRow {
  int n_atoms = 0;
  double effective_dimension = 0.0;
  double pde = 0.0;
  double mean_energy = 0.0;
  std::optional<TimescaleReport> timescales;
  std::string note;  // why timescales are undefined, if they are
};

/// Runs `base` at each size; timescale failures are recorded, not thrown.
std::vector<SizeScanRow> size_scan(const QuenchSpec& base, std::span<const int> sizes,
                                   const QuenchOptions& quench = {},
                                   const TimescaleOptions& timescales = {},
                                   unsigned threads = 1);

}  // namespace spinorq
