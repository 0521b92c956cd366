#include "spinorq/analysis.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "spinorq/errors.hpp"
#include "spinorq/parallel.hpp"

namespace spinorq {

std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(step > 0.0) || hi < lo) {
    throw InvalidArgument(fmt::format("invalid grid [{}, {}] step {}", lo, hi, step));
  }
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-3)) + 1;
  if (count > 10'000'000) throw InvalidArgument("grid has too many points");
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12;
  }
  return grid;
}

std::vector<double> level_crossings(std::span<const double> x, std::span<const double> y,
                                    double level) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < std::min(x.size(), y.size()); ++i) {
    const double a = y[i] - level;
    const double b = y[i + 1] - level;
    if (a == 0.0) {
      out.push_back(x[i]);
    } else if (a * b < 0.0) {
      out.push_back(x[i] + (x[i + 1] - x[i]) * a / (a - b));
    }
  }
  if (!x.empty() && x.size() == y.size() && y.back() == level) out.push_back(x.back());
  return out;
}

GroundScan ground_scan(int n_atoms, double c1, std::span<const double> qs, unsigned threads) {
  GroundScan scan;
  scan.q.assign(qs.begin(), qs.end());
  scan.n0_fraction.resize(qs.size());
  parallel_for(qs.size(), threads, [&](std::size_t i) {
    const SpinorModel model{n_atoms, c1, qs[i]};
    const auto n0 = build_observable_n0(model);
    const auto gs = extremal_state(build_hamiltonian(model), Extremum::ground);
    double acc = 0.0;
    for (std::size_t k = 0; k < n0.size(); ++k) acc += gs.vector[k] * gs.vector[k] * n0[k];
    scan.n0_fraction[i] = acc / n_atoms;
  });
  return scan;
}

QuenchMap quench_map(int n_atoms, double c1, InitialState initial,
                     std::span<const double> q_initial, std::span<const double> q_final,
                     const QuenchMapOptions& options, unsigned threads) {
  QuenchMap map;
  map.q_initial.assign(q_initial.begin(), q_initial.end());
  map.q_final.assign(q_final.begin(), q_final.end());
  map.cells.resize(q_initial.size() * q_final.size());
  for (std::size_t i = 0; i < q_initial.size(); ++i) {
    for (std::size_t f = 0; f < q_final.size(); ++f) {
      auto& cell = map.cells[i * q_final.size() + f];
      cell.q_initial = q_initial[i];
      cell.q_final = q_final[f];
    }
  }

  // One decomposition per q_final column, shared by every q_initial.
  parallel_for(q_final.size(), threads, [&](std::size_t f) {
    EigenSystem system;
    try {
      system = decompose(build_hamiltonian({n_atoms, c1, q_final[f]}));
    } catch (const std::exception& e) {
      for (std::size_t i = 0; i < q_initial.size(); ++i) {
        map.cells[i * q_final.size() + f].error = e.what();
      }
      return;
    }
    std::optional<KinkReport> kink;
    bool kink_checked = false;
    for (std::size_t i = 0; i < q_initial.size(); ++i) {
      auto& cell = map.cells[i * q_final.size() + f];
      try {
        const QuenchSpec spec{n_atoms, c1, q_initial[i], q_final[f], initial};
        const QuenchResult result = run_quench(spec, system, options.quench);
        if (!kink_checked) {
          try {
            kink = detect_kink(system, result.eev, options.kink);
          } catch (const NoKink&) {
          }
          kink_checked = true;
        }
        cell.pde = result.pde;
        cell.region = classify_region(spec, result, kink, options.classify);
      } catch (const std::exception& e) {
        cell.pde = std::nan("");
        cell.error = e.what();
      }
    }
  });
  return map;
}

std::vector<EthScanRow> eth_scan(double c1, double q, double width, std::span<const int> sizes,
                                 unsigned threads, const SpectrumSink& sink) {
  std::vector<EthScanRow> rows(sizes.size());
  parallel_for(sizes.size(), threads, [&](std::size_t i) {
    const SpinorModel model{sizes[i], c1, q};
    const EigenSystem system = decompose(build_hamiltonian(model));
    std::vector<double> eev = eigenstate_expectations(system, build_observable_n0(model));
    if (sink) sink(sizes[i], system, eev);
    for (double& x : eev) x /= sizes[i];
    const McWindow window = fixed_interval(system.values, width);
    rows[i] = {sizes[i], window.center, eth_indicators(window, eev)};
  });
  return rows;
}

std::vector<PrScanRow> pr_scan(double c1, double q, double mid_width, double kink_width,
                               std::span<const int> sizes, const KinkOptions& kink,
                               unsigned threads) {
  std::vector<PrScanRow> rows(sizes.size());
  parallel_for(sizes.size(), threads, [&](std::size_t i) {
    const SpinorModel model{sizes[i], c1, q};
    const EigenSystem system = decompose(build_hamiltonian(model));
    const auto pr = participation_ratios(system);
    auto window_mean = [&](const McWindow& w) {
      double acc = 0.0;
      for (std::size_t a : w.members) acc += pr[a];
      return acc / static_cast<double>(w.members.size());
    };
    PrScanRow& row = rows[i];
    row.n_atoms = sizes[i];
    row.ground = pr.front();
    row.most_excited = pr.back();
    row.mid_window = window_mean(fixed_interval(system.values, mid_width));
    try {
      const auto eev = eigenstate_expectations(system, build_observable_n0(model));
      const KinkReport k = detect_kink(system, eev, kink);
      row.kink_index = k.index;
      row.kink_window = window_mean(make_window(system.values, system.values[k.index],
                                                0.5 * kink_width, WindowVariant::symmetric));
    } catch (const NoKink&) {
    }
  });
  return rows;
}

std::vector<SizeScanRow> size_scan(const QuenchSpec& base, std::span<const int> sizes,
                                   const QuenchOptions& quench,
                                   const TimescaleOptions& timescales, unsigned threads) {
  std::vector<SizeScanRow> rows(sizes.size());
  parallel_for(sizes.size(), threads, [&](std::size_t i) {
    QuenchSpec spec = base;
    spec.n_atoms = sizes[i];
    const QuenchResult result = run_quench(spec, quench);
    SizeScanRow& row = rows[i];
    row.n_atoms = sizes[i];
    row.effective_dimension = result.effective_dimension;
    row.pde = result.pde;
    row.mean_energy = result.mean_energy;
    try {
      row.timescales = predict_timescales(result, timescales);
    } catch (const UndefinedTimescale& e) {
      row.note = e.what();
    }
  });
  return rows;
}

}  // namespace spinorq
