#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spinorq/eigensolver.hpp"
#include "spinorq/model.hpp"

namespace spinorq {

enum class InitialState { ground, most_excited };

/// Sudden quench q_initial -> q_final at fixed N and c1. The system starts in
/// the ground (or most-excited) state of H(q_initial).
struct QuenchSpec {
  int n_atoms = 2;
  double c1 = -1.0;
  double q_initial = 0.0;
  double q_final = 0.0;
  InitialState initial = InitialState::ground;

  SpinorModel initial_model() const { return {n_atoms, c1, q_initial}; }
  SpinorModel final_model() const { return {n_atoms, c1, q_final}; }
  void validate() const;
};

struct QuenchOptions {
  /// Eigenstates are retained until their EON weight reaches 1 - tolerance;
  /// zero keeps all of them.
  double retention_tolerance = 1e-8;
  /// Smallest |alpha - beta| kept in the overlap band.
  std::size_t band_width = 5;
  /// The band is widened past band_width until its t = 0 sum matches
  /// <psi_R|N0|psi_R> (psi_R the retained projection) to band_tolerance * N.
  double band_tolerance = 1e-9;
};

/// One term A_ab cos(gap t) of the N0 dynamics, alpha <= beta.
struct OverlapEntry {
  std::size_t alpha = 0;
  std::size_t beta = 0;
  double amplitude = 0.0;
  double gap = 0.0;
};

struct QuenchResult {
  int n_atoms = 0;
  std::size_t dim = 0;
  std::vector<double> energies;
  /// c_alpha = <psi_alpha(q_f)|psi_0(q_i)>, sign convention of the eigensolver.
  std::vector<double> amplitudes;
  std::vector<double> eon;
  std::vector<double> eev;
  double mean_energy = 0.0;
  double pde = 0.0;
  double effective_dimension = 0.0;
  /// <psi_0|N0|psi_0> evaluated directly in the Fock basis.
  double initial_n0 = 0.0;
  double operator_norm = 0.0;

  std::vector<std::size_t> retained;  // ascending
  double retained_weight = 0.0;
  std::size_t band_width = 0;  // width actually used
  std::vector<OverlapEntry> overlap_band;  // sorted by (alpha, beta)
  /// Gaps below this are treated as exact degeneracies during evolution.
  double degeneracy_threshold = 0.0;

  /// |sum of band amplitudes - initial_n0|, the t = 0 error of the truncation.
  double truncation_error() const;
};

QuenchResult run_quench(const QuenchSpec& spec, const QuenchOptions& options = {});

/// Same, reusing an existing decomposition of H(q_final).
QuenchResult run_quench(const QuenchSpec& spec, const EigenSystem& final_system,
                        const QuenchOptions& options = {});

/// <N0(t)> = sum over the band of A_ab cos(gap_ab t). Throws RetentionError
/// if the retained EON weight is below 1 - 1e-8.
std::vector<double> evolve_n0(const QuenchResult& result, std::span<const double> times,
                              unsigned threads = 1);

/// Infinite-time average of the truncated signal: the diagonal terms plus
/// every term whose gap is below the degeneracy threshold.
double long_time_average(const QuenchResult& result);

/// First off-diagonal of the overlap matrix over retained neighbours.
struct OverlapDistribution {
  std::vector<std::size_t> indices;  // alpha of the pair (alpha, alpha + 1)
  std::vector<double> amplitudes;    // A_{alpha, alpha+1}
  std::vector<double> gaps;          // E_{alpha+1} - E_alpha
  std::vector<double> weights;       // |A| / sum |A|, all zero if the sum vanishes
};

OverlapDistribution overlap_distribution(const QuenchResult& result);

/// count log-spaced times in [t_min, t_max].
std::vector<double> log_time_grid(double t_min, double t_max, std::size_t count);

}  // namespace spinorq
