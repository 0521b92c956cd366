#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace spinorq {

/// Spin-1 condensate in the single-mode approximation, zero-magnetization
/// sector. Energies are measured in units of |c1|; c1 < 0 is ferromagnetic.
struct SpinorModel {
  int n_atoms = 2;
  double c1 = -1.0;
  double q = 0.0;

  /// Throws InvalidArgument unless n_atoms is even and >= 2, c1 != 0 and
  /// both c1 and q are finite.
  void validate() const;
};

/// Fock states |k, N-2k, k> for k = 0..N/2, labelled by their m=0 population.
struct FockSector {
  std::size_t dim = 0;
  std::vector<int> n0_values;

  static FockSector of(const SpinorModel& model);
};

/// Real symmetric tridiagonal matrix; the off-diagonal is stored once.
struct TridiagonalOperator {
  std::vector<double> diagonal;
  std::vector<double> offdiagonal;

  std::size_t dim() const noexcept { return diagonal.size(); }

  /// Infinity norm (max absolute row sum), an upper bound on the spectral radius.
  double norm_bound() const noexcept;

  /// Throws InvalidArgument on size mismatch or non-finite entries.
  void validate() const;

  /// y = T x
  void apply(const double* x, double* y) const noexcept;
};

/// Hamiltonian c1 L^2 / N - q N0 written in the Fock basis of the sector.
///
/// Row k acts on |k, N-2k, k>. The diagonal collects the density-density
/// terms n1(n1-1) + n-1(n-1 - 1) - 2 n1 n-1 + 2 n0 (n1 + n-1), which simplify
/// to k (4 (N - 2k) - 2), and the pair-exchange term a1+ a-1+ a0 a0 couples
/// k to k+1 with amplitude 2 (k+1) sqrt((N-2k)(N-2k-1)).
TridiagonalOperator build_hamiltonian(const SpinorModel& model);

/// Diagonal of N0 in the Fock basis: entry k is N - 2k.
std::vector<double> build_observable_n0(const SpinorModel& model);

/// Hopping J(i) and onsite potential eta(i) of the equivalent single-particle
/// chain, where site i is Fock index k.
struct LatticeParameters {
  std::vector<double> hopping;
  std::vector<double> onsite;
};

LatticeParameters lattice_parameters(const SpinorModel& model);

/// CSV with columns k, diagonal, offdiagonal (offdiagonal empty on the last row).
void write_operator_csv(std::ostream& out, const TridiagonalOperator& op);

}  // namespace spinorq
