#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spinorq/model.hpp"

namespace spinorq {

/// Full spectral decomposition of a real symmetric tridiagonal operator.
///
/// Eigenvalues are ascending (index 0 is the ground state). Eigenvectors are
/// stored column-major, one contiguous column per eigenvalue, and each column
/// is signed so that its largest-magnitude entry is positive.
struct EigenSystem {
  std::size_t dim = 0;
  std::vector<double> values;
  std::vector<double> vectors;
  /// Spectral radius max(|E_0|, |E_{D-1}|).
  double operator_norm = 0.0;
  /// Indices a with E_{a+1} - E_a < 1e-12 * operator_norm.
  std::vector<std::size_t> near_degenerate;

  std::span<const double> vector(std::size_t alpha) const {
    return {vectors.data() + alpha * dim, dim};
  }
  double component(std::size_t k, std::size_t alpha) const {
    return vectors[alpha * dim + k];
  }
};

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;
};

enum class Extremum { ground, most_excited };

/// Eigenvalues by implicit-shift QL (O(D^2)), eigenvectors by inverse
/// iteration on a pivoted LU of T - lambda I (O(D) each). Eigenvalues closer
/// than 1e-5 * ||T|| form a cluster whose vectors are orthogonalized against
/// each other with modified Gram-Schmidt.
///
/// The operator is first brought to a sign-canonical representative (first
/// nonzero entry positive), so decompose(-T) is the exact mirror of
/// decompose(T): negated reversed eigenvalues and identical eigenvectors.
///
/// Throws InvalidArgument for malformed input and ConvergenceError (with the
/// offending eigenvalue index) if an iteration bound is exceeded.
EigenSystem decompose(const TridiagonalOperator& op);

/// Ascending eigenvalues only.
std::vector<double> eigenvalues(const TridiagonalOperator& op);

/// Lowest or highest eigenpair via Sturm-sequence bisection and inverse
/// iteration. The most-excited state of T is computed as the ground state
/// of -T.
EigenPair extremal_state(const TridiagonalOperator& op, Extremum which);

/// Fixes the sign of v so that its largest-magnitude entry is positive.
void canonicalize_sign(std::span<double> v);

}  // namespace spinorq
