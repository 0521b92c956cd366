#pragma once

// Brute-force second-quantized construction of the spin-1 Hamiltonian on the
// full three-mode Fock space at fixed N. Every term is applied operator by
// operator to occupation-number states, with no use of the closed-form
// matrix elements in the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <vector>

namespace oracle {

// Mode indices: 0 -> m = +1, 1 -> m = 0, 2 -> m = -1.
using Occupation = std::array<int, 3>;

struct Ladder {
  int mode;
  bool dagger;
};

// A product of ladder operators with a prefactor; ops[0] acts last.
struct Term {
  double coefficient;
  std::vector<Ladder> ops;
};

// Applies the term to |state>; returns false when the result vanishes.
inline bool apply(const Term& term, Occupation& state, double& amplitude) {
  amplitude = term.coefficient;
  for (auto it = term.ops.rbegin(); it != term.ops.rend(); ++it) {
    int& n = state[it->mode];
    if (it->dagger) {
      amplitude *= std::sqrt(static_cast<double>(n + 1));
      ++n;
    } else {
      if (n == 0) return false;
      amplitude *= std::sqrt(static_cast<double>(n));
      --n;
    }
  }
  return true;
}

inline std::vector<Term> hamiltonian_terms(int n_atoms, double c1, double q) {
  const double s = c1 / n_atoms;
  constexpr int p = 0, z = 1, m = 2;
  auto c = [](int mode) { return Ladder{mode, true}; };
  auto a = [](int mode) { return Ladder{mode, false}; };
  return {
      {s, {c(p), c(p), a(p), a(p)}},
      {s, {c(m), c(m), a(m), a(m)}},
      {-2.0 * s, {c(p), c(m), a(p), a(m)}},
      {2.0 * s, {c(p), c(z), a(z), a(p)}},
      {2.0 * s, {c(m), c(z), a(z), a(m)}},
      {2.0 * s, {c(z), c(z), a(p), a(m)}},
      {2.0 * s, {c(p), c(m), a(z), a(z)}},
      {-q, {c(z), a(z)}},
  };
}

struct FockMatrix {
  std::vector<Occupation> basis;
  std::vector<std::vector<double>> h;  // dense, basis.size() squared
};

// Full fixed-N space, all (n1, n0, n-1) with n1 + n0 + n-1 = N.
inline FockMatrix full_space(int n_atoms, double c1, double q) {
  FockMatrix fm;
  std::map<Occupation, std::size_t> index;
  for (int n1 = 0; n1 <= n_atoms; ++n1) {
    for (int nm = 0; n1 + nm <= n_atoms; ++nm) {
      const Occupation s{n1, n_atoms - n1 - nm, nm};
      index[s] = fm.basis.size();
      fm.basis.push_back(s);
    }
  }
  const std::size_t d = fm.basis.size();
  fm.h.assign(d, std::vector<double>(d, 0.0));
  for (const Term& t : hamiltonian_terms(n_atoms, c1, q)) {
    for (std::size_t col = 0; col < d; ++col) {
      Occupation s = fm.basis[col];
      double amp = 0.0;
      if (apply(t, s, amp)) fm.h[index.at(s)][col] += amp;
    }
  }
  return fm;
}

// Rows/columns of the L_z = 0 states, ordered by k = n1 = n-1.
inline std::vector<std::size_t> zero_magnetization(const FockMatrix& fm) {
  std::vector<std::pair<int, std::size_t>> found;
  for (std::size_t i = 0; i < fm.basis.size(); ++i) {
    if (fm.basis[i][0] == fm.basis[i][2]) found.emplace_back(fm.basis[i][0], i);
  }
  std::sort(found.begin(), found.end());
  std::vector<std::size_t> out;
  for (const auto& f : found) out.push_back(f.second);
  return out;
}

inline std::vector<std::vector<double>> sector_matrix(int n_atoms, double c1, double q) {
  const FockMatrix fm = full_space(n_atoms, c1, q);
  const auto idx = zero_magnetization(fm);
  std::vector<std::vector<double>> out(idx.size(), std::vector<double>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) out[i][j] = fm.h[idx[i]][idx[j]];
  }
  return out;
}

}  // namespace oracle
