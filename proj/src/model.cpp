#include "spinorq/model.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include <fmt/format.h>

#include "spinorq/errors.hpp"

namespace spinorq {

void SpinorModel::validate() const {
  if (n_atoms < 2 || n_atoms % 2 != 0) {
    throw InvalidArgument(
        fmt::format("n_atoms must be a positive even integer, got {}", n_atoms));
  }
  if (!std::isfinite(c1) || c1 == 0.0) {
    throw InvalidArgument("c1 must be finite and nonzero");
  }
  if (!std::isfinite(q)) {
    throw InvalidArgument("q must be finite");
  }
}

FockSector FockSector::of(const SpinorModel& model) {
  model.validate();
  FockSector sector;
  sector.dim = static_cast<std::size_t>(model.n_atoms / 2 + 1);
  sector.n0_values.reserve(sector.dim);
  for (std::size_t k = 0; k < sector.dim; ++k) {
    sector.n0_values.push_back(model.n_atoms - 2 * static_cast<int>(k));
  }
  return sector;
}

double TridiagonalOperator::norm_bound() const noexcept {
  const std::size_t n = dim();
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(diagonal[i]);
    if (i > 0) row += std::abs(offdiagonal[i - 1]);
    if (i + 1 < n) row += std::abs(offdiagonal[i]);
    best = std::max(best, row);
  }
  return best;
}

void TridiagonalOperator::validate() const {
  if (diagonal.empty()) {
    throw InvalidArgument("tridiagonal operator must have dimension >= 1");
  }
  if (offdiagonal.size() + 1 != diagonal.size()) {
    throw InvalidArgument(fmt::format(
        "offdiagonal length {} does not match dimension {}", offdiagonal.size(),
        diagonal.size()));
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(diagonal.begin(), diagonal.end(), finite) ||
      !std::all_of(offdiagonal.begin(), offdiagonal.end(), finite)) {
    throw InvalidArgument("tridiagonal operator has non-finite entries");
  }
}

void TridiagonalOperator::apply(const double* x, double* y) const noexcept {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = diagonal[i] * x[i];
    if (i > 0) acc += offdiagonal[i - 1] * x[i - 1];
    if (i + 1 < n) acc += offdiagonal[i] * x[i + 1];
    y[i] = acc;
  }
}

TridiagonalOperator build_hamiltonian(const SpinorModel& model) {
  model.validate();
  const double n = static_cast<double>(model.n_atoms);
  const std::size_t dim = static_cast<std::size_t>(model.n_atoms / 2 + 1);
  const double scale = model.c1 / n;

  TridiagonalOperator op;
  op.diagonal.resize(dim);
  op.offdiagonal.resize(dim - 1);
  for (std::size_t i = 0; i < dim; ++i) {
    const double k = static_cast<double>(i);
    const double n0 = n - 2.0 * k;
    // 2k(k-1) - 2k^2 + 4k(N-2k) == k (4 n0 - 2); every factor stays O(N).
    op.diagonal[i] = scale * (k * (4.0 * n0 - 2.0)) - model.q * n0;
    if (i + 1 < dim) {
      op.offdiagonal[i] = scale * (2.0 * (k + 1.0) * std::sqrt(n0 * (n0 - 1.0)));
    }
  }
  return op;
}

std::vector<double> build_observable_n0(const SpinorModel& model) {
  const FockSector sector = FockSector::of(model);
  return {sector.n0_values.begin(), sector.n0_values.end()};
}

LatticeParameters lattice_parameters(const SpinorModel& model) {
  TridiagonalOperator op = build_hamiltonian(model);
  return {std::move(op.offdiagonal), std::move(op.diagonal)};
}

void write_operator_csv(std::ostream& out, const TridiagonalOperator& op) {
  out << "k,diagonal,offdiagonal\n";
  for (std::size_t k = 0; k < op.dim(); ++k) {
    out << fmt::format("{},{},", k, op.diagonal[k]);
    if (k < op.offdiagonal.size()) out << fmt::format("{}", op.offdiagonal[k]);
    out << '\n';
  }
}

}  // namespace spinorq
