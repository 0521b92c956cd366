#include "spinorq/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "spinorq/errors.hpp"

namespace spinorq {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxQlIterations = 60;
constexpr int kMaxInverseIterations = 10;
constexpr double kClusterTolerance = 1e-5;
constexpr double kDegenerateTolerance = 1e-12;

// Returns true if op had to be negated to reach the canonical form.
bool needs_negation(const TridiagonalOperator& op) {
  for (double v : op.diagonal) {
    if (v != 0.0) return v < 0.0;
  }
  for (double v : op.offdiagonal) {
    if (v != 0.0) return v < 0.0;
  }
  return false;
}

TridiagonalOperator negated(const TridiagonalOperator& op) {
  TridiagonalOperator out = op;
  for (double& v : out.diagonal) v = -v;
  for (double& v : out.offdiagonal) v = -v;
  return out;
}

// Implicit QL with Wilkinson-type shifts, eigenvalues only.
std::vector<double> ql_eigenvalues(const TridiagonalOperator& op) {
  const std::size_t n = op.dim();
  std::vector<double> d = op.diagonal;
  std::vector<double> e(n, 0.0);
  std::copy(op.offdiagonal.begin(), op.offdiagonal.end(), e.begin());

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kEps * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxQlIterations) {
          throw ConvergenceError(
              fmt::format("QL iteration did not converge for eigenvalue {}", l), l);
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          const double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

// Pivoted LU of (T - shift I), the tridiagonal analogue of LAPACK dgttrf.
class ShiftedLU {
 public:
  ShiftedLU(const TridiagonalOperator& op, double shift, double tiny) {
    const std::size_t n = op.dim();
    d_.resize(n);
    for (std::size_t i = 0; i < n; ++i) d_[i] = op.diagonal[i] - shift;
    du_ = op.offdiagonal;
    dl_ = op.offdiagonal;
    du2_.assign(n > 2 ? n - 2 : 0, 0.0);
    swapped_.assign(n > 0 ? n - 1 : 0, 0);

    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d_[i]) >= std::abs(dl_[i])) {
        if (d_[i] == 0.0) d_[i] = tiny;
        const double fact = dl_[i] / d_[i];
        dl_[i] = fact;
        d_[i + 1] -= fact * du_[i];
      } else {
        const double fact = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = fact;
        const double temp = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = temp - fact * d_[i + 1];
        if (i + 2 < n) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -fact * du_[i + 1];
        }
        swapped_[i] = 1;
      }
    }
    for (double& v : d_) {
      if (std::abs(v) < tiny) v = std::copysign(tiny, v);
    }
  }

  void solve(std::span<double> b) const {
    const std::size_t n = d_.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!swapped_[i]) {
        b[i + 1] -= dl_[i] * b[i];
      } else {
        const double temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl_[i] * b[i];
      }
    }
    b[n - 1] /= d_[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
    for (std::size_t i = n >= 2 ? n - 2 : 0; i-- > 0;) {
      b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
    }
  }

 private:
  std::vector<double> d_, du_, dl_, du2_;
  std::vector<char> swapped_;
};

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

void normalize(std::span<double> v) {
  const double nrm = std::sqrt(dot(v, v));
  for (double& x : v) x /= nrm;
}

double residual_norm(const TridiagonalOperator& op, double lambda,
                     std::span<const double> v, std::vector<double>& scratch) {
  op.apply(v.data(), scratch.data());
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = scratch[i] - lambda * v[i];
    acc += r * r;
  }
  return std::sqrt(acc);
}

// Reproducible start vector shared by every inverse iteration.
std::vector<double> start_vector(std::size_t n) {
  std::vector<double> v(n);
  std::uint64_t state = 0x9E3779B97F4A7C15ull;
  for (double& x : v) {
    // splitmix64
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    x = 0.5 + static_cast<double>(z >> 11) * 0x1.0p-53;
  }
  return v;
}

// Inverse iteration for one eigenvalue; `cluster` holds already accepted
// eigenvectors that the result must be orthogonal to.
void inverse_iteration(const TridiagonalOperator& op, double lambda, double shift,
                       double norm, std::size_t index,
                       std::span<const std::span<const double>> cluster,
                       std::span<const double> start, std::span<double> out,
                       std::vector<double>& scratch) {
  const std::size_t n = op.dim();
  const double tiny = kEps * norm;
  const double tolerance =
      64.0 * kEps * norm * std::sqrt(static_cast<double>(n));
  const ShiftedLU lu(op, shift, tiny > 0.0 ? tiny : std::numeric_limits<double>::min());

  std::copy(start.begin(), start.end(), out.begin());
  double residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it < kMaxInverseIterations; ++it) {
    lu.solve(out);
    // Two passes of MGS keep the cluster orthogonal to working precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : cluster) {
        const double proj = dot(u, out);
        for (std::size_t i = 0; i < n; ++i) out[i] -= proj * u[i];
      }
    }
    normalize(out);
    residual = residual_norm(op, lambda, out, scratch);
    if (it >= 1 && residual <= tolerance) return;
  }
  if (residual <= 1e-9 * norm) return;
  throw ConvergenceError(
      fmt::format("inverse iteration did not converge for eigenvalue {} "
                  "(residual {:.3e}, norm {:.3e})",
                  index, residual, norm),
      index);
}

EigenSystem decompose_canonical(const TridiagonalOperator& op) {
  const std::size_t n = op.dim();
  EigenSystem sys;
  sys.dim = n;
  sys.values = ql_eigenvalues(op);
  sys.vectors.assign(n * n, 0.0);
  sys.operator_norm = std::max(std::abs(sys.values.front()), std::abs(sys.values.back()));

  const double norm = op.norm_bound();
  if (norm == 0.0) {
    for (std::size_t a = 0; a < n; ++a) sys.vectors[a * n + a] = 1.0;
    for (std::size_t a = 0; a + 1 < n; ++a) sys.near_degenerate.push_back(a);
    return sys;
  }

  const std::vector<double> start = start_vector(n);
  std::vector<double> scratch(n);
  std::vector<std::span<const double>> cluster;
  const double separation = 10.0 * kEps * norm;
  double shift = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    const double lambda = sys.values[a];
    if (a > 0 && lambda - sys.values[a - 1] < kClusterTolerance * norm) {
      shift = std::max(lambda, shift + separation);
    } else {
      cluster.clear();
      shift = lambda;
    }
    std::span<double> column(sys.vectors.data() + a * n, n);
    inverse_iteration(op, lambda, shift, norm, a, cluster, start, column, scratch);
    canonicalize_sign(column);
    cluster.emplace_back(column.data(), n);
  }

  for (std::size_t a = 0; a + 1 < n; ++a) {
    if (sys.values[a + 1] - sys.values[a] < kDegenerateTolerance * sys.operator_norm) {
      sys.near_degenerate.push_back(a);
    }
  }
  return sys;
}

// Number of eigenvalues strictly below x (Sturm sequence).
std::size_t sturm_count(const TridiagonalOperator& op, double x, double pivmin) {
  const std::size_t n = op.dim();
  std::size_t count = 0;
  double q = op.diagonal[0] - x;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    const double e = op.offdiagonal[i - 1];
    q = op.diagonal[i] - x - e * e / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

EigenPair lowest_pair(const TridiagonalOperator& op) {
  const std::size_t n = op.dim();
  const double norm = op.norm_bound();
  EigenPair pair;
  if (n == 1) {
    pair.value = op.diagonal[0];
    pair.vector = {1.0};
    return pair;
  }
  if (norm == 0.0) {
    pair.value = 0.0;
    pair.vector.assign(n, 0.0);
    pair.vector[0] = 1.0;
    return pair;
  }
  double emax2 = 0.0;
  for (double e : op.offdiagonal) emax2 = std::max(emax2, e * e);
  const double pivmin = std::max(std::numeric_limits<double>::min(),
                                 std::numeric_limits<double>::min() * emax2);

  double lo = -norm;
  double hi = norm;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) + pivmin ||
        mid == lo || mid == hi) {
      break;
    }
    if (sturm_count(op, mid, pivmin) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  pair.value = 0.5 * (lo + hi);
  pair.vector.resize(n);
  std::vector<double> scratch(n);
  const std::vector<double> start = start_vector(n);
  inverse_iteration(op, pair.value, pair.value, norm, 0, {}, start, pair.vector,
                    scratch);
  canonicalize_sign(pair.vector);
  return pair;
}

}  // namespace

void canonicalize_sign(std::span<double> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  if (!v.empty() && v[best] < 0.0) {
    for (double& x : v) x = -x;
  }
}

std::vector<double> eigenvalues(const TridiagonalOperator& op) {
  op.validate();
  if (!needs_negation(op)) return ql_eigenvalues(op);
  std::vector<double> values = ql_eigenvalues(negated(op));
  std::reverse(values.begin(), values.end());
  for (double& v : values) v = -v;
  return values;
}

EigenSystem decompose(const TridiagonalOperator& op) {
  op.validate();
  if (!needs_negation(op)) return decompose_canonical(op);

  EigenSystem mirror = decompose_canonical(negated(op));
  const std::size_t n = mirror.dim;
  EigenSystem sys;
  sys.dim = n;
  sys.operator_norm = mirror.operator_norm;
  sys.values.resize(n);
  sys.vectors.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t src = n - 1 - a;
    sys.values[a] = -mirror.values[src];
    std::copy_n(mirror.vectors.begin() + static_cast<std::ptrdiff_t>(src * n), n,
                sys.vectors.begin() + static_cast<std::ptrdiff_t>(a * n));
  }
  for (auto it = mirror.near_degenerate.rbegin(); it != mirror.near_degenerate.rend(); ++it) {
    sys.near_degenerate.push_back(n - 2 - *it);
  }
  return sys;
}

EigenPair extremal_state(const TridiagonalOperator& op, Extremum which) {
  op.validate();
  if (which == Extremum::ground) return lowest_pair(op);
  EigenPair pair = lowest_pair(negated(op));
  pair.value = -pair.value;
  return pair;
}

}  // namespace spinorq
