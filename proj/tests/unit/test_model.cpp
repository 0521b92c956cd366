#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "fock_oracle.hpp"
#include "spinorq/errors.hpp"
#include "spinorq/model.hpp"

using namespace spinorq;

TEST(Model, SingleFockStateAtKZeroIsPureZeeman) {
  const auto h = build_hamiltonian({2, -1.0, 1.0});
  EXPECT_DOUBLE_EQ(h.diagonal[0], -2.0);
}

TEST(Model, SmallSystemMatrixElements) {
  const auto h = build_hamiltonian({4, 1.0, 0.0});
  ASSERT_EQ(h.dim(), 3u);
  EXPECT_NEAR(h.offdiagonal[0], 0.5 * std::sqrt(12.0), 1e-15);
  EXPECT_NEAR(h.offdiagonal[0], 1.7320508, 1e-7);
  EXPECT_DOUBLE_EQ(h.diagonal[1], 1.5);
}

TEST(Model, MatchesSecondQuantizedOracle) {
  for (int n : {2, 4, 6, 8}) {
    for (double c1 : {-1.0, 1.0, -2.5}) {
      for (double q : {-4.5, -1.0, 0.0, 0.3, 2.0, 5.0}) {
        const auto h = build_hamiltonian({n, c1, q});
        const auto dense = oracle::sector_matrix(n, c1, q);
        const std::size_t d = h.dim();
        ASSERT_EQ(dense.size(), d);
        double scale = 0.0;
        for (const auto& row : dense) {
          for (double x : row) scale = std::max(scale, std::abs(x));
        }
        for (std::size_t i = 0; i < d; ++i) {
          for (std::size_t j = 0; j < d; ++j) {
            double expected = 0.0;
            if (i == j) expected = h.diagonal[i];
            if (j == i + 1) expected = h.offdiagonal[i];
            if (i == j + 1) expected = h.offdiagonal[j];
            EXPECT_NEAR(dense[i][j], expected, 1e-12 * scale)
                << "N=" << n << " c1=" << c1 << " q=" << q << " (" << i << "," << j << ")";
          }
        }
      }
    }
  }
}

TEST(Model, ZeroMagnetizationSectorIsClosed) {
  const auto fm = oracle::full_space(6, -1.0, 0.7);
  for (std::size_t i = 0; i < fm.basis.size(); ++i) {
    for (std::size_t j = 0; j < fm.basis.size(); ++j) {
      const int lz_i = fm.basis[i][0] - fm.basis[i][2];
      const int lz_j = fm.basis[j][0] - fm.basis[j][2];
      if (lz_i != lz_j) EXPECT_EQ(fm.h[i][j], 0.0);
    }
  }
}

TEST(Model, SignReversalNegatesExactly) {
  for (double q : {-3.0, 0.0, 0.65, 4.1}) {
    const auto a = build_hamiltonian({200, -1.0, q});
    const auto b = build_hamiltonian({200, 1.0, -q});
    for (std::size_t i = 0; i < a.dim(); ++i) EXPECT_EQ(a.diagonal[i], -b.diagonal[i]);
    for (std::size_t i = 0; i + 1 < a.dim(); ++i) EXPECT_EQ(a.offdiagonal[i], -b.offdiagonal[i]);
  }
}

TEST(Model, OffdiagonalSignAndLength) {
  for (double c1 : {-1.0, 1.0}) {
    const auto h = build_hamiltonian({100, c1, 0.2});
    ASSERT_EQ(h.offdiagonal.size(), h.dim() - 1);
    for (double e : h.offdiagonal) {
      EXPECT_NE(e, 0.0);
      EXPECT_EQ(std::signbit(e), std::signbit(c1));
    }
  }
}

TEST(Model, ObservableN0) {
  EXPECT_EQ(build_observable_n0({4, -1.0, 0.0}), (std::vector<double>{4, 2, 0}));
  EXPECT_EQ(build_observable_n0({2, -1.0, 0.0}), (std::vector<double>{2, 0}));
  const auto n0 = build_observable_n0({4, 1.0, 3.0});
  EXPECT_EQ(std::accumulate(n0.begin(), n0.end(), 0.0), 6.0);
}

TEST(Model, FockSectorLayout) {
  const auto s = FockSector::of({10, -1.0, 0.0});
  EXPECT_EQ(s.dim, 6u);
  for (std::size_t k = 0; k < s.dim; ++k) EXPECT_EQ(s.n0_values[k], 10 - 2 * static_cast<int>(k));
}

TEST(Model, RejectsInvalidModels) {
  EXPECT_THROW(build_hamiltonian({3, -1.0, 0.0}), InvalidArgument);
  EXPECT_THROW(build_hamiltonian({0, -1.0, 0.0}), InvalidArgument);
  EXPECT_THROW(build_hamiltonian({-4, -1.0, 0.0}), InvalidArgument);
  EXPECT_THROW(build_hamiltonian({4, 0.0, 0.0}), InvalidArgument);
  EXPECT_THROW(build_hamiltonian({4, -1.0, std::nan("")}), InvalidArgument);
}

TEST(Model, LatticeParameters) {
  const auto lo = lattice_parameters({1000, -1.0, -4.5});
  const auto hi = lattice_parameters({1000, -1.0, 4.5});
  EXPECT_EQ(lo.hopping, hi.hopping);
  for (std::size_t i = 0; i < lo.onsite.size(); ++i) {
    EXPECT_NEAR(hi.onsite[i] - lo.onsite[i], -9.0 * (1000.0 - 2.0 * i), 1e-9);
  }
  // Single-humped hopping: rises then falls with one interior maximum.
  const auto peak = std::max_element(lo.hopping.begin(), lo.hopping.end(),
                                     [](double a, double b) { return std::abs(a) < std::abs(b); });
  const auto ip = static_cast<std::size_t>(peak - lo.hopping.begin());
  EXPECT_GT(ip, 0u);
  EXPECT_LT(ip, lo.hopping.size() - 1);
  for (std::size_t i = 0; i + 1 < ip; ++i) {
    EXPECT_LE(std::abs(lo.hopping[i]), std::abs(lo.hopping[i + 1]));
  }
  for (std::size_t i = ip; i + 1 < lo.hopping.size(); ++i) {
    EXPECT_GE(std::abs(lo.hopping[i]), std::abs(lo.hopping[i + 1]));
  }
}

TEST(Model, OperatorCsv) {
  std::ostringstream out;
  write_operator_csv(out, build_hamiltonian({2, -1.0, 1.0}));
  EXPECT_EQ(out.str().substr(0, 21), "k,diagonal,offdiagona");
  EXPECT_NE(out.str().find("\n0,-2,"), std::string::npos);
}
