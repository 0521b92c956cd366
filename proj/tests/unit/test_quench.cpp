#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "expm_evolution.hpp"
#include "fock_oracle.hpp"
#include "jacobi.hpp"
#include "spinorq/errors.hpp"
#include "spinorq/quench.hpp"

using namespace spinorq;

namespace {

const QuenchSpec kRegionI{2000, -1.0, -3.0, -0.5, InitialState::ground};

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

TEST(Quench, IdentityQuench) {
  const QuenchSpec spec{400, -1.0, 1.3, 1.3, InitialState::ground};
  const auto r = run_quench(spec);
  EXPECT_NEAR(r.eon[0], 1.0, 1e-12);
  EXPECT_NEAR(r.effective_dimension, 1.0, 1e-10);
  EXPECT_NEAR(r.pde, r.eev[0], 1e-9);
  const std::vector<double> times{0.0, 1.0, 17.0, 250.0};
  for (double v : evolve_n0(r, times)) EXPECT_NEAR(v, r.eev[0], 1e-9);
  const auto dist = overlap_distribution(r);
  for (double w : dist.weights) EXPECT_EQ(w, 0.0);
}

TEST(Quench, ResultInvariants) {
  for (const QuenchSpec& spec :
       {kRegionI, QuenchSpec{1000, -1.0, -3.0, 0.5, InitialState::ground},
        QuenchSpec{1000, 1.0, 2.0, -1.0, InitialState::ground},
        QuenchSpec{1000, -1.0, 4.1, 2.0, InitialState::most_excited}}) {
    const auto r = run_quench(spec);
    const double n = spec.n_atoms;
    EXPECT_NEAR(sum(r.eon), 1.0, 1e-10);
    for (double w : r.eon) {
      EXPECT_GE(w, 0.0);
      EXPECT_LE(w, 1.0);
    }
    for (double x : r.eev) {
      EXPECT_GE(x, -1e-9);
      EXPECT_LE(x, n + 1e-9);
    }
    // Trace of N0 in the eigenbasis equals sum_k (N - 2k).
    const double trace = (n / 2 + 1) * n / 2;
    EXPECT_NEAR(sum(r.eev), trace, 1e-8 * trace);
    double pde = 0.0;
    double e0 = 0.0;
    for (std::size_t a = 0; a < r.dim; ++a) {
      pde += r.eon[a] * r.eev[a];
      e0 += r.eon[a] * r.energies[a];
    }
    EXPECT_EQ(r.pde, pde);
    EXPECT_EQ(r.mean_energy, e0);
    EXPECT_GE(r.effective_dimension, 1.0);
    EXPECT_LE(r.effective_dimension, static_cast<double>(r.dim));
    EXPECT_GE(r.retained_weight, 1.0 - 1e-8);
    EXPECT_LE(std::abs(evolve_n0(r, std::vector<double>{0.0})[0] - r.initial_n0) / n, 1e-6);
    EXPECT_GE(r.band_width, 5u);
  }
}

TEST(Quench, EvolutionMatchesMatrixExponential) {
  std::vector<double> times;
  for (int i = 0; i <= 200; ++i) times.push_back(0.5 * i);
  for (int n : {2, 4, 6, 8}) {
    for (double c1 : {-1.0, 1.0}) {
      for (auto [qi, qf] : {std::pair{-3.0, -0.5}, {-3.0, 0.5}, {4.1, 2.0}, {0.3, -2.0}}) {
        const QuenchSpec spec{n, c1, qi, qf, InitialState::ground};
        // Keep every eigenstate so the comparison isolates the evolution formula.
        const auto r = run_quench(spec, QuenchOptions{0.0});
        const auto got = evolve_n0(r, times);

        const auto hi = oracle::sector_matrix(n, c1, qi);
        const auto hf = oracle::sector_matrix(n, c1, qf);
        const auto psi0 = oracle::jacobi(hi).vectors[0];
        const auto ref = oracle::expm_n0(hf, build_observable_n0(spec.final_model()), psi0, times);
        for (std::size_t i = 0; i < times.size(); ++i) {
          ASSERT_NEAR(got[i], ref[i], 1e-8) << "N=" << n << " c1=" << c1 << " qi=" << qi
                                            << " qf=" << qf << " t=" << times[i];
        }
      }
    }
  }
}

TEST(Quench, LongTimeAverageApproachesDiagonalEnsemble) {
  const auto r = run_quench(kRegionI);
  // Average the signal far beyond the revival time.
  std::vector<double> times;
  const double t0 = 2.0e5;
  for (int i = 0; i < 40000; ++i) times.push_back(t0 + 13.7 * i);
  const auto n0 = evolve_n0(r, times);
  const double avg = sum(n0) / static_cast<double>(n0.size());
  EXPECT_NEAR(avg, r.pde, 0.01 * r.pde);
  EXPECT_NEAR(long_time_average(r), r.pde, 1e-6 * r.pde);
}

TEST(Quench, BandCoversFirstOffDiagonal) {
  const auto r = run_quench(kRegionI);
  const auto dist = overlap_distribution(r);
  ASSERT_GT(dist.indices.size(), 10u);
  EXPECT_NEAR(sum(dist.weights), 1.0, 1e-12);
  for (std::size_t i = 0; i < dist.indices.size(); ++i) {
    EXPECT_NEAR(dist.gaps[i], r.energies[dist.indices[i] + 1] - r.energies[dist.indices[i]], 0.0);
  }
}

TEST(Quench, OverlapDistributionAntisymmetry) {
  const QuenchSpec fm{1000, -1.0, -3.0, -0.5, InitialState::ground};
  const QuenchSpec afm{1000, 1.0, 3.0, 0.5, InitialState::most_excited};
  const auto a = overlap_distribution(run_quench(fm));
  const auto b = overlap_distribution(run_quench(afm));
  ASSERT_EQ(a.indices.size(), b.indices.size());
  const std::size_t n = a.indices.size();
  const std::size_t dim = 501;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = n - 1 - i;
    EXPECT_EQ(a.indices[i], dim - 2 - b.indices[j]);
    EXPECT_EQ(a.amplitudes[i], b.amplitudes[j]);
    EXPECT_EQ(a.gaps[i], b.gaps[j]);
  }
}

TEST(Quench, RetentionShortfallIsSignalled) {
  QuenchOptions opts;
  opts.retention_tolerance = 1e-3;
  const auto r = run_quench(kRegionI, opts);
  EXPECT_LT(r.retained_weight, 1.0 - 1e-8);
  EXPECT_THROW(evolve_n0(r, std::vector<double>{0.0}), RetentionError);
}

TEST(Quench, ParallelEvolutionIsIdentical) {
  const auto r = run_quench({1000, -1.0, -3.0, -0.5, InitialState::ground});
  const auto times = log_time_grid(0.1, 1e4, 2000);
  EXPECT_EQ(evolve_n0(r, times, 1), evolve_n0(r, times, 4));
}

TEST(Quench, LogTimeGrid) {
  const auto g = log_time_grid(1.0, 1000.0, 4);
  ASSERT_EQ(g.size(), 4u);
  EXPECT_DOUBLE_EQ(g[0], 1.0);
  EXPECT_NEAR(g[1], 10.0, 1e-12);
  EXPECT_NEAR(g[2], 100.0, 1e-10);
  EXPECT_EQ(g[3], 1000.0);
  EXPECT_THROW(log_time_grid(0.0, 1.0, 3), InvalidArgument);
}

TEST(Quench, RejectsInvalidSpec) {
  EXPECT_THROW(run_quench({7, -1.0, 0.0, 1.0, InitialState::ground}), InvalidArgument);
  EXPECT_THROW(run_quench({8, 0.0, 0.0, 1.0, InitialState::ground}), InvalidArgument);
  const auto es = decompose(build_hamiltonian({10, -1.0, 1.0}));
  EXPECT_THROW(run_quench({12, -1.0, 0.0, 1.0, InitialState::ground}, es), InvalidArgument);
}
