#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "spinorq/errors.hpp"
#include "spinorq/thermalization.hpp"

using namespace spinorq;

TEST(Window, VariantsSelectMembers) {
  const std::vector<double> e{0.0, 1.0, 2.0, 3.0, 4.0};
  EXPECT_EQ(make_window(e, 2.0, 1.0, WindowVariant::below).members,
            (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(make_window(e, 2.0, 1.0, WindowVariant::symmetric).members,
            (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(make_window(e, 2.0, 1.0, WindowVariant::above).members,
            (std::vector<std::size_t>{2, 3}));
  EXPECT_THROW(make_window(e, 10.0, 1.0), NoValidWindow);
}

TEST(Window, SingleMemberPrediction) {
  const std::vector<double> e{0.0, 1.0, 2.0};
  const std::vector<double> eev{5.0, 7.0, 9.0};
  const auto w = make_window(e, 1.0, 0.1);
  ASSERT_EQ(w.members.size(), 1u);
  EXPECT_EQ(mc_prediction(w, eev), 7.0);
}

TEST(Window, ConstantEevIndependentOfWidth) {
  std::vector<double> e(100), eev(100, 3.25);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = 0.1 * i;
  for (double hw : {0.05, 0.5, 2.0, 4.0}) EXPECT_EQ(mc_prediction(make_window(e, 5.0, hw), eev), 3.25);
}

TEST(Window, SymmetricBetweenOneSidedOnMonotoneEev) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> e(300), eev(300);
    double acc = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = i + 0.5 * u(rng);
      acc += u(rng);
      eev[i] = acc;
    }
    const double c = 50.0 + 200.0 * u(rng);
    const double hw = 1.0 + 30.0 * u(rng);
    const double pb = mc_prediction(make_window(e, c, hw, WindowVariant::below), eev);
    const double ps = mc_prediction(make_window(e, c, hw, WindowVariant::symmetric), eev);
    const double pa = mc_prediction(make_window(e, c, hw, WindowVariant::above), eev);
    EXPECT_LE(pb, ps);
    EXPECT_LE(ps, pa);
  }
}

TEST(Window, MedianInterval) {
  const std::vector<double> e{-3.0, -1.0, 0.5, 2.0, 10.0};
  const auto w = fixed_interval(e, 4.0);
  EXPECT_EQ(w.center, 0.5);
  EXPECT_EQ(w.members, (std::vector<std::size_t>{1, 2, 3}));
}

TEST(Window, RegionIQuenchHasPlateau) {
  const auto r = run_quench({4000, -1.0, -3.0, -0.5, InitialState::ground});
  const auto w = select_window(r, WindowVariant::symmetric);
  EXPECT_GT(w.members.size(), 1u);
  const double mc = mc_prediction(w, r.eev);
  EXPECT_LT(std::abs(mc - r.pde) / r.n_atoms, 1e-3);
  for (auto v : {WindowVariant::below, WindowVariant::above}) {
    const auto wv = select_window(r, v);
    EXPECT_EQ(wv.half_width, w.half_width);
    EXPECT_NEAR(mc_prediction(wv, r.eev), mc, 1e-3 * mc);
  }
  EXPECT_LT(eth_condition(r.energies, r.eev, w).value, 0.1);
}

TEST(Window, KinkQuenchHasNoPlateau) {
  const auto r = run_quench({4000, -1.0, -3.0, 0.5, InitialState::ground});
  EXPECT_THROW(select_window(r, WindowVariant::symmetric), NoValidWindow);
}

TEST(EthCondition, ConstantAndLinearCurves) {
  std::vector<double> e(400), flat(400, 2.0), line(400);
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = 0.25 * i;
    line[i] = 3.0 + 0.01 * e[i];
  }
  const auto w = make_window(e, 50.0, 5.0);
  EXPECT_EQ(eth_condition(e, flat, w).value, 0.0);
  EXPECT_LT(eth_condition(e, line, w).value, 1e-12);
}

TEST(EthCondition, DivisionHazard) {
  std::vector<double> e(400), y(400);
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = 0.25 * i - 50.0;
    y[i] = e[i] * e[i];
  }
  const auto c = eth_condition(e, y, make_window(e, 0.0, 5.0));
  EXPECT_TRUE(c.division_hazard);
  EXPECT_TRUE(std::isinf(c.value));
  EXPECT_GT(c.value, 0.0);
}

TEST(EthCondition, ViolatedAtTheKink) {
  const auto es = decompose(build_hamiltonian({2000, -1.0, 0.5}));
  const auto eev = eigenstate_expectations(es, build_observable_n0({2000, -1.0, 0.5}));
  const auto kink = detect_kink(es, eev);
  const double e_kink = es.values[kink.index];
  const double spacing = es.values[kink.index + 1] - es.values[kink.index];
  const auto at_kink = eth_condition(es.values, eev, make_window(es.values, e_kink, 40 * spacing));
  const std::size_t smooth = es.dim / 8;
  const auto away = eth_condition(
      es.values, eev, make_window(es.values, es.values[smooth], 40 * spacing));
  EXPECT_GT(at_kink.value, 10.0 * away.value);
}

TEST(EthIndicators, EqualEevsGiveZero) {
  const std::vector<double> eev(10, 4.0);
  McWindow w{0.0, 1.0, WindowVariant::symmetric, {2, 3, 4, 5}};
  const auto r = eth_indicators(w, eev);
  EXPECT_EQ(r.noise, 0.0);
  EXPECT_EQ(r.support, 0.0);
  EXPECT_EQ(r.max_divergence, 0.0);
  EXPECT_EQ(r.mean_eev_difference, 0.0);
  EXPECT_EQ(r.n_members, 4u);
}

TEST(EthIndicators, HandComputed) {
  const std::vector<double> eev{1.0, 3.0, 2.0, 6.0};
  McWindow w{0.0, 1.0, WindowVariant::symmetric, {0, 1, 2, 3}};
  const auto r = eth_indicators(w, eev);
  EXPECT_DOUBLE_EQ(r.mc_prediction, 3.0);
  EXPECT_DOUBLE_EQ(r.support, 5.0);
  EXPECT_DOUBLE_EQ(r.max_divergence, 3.0);
  EXPECT_DOUBLE_EQ(r.noise, std::sqrt((4.0 + 0.0 + 1.0 + 9.0) / 4.0));
  EXPECT_DOUBLE_EQ(r.mean_eev_difference, (2.0 + 1.0 + 4.0) / 3.0);
}

TEST(EthIndicators, BoundsOnRandomWindows) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::uniform_int_distribution<std::size_t> len(2, 60);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> eev(len(rng));
    for (double& x : eev) x = u(rng) * std::exp(u(rng));
    McWindow w;
    for (std::size_t i = 0; i < eev.size(); ++i) w.members.push_back(i);
    const auto r = eth_indicators(w, eev);
    EXPECT_LE(r.max_divergence, r.support * (1 + 1e-12));
    EXPECT_LE(r.noise, r.support * (1 + 1e-12));
    EXPECT_GE(r.noise, 0.0);
    EXPECT_GE(r.mean_eev_difference, 0.0);
  }
}

TEST(EthIndicators, ShiftOfEnergiesLeavesIndicatorsUnchanged) {
  const auto es = decompose(build_hamiltonian({1000, -1.0, 0.65}));
  const auto eev = eigenstate_expectations(es, build_observable_n0({1000, -1.0, 0.65}));
  std::vector<double> shifted = es.values;
  for (double& e : shifted) e += 1234.5;
  const auto a = eth_indicators(fixed_interval(es.values, 150.0), eev);
  const auto b = eth_indicators(fixed_interval(shifted, 150.0), eev);
  EXPECT_EQ(a.n_members, b.n_members);
  EXPECT_DOUBLE_EQ(a.noise, b.noise);
  EXPECT_DOUBLE_EQ(a.support, b.support);
}

TEST(EthIndicators, NeedTwoMembers) {
  McWindow w{0.0, 1.0, WindowVariant::symmetric, {0}};
  EXPECT_THROW(eth_indicators(w, std::vector<double>{1.0}), InvalidArgument);
}

TEST(ParticipationRatio, Limits) {
  std::vector<double> basis(9, 0.0);
  basis[4] = 1.0;
  EXPECT_DOUBLE_EQ(participation_ratio(basis), 1.0);
  std::vector<double> uniform(16, 0.25);
  EXPECT_NEAR(participation_ratio(uniform), 16.0, 1e-12);
  EXPECT_THROW(participation_ratio(std::vector<double>{1.0, 1.0}), InvalidArgument);
}

TEST(ParticipationRatio, SignAndPermutationInvariant) {
  std::vector<double> v{0.1, -0.5, 0.3, 0.7, -0.2};
  double nn = 0.0;
  for (double x : v) nn += x * x;
  for (double& x : v) x /= std::sqrt(nn);
  const double p = participation_ratio(v);
  auto w = v;
  std::reverse(w.begin(), w.end());
  for (double& x : w) x = -x;
  EXPECT_DOUBLE_EQ(participation_ratio(w), p);
}

TEST(Kink, InteriorDipForSmallQ) {
  for (double q : {0.5, 2.0}) {
    const SpinorModel m{2000, -1.0, q};
    const auto es = decompose(build_hamiltonian(m));
    const auto eev = eigenstate_expectations(es, build_observable_n0(m));
    const auto k = detect_kink(es, eev);
    EXPECT_GT(k.index, k.margin);
    EXPECT_LT(k.index, es.dim - k.margin - 1);
    EXPECT_TRUE(k.curvature_agrees);
    EXPECT_TRUE(k.spacing_agrees);
    const auto pr = participation_ratios(es);
    EXPECT_LT(pr[k.index], 0.5 * pr[es.dim / 2]);
  }
}

TEST(Kink, AbsentOutsideTransitions) {
  for (double q : {5.0, -5.0, 6.0}) {
    const SpinorModel m{2000, -1.0, q};
    const auto es = decompose(build_hamiltonian(m));
    const auto eev = eigenstate_expectations(es, build_observable_n0(m));
    EXPECT_THROW(detect_kink(es, eev), NoKink) << q;
  }
}

TEST(Kink, DriftsSlowlyWithN) {
  std::vector<double> position;
  for (int n : {1000, 2000, 4000}) {
    const SpinorModel m{n, -1.0, 0.5};
    const auto es = decompose(build_hamiltonian(m));
    const auto eev = eigenstate_expectations(es, build_observable_n0(m));
    position.push_back(static_cast<double>(detect_kink(es, eev).index) / es.dim);
  }
  EXPECT_LT(std::abs(position[1] - position[0]), 0.03);
  EXPECT_LT(std::abs(position[2] - position[1]), 0.03);
}

TEST(Classify, ReferenceQuenches) {
  struct Case {
    double qi, qf;
    Region expected;
  };
  for (const auto& c : {Case{-3.0, -0.5, Region::I}, Case{-3.0, 0.5, Region::II},
                        Case{4.1, 2.0, Region::III}, Case{-5.0, -2.0, Region::III},
                        Case{5.0, -2.0, Region::IV}, Case{-5.0, 5.0, Region::IV}}) {
    const QuenchSpec spec{2000, -1.0, c.qi, c.qf, InitialState::ground};
    const auto es = decompose(build_hamiltonian(spec.final_model()));
    EXPECT_EQ(classify_region(spec, run_quench(spec, es), es), c.expected)
        << c.qi << " -> " << c.qf;
  }
}

TEST(Classify, AntiferromagneticGroundStatesNeverReachRegionsIOrII) {
  for (double qi : {-5.0, -2.0, -0.5, 0.5, 2.0, 5.0}) {
    for (double qf : {-5.0, -2.0, -0.5, 0.5, 2.0, 5.0}) {
      const QuenchSpec spec{600, 1.0, qi, qf, InitialState::ground};
      const auto es = decompose(build_hamiltonian(spec.final_model()));
      const Region r = classify_region(spec, run_quench(spec, es), es);
      EXPECT_TRUE(r == Region::III || r == Region::IV) << qi << " -> " << qf;
    }
  }
}

TEST(Classify, MirrorQuenchHasSameRegion) {
  const QuenchSpec fm{1000, -1.0, -3.0, 0.5, InitialState::ground};
  const QuenchSpec afm{1000, 1.0, 3.0, -0.5, InitialState::most_excited};
  const auto ef = decompose(build_hamiltonian(fm.final_model()));
  const auto ea = decompose(build_hamiltonian(afm.final_model()));
  EXPECT_EQ(classify_region(fm, run_quench(fm, ef), ef),
            classify_region(afm, run_quench(afm, ea), ea));
}
