// Copyright 2026 The qwp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qwp/evolution.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support/path_sum.hpp"
#include "support/properties.hpp"
#include "support/schedule_oracle.hpp"

using namespace qwp;
constexpr double pi = std::numbers::pi;
const double r2 = 1 / std::sqrt(2.0);

namespace {

const BlochCoinState kDown{pi, 0.0};
const BlochCoinState kUp{0.0, 0.0};
const BlochCoinState kSymmetric{pi / 2, pi / 2};

ErrorKind kind_of(const std::function<void()> &fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.kind();
    }
    ADD_FAILURE() << "no qwp::Error thrown";
    return ErrorKind::file;
}

}  // namespace

// ---------------------------------------------------------------------------
// apply_coin / shift / step

TEST(ApplyCoin, identity_coin_leaves_state) {
    auto s = new_localized(LatticeGeometry(7), kSymmetric, 1);
    const auto before = s;
    apply_coin(s, UniformRotation{0.0}, 0, nullptr);
    EXPECT_EQ(s, before);
}

TEST(ApplyCoin, rotation_on_down_spin) {
    auto s = new_localized(LatticeGeometry(5), kDown, 0);
    apply_coin(s, UniformRotation{pi / 2}, 0, nullptr);
    EXPECT_NEAR(std::abs(s.up_at(0) - Amplitude(-r2)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.down_at(0) - Amplitude(r2)), 0.0, 1e-15);
    EXPECT_EQ(s.time_step(), 0u);
}

TEST(ApplyCoin, degenerate_tanh_equals_uniform) {
    qwp_test::CaseGenerator gen(21);
    for (int k = 0; k < 50; ++k) {
        const double th = gen.uniform(-pi, pi);
        auto a = run(new_localized(LatticeGeometry(9), gen.bloch(), 0), Single{UniformRotation{0.3}}, 3).final_state;
        auto b = a;
        apply_coin(a, SiteTanhRotation{th, th}, 0, nullptr);
        apply_coin(b, UniformRotation{th}, 0, nullptr);
        for (std::size_t i = 0; i < 9; ++i) {
            EXPECT_NEAR(std::abs(a.up()[i] - b.up()[i]), 0.0, 1e-15);
            EXPECT_NEAR(std::abs(a.down()[i] - b.down()[i]), 0.0, 1e-15);
        }
    }
}

TEST(ApplyCoin, random_phase_needs_stream) {
    auto s = new_localized(LatticeGeometry(5), kDown, 0);
    EXPECT_EQ(kind_of([&] { apply_coin(s, RandomPhaseAlpha{1}, 0, nullptr); }), ErrorKind::missing_randomness);
}

TEST(Shift, moves_each_spin_its_way) {
    auto up = new_localized(LatticeGeometry(5), kUp, 0);
    shift(up);
    EXPECT_EQ(up.up_at(1), Amplitude(1.0));
    auto down = new_localized(LatticeGeometry(5), kDown, 0);
    shift(down);
    EXPECT_NEAR(std::abs(down.down_at(-1) - Amplitude(1.0)), 0.0, 1e-15);

    auto sym = new_localized(LatticeGeometry(5), kSymmetric, 0);
    shift(sym);
    EXPECT_NEAR(std::abs(sym.up_at(1) - Amplitude(r2)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(sym.down_at(-1) - Amplitude(0, r2)), 0.0, 1e-15);
    EXPECT_EQ(sym.up_at(0), Amplitude(0.0));
    EXPECT_EQ(sym.down_at(0), Amplitude(0.0));
    EXPECT_DOUBLE_EQ(norm(sym), norm(new_localized(LatticeGeometry(5), kSymmetric, 0)));
}

TEST(Shift, boundary_leakage_is_an_error) {
    auto s = new_localized(LatticeGeometry(5), kUp, 2);
    EXPECT_EQ(kind_of([&] { shift(s); }), ErrorKind::boundary_leakage);
    auto d = new_localized(LatticeGeometry(5), kDown, -2);
    EXPECT_EQ(kind_of([&] { shift(d); }), ErrorKind::boundary_leakage);
    // Down spin at the right edge may still move left.
    auto ok = new_localized(LatticeGeometry(5), kDown, 2);
    shift(ok);
    EXPECT_NEAR(std::abs(ok.down_at(1)), 1.0, 1e-15);
}

TEST(Step, identity_coin_then_shift) {
    auto s = new_localized(LatticeGeometry(5), kDown, 0);
    RandomStreams none;
    step(s, Single{UniformRotation{0.0}}, none);
    EXPECT_NEAR(std::abs(s.down_at(-1)), 1.0, 1e-15);
    EXPECT_NEAR(position_expectation(s), -1.0, 1e-15);
    EXPECT_EQ(s.time_step(), 1u);
}

TEST(Step, three_steps_of_quarter_turn_walk) {
    const auto traj = run(new_localized(LatticeGeometry(7), kDown, 0), Single{UniformRotation{pi / 2}}, 3);
    EXPECT_NEAR(traj.series.back().expectation, -0.5, 1e-14);
}

TEST(Step, probabilistic_without_choice_stream_fails) {
    auto s = new_localized(LatticeGeometry(5), kDown, 0);
    RandomStreams none;
    const StrategySchedule sched = ProbabilisticChoice{UniformRotation{0.1}, UniformRotation{0.2}, 0.5, 1};
    EXPECT_EQ(kind_of([&] { step(s, sched, none); }), ErrorKind::missing_randomness);
}

TEST(Step, composite_validation) {
    auto s = new_localized(LatticeGeometry(5), kDown, 0);
    RandomStreams none;
    EXPECT_EQ(kind_of([&] { step(s, Composite{UniformRotation{}, UniformRotation{}, 0, 0}, none); }),
              ErrorKind::validation);
}

TEST(Step, alternation_starts_with_coin_a) {
    // Coin A = identity, coin B = swap-ish rotation by pi: after one step only
    // A^2 = I has acted, so |down> simply shifts left.
    auto s = new_localized(LatticeGeometry(5), kDown, 0);
    RandomStreams none;
    step(s, AlternatingEvenOdd{UniformRotation{0.0}, UniformRotation{pi / 2}}, none);
    EXPECT_NEAR(std::abs(s.down_at(-1)), 1.0, 1e-15);
}

// ---------------------------------------------------------------------------
// run

TEST(Run, zero_steps_records_initial_observables) {
    const auto traj = run(new_localized(LatticeGeometry(3), kDown, 0), Single{UniformRotation{1.0}}, 0, true);
    ASSERT_EQ(traj.series.size(), 1u);
    EXPECT_EQ(traj.series[0].t, 0u);
    EXPECT_EQ(traj.series[0].expectation, 0.0);
    EXPECT_EQ(traj.distribution.size(), 1u);
}

TEST(Run, geometry_too_small) {
    EXPECT_EQ(kind_of([] { run(new_localized(LatticeGeometry(201), kDown, 0), Single{UniformRotation{1.0}}, 101); }),
              ErrorKind::geometry_too_small);
    EXPECT_EQ(kind_of([] {
                  run(new_localized(LatticeGeometry(11), kDown, 0),
                      Composite{UniformRotation{1.0}, UniformRotation{1.0}, 2, 1, true}, 2);
              }),
              ErrorKind::geometry_too_small);
}

TEST(Run, quarter_turn_walk_drifts_left) {
    const auto traj = run(new_localized(LatticeGeometry(201), kDown, 0), Single{UniformRotation{pi / 2}}, 100);
    ASSERT_EQ(traj.series.size(), 101u);
    for (std::size_t t = 3; t <= 100; ++t) {
        EXPECT_LE(traj.series[t].expectation, traj.series[t - 1].expectation + 1e-12) << t;
    }
    EXPECT_LT(traj.series.back().expectation, 0.0);
}

TEST(Run, parrondo_composite_drifts_right) {
    const auto traj = run(new_localized(LatticeGeometry(801), kDown, 0),
                          Composite{UniformRotation{pi / 2}, SiteTanhRotation{-pi / 8, pi / 4}, 2, 1}, 400);
    EXPECT_GT(traj.series.back().expectation, 0.0);
    EXPECT_GT(traj.series.back().expectation, traj.series[200].expectation);
}

TEST(Run, distribution_rows_match_series) {
    const auto traj = run(new_localized(LatticeGeometry(21), kSymmetric, 0), Single{UniformRotation{pi / 2}}, 10, true);
    ASSERT_EQ(traj.distribution.size(), 11u);
    const LatticeGeometry g(21);
    for (std::size_t t = 0; t <= 10; ++t) {
        const auto m = position_moments(traj.distribution[t], g);
        EXPECT_NEAR(m.mean, traj.series[t].expectation, 1e-13);
        EXPECT_NEAR(m.variance, traj.series[t].variance, 1e-12);
    }
}

TEST(Run, metadata_lists_consumed_seeds) {
    const StrategySchedule sched = ProbabilisticChoice{RandomPhaseAlpha{3}, UniformRotation{1.0}, 0.4, 9};
    const auto traj = run(new_localized(LatticeGeometry(11), kDown, 0), sched, 5);
    ASSERT_EQ(traj.metadata.seeds.size(), 2u);
    EXPECT_EQ(traj.metadata.seeds[0], (SeedRecord{"coin_a", 3}));
    EXPECT_EQ(traj.metadata.seeds[1], (SeedRecord{"choice", 9}));
}

TEST(Reseed, derives_every_slot) {
    const StrategySchedule sched = ProbabilisticChoice{RandomPhaseAlpha{0}, RandomPhaseBeta{0}, 0.4, 0};
    const auto seeds = consumed_seeds(reseed(sched, 77));
    ASSERT_EQ(seeds.size(), 3u);
    EXPECT_EQ(seeds[0].seed, derive_seed(77, 1));
    EXPECT_EQ(seeds[1].seed, derive_seed(77, 2));
    EXPECT_EQ(seeds[2].seed, derive_seed(77, 3));
    EXPECT_TRUE(is_stochastic(sched));
    EXPECT_FALSE(is_stochastic(Single{UniformRotation{1.0}}));
}

// ---------------------------------------------------------------------------
// Properties

TEST(RunProperties, unitarity_over_long_runs) {
    qwp_test::CaseGenerator gen(101);
    const auto failure = qwp_test::check_unitarity(gen, 20, 1000);
    EXPECT_FALSE(failure) << *failure;
}

TEST(RunProperties, light_cone) {
    qwp_test::CaseGenerator gen(102);
    const auto failure = qwp_test::check_light_cone(gen, 200);
    EXPECT_FALSE(failure) << *failure;
}

TEST(RunProperties, parity) {
    qwp_test::CaseGenerator gen(103);
    const auto failure = qwp_test::check_parity(gen, 200);
    EXPECT_FALSE(failure) << *failure;
}

TEST(RunProperties, mirror_symmetry) {
    qwp_test::CaseGenerator gen(104);
    const auto failure = qwp_test::check_mirror(gen, 200);
    EXPECT_FALSE(failure) << *failure;
}

TEST(RunProperties, pole_degeneracy) {
    qwp_test::CaseGenerator gen(105);
    const auto failure = qwp_test::check_pole_degeneracy(gen, 200);
    EXPECT_FALSE(failure) << *failure;
}

TEST(RunProperties, composite_collapses_for_uniform_coins) {
    qwp_test::CaseGenerator gen(106);
    const auto failure = qwp_test::check_composite_collapse(gen, 200);
    EXPECT_FALSE(failure) << *failure;
}

TEST(RunProperties, matches_path_sum_oracle) {
    qwp_test::CaseGenerator gen(107);
    const auto failure = qwp_test::check_path_sum(gen, 500, 6);
    EXPECT_FALSE(failure) << *failure;
}

TEST(RunProperties, interleaved_composite_matches_path_sum_oracle) {
    qwp_test::CaseGenerator gen(106);
    for (int k = 0; k < 50; ++k) {
        const unsigned m = static_cast<unsigned>(gen.integer(1, 2)), n = static_cast<unsigned>(gen.integer(1, 2));
        const StrategySchedule sched = Composite{gen.coin(), gen.coin(), m, n, true};
        const std::size_t steps = static_cast<std::size_t>(gen.integer(1, 3));
        const LatticeGeometry g(2 * steps * (m + n) + 1);
        const auto psi0 = new_localized(g, gen.bloch(), 0);
        const auto traj = run(psi0, sched, steps);
        const auto oracle = qwp_test::path_sum(g.max_position(), 0, psi0.up_at(0), psi0.down_at(0),
                                               qwp_test::oracle_substeps(sched, steps));
        for (std::size_t i = 0; i < g.n_sites(); ++i) {
            ASSERT_NEAR(std::abs(traj.final_state.up()[i] - oracle.up[i]), 0.0, 1e-10);
            ASSERT_NEAR(std::abs(traj.final_state.down()[i] - oracle.down[i]), 0.0, 1e-10);
        }
    }
}

TEST(RunProperties, same_seed_same_trajectory) {
    qwp_test::CaseGenerator gen(107);
    for (int k = 0; k < 30; ++k) {
        const auto sched = gen.schedule();
        const auto psi0 = new_localized(LatticeGeometry(61), gen.bloch(), 0);
        const auto a = run(psi0, sched, 30);
        const auto b = run(psi0, sched, 30);
        EXPECT_EQ(a.final_state, b.final_state);
    }
}
