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

#ifndef QWP_EVOLUTION_HPP
#define QWP_EVOLUTION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "coin.hpp"
#include "errors.hpp"
#include "random.hpp"
#include "walker_state.hpp"

namespace qwp {

// ---------------------------------------------------------------------------
// Strategy schedules

/// One coin per step.
struct Single {
    CoinSpec coin;
    bool operator==(const Single &) const = default;
};

/// Coin A applied m times, then coin B n times, then one shift. With
/// `interleaved` every coin application is followed by its own shift instead;
/// that variant exists for sensitivity studies only.
struct Composite {
    CoinSpec a;
    CoinSpec b;
    unsigned m = 1;
    unsigned n = 1;
    bool interleaved = false;
    bool operator==(const Composite &) const = default;
};

/// A twice on even steps (t = 0 is even), B twice on odd steps.
struct AlternatingEvenOdd {
    CoinSpec a;
    CoinSpec b;
    bool operator==(const AlternatingEvenOdd &) const = default;
};

/// Each step applies A once with probability q, otherwise B once.
struct ProbabilisticChoice {
    CoinSpec a;
    CoinSpec b;
    double q = 0.5;
    std::uint64_t seed = 0;
    bool operator==(const ProbabilisticChoice &) const = default;
};

using StrategySchedule = std::variant<Single, Composite, AlternatingEvenOdd, ProbabilisticChoice>;

inline void validate(const StrategySchedule &schedule) {
    if (const auto *c = std::get_if<Composite>(&schedule); c != nullptr && c->m + c->n == 0) {
        throw Error(ErrorKind::validation, "composite schedule needs m + n >= 1");
    }
    if (const auto *p = std::get_if<ProbabilisticChoice>(&schedule); p != nullptr && !(p->q >= 0.0 && p->q <= 1.0)) {
        throw Error(ErrorKind::validation, "probabilistic schedule weight q=" + std::to_string(p->q) +
                                               " is outside [0, 1]");
    }
}

/// Coin used in slot A and, where the schedule has one, slot B.
inline std::pair<const CoinSpec *, const CoinSpec *> coin_slots(const StrategySchedule &schedule) {
    return std::visit(
        [](const auto &s) -> std::pair<const CoinSpec *, const CoinSpec *> {
            if constexpr (std::is_same_v<std::decay_t<decltype(s)>, Single>) {
                return {&s.coin, nullptr};
            } else {
                return {&s.a, &s.b};
            }
        },
        schedule);
}

inline bool is_stochastic(const StrategySchedule &schedule) {
    if (std::holds_alternative<ProbabilisticChoice>(schedule)) {
        return true;
    }
    const auto [a, b] = coin_slots(schedule);
    return is_random(*a) || (b != nullptr && is_random(*b));
}

/// Shift applications per schedule step; the walker's reach after T steps is
/// T times this.
inline std::size_t shifts_per_step(const StrategySchedule &schedule) {
    if (const auto *c = std::get_if<Composite>(&schedule); c != nullptr && c->interleaved) {
        return c->m + c->n;
    }
    return 1;
}

/// Replace every seed in the schedule by one derived from `seed`: slot A
/// phases use index 1, slot B phases index 2, the A/B choice index 3.
inline StrategySchedule reseed(StrategySchedule schedule, std::uint64_t seed) {
    std::visit(
        [&](auto &s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Single>) {
                s.coin = with_seed(s.coin, derive_seed(seed, 1));
            } else {
                s.a = with_seed(s.a, derive_seed(seed, 1));
                s.b = with_seed(s.b, derive_seed(seed, 2));
                if constexpr (std::is_same_v<T, ProbabilisticChoice>) {
                    s.seed = derive_seed(seed, 3);
                }
            }
        },
        schedule);
    return schedule;
}

struct SeedRecord {
    std::string name;
    std::uint64_t seed;
    bool operator==(const SeedRecord &) const = default;
};

/// Every seed the schedule consumes when run.
inline std::vector<SeedRecord> consumed_seeds(const StrategySchedule &schedule) {
    std::vector<SeedRecord> seeds;
    const auto [a, b] = coin_slots(schedule);
    if (is_random(*a)) {
        seeds.push_back({"coin_a", coin_seed(*a)});
    }
    if (b != nullptr && is_random(*b)) {
        seeds.push_back({"coin_b", coin_seed(*b)});
    }
    if (const auto *p = std::get_if<ProbabilisticChoice>(&schedule)) {
        seeds.push_back({"choice", p->seed});
    }
    return seeds;
}

inline std::string describe(const StrategySchedule &schedule) {
    return std::visit(
        [](const auto &s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Single>) {
                return "single{" + describe(s.coin) + "}";
            } else if constexpr (std::is_same_v<T, Composite>) {
                return "composite{m=" + std::to_string(s.m) + ", n=" + std::to_string(s.n) +
                       (s.interleaved ? ", interleaved" : "") + ", a=" + describe(s.a) + ", b=" + describe(s.b) +
                       "}";
            } else if constexpr (std::is_same_v<T, AlternatingEvenOdd>) {
                return "alternating{even=a^2, odd=b^2, a=" + describe(s.a) + ", b=" + describe(s.b) + "}";
            } else {
                return "probabilistic{q=" + std::to_string(s.q) + ", a=" + describe(s.a) + ", b=" + describe(s.b) +
                       "}";
            }
        },
        schedule);
}

// ---------------------------------------------------------------------------
// Random streams

/// Per-run random streams: phase draws for each coin slot and the A/B choice
/// draw. A stream that the schedule needs but that is absent raises a
/// missing-randomness error when used.
struct RandomStreams {
    std::optional<UniformSequence> phases_a;
    std::optional<UniformSequence> phases_b;
    std::optional<UniformSequence> choice;
};

inline RandomStreams make_streams(const StrategySchedule &schedule) {
    RandomStreams streams;
    const auto [a, b] = coin_slots(schedule);
    if (is_random(*a)) {
        streams.phases_a.emplace(coin_seed(*a));
    }
    if (b != nullptr && is_random(*b)) {
        streams.phases_b.emplace(coin_seed(*b));
    }
    if (const auto *p = std::get_if<ProbabilisticChoice>(&schedule)) {
        streams.choice.emplace(p->seed);
    }
    return streams;
}

namespace detail {

inline UniformSequence *stream_ptr(std::optional<UniformSequence> &s) {
    return s ? &*s : nullptr;
}

/// Inclusive index range outside of which every amplitude is zero.
struct SiteRange {
    std::size_t lo = 0;
    std::size_t hi = 0;
};

inline SiteRange full_range(const LatticeGeometry &g) {
    return {0, g.n_sites() - 1};
}

/// Coin realized over the lattice with site-dependent families tabulated once.
class CoinField {
   public:
    CoinField(const CoinSpec &spec, const LatticeGeometry &geometry) : spec_(spec) {
        if (is_site_dependent(spec)) {
            per_site_.reserve(geometry.n_sites());
            for (std::size_t i = 0; i < geometry.n_sites(); ++i) {
                per_site_.push_back(realize(spec, geometry.position_of(i), 0, nullptr));
            }
        } else if (!is_random(spec)) {
            constant_ = realize(spec, 0, 0, nullptr);
        }
    }

    void apply(WalkerState &state, std::size_t t, UniformSequence *phases, SiteRange range) const {
        auto up = state.up();
        auto down = state.down();
        if (!per_site_.empty()) {
            for (std::size_t i = range.lo; i <= range.hi; ++i) {
                per_site_[i].apply(up[i], down[i]);
            }
            return;
        }
        const LocalCoin coin = constant_ ? *constant_ : realize(spec_, 0, t, phases);
        for (std::size_t i = range.lo; i <= range.hi; ++i) {
            coin.apply(up[i], down[i]);
        }
    }

   private:
    CoinSpec spec_;
    std::vector<LocalCoin> per_site_;
    std::optional<LocalCoin> constant_;
};

inline constexpr double kLeakageTolerance = 1e-14;

inline void shift_range(WalkerState &state, SiteRange &range) {
    auto up = state.up();
    auto down = state.down();
    const std::size_t last = up.size() - 1;
    if (std::abs(up[last]) > kLeakageTolerance || std::abs(down[0]) > kLeakageTolerance) {
        throw Error(ErrorKind::boundary_leakage, "walker reached the lattice boundary at step " +
                                                     std::to_string(state.time_step()) +
                                                     "; increase N to at least 2T+1");
    }
    const std::size_t hi_up = std::min(range.hi, last - 1);
    std::move_backward(up.begin() + range.lo, up.begin() + hi_up + 1, up.begin() + hi_up + 2);
    up[range.lo] = 0.0;
    const std::size_t lo_down = std::max<std::size_t>(range.lo, 1);
    std::move(down.begin() + lo_down, down.begin() + range.hi + 1, down.begin() + lo_down - 1);
    down[range.hi] = 0.0;
    range.lo = range.lo > 0 ? range.lo - 1 : 0;
    range.hi = std::min(range.hi + 1, last);
}

inline SiteRange occupied_range(const WalkerState &state) {
    const auto up = state.up();
    const auto down = state.down();
    std::size_t lo = up.size();
    std::size_t hi = 0;
    for (std::size_t i = 0; i < up.size(); ++i) {
        if (up[i] != 0.0 || down[i] != 0.0) {
            lo = std::min(lo, i);
            hi = i;
        }
    }
    if (lo == up.size()) {
        return {0, 0};
    }
    return {lo, hi};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Single-step operations

/// Multiply the spinor at every site by realize(spec, x, t). Does not advance t.
inline void apply_coin(WalkerState &state, const CoinSpec &spec, std::size_t t, UniformSequence *phases) {
    detail::CoinField(spec, state.geometry()).apply(state, t, phases, detail::full_range(state.geometry()));
}

/// Conditional translation: spin up moves to x+1, spin down to x-1. Throws
/// boundary-leakage instead of wrapping or reflecting.
inline void shift(WalkerState &state) {
    auto range = detail::full_range(state.geometry());
    detail::shift_range(state, range);
}

/// Schedule bound to a lattice with its coin fields tabulated.
class Evolver {
   public:
    Evolver(StrategySchedule schedule, const LatticeGeometry &geometry)
        : schedule_(std::move(schedule)),
          field_a_(*coin_slots(schedule_).first, geometry),
          field_b_(coin_slots(schedule_).second ? *coin_slots(schedule_).second : CoinSpec{UniformRotation{}},
                   geometry) {
        validate(schedule_);
    }

    const StrategySchedule &schedule() const noexcept {
        return schedule_;
    }

    void step(WalkerState &state, RandomStreams &streams) const {
        auto range = detail::full_range(state.geometry());
        step(state, streams, range);
    }

    /// Advance one step touching only `range`, which must cover every nonzero
    /// amplitude and is widened by the shift.
    void step(WalkerState &state, RandomStreams &streams, detail::SiteRange &range) const {
        const std::size_t t = state.time_step();
        auto *pa = detail::stream_ptr(streams.phases_a);
        auto *pb = detail::stream_ptr(streams.phases_b);
        auto coin_a = [&] { field_a_.apply(state, t, pa, range); };
        auto coin_b = [&] { field_b_.apply(state, t, pb, range); };
        auto shift_once = [&] { detail::shift_range(state, range); };

        std::visit(
            [&](const auto &s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, Single>) {
                    coin_a();
                    shift_once();
                } else if constexpr (std::is_same_v<T, Composite>) {
                    for (unsigned k = 0; k < s.m; ++k) {
                        coin_a();
                        if (s.interleaved) {
                            shift_once();
                        }
                    }
                    for (unsigned k = 0; k < s.n; ++k) {
                        coin_b();
                        if (s.interleaved) {
                            shift_once();
                        }
                    }
                    if (!s.interleaved) {
                        shift_once();
                    }
                } else if constexpr (std::is_same_v<T, AlternatingEvenOdd>) {
                    if (t % 2 == 0) {
                        coin_a();
                        coin_a();
                    } else {
                        coin_b();
                        coin_b();
                    }
                    shift_once();
                } else {
                    if (!streams.choice) {
                        throw Error(ErrorKind::missing_randomness, "probabilistic schedule run without a choice stream");
                    }
                    if (streams.choice->at(t) < s.q) {
                        coin_a();
                    } else {
                        coin_b();
                    }
                    shift_once();
                }
            },
            schedule_);
        state.set_time_step(t + 1);
    }

   private:
    StrategySchedule schedule_;
    detail::CoinField field_a_;
    detail::CoinField field_b_;
};

/// One full step: the schedule's coin composition for t = state.time_step(),
/// then the shift; increments the time step.
inline void step(WalkerState &state, const StrategySchedule &schedule, RandomStreams &streams) {
    Evolver(schedule, state.geometry()).step(state, streams);
}

// ---------------------------------------------------------------------------
// Trajectories

struct TrajectoryPoint {
    std::size_t t = 0;
    double expectation = 0.0;
    double variance = 0.0;
    double norm = 0.0;
};

struct TrajectoryMetadata {
    std::string schedule;
    std::vector<SeedRecord> seeds;
    std::size_t n_sites = 0;
    std::size_t steps = 0;
};

struct Trajectory {
    std::vector<TrajectoryPoint> series;
    /// Row t holds P(x, t) over lattice indices; empty unless requested.
    std::vector<std::vector<double>> distribution;
    WalkerState final_state;
    TrajectoryMetadata metadata;
};

/// Throws geometry-too-small unless the walker cannot reach either boundary.
inline void require_room(const LatticeGeometry &geometry, const StrategySchedule &schedule, std::size_t steps) {
    const std::size_t reach = steps * shifts_per_step(schedule);
    if (geometry.n_sites() < 2 * reach + 1) {
        throw Error(ErrorKind::geometry_too_small, "N=" + std::to_string(geometry.n_sites()) + " < 2T+1=" +
                                                       std::to_string(2 * reach + 1) + " for T=" +
                                                       std::to_string(reach));
    }
}

namespace detail {

inline TrajectoryPoint observe(const WalkerState &state, SiteRange range, std::vector<double> *row) {
    const auto &g = state.geometry();
    const auto up = state.up();
    const auto down = state.down();
    double total = 0.0;
    double first = 0.0;
    for (std::size_t i = range.lo; i <= range.hi; ++i) {
        const double p = std::norm(up[i]) + std::norm(down[i]);
        total += p;
        first += g.position_of(i) * p;
    }
    double second = 0.0;
    for (std::size_t i = range.lo; i <= range.hi; ++i) {
        const double d = g.position_of(i) - first;
        second += d * d * (std::norm(up[i]) + std::norm(down[i]));
    }
    if (row != nullptr) {
        row->assign(g.n_sites(), 0.0);
        for (std::size_t i = range.lo; i <= range.hi; ++i) {
            (*row)[i] = std::norm(up[i]) + std::norm(down[i]);
        }
    }
    return {state.time_step(), first, second, total};
}

}  // namespace detail

/// Evolve `initial` for `steps` steps, recording observables after every step.
inline Trajectory run(WalkerState initial, const StrategySchedule &schedule, std::size_t steps, bool record_full,
                      RandomStreams &streams) {
    require_room(initial.geometry(), schedule, steps);
    const Evolver evolver(schedule, initial.geometry());

    Trajectory out{{}, {}, std::move(initial), {}};
    out.metadata = {describe(schedule), consumed_seeds(schedule), out.final_state.geometry().n_sites(), steps};
    out.series.reserve(steps + 1);
    if (record_full) {
        out.distribution.resize(steps + 1);
    }

    WalkerState &state = out.final_state;
    auto range = detail::occupied_range(state);
    out.series.push_back(detail::observe(state, range, record_full ? &out.distribution[0] : nullptr));
    out.series.back().t = 0;
    for (std::size_t k = 1; k <= steps; ++k) {
        evolver.step(state, streams, range);
        out.series.push_back(detail::observe(state, range, record_full ? &out.distribution[k] : nullptr));
        out.series.back().t = k;
    }
    return out;
}

inline Trajectory run(WalkerState initial, const StrategySchedule &schedule, std::size_t steps,
                      bool record_full = false) {
    auto streams = make_streams(schedule);
    return run(std::move(initial), schedule, steps, record_full, streams);
}

}  // namespace qwp

#endif  // QWP_EVOLUTION_HPP
