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

#ifndef QWP_SCHEDULE_DESCRIPTION_HPP
#define QWP_SCHEDULE_DESCRIPTION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coin.hpp"
#include "errors.hpp"
#include "evolution.hpp"
#include "random.hpp"

namespace qwp {

// Declarative, partially bound form of a StrategySchedule. Parameters are
// addressed by dotted names ("coin_b.theta_plus", "schedule.q") so that config
// files and sweep axes can bind them uniformly.

enum class CoinKind { uniform, tanh, general, random_alpha, random_beta };
enum class StrategyKind { single, composite, alternating, probabilistic };
enum class CoinSlot { a, b };

inline const char *to_string(CoinKind k) {
    switch (k) {
        case CoinKind::uniform:
            return "uniform";
        case CoinKind::tanh:
            return "tanh";
        case CoinKind::general:
            return "general";
        case CoinKind::random_alpha:
            return "random_alpha";
        case CoinKind::random_beta:
            return "random_beta";
    }
    return "?";
}

inline const char *to_string(StrategyKind k) {
    switch (k) {
        case StrategyKind::single:
            return "single";
        case StrategyKind::composite:
            return "composite";
        case StrategyKind::alternating:
            return "alternating";
        case StrategyKind::probabilistic:
            return "probabilistic";
    }
    return "?";
}

inline std::optional<CoinKind> coin_kind_from(std::string_view s) {
    for (auto k : {CoinKind::uniform, CoinKind::tanh, CoinKind::general, CoinKind::random_alpha,
                   CoinKind::random_beta}) {
        if (s == to_string(k)) {
            return k;
        }
    }
    return std::nullopt;
}

inline std::optional<StrategyKind> strategy_kind_from(std::string_view s) {
    for (auto k : {StrategyKind::single, StrategyKind::composite, StrategyKind::alternating,
                   StrategyKind::probabilistic}) {
        if (s == to_string(k)) {
            return k;
        }
    }
    return std::nullopt;
}

struct CoinDescription {
    std::optional<CoinKind> kind;
    std::optional<double> theta;
    std::optional<double> theta_minus;
    std::optional<double> theta_plus;
    std::optional<double> q;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<std::uint64_t> seed;

    bool operator==(const CoinDescription &) const = default;
};

struct ScheduleDescription {
    StrategyKind strategy = StrategyKind::single;
    CoinSlot single_coin = CoinSlot::a;
    CoinDescription a;
    CoinDescription b;
    unsigned m = 1;
    unsigned n = 1;
    double q = 0.5;
    bool interleaved = false;

    bool operator==(const ScheduleDescription &) const = default;
};

inline constexpr std::string_view kCoinFields[] = {"theta", "theta_minus", "theta_plus", "q", "alpha", "beta"};

namespace detail {

inline std::optional<double> *coin_field(CoinDescription &c, std::string_view field) {
    if (field == "theta") return &c.theta;
    if (field == "theta_minus") return &c.theta_minus;
    if (field == "theta_plus") return &c.theta_plus;
    if (field == "q") return &c.q;
    if (field == "alpha") return &c.alpha;
    if (field == "beta") return &c.beta;
    return nullptr;
}

inline bool uses_slot(const ScheduleDescription &d, CoinSlot slot) {
    if (d.strategy == StrategyKind::single) {
        return d.single_coin == slot;
    }
    if (d.strategy == StrategyKind::composite) {
        return slot == CoinSlot::a ? d.m > 0 : d.n > 0;
    }
    return true;
}

inline std::vector<std::string> required_fields(CoinKind kind) {
    switch (kind) {
        case CoinKind::uniform:
            return {"theta"};
        case CoinKind::tanh:
            return {"theta_minus", "theta_plus"};
        case CoinKind::general:
            return {"q", "alpha", "beta"};
        case CoinKind::random_alpha:
        case CoinKind::random_beta:
            return {};
    }
    return {};
}

inline CoinSpec build_coin(const CoinDescription &c, const std::string &prefix, std::uint64_t default_seed) {
    if (!c.kind) {
        throw Error(ErrorKind::configuration, prefix + ".kind is not bound");
    }
    auto need = [&](const std::optional<double> &v, const char *field) {
        if (!v) {
            throw Error(ErrorKind::configuration, prefix + "." + field + " is not bound");
        }
        return *v;
    };
    switch (*c.kind) {
        case CoinKind::uniform:
            return UniformRotation{need(c.theta, "theta")};
        case CoinKind::tanh:
            return SiteTanhRotation{need(c.theta_minus, "theta_minus"), need(c.theta_plus, "theta_plus")};
        case CoinKind::general:
            return GeneralCoin{need(c.q, "q"), need(c.alpha, "alpha"), need(c.beta, "beta")};
        case CoinKind::random_alpha:
            return RandomPhaseAlpha{c.seed.value_or(default_seed)};
        case CoinKind::random_beta:
            return RandomPhaseBeta{c.seed.value_or(default_seed)};
    }
    throw Error(ErrorKind::configuration, prefix + ".kind is invalid");
}

}  // namespace detail

/// Bind a numeric parameter by dotted name. Unknown names are configuration
/// errors.
inline void set_parameter(ScheduleDescription &d, std::string_view name, double value) {
    auto bind_coin = [&](CoinDescription &c, std::string_view field) {
        auto *slot = detail::coin_field(c, field);
        if (slot == nullptr) {
            throw Error(ErrorKind::configuration, "unknown parameter '" + std::string(name) + "'");
        }
        *slot = value;
    };
    if (name.starts_with("coin_a.")) {
        bind_coin(d.a, name.substr(7));
    } else if (name.starts_with("coin_b.")) {
        bind_coin(d.b, name.substr(7));
    } else if (name == "schedule.q") {
        d.q = value;
    } else {
        throw Error(ErrorKind::configuration, "unknown parameter '" + std::string(name) + "'");
    }
}

inline bool is_schedule_parameter(std::string_view name) {
    for (std::string_view prefix : {"coin_a.", "coin_b."}) {
        if (name.starts_with(prefix)) {
            for (auto f : kCoinFields) {
                if (name.substr(prefix.size()) == f) {
                    return true;
                }
            }
        }
    }
    return name == "schedule.q";
}

/// Names of the numeric parameters the description needs bound.
inline std::vector<std::string> referenced_parameters(const ScheduleDescription &d) {
    std::vector<std::string> out;
    for (auto slot : {CoinSlot::a, CoinSlot::b}) {
        if (!detail::uses_slot(d, slot)) {
            continue;
        }
        const auto &c = slot == CoinSlot::a ? d.a : d.b;
        if (!c.kind) {
            continue;
        }
        const std::string prefix = slot == CoinSlot::a ? "coin_a." : "coin_b.";
        for (const auto &f : detail::required_fields(*c.kind)) {
            out.push_back(prefix + f);
        }
    }
    if (d.strategy == StrategyKind::probabilistic) {
        out.emplace_back("schedule.q");
    }
    return out;
}

/// Instantiate the schedule. Random components without an explicit seed take
/// the seeds `reseed(schedule, seed)` would give them.
inline StrategySchedule build_schedule(const ScheduleDescription &d, std::uint64_t seed) {
    const auto coin_a = [&] { return detail::build_coin(d.a, "coin_a", derive_seed(seed, 1)); };
    const auto coin_b = [&] { return detail::build_coin(d.b, "coin_b", derive_seed(seed, 2)); };
    StrategySchedule s;
    switch (d.strategy) {
        case StrategyKind::single:
            // Slot A's stream feeds a single coin regardless of which slot it came from.
            s = Single{d.single_coin == CoinSlot::a
                           ? coin_a()
                           : detail::build_coin(d.b, "coin_b", derive_seed(seed, 1))};
            break;
        case StrategyKind::composite: {
            const CoinSpec unused = UniformRotation{0.0};
            s = Composite{d.m > 0 ? coin_a() : unused, d.n > 0 ? coin_b() : unused, d.m, d.n, d.interleaved};
            break;
        }
        case StrategyKind::alternating:
            s = AlternatingEvenOdd{coin_a(), coin_b()};
            break;
        case StrategyKind::probabilistic:
            s = ProbabilisticChoice{coin_a(), coin_b(), d.q, derive_seed(seed, 3)};
            break;
    }
    validate(s);
    return s;
}

}  // namespace qwp

#endif  // QWP_SCHEDULE_DESCRIPTION_HPP
