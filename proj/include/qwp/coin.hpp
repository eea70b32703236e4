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

#ifndef QWP_COIN_HPP
#define QWP_COIN_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <variant>

#include "errors.hpp"
#include "random.hpp"
#include "walker_state.hpp"

namespace qwp {

/// 2x2 matrix acting on the spinor (psi_up, psi_down) at one site.
struct LocalCoin {
    Amplitude u00, u01, u10, u11;

    static constexpr LocalCoin identity() {
        return {1.0, 0.0, 0.0, 1.0};
    }

    LocalCoin adjoint() const {
        return {std::conj(u00), std::conj(u10), std::conj(u01), std::conj(u11)};
    }

    Amplitude determinant() const {
        return u00 * u11 - u01 * u10;
    }

    friend LocalCoin operator*(const LocalCoin &a, const LocalCoin &b) {
        return {
            a.u00 * b.u00 + a.u01 * b.u10,
            a.u00 * b.u01 + a.u01 * b.u11,
            a.u10 * b.u00 + a.u11 * b.u10,
            a.u10 * b.u01 + a.u11 * b.u11,
        };
    }

    void apply(Amplitude &up, Amplitude &down) const {
        const Amplitude new_up = u00 * up + u01 * down;
        down = u10 * up + u11 * down;
        up = new_up;
    }

    /// Largest entrywise deviation of U^dagger U from the identity.
    double unitarity_error() const {
        const LocalCoin p = adjoint() * (*this);
        return std::max({std::abs(p.u00 - 1.0), std::abs(p.u01), std::abs(p.u10), std::abs(p.u11 - 1.0)});
    }

    bool operator==(const LocalCoin &) const = default;
};

/// exp(-i theta sigma_y / 2).
inline LocalCoin rotation_matrix(double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    return {c, -s, s, c};
}

/// Rotation angle interpolated between theta_minus (x -> -inf) and
/// theta_plus (x -> +inf) through tanh(x), with x the raw position label.
inline double site_theta(double theta_minus, double theta_plus, double x) {
    // Midpoint plus half-spread keeps the result monotone in x under rounding.
    return 0.5 * (theta_plus + theta_minus) + 0.5 * (theta_plus - theta_minus) * std::tanh(x);
}

/// [[sqrt q, sqrt(1-q) e^{i alpha}], [sqrt(1-q) e^{i beta}, -sqrt q e^{i(alpha+beta)}]].
///
/// The lower-left entry uses sqrt(1-q) so the matrix is unitary for every q;
/// at q = 1/2 it gives the Hadamard (alpha = beta = 0) and Fourier
/// (alpha = beta = pi/2) coins.
inline LocalCoin general_coin_matrix(double q, double alpha, double beta) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw Error(ErrorKind::domain, "general coin weight q=" + std::to_string(q) + " is outside [0, 1]");
    }
    const double a = std::sqrt(q);
    const double b = std::sqrt(1.0 - q);
    return {a, std::polar(b, alpha), std::polar(b, beta), -std::polar(a, alpha + beta)};
}

// ---------------------------------------------------------------------------
// Coin families

struct UniformRotation {
    double theta = 0.0;
    bool operator==(const UniformRotation &) const = default;
};

struct SiteTanhRotation {
    double theta_minus = 0.0;
    double theta_plus = 0.0;
    bool operator==(const SiteTanhRotation &) const = default;
};

struct GeneralCoin {
    double q = 0.5;
    double alpha = 0.0;
    double beta = 0.0;
    bool operator==(const GeneralCoin &) const = default;
};

/// C(1/2, alpha(t), 0) with alpha(t) uniform on [0, 2 pi), one draw per step.
struct RandomPhaseAlpha {
    std::uint64_t seed = 0;
    bool operator==(const RandomPhaseAlpha &) const = default;
};

/// C(1/2, 0, beta(t)) with beta(t) uniform on [0, 2 pi), one draw per step.
struct RandomPhaseBeta {
    std::uint64_t seed = 0;
    bool operator==(const RandomPhaseBeta &) const = default;
};

using CoinSpec = std::variant<UniformRotation, SiteTanhRotation, GeneralCoin, RandomPhaseAlpha, RandomPhaseBeta>;

inline bool is_random(const CoinSpec &spec) {
    return std::holds_alternative<RandomPhaseAlpha>(spec) || std::holds_alternative<RandomPhaseBeta>(spec);
}

inline bool is_site_dependent(const CoinSpec &spec) {
    return std::holds_alternative<SiteTanhRotation>(spec);
}

/// Seed carried by a random-phase spec; 0 for deterministic coins.
inline std::uint64_t coin_seed(const CoinSpec &spec) {
    if (const auto *a = std::get_if<RandomPhaseAlpha>(&spec)) {
        return a->seed;
    }
    if (const auto *b = std::get_if<RandomPhaseBeta>(&spec)) {
        return b->seed;
    }
    return 0;
}

inline CoinSpec with_seed(CoinSpec spec, std::uint64_t seed) {
    if (auto *a = std::get_if<RandomPhaseAlpha>(&spec)) {
        a->seed = seed;
    } else if (auto *b = std::get_if<RandomPhaseBeta>(&spec)) {
        b->seed = seed;
    }
    return spec;
}

/// Coin at position x and step t. `phases` supplies the per-step draw for
/// random-phase families and may be null for the deterministic ones.
inline LocalCoin realize(const CoinSpec &spec, int x, std::size_t t, UniformSequence *phases) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return std::visit(
        [&](const auto &c) -> LocalCoin {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, UniformRotation>) {
                return rotation_matrix(c.theta);
            } else if constexpr (std::is_same_v<T, SiteTanhRotation>) {
                return rotation_matrix(site_theta(c.theta_minus, c.theta_plus, x));
            } else if constexpr (std::is_same_v<T, GeneralCoin>) {
                return general_coin_matrix(c.q, c.alpha, c.beta);
            } else {
                if (phases == nullptr) {
                    throw Error(ErrorKind::missing_randomness, "random-phase coin realized without a random stream");
                }
                const double phase = two_pi * phases->at(t);
                if constexpr (std::is_same_v<T, RandomPhaseAlpha>) {
                    return general_coin_matrix(0.5, phase, 0.0);
                } else {
                    return general_coin_matrix(0.5, 0.0, phase);
                }
            }
        },
        spec);
}

inline std::string describe(const CoinSpec &spec) {
    return std::visit(
        [](const auto &c) -> std::string {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, UniformRotation>) {
                return "uniform(theta=" + std::to_string(c.theta) + ")";
            } else if constexpr (std::is_same_v<T, SiteTanhRotation>) {
                return "tanh(theta_minus=" + std::to_string(c.theta_minus) +
                       ", theta_plus=" + std::to_string(c.theta_plus) + ")";
            } else if constexpr (std::is_same_v<T, GeneralCoin>) {
                return "general(q=" + std::to_string(c.q) + ", alpha=" + std::to_string(c.alpha) +
                       ", beta=" + std::to_string(c.beta) + ")";
            } else if constexpr (std::is_same_v<T, RandomPhaseAlpha>) {
                return "random_alpha(seed=" + std::to_string(c.seed) + ")";
            } else {
                return "random_beta(seed=" + std::to_string(c.seed) + ")";
            }
        },
        spec);
}

}  // namespace qwp

#endif  // QWP_COIN_HPP
