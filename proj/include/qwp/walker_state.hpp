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

#ifndef QWP_WALKER_STATE_HPP
#define QWP_WALKER_STATE_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace qwp {

using Amplitude = std::complex<double>;

/// Odd-sized 1D lattice with position labels -(N-1)/2 ... +(N-1)/2.
class LatticeGeometry {
   public:
    explicit LatticeGeometry(std::size_t n_sites) : n_sites_(n_sites) {
        if (n_sites < 3) {
            throw Error(ErrorKind::validation, "N=" + std::to_string(n_sites) + " must be at least 3");
        }
        if (n_sites % 2 == 0) {
            throw Error(ErrorKind::validation, "N=" + std::to_string(n_sites) + " is even; N must be odd");
        }
    }

    std::size_t n_sites() const noexcept {
        return n_sites_;
    }
    int max_position() const noexcept {
        return static_cast<int>((n_sites_ - 1) / 2);
    }
    int min_position() const noexcept {
        return -max_position();
    }
    bool contains(int x) const noexcept {
        return x >= min_position() && x <= max_position();
    }
    std::size_t index_of(int x) const {
        if (!contains(x)) {
            throw Error(
                ErrorKind::invalid_position,
                "position " + std::to_string(x) + " is outside the lattice [" + std::to_string(min_position()) +
                    ", " + std::to_string(max_position()) + "]");
        }
        return static_cast<std::size_t>(x + max_position());
    }
    int position_of(std::size_t index) const noexcept {
        return static_cast<int>(index) - max_position();
    }

    bool operator==(const LatticeGeometry &) const = default;

   private:
    std::size_t n_sites_;
};

/// Initial coin state cos(theta/2)|up> + e^{i phi} sin(theta/2)|down>.
struct BlochCoinState {
    double theta = 0.0;
    double phi = 0.0;

    Amplitude up() const {
        return {std::cos(theta / 2), 0.0};
    }
    Amplitude down() const {
        return std::polar(std::sin(theta / 2), phi);
    }

    bool operator==(const BlochCoinState &) const = default;
};

/// Coin (x) lattice wavefunction stored spin-major: two arrays indexed by
/// lattice index, one per spin component.
class WalkerState {
   public:
    explicit WalkerState(LatticeGeometry geometry)
        : geometry_(geometry), up_(geometry.n_sites()), down_(geometry.n_sites()) {
    }

    const LatticeGeometry &geometry() const noexcept {
        return geometry_;
    }
    std::size_t time_step() const noexcept {
        return time_step_;
    }
    void set_time_step(std::size_t t) noexcept {
        time_step_ = t;
    }

    std::span<const Amplitude> up() const noexcept {
        return up_;
    }
    std::span<const Amplitude> down() const noexcept {
        return down_;
    }
    std::span<Amplitude> up() noexcept {
        return up_;
    }
    std::span<Amplitude> down() noexcept {
        return down_;
    }

    Amplitude up_at(int x) const {
        return up_[geometry_.index_of(x)];
    }
    Amplitude down_at(int x) const {
        return down_[geometry_.index_of(x)];
    }

    bool operator==(const WalkerState &) const = default;

   private:
    LatticeGeometry geometry_;
    std::vector<Amplitude> up_;
    std::vector<Amplitude> down_;
    std::size_t time_step_ = 0;
};

inline WalkerState new_localized(LatticeGeometry geometry, BlochCoinState coin, int x0 = 0) {
    WalkerState state(geometry);
    const std::size_t i = geometry.index_of(x0);
    state.up()[i] = coin.up();
    state.down()[i] = coin.down();
    return state;
}

inline double norm(const WalkerState &state) {
    double total = 0.0;
    for (std::size_t i = 0; i < state.geometry().n_sites(); ++i) {
        total += std::norm(state.up()[i]) + std::norm(state.down()[i]);
    }
    return total;
}

/// P(x) indexed by lattice index (position label = index - (N-1)/2).
inline std::vector<double> probability_distribution(const WalkerState &state) {
    std::vector<double> p(state.geometry().n_sites());
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = std::norm(state.up()[i]) + std::norm(state.down()[i]);
    }
    return p;
}

/// Mean and variance of a distribution given over lattice indices.
struct PositionMoments {
    double mean = 0.0;
    double variance = 0.0;
};

inline PositionMoments position_moments(std::span<const double> probabilities, const LatticeGeometry &geometry) {
    double first = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        first += geometry.position_of(i) * probabilities[i];
    }
    // Central second moment; summing (x - mean)^2 avoids the cancellation in
    // E[x^2] - E[x]^2 when the walker has drifted far from the origin.
    double second = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        const double d = geometry.position_of(i) - first;
        second += d * d * probabilities[i];
    }
    return {first, second};
}

inline double position_expectation(const WalkerState &state) {
    return position_moments(probability_distribution(state), state.geometry()).mean;
}

inline double position_variance(const WalkerState &state) {
    return position_moments(probability_distribution(state), state.geometry()).variance;
}

}  // namespace qwp

#endif  // QWP_WALKER_STATE_HPP
