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

#ifndef QWP_ENSEMBLE_HPP
#define QWP_ENSEMBLE_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "evolution.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "walker_state.hpp"

namespace qwp {

struct EnsembleResult {
    std::vector<double> mean;            ///< mean <X>(t) over iterations
    std::vector<double> standard_error;  ///< sample standard deviation / sqrt(R)
    std::size_t iterations = 0;
    std::uint64_t master_seed = 0;
    std::string schedule;
    /// Set when the schedule has no randomness, so every iteration is identical.
    bool degenerate = false;
};

/// Iteration r runs `reseed(schedule, derive_seed(master_seed, r))`. Results are
/// reduced in iteration order, so the output does not depend on `workers`.
inline EnsembleResult ensemble_expectation(const WalkerState &initial, const StrategySchedule &schedule,
                                           std::size_t steps, std::size_t iterations, std::uint64_t master_seed,
                                           unsigned workers = 0) {
    if (iterations == 0) {
        throw Error(ErrorKind::validation, "ensemble needs at least one iteration");
    }
    validate(schedule);
    require_room(initial.geometry(), schedule, steps);

    EnsembleResult result;
    result.iterations = iterations;
    result.master_seed = master_seed;
    result.schedule = describe(schedule);
    result.degenerate = !is_stochastic(schedule);

    const std::size_t len = steps + 1;
    std::vector<double> mean(len, 0.0);
    std::vector<double> m2(len, 0.0);

    // Fixed-size batches keep memory bounded; Welford updates run in index order.
    constexpr std::size_t kBatch = 512;
    std::vector<double> batch(kBatch * len);
    for (std::size_t start = 0; start < iterations; start += kBatch) {
        const std::size_t count = std::min(kBatch, iterations - start);
        parallel_for(count, workers, [&](std::size_t j) {
            const auto seeded = reseed(schedule, derive_seed(master_seed, start + j));
            const auto traj = run(initial, seeded, steps);
            for (std::size_t t = 0; t < len; ++t) {
                batch[j * len + t] = traj.series[t].expectation;
            }
        });
        for (std::size_t j = 0; j < count; ++j) {
            const double k = static_cast<double>(start + j + 1);
            for (std::size_t t = 0; t < len; ++t) {
                const double x = batch[j * len + t];
                const double delta = x - mean[t];
                mean[t] += delta / k;
                m2[t] += delta * (x - mean[t]);
            }
        }
    }

    result.mean = std::move(mean);
    result.standard_error.assign(len, 0.0);
    if (iterations > 1) {
        const double r = static_cast<double>(iterations);
        for (std::size_t t = 0; t < len; ++t) {
            result.standard_error[t] = std::sqrt(std::max(0.0, m2[t]) / (r - 1.0) / r);
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Classical baseline

struct ClassicalWalkResult {
    std::size_t steps = 0;
    /// Row t holds P(x, t) for x = -steps ... +steps.
    std::vector<std::vector<double>> distribution;
    std::vector<double> expectation;
    std::vector<double> variance;
};

/// Exact evolution of the biased random-walk distribution from P(0, 0) = 1.
inline ClassicalWalkResult classical_walk(std::size_t steps, double p_right) {
    if (!(p_right >= 0.0 && p_right <= 1.0)) {
        throw Error(ErrorKind::domain, "p_right=" + std::to_string(p_right) + " is outside [0, 1]");
    }
    const std::size_t width = 2 * steps + 1;
    const auto offset = static_cast<double>(steps);
    ClassicalWalkResult out;
    out.steps = steps;
    out.distribution.assign(steps + 1, std::vector<double>(width, 0.0));
    out.distribution[0][steps] = 1.0;
    for (std::size_t t = 1; t <= steps; ++t) {
        const auto &prev = out.distribution[t - 1];
        auto &cur = out.distribution[t];
        for (std::size_t i = 0; i < width; ++i) {
            double p = 0.0;
            if (i > 0) {
                p += p_right * prev[i - 1];
            }
            if (i + 1 < width) {
                p += (1.0 - p_right) * prev[i + 1];
            }
            cur[i] = p;
        }
    }
    for (const auto &row : out.distribution) {
        double mean = 0.0;
        for (std::size_t i = 0; i < width; ++i) {
            mean += (static_cast<double>(i) - offset) * row[i];
        }
        double var = 0.0;
        for (std::size_t i = 0; i < width; ++i) {
            const double d = static_cast<double>(i) - offset - mean;
            var += d * d * row[i];
        }
        out.expectation.push_back(mean);
        out.variance.push_back(var);
    }
    return out;
}

/// Least-squares slope of log(variance) against log(t) for t in [t_min, t_max],
/// where variance[t] is the value after t steps.
inline double variance_scaling_exponent(std::span<const double> variance, std::size_t t_min, std::size_t t_max) {
    if (t_min == 0) {
        t_min = 1;
    }
    if (t_max >= variance.size()) {
        t_max = variance.size() == 0 ? 0 : variance.size() - 1;
    }
    if (t_max < t_min || t_max - t_min + 1 < 5) {
        throw Error(ErrorKind::insufficient_data, "variance fit window [" + std::to_string(t_min) + ", " +
                                                      std::to_string(t_max) + "] has fewer than 5 points");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const auto count = static_cast<double>(t_max - t_min + 1);
    for (std::size_t t = t_min; t <= t_max; ++t) {
        if (!(variance[t] > 0.0)) {
            throw Error(ErrorKind::domain, "variance at t=" + std::to_string(t) + " is not positive");
        }
        const double x = std::log(static_cast<double>(t));
        const double y = std::log(variance[t]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

}  // namespace qwp

#endif  // QWP_ENSEMBLE_HPP
