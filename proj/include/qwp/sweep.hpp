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

#ifndef QWP_SWEEP_HPP
#define QWP_SWEEP_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"
#include "evolution.hpp"
#include "parallel.hpp"
#include "schedule_description.hpp"
#include "walker_state.hpp"

namespace qwp {

enum class Outcome { winning, losing, neutral };

inline const char *to_string(Outcome o) {
    switch (o) {
        case Outcome::winning:
            return "winning";
        case Outcome::losing:
            return "losing";
        case Outcome::neutral:
            return "neutral";
    }
    return "?";
}

inline constexpr double kDefaultTieTolerance = 1e-9;

inline Outcome classify(double value, double tie_tolerance = kDefaultTieTolerance) {
    if (value > tie_tolerance) {
        return Outcome::winning;
    }
    if (value < -tie_tolerance) {
        return Outcome::losing;
    }
    return Outcome::neutral;
}

/// Quantity a sweep cell records and classifies.
enum class SweepMetric {
    final_expectation,  ///< <X>(T)
    drift_slope,        ///< least-squares slope of <X>(t) over t in [T/2, T]
};

struct ParameterAxis {
    std::string name;
    double lower = 0.0;
    double upper = 0.0;
    std::size_t points = 2;

    /// Evenly spaced values with both endpoints included.
    std::vector<double> values() const {
        std::vector<double> v(points);
        for (std::size_t i = 0; i < points; ++i) {
            v[i] = points == 1 ? lower
                               : lower + (upper - lower) * static_cast<double>(i) / static_cast<double>(points - 1);
        }
        if (points > 1) {
            v.back() = upper;
        }
        return v;
    }

    bool operator==(const ParameterAxis &) const = default;
};

struct GridSpec {
    ParameterAxis axis1;
    ParameterAxis axis2;
    std::map<std::string, double> fixed;
    ScheduleDescription schedule;
    std::size_t steps = 0;
    std::size_t n_sites = 3;
    BlochCoinState initial{std::numbers::pi, 0.0};
    int x0 = 0;
    std::uint64_t seed = 0;
    double tie_tolerance = kDefaultTieTolerance;
    SweepMetric metric = SweepMetric::final_expectation;
    unsigned workers = 0;
};

struct SweepResult {
    std::vector<double> axis1_values;
    std::vector<double> axis2_values;
    /// Row-major: value(i, j) = values[i * axis2.size() + j].
    std::vector<double> values;
    std::vector<Outcome> classification;
    GridSpec grid;
    double runtime_seconds = 0.0;

    std::size_t rows() const noexcept {
        return axis1_values.size();
    }
    std::size_t cols() const noexcept {
        return axis2_values.size();
    }
    double value(std::size_t i, std::size_t j) const {
        return values[i * cols() + j];
    }
    Outcome outcome(std::size_t i, std::size_t j) const {
        return classification[i * cols() + j];
    }
};

inline double drift_slope(const std::vector<TrajectoryPoint> &series) {
    const std::size_t last = series.size() - 1;
    const std::size_t first = last / 2;
    if (last - first < 1) {
        return 0.0;
    }
    double st = 0.0, sx = 0.0, stt = 0.0, stx = 0.0;
    const auto count = static_cast<double>(last - first + 1);
    for (std::size_t k = first; k <= last; ++k) {
        const auto t = static_cast<double>(series[k].t);
        st += t;
        sx += series[k].expectation;
        stt += t * t;
        stx += t * series[k].expectation;
    }
    return (count * stx - st * sx) / (count * stt - st * st);
}

namespace detail {

inline bool is_initial_parameter(const std::string &name) {
    return name == "initial.theta" || name == "initial.phi";
}

inline void validate_axis(const ParameterAxis &axis) {
    if (axis.points < 2) {
        throw Error(ErrorKind::configuration, "axis '" + axis.name + "' needs at least 2 points");
    }
    if (!std::isfinite(axis.lower) || !std::isfinite(axis.upper)) {
        throw Error(ErrorKind::configuration, "axis '" + axis.name + "' has non-finite bounds");
    }
}

struct PointSetup {
    StrategySchedule schedule;
    BlochCoinState initial;
};

template <class Bind>
SweepResult run_grid(const GridSpec &grid, Bind &&bind) {
    validate_axis(grid.axis1);
    validate_axis(grid.axis2);
    if (grid.axis1.name == grid.axis2.name) {
        throw Error(ErrorKind::configuration, "both axes sweep '" + grid.axis1.name + "'");
    }
    const LatticeGeometry geometry(grid.n_sites);

    SweepResult result;
    result.grid = grid;
    result.axis1_values = grid.axis1.values();
    result.axis2_values = grid.axis2.values();
    const std::size_t cells = result.rows() * result.cols();
    result.values.assign(cells, 0.0);
    result.classification.assign(cells, Outcome::neutral);

    // Bind the first point eagerly so configuration errors surface before any work.
    const PointSetup probe = bind(result.axis1_values[0], result.axis2_values[0]);
    require_room(geometry, probe.schedule, grid.steps);

    const auto start = std::chrono::steady_clock::now();
    parallel_for(cells, grid.workers, [&](std::size_t k) {
        const std::size_t i = k / result.cols();
        const std::size_t j = k % result.cols();
        const PointSetup setup = bind(result.axis1_values[i], result.axis2_values[j]);
        const auto traj = run(new_localized(geometry, setup.initial, grid.x0), setup.schedule, grid.steps);
        const double v = grid.metric == SweepMetric::final_expectation ? traj.series.back().expectation
                                                                       : drift_slope(traj.series);
        result.values[k] = v;
        result.classification[k] = classify(v, grid.tie_tolerance);
    });
    result.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

inline ScheduleDescription with_fixed(const GridSpec &grid) {
    ScheduleDescription d = grid.schedule;
    for (const auto &[name, value] : grid.fixed) {
        if (is_schedule_parameter(name)) {
            set_parameter(d, name, value);
        } else if (!is_initial_parameter(name)) {
            throw Error(ErrorKind::configuration, "fixed parameter '" + name + "' is not recognised");
        }
    }
    return d;
}

inline BlochCoinState fixed_initial(const GridSpec &grid) {
    BlochCoinState s = grid.initial;
    for (const auto &[name, value] : grid.fixed) {
        if (name == "initial.theta") s.theta = value;
        if (name == "initial.phi") s.phi = value;
    }
    return s;
}

}  // namespace detail

/// Final <X>(T) over a plane of coin parameters ("coin_a.theta",
/// "coin_b.theta_minus", ...), starting every point from the grid's initial state.
inline SweepResult sweep_coin_params(const GridSpec &grid) {
    for (const auto *axis : {&grid.axis1, &grid.axis2}) {
        if (!is_schedule_parameter(axis->name)) {
            throw Error(ErrorKind::configuration, "'" + axis->name + "' is not a coin parameter");
        }
    }
    const ScheduleDescription base = detail::with_fixed(grid);
    const BlochCoinState initial = detail::fixed_initial(grid);
    return detail::run_grid(grid, [&, initial](double v1, double v2) {
        ScheduleDescription d = base;
        set_parameter(d, grid.axis1.name, v1);
        set_parameter(d, grid.axis2.name, v2);
        return detail::PointSetup{build_schedule(d, grid.seed), initial};
    });
}

/// Final <X>(T) over the Bloch angles ("initial.theta", "initial.phi") of the
/// initial coin state, with the schedule fully fixed.
inline SweepResult sweep_initial_state(const GridSpec &grid) {
    for (const auto *axis : {&grid.axis1, &grid.axis2}) {
        if (!detail::is_initial_parameter(axis->name)) {
            throw Error(ErrorKind::configuration, "'" + axis->name + "' is not an initial-state parameter");
        }
    }
    const StrategySchedule schedule = build_schedule(detail::with_fixed(grid), grid.seed);
    return detail::run_grid(grid, [&](double v1, double v2) {
        BlochCoinState initial = detail::fixed_initial(grid);
        (grid.axis1.name == "initial.theta" ? initial.theta : initial.phi) = v1;
        (grid.axis2.name == "initial.theta" ? initial.theta : initial.phi) = v2;
        return detail::PointSetup{schedule, initial};
    });
}

}  // namespace qwp

#endif  // QWP_SWEEP_HPP
