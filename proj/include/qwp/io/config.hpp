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

#ifndef QWP_IO_CONFIG_HPP
#define QWP_IO_CONFIG_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "../errors.hpp"
#include "../schedule_description.hpp"
#include "../sweep.hpp"
#include "../walker_state.hpp"

namespace qwp::io {

enum class Mode { walk, ensemble, sweep_coin, sweep_initial, classical };

inline const char *to_string(Mode m) {
    switch (m) {
        case Mode::walk:
            return "walk";
        case Mode::ensemble:
            return "ensemble";
        case Mode::sweep_coin:
            return "sweep-coin";
        case Mode::sweep_initial:
            return "sweep-initial";
        case Mode::classical:
            return "classical";
    }
    return "?";
}

inline std::optional<Mode> mode_from(std::string_view s) {
    for (auto m : {Mode::walk, Mode::ensemble, Mode::sweep_coin, Mode::sweep_initial, Mode::classical}) {
        if (s == to_string(m)) {
            return m;
        }
    }
    return std::nullopt;
}

inline constexpr std::uint64_t kDefaultSeed = 20240601;
inline constexpr std::size_t kDefaultIterations = 5000;

struct RunConfig {
    Mode mode = Mode::walk;
    std::optional<std::size_t> sites;  ///< defaults to the smallest lattice the run fits in
    std::optional<std::size_t> steps;
    BlochCoinState initial{std::numbers::pi, 0.0};
    int x0 = 0;
    ScheduleDescription schedule;
    std::uint64_t seed = kDefaultSeed;
    std::size_t iterations = kDefaultIterations;
    double p_right = 0.5;
    std::optional<ParameterAxis> axis1;
    std::optional<ParameterAxis> axis2;
    double tie_tolerance = kDefaultTieTolerance;
    SweepMetric metric = SweepMetric::final_expectation;
    unsigned workers = 0;
    std::string out = "out";
    bool record_full = false;

    bool operator==(const RunConfig &) const = default;
};

// ---------------------------------------------------------------------------
// Scalar parsing

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace detail {

[[noreturn]] inline void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
    throw Error(ErrorKind::parse,
                "invalid value '" + std::string(value) + "' for " + std::string(key) + ": expected " +
                    std::string(expected));
}

template <class T>
std::optional<T> parse_number(std::string_view s) {
    T v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

}  // namespace detail

/// Radians as a plain number, or a fraction of pi: "pi", "-pi/8", "3pi/4",
/// "3*pi/4", "0.5*pi".
inline std::optional<double> parse_angle(std::string_view text) {
    std::string_view s = trim(text);
    const auto pos = s.find("pi");
    if (pos == std::string_view::npos) {
        if (!s.empty() && s.front() == '+') {
            s.remove_prefix(1);
        }
        return detail::parse_number<double>(s);
    }
    std::string_view coef = trim(s.substr(0, pos));
    std::string_view rest = trim(s.substr(pos + 2));
    double sign = 1.0;
    if (!coef.empty() && (coef.front() == '-' || coef.front() == '+')) {
        sign = coef.front() == '-' ? -1.0 : 1.0;
        coef = trim(coef.substr(1));
    }
    if (!coef.empty() && coef.back() == '*') {
        coef = trim(coef.substr(0, coef.size() - 1));
        if (coef.empty()) {
            return std::nullopt;
        }
    }
    double factor = 1.0;
    if (!coef.empty()) {
        const auto c = detail::parse_number<double>(coef);
        if (!c) {
            return std::nullopt;
        }
        factor = *c;
    }
    double denom = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') {
            return std::nullopt;
        }
        const auto d = detail::parse_number<double>(trim(rest.substr(1)));
        if (!d || *d == 0.0) {
            return std::nullopt;
        }
        denom = *d;
    }
    return sign * factor * std::numbers::pi / denom;
}

inline std::optional<bool> parse_bool(std::string_view s) {
    s = trim(s);
    if (s == "true" || s == "1" || s == "yes" || s == "on") {
        return true;
    }
    if (s == "false" || s == "0" || s == "no" || s == "off") {
        return false;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Key table

namespace detail {

struct KeyDef {
    std::string name;
    std::function<void(RunConfig &, std::string_view)> set;
    std::function<std::optional<std::string>(const RunConfig &)> get;
};

inline double angle_or_throw(std::string_view key, std::string_view v) {
    const auto a = parse_angle(v);
    if (!a) {
        bad_value(key, v, "a number or a multiple of pi such as -pi/8");
    }
    return *a;
}

template <class T>
T number_or_throw(std::string_view key, std::string_view v) {
    const auto n = parse_number<T>(trim(v));
    if (!n) {
        bad_value(key, v, std::is_integral_v<T> ? "an integer" : "a number");
    }
    return *n;
}

inline bool bool_or_throw(std::string_view key, std::string_view v) {
    const auto b = parse_bool(v);
    if (!b) {
        bad_value(key, v, "true or false");
    }
    return *b;
}

inline std::optional<std::string> opt_double(const std::optional<double> &v) {
    return v ? std::optional<std::string>(format_double(*v)) : std::nullopt;
}

inline void add_coin_keys(std::vector<KeyDef> &keys, const std::string &prefix, CoinDescription ScheduleDescription::*slot) {
    keys.push_back({prefix + ".kind",
                    [=](RunConfig &c, std::string_view v) {
                        const auto k = coin_kind_from(trim(v));
                        if (!k) {
                            bad_value(prefix + ".kind", v, "uniform, tanh, general, random_alpha or random_beta");
                        }
                        (c.schedule.*slot).kind = *k;
                    },
                    [=](const RunConfig &c) -> std::optional<std::string> {
                        const auto &k = (c.schedule.*slot).kind;
                        return k ? std::optional<std::string>(to_string(*k)) : std::nullopt;
                    }});
    for (auto field : kCoinFields) {
        const std::string key = prefix + "." + std::string(field);
        const std::string f(field);
        keys.push_back({key,
                        [=](RunConfig &c, std::string_view v) {
                            *qwp::detail::coin_field(c.schedule.*slot, f) = angle_or_throw(key, v);
                        },
                        [=](const RunConfig &c) {
                            return opt_double(*qwp::detail::coin_field(const_cast<CoinDescription &>(c.schedule.*slot), f));
                        }});
    }
    keys.push_back({prefix + ".seed",
                    [=](RunConfig &c, std::string_view v) {
                        (c.schedule.*slot).seed = number_or_throw<std::uint64_t>(prefix + ".seed", v);
                    },
                    [=](const RunConfig &c) -> std::optional<std::string> {
                        const auto &s = (c.schedule.*slot).seed;
                        return s ? std::optional<std::string>(std::to_string(*s)) : std::nullopt;
                    }});
}

inline void add_axis_keys(std::vector<KeyDef> &keys, const std::string &prefix,
                          std::optional<ParameterAxis> RunConfig::*axis) {
    auto ensure = [=](RunConfig &c) -> ParameterAxis & {
        if (!(c.*axis)) {
            c.*axis = ParameterAxis{};
        }
        return *(c.*axis);
    };
    keys.push_back({prefix + ".name", [=](RunConfig &c, std::string_view v) { ensure(c).name = std::string(trim(v)); },
                    [=](const RunConfig &c) {
                        return c.*axis ? std::optional<std::string>((c.*axis)->name) : std::nullopt;
                    }});
    keys.push_back({prefix + ".lower",
                    [=](RunConfig &c, std::string_view v) { ensure(c).lower = angle_or_throw(prefix + ".lower", v); },
                    [=](const RunConfig &c) {
                        return c.*axis ? std::optional<std::string>(format_double((c.*axis)->lower)) : std::nullopt;
                    }});
    keys.push_back({prefix + ".upper",
                    [=](RunConfig &c, std::string_view v) { ensure(c).upper = angle_or_throw(prefix + ".upper", v); },
                    [=](const RunConfig &c) {
                        return c.*axis ? std::optional<std::string>(format_double((c.*axis)->upper)) : std::nullopt;
                    }});
    keys.push_back({prefix + ".points",
                    [=](RunConfig &c, std::string_view v) {
                        ensure(c).points = number_or_throw<std::size_t>(prefix + ".points", v);
                    },
                    [=](const RunConfig &c) {
                        return c.*axis ? std::optional<std::string>(std::to_string((c.*axis)->points))
                                       : std::nullopt;
                    }});
}

inline const std::vector<KeyDef> &key_table() {
    static const std::vector<KeyDef> keys = [] {
        std::vector<KeyDef> k;
        k.push_back({"mode",
                     [](RunConfig &c, std::string_view v) {
                         const auto m = mode_from(trim(v));
                         if (!m) {
                             bad_value("mode", v, "walk, ensemble, sweep-coin, sweep-initial or classical");
                         }
                         c.mode = *m;
                     },
                     [](const RunConfig &c) { return std::optional<std::string>(to_string(c.mode)); }});
        k.push_back({"sites", [](RunConfig &c, std::string_view v) { c.sites = number_or_throw<std::size_t>("sites", v); },
                     [](const RunConfig &c) {
                         return c.sites ? std::optional<std::string>(std::to_string(*c.sites)) : std::nullopt;
                     }});
        k.push_back({"steps", [](RunConfig &c, std::string_view v) { c.steps = number_or_throw<std::size_t>("steps", v); },
                     [](const RunConfig &c) {
                         return c.steps ? std::optional<std::string>(std::to_string(*c.steps)) : std::nullopt;
                     }});
        k.push_back({"seed", [](RunConfig &c, std::string_view v) { c.seed = number_or_throw<std::uint64_t>("seed", v); },
                     [](const RunConfig &c) { return std::optional<std::string>(std::to_string(c.seed)); }});
        k.push_back({"iterations",
                     [](RunConfig &c, std::string_view v) { c.iterations = number_or_throw<std::size_t>("iterations", v); },
                     [](const RunConfig &c) { return std::optional<std::string>(std::to_string(c.iterations)); }});
        k.push_back({"workers",
                     [](RunConfig &c, std::string_view v) { c.workers = number_or_throw<unsigned>("workers", v); },
                     [](const RunConfig &c) { return std::optional<std::string>(std::to_string(c.workers)); }});
        k.push_back({"out", [](RunConfig &c, std::string_view v) { c.out = std::string(trim(v)); },
                     [](const RunConfig &c) { return std::optional<std::string>(c.out); }});
        k.push_back({"record_full", [](RunConfig &c, std::string_view v) { c.record_full = bool_or_throw("record_full", v); },
                     [](const RunConfig &c) { return std::optional<std::string>(c.record_full ? "true" : "false"); }});

        k.push_back({"initial.theta",
                     [](RunConfig &c, std::string_view v) { c.initial.theta = angle_or_throw("initial.theta", v); },
                     [](const RunConfig &c) { return std::optional<std::string>(format_double(c.initial.theta)); }});
        k.push_back({"initial.phi",
                     [](RunConfig &c, std::string_view v) { c.initial.phi = angle_or_throw("initial.phi", v); },
                     [](const RunConfig &c) { return std::optional<std::string>(format_double(c.initial.phi)); }});
        k.push_back({"initial.x0", [](RunConfig &c, std::string_view v) { c.x0 = number_or_throw<int>("initial.x0", v); },
                     [](const RunConfig &c) { return std::optional<std::string>(std::to_string(c.x0)); }});

        k.push_back({"schedule.kind",
                     [](RunConfig &c, std::string_view v) {
                         const auto s = strategy_kind_from(trim(v));
                         if (!s) {
                             bad_value("schedule.kind", v, "single, composite, alternating or probabilistic");
                         }
                         c.schedule.strategy = *s;
                     },
                     [](const RunConfig &c) { return std::optional<std::string>(to_string(c.schedule.strategy)); }});
        k.push_back({"schedule.coin",
                     [](RunConfig &c, std::string_view v) {
                         v = trim(v);
                         if (v != "a" && v != "b") {
                             bad_value("schedule.coin", v, "a or b");
                         }
                         c.schedule.single_coin = v == "a" ? CoinSlot::a : CoinSlot::b;
                     },
                     [](const RunConfig &c) {
                         return std::optional<std::string>(c.schedule.single_coin == CoinSlot::a ? "a" : "b");
                     }});
        k.push_back({"schedule.m", [](RunConfig &c, std::string_view v) { c.schedule.m = number_or_throw<unsigned>("schedule.m", v); },
                     [](const RunConfig &c) { return std::optional<std::string>(std::to_string(c.schedule.m)); }});
        k.push_back({"schedule.n", [](RunConfig &c, std::string_view v) { c.schedule.n = number_or_throw<unsigned>("schedule.n", v); },
                     [](const RunConfig &c) { return std::optional<std::string>(std::to_string(c.schedule.n)); }});
        k.push_back({"schedule.q", [](RunConfig &c, std::string_view v) { c.schedule.q = number_or_throw<double>("schedule.q", v); },
                     [](const RunConfig &c) { return std::optional<std::string>(format_double(c.schedule.q)); }});
        k.push_back({"schedule.interleaved",
                     [](RunConfig &c, std::string_view v) { c.schedule.interleaved = bool_or_throw("schedule.interleaved", v); },
                     [](const RunConfig &c) {
                         return std::optional<std::string>(c.schedule.interleaved ? "true" : "false");
                     }});
        add_coin_keys(k, "coin_a", &ScheduleDescription::a);
        add_coin_keys(k, "coin_b", &ScheduleDescription::b);

        k.push_back({"classical.p_right",
                     [](RunConfig &c, std::string_view v) { c.p_right = number_or_throw<double>("classical.p_right", v); },
                     [](const RunConfig &c) { return std::optional<std::string>(format_double(c.p_right)); }});
        add_axis_keys(k, "grid.axis1", &RunConfig::axis1);
        add_axis_keys(k, "grid.axis2", &RunConfig::axis2);
        k.push_back({"grid.tie_tolerance",
                     [](RunConfig &c, std::string_view v) {
                         c.tie_tolerance = number_or_throw<double>("grid.tie_tolerance", v);
                     },
                     [](const RunConfig &c) { return std::optional<std::string>(format_double(c.tie_tolerance)); }});
        k.push_back({"grid.metric",
                     [](RunConfig &c, std::string_view v) {
                         v = trim(v);
                         if (v == "final") {
                             c.metric = SweepMetric::final_expectation;
                         } else if (v == "drift") {
                             c.metric = SweepMetric::drift_slope;
                         } else {
                             bad_value("grid.metric", v, "final or drift");
                         }
                     },
                     [](const RunConfig &c) {
                         return std::optional<std::string>(c.metric == SweepMetric::final_expectation ? "final" : "drift");
                     }});
        return k;
    }();
    return keys;
}

inline const KeyDef *find_key(std::string_view name) {
    for (const auto &k : key_table()) {
        if (k.name == name) {
            return &k;
        }
    }
    return nullptr;
}

}  // namespace detail

/// Apply one `key = value` assignment.
inline void set_key(RunConfig &config, std::string_view key, std::string_view value) {
    const auto *def = detail::find_key(trim(key));
    if (def == nullptr) {
        throw Error(ErrorKind::parse, "unknown configuration key '" + std::string(trim(key)) + "'");
    }
    def->set(config, value);
}

/// Every bound key with its textual value, in a fixed order.
inline std::vector<std::pair<std::string, std::string>> to_key_values(const RunConfig &config) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto &k : detail::key_table()) {
        if (auto v = k.get(config)) {
            out.emplace_back(k.name, std::move(*v));
        }
    }
    return out;
}

inline std::string serialize_config(const RunConfig &config) {
    std::string text;
    for (const auto &[k, v] : to_key_values(config)) {
        text += k + " = " + v + "\n";
    }
    return text;
}

/// Flat `key = value` text; '#' starts a comment.
inline void apply_config_text(RunConfig &config, std::string_view text) {
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view l = line;
        if (const auto hash = l.find('#'); hash != std::string_view::npos) {
            l = l.substr(0, hash);
        }
        l = trim(l);
        if (l.empty()) {
            continue;
        }
        const auto eq = l.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        try {
            set_key(config, l.substr(0, eq), l.substr(eq + 1));
        } catch (const Error &e) {
            throw Error(e.kind(), "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
}

inline RunConfig parse_config_text(std::string_view text) {
    RunConfig config;
    apply_config_text(config, text);
    return config;
}

/// Load a config file. A `.json` file is read as an output metadata sidecar
/// and its "config" echo is replayed.
inline void apply_config_file(RunConfig &config, const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::file, "cannot open config file '" + path.string() + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    if (path.extension() == ".json") {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(buf.str());
        } catch (const nlohmann::json::parse_error &e) {
            throw Error(ErrorKind::parse, path.string() + ": " + e.what());
        }
        if (!j.contains("config") || !j["config"].is_object()) {
            throw Error(ErrorKind::parse, path.string() + ": no \"config\" object");
        }
        for (const auto &[k, v] : j["config"].items()) {
            if (!v.is_string()) {
                throw Error(ErrorKind::parse, path.string() + ": config value for '" + k + "' is not a string");
            }
            set_key(config, k, v.get<std::string>());
        }
        return;
    }
    try {
        apply_config_text(config, buf.str());
    } catch (const Error &e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Validation

namespace detail {

[[noreturn]] inline void invalid(const std::string &message) {
    throw Error(ErrorKind::validation, message);
}

inline void check_range(const std::string &name, double v, double lo, double hi) {
    if (!(v >= lo && v <= hi)) {
        invalid(name + "=" + format_double(v) + " is outside [" + format_double(lo) + ", " + format_double(hi) + "]");
    }
}

inline bool is_quantum(Mode m) {
    return m != Mode::classical;
}

/// Largest distance the walker can travel from x0.
inline std::size_t reach(const RunConfig &c) {
    const std::size_t per_step =
        c.schedule.strategy == StrategyKind::composite && c.schedule.interleaved ? c.schedule.m + c.schedule.n : 1;
    return *c.steps * per_step;
}

}  // namespace detail

/// Smallest odd lattice holding every position the walker can reach.
inline std::size_t minimum_sites(const RunConfig &config) {
    return 2 * (detail::reach(config) + static_cast<std::size_t>(std::abs(config.x0))) + 1;
}

/// Check every invariant of a run configuration, filling in defaults that
/// depend on other fields (the lattice size).
inline void validate(RunConfig &c) {
    using detail::check_range;
    using detail::invalid;
    constexpr double two_pi = 2.0 * std::numbers::pi;

    if (!c.steps) {
        invalid("steps is required");
    }
    const std::size_t steps = *c.steps;

    if (detail::is_quantum(c.mode)) {
        if (!c.sites) {
            c.sites = minimum_sites(c);
        }
        const std::size_t n = *c.sites;
        if (n % 2 == 0) {
            invalid("N=" + std::to_string(n) + " is even; N must be odd");
        }
        if (n < 3) {
            invalid("N=" + std::to_string(n) + " must be at least 3");
        }
        if (n < minimum_sites(c)) {
            const std::size_t r = detail::reach(c);
            if (c.x0 == 0) {
                invalid("N=" + std::to_string(n) + " < 2T+1=" + std::to_string(2 * r + 1) + " for T=" +
                        std::to_string(steps));
            }
            invalid("N=" + std::to_string(n) + " too small: walker starting at x0=" + std::to_string(c.x0) +
                    " reaches " + std::to_string(r) + " sites; need N >= " + std::to_string(minimum_sites(c)));
        }
        check_range("initial.theta", c.initial.theta, 0.0, std::numbers::pi);
        check_range("initial.phi", c.initial.phi, 0.0, two_pi);

        auto &s = c.schedule;
        if (s.strategy == StrategyKind::composite && s.m + s.n == 0) {
            invalid("schedule.m + schedule.n must be at least 1");
        }
        check_range("schedule.q", s.q, 0.0, 1.0);
        for (auto slot : {CoinSlot::a, CoinSlot::b}) {
            if (!qwp::detail::uses_slot(s, slot)) {
                continue;
            }
            const auto &coin = slot == CoinSlot::a ? s.a : s.b;
            const std::string prefix = slot == CoinSlot::a ? "coin_a" : "coin_b";
            if (!coin.kind) {
                invalid(prefix + ".kind is required by schedule.kind=" + to_string(s.strategy));
            }
            if (*coin.kind == CoinKind::uniform && coin.theta) {
                check_range(prefix + ".theta", *coin.theta, -two_pi, two_pi);
            }
            if (*coin.kind == CoinKind::general) {
                if (coin.q) check_range(prefix + ".q", *coin.q, 0.0, 1.0);
                if (coin.alpha) check_range(prefix + ".alpha", *coin.alpha, 0.0, two_pi);
                if (coin.beta) check_range(prefix + ".beta", *coin.beta, 0.0, two_pi);
            }
        }
        // Parameters bound by a sweep axis need not be set here.
        std::vector<std::string> swept;
        if (c.mode == Mode::sweep_coin || c.mode == Mode::sweep_initial) {
            for (const auto *axis : {&c.axis1, &c.axis2}) {
                if (!*axis) {
                    invalid(std::string(axis == &c.axis1 ? "grid.axis1" : "grid.axis2") + " is required for mode " +
                            to_string(c.mode));
                }
                swept.push_back((*axis)->name);
            }
        }
        for (const auto &name : referenced_parameters(s)) {
            if (std::find(swept.begin(), swept.end(), name) != swept.end()) {
                continue;
            }
            const auto slot_is_a = name.starts_with("coin_a.");
            if (name == "schedule.q") {
                continue;
            }
            auto &coin = slot_is_a ? s.a : s.b;
            if (!*qwp::detail::coin_field(coin, name.substr(7))) {
                invalid(name + " is required by " + (slot_is_a ? "coin_a" : "coin_b") + ".kind=" +
                        to_string(*coin.kind));
            }
        }
    }

    if (c.mode == Mode::ensemble && c.iterations == 0) {
        invalid("iterations must be at least 1");
    }
    if (c.mode == Mode::classical) {
        check_range("classical.p_right", c.p_right, 0.0, 1.0);
    }
    if (c.mode == Mode::sweep_coin || c.mode == Mode::sweep_initial) {
        for (const auto *axis : {&*c.axis1, &*c.axis2}) {
            const std::string label = axis == &*c.axis1 ? "grid.axis1" : "grid.axis2";
            if (axis->points < 2) {
                invalid(label + ".points must be at least 2");
            }
            if (!std::isfinite(axis->lower) || !std::isfinite(axis->upper)) {
                invalid(label + " bounds must be finite");
            }
            if (c.mode == Mode::sweep_coin && !is_schedule_parameter(axis->name)) {
                invalid(label + ".name='" + axis->name + "' is not a coin parameter");
            }
            if (c.mode == Mode::sweep_initial) {
                if (axis->name == "initial.theta") {
                    check_range(label + ".lower", axis->lower, 0.0, std::numbers::pi);
                    check_range(label + ".upper", axis->upper, 0.0, std::numbers::pi);
                } else if (axis->name == "initial.phi") {
                    check_range(label + ".lower", axis->lower, 0.0, two_pi);
                    check_range(label + ".upper", axis->upper, 0.0, two_pi);
                } else {
                    invalid(label + ".name='" + axis->name + "' must be initial.theta or initial.phi");
                }
            }
        }
        if (c.axis1->name == c.axis2->name) {
            invalid("grid.axis1 and grid.axis2 both sweep '" + c.axis1->name + "'");
        }
        if (c.tie_tolerance < 0.0) {
            invalid("grid.tie_tolerance must be nonnegative");
        }
    }
}

/// Config file (optional) overlaid with flag overrides, then validated.
inline RunConfig parse_and_validate(const std::optional<std::filesystem::path> &file,
                                    const std::vector<std::pair<std::string, std::string>> &overrides = {}) {
    RunConfig config;
    if (file) {
        apply_config_file(config, *file);
    }
    for (const auto &[k, v] : overrides) {
        set_key(config, k, v);
    }
    validate(config);
    return config;
}

// ---------------------------------------------------------------------------
// Bridges to the simulation types

inline LatticeGeometry geometry_of(const RunConfig &c) {
    return LatticeGeometry(*c.sites);
}

inline StrategySchedule schedule_of(const RunConfig &c) {
    return build_schedule(c.schedule, c.seed);
}

inline GridSpec grid_of(const RunConfig &c) {
    GridSpec g;
    g.axis1 = *c.axis1;
    g.axis2 = *c.axis2;
    g.schedule = c.schedule;
    g.steps = *c.steps;
    g.n_sites = *c.sites;
    g.initial = c.initial;
    g.x0 = c.x0;
    g.seed = c.seed;
    g.tie_tolerance = c.tie_tolerance;
    g.metric = c.metric;
    g.workers = c.workers;
    return g;
}

}  // namespace qwp::io

#endif  // QWP_IO_CONFIG_HPP
