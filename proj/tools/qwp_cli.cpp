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

// Command-line driver: walk, ensemble, sweep-coin, sweep-initial, classical.
//
// Exit codes: 0 success, 1 configuration/validation error, 2 runtime error.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "qwp/ensemble.hpp"
#include "qwp/evolution.hpp"
#include "qwp/io/config.hpp"
#include "qwp/io/output.hpp"
#include "qwp/sweep.hpp"

namespace {

struct CommonFlags {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> steps;
    std::optional<std::size_t> sites;
    std::optional<unsigned> workers;
    bool record_full = false;
    std::vector<std::string> sets;
};

void add_common(CLI::App *cmd, CommonFlags &f) {
    cmd->add_option("--config", f.config, "Config file (key = value) or a metadata.json from a previous run");
    cmd->add_option("--out", f.out, "Output directory");
    cmd->add_option("--seed", f.seed, "Master seed");
    cmd->add_option("--steps", f.steps, "Number of time steps T");
    cmd->add_option("--sites", f.sites, "Lattice size N (odd, >= 2T+1)");
    cmd->add_option("--workers", f.workers, "Worker threads for sweeps and ensembles (0 = all cores)");
    cmd->add_flag("--record-full", f.record_full, "Also write the full P(x, t) matrix");
    cmd->add_option("--set", f.sets, "Override any config key: --set coin_a.theta=pi/2")->take_all();
}

std::vector<std::pair<std::string, std::string>> overrides_of(const CommonFlags &f, qwp::io::Mode mode) {
    std::vector<std::pair<std::string, std::string>> o;
    for (const auto &s : f.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            throw qwp::Error(qwp::ErrorKind::parse, "--set expects key=value, got '" + s + "'");
        }
        o.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    // Dedicated flags take precedence over --set and the config file.
    if (f.seed) o.emplace_back("seed", std::to_string(*f.seed));
    if (f.steps) o.emplace_back("steps", std::to_string(*f.steps));
    if (f.sites) o.emplace_back("sites", std::to_string(*f.sites));
    if (f.workers) o.emplace_back("workers", std::to_string(*f.workers));
    if (!f.out.empty()) o.emplace_back("out", f.out);
    if (f.record_full) o.emplace_back("record_full", "true");
    o.emplace_back("mode", qwp::io::to_string(mode));
    return o;
}

int execute(const qwp::io::RunConfig &cfg) {
    using namespace qwp;
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

    switch (cfg.mode) {
        case io::Mode::walk: {
            const auto schedule = io::schedule_of(cfg);
            const auto traj = run(new_localized(io::geometry_of(cfg), cfg.initial, cfg.x0), schedule, *cfg.steps,
                                  cfg.record_full);
            const auto bundle = io::emit_trajectory(traj, cfg, cfg.out, elapsed());
            std::cout << "final <X>(" << *cfg.steps << ") = " << io::format_double(traj.series.back().expectation)
                      << "  variance = " << io::format_double(traj.series.back().variance) << "\n"
                      << "wrote " << bundle.data.string() << "\n";
            break;
        }
        case io::Mode::ensemble: {
            const auto schedule = io::schedule_of(cfg);
            if (!is_stochastic(schedule)) {
                std::cerr << "warning: schedule has no randomness; every iteration is identical\n";
            }
            const auto result = ensemble_expectation(new_localized(io::geometry_of(cfg), cfg.initial, cfg.x0),
                                                     schedule, *cfg.steps, cfg.iterations, cfg.seed, cfg.workers);
            const auto bundle = io::emit_ensemble(result, cfg, cfg.out, elapsed());
            std::cout << "mean <X>(" << *cfg.steps << ") = " << io::format_double(result.mean.back()) << " +/- "
                      << io::format_double(result.standard_error.back()) << " over " << result.iterations
                      << " iterations\nwrote " << bundle.data.string() << "\n";
            break;
        }
        case io::Mode::sweep_coin:
        case io::Mode::sweep_initial: {
            const auto grid = io::grid_of(cfg);
            const auto result =
                cfg.mode == io::Mode::sweep_coin ? sweep_coin_params(grid) : sweep_initial_state(grid);
            const auto bundle = io::emit_sweep(result, cfg, cfg.out, elapsed());
            std::size_t wins = 0, losses = 0;
            for (auto o : result.classification) {
                wins += o == Outcome::winning;
                losses += o == Outcome::losing;
            }
            std::cout << result.rows() << "x" << result.cols() << " grid: " << wins << " winning, " << losses
                      << " losing\nwrote " << bundle.data.string() << "\n";
            break;
        }
        case io::Mode::classical: {
            const auto result = classical_walk(*cfg.steps, cfg.p_right);
            const auto bundle = io::emit_classical(result, cfg, cfg.out, elapsed());
            std::cout << "variance(" << *cfg.steps << ") = " << io::format_double(result.variance.back())
                      << "\nwrote " << bundle.data.string() << "\n";
            break;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Discrete-time quantum walks with inhomogeneous coins and Parrondo strategies"};
    app.require_subcommand(1);

    struct Sub {
        qwp::io::Mode mode;
        const char *help;
        CommonFlags flags;
        CLI::App *cmd = nullptr;
    };
    std::vector<Sub> subs;
    subs.push_back({qwp::io::Mode::walk, "Single trajectory: <X>(t), variance, optional P(x,t)", {}});
    subs.push_back({qwp::io::Mode::ensemble, "Mean <X>(t) over seeded iterations of a stochastic schedule", {}});
    subs.push_back({qwp::io::Mode::sweep_coin, "Final <X> over a plane of coin parameters", {}});
    subs.push_back({qwp::io::Mode::sweep_initial, "Final <X> over the Bloch angles of the initial coin state", {}});
    subs.push_back({qwp::io::Mode::classical, "Exact classical random-walk baseline", {}});
    for (auto &s : subs) {
        s.cmd = app.add_subcommand(qwp::io::to_string(s.mode), s.help);
        add_common(s.cmd, s.flags);
    }
    auto *classical_p = subs.back().cmd->add_option("--p-right", "Probability of a step to the right");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    for (auto &s : subs) {
        if (!s.cmd->parsed()) {
            continue;
        }
        qwp::io::RunConfig cfg;
        try {
            auto overrides = overrides_of(s.flags, s.mode);
            if (s.mode == qwp::io::Mode::classical && classical_p->count() > 0) {
                overrides.emplace_back("classical.p_right", classical_p->as<std::string>());
            }
            std::optional<std::filesystem::path> file;
            if (!s.flags.config.empty()) {
                file = s.flags.config;
            }
            cfg = qwp::io::parse_and_validate(file, overrides);
        } catch (const qwp::Error &e) {
            std::cerr << "error (" << qwp::to_string(e.kind()) << "): " << e.what() << "\n";
            return 1;
        }
        try {
            return execute(cfg);
        } catch (const qwp::Error &e) {
            std::cerr << "error (" << qwp::to_string(e.kind()) << "): " << e.what() << "\n";
            return e.kind() == qwp::ErrorKind::configuration || e.kind() == qwp::ErrorKind::validation ? 1 : 2;
        } catch (const std::exception &e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }
    return 1;
}
