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

#ifndef QWP_IO_OUTPUT_HPP
#define QWP_IO_OUTPUT_HPP

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "../ensemble.hpp"
#include "../errors.hpp"
#include "../evolution.hpp"
#include "../random.hpp"
#include "../sweep.hpp"
#include "config.hpp"

namespace qwp::io {

inline constexpr const char *kSoftwareName = "qwp";
inline constexpr const char *kSoftwareVersion = "0.1.0";

struct OutputBundle {
    std::filesystem::path data;
    std::optional<std::filesystem::path> secondary;
    std::filesystem::path metadata;
};

namespace detail {

inline std::filesystem::path prepare_dir(const std::filesystem::path &dir) {
    if (dir.empty()) {
        throw Error(ErrorKind::file, "output path is empty");
    }
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw Error(ErrorKind::file, "cannot create output directory '" + dir.string() + "': " + ec.message());
    }
    return dir;
}

class CsvFile {
   public:
    explicit CsvFile(std::filesystem::path path) : path_(std::move(path)), out_(path_, std::ios::binary) {
        if (!out_) {
            throw Error(ErrorKind::file, "cannot open '" + path_.string() + "' for writing");
        }
    }

    void row(const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) {
                out_ << ',';
            }
            out_ << cells[i];
        }
        out_ << '\n';
    }

    void close() {
        out_.close();
        if (!out_) {
            throw Error(ErrorKind::file, "failed writing '" + path_.string() + "'");
        }
    }

   private:
    std::filesystem::path path_;
    std::ofstream out_;
};

inline nlohmann::json base_metadata(const RunConfig &config, double runtime_seconds) {
    nlohmann::json j;
    j["software"] = kSoftwareName;
    j["version"] = kSoftwareVersion;
    j["mode"] = to_string(config.mode);
    j["rng_algorithm"] = kRngAlgorithm;
    j["runtime_seconds"] = runtime_seconds;
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto &[k, v] : to_key_values(config)) {
        cfg[k] = v;
    }
    j["config"] = cfg;
    j["conventions"] = {
        {"composite", "coin A applied m times, then coin B n times, then one shift per step"},
        {"alternating", "t = 0 is even: A^2 on even steps, B^2 on odd steps"},
        {"probabilistic", "chosen coin applied once per step"},
        {"random_phase", "one phase draw per time step shared by all sites"},
        {"observables", "recorded after each full step (post-shift)"},
    };
    return j;
}

inline nlohmann::json seeds_json(const std::vector<SeedRecord> &seeds) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &s : seeds) {
        arr.push_back({{"name", s.name}, {"seed", s.seed}});
    }
    return arr;
}

inline void write_json(const std::filesystem::path &path, const nlohmann::json &j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::file, "cannot open '" + path.string() + "' for writing");
    }
    out << j.dump(2) << '\n';
    if (!out) {
        throw Error(ErrorKind::file, "failed writing '" + path.string() + "'");
    }
}

inline void write_distribution(const std::filesystem::path &path, const std::vector<std::vector<double>> &rows,
                               int min_position) {
    CsvFile csv(path);
    std::vector<std::string> header{"t"};
    const std::size_t width = rows.empty() ? 0 : rows.front().size();
    for (std::size_t i = 0; i < width; ++i) {
        header.push_back(std::to_string(min_position + static_cast<int>(i)));
    }
    csv.row(header);
    for (std::size_t t = 0; t < rows.size(); ++t) {
        std::vector<std::string> cells{std::to_string(t)};
        for (double p : rows[t]) {
            cells.push_back(format_double(p));
        }
        csv.row(cells);
    }
    csv.close();
}

}  // namespace detail

/// trajectory.csv (t, expectation, variance), distribution.csv when the full
/// P(x, t) was recorded, and metadata.json.
inline OutputBundle emit_trajectory(const Trajectory &trajectory, const RunConfig &config,
                                    const std::filesystem::path &dir, double runtime_seconds = 0.0) {
    detail::prepare_dir(dir);
    OutputBundle bundle{dir / "trajectory.csv", std::nullopt, dir / "metadata.json"};

    detail::CsvFile csv(bundle.data);
    csv.row({"t", "expectation", "variance"});
    for (const auto &p : trajectory.series) {
        csv.row({std::to_string(p.t), format_double(p.expectation), format_double(p.variance)});
    }
    csv.close();

    if (!trajectory.distribution.empty()) {
        bundle.secondary = dir / "distribution.csv";
        detail::write_distribution(*bundle.secondary, trajectory.distribution,
                                   trajectory.final_state.geometry().min_position());
    }

    auto meta = detail::base_metadata(config, runtime_seconds);
    meta["schedule"] = trajectory.metadata.schedule;
    meta["seeds"] = detail::seeds_json(trajectory.metadata.seeds);
    meta["master_seed"] = config.seed;
    meta["randomness"] = trajectory.metadata.seeds.empty() ? "deterministic" : "single-realization";
    meta["final_expectation"] = trajectory.series.back().expectation;
    meta["files"] = {bundle.data.filename().string()};
    if (bundle.secondary) {
        meta["files"].push_back(bundle.secondary->filename().string());
    }
    detail::write_json(bundle.metadata, meta);
    return bundle;
}

/// ensemble.csv (t, mean_expectation, standard_error) and metadata.json listing
/// every per-iteration seed.
inline OutputBundle emit_ensemble(const EnsembleResult &result, const RunConfig &config,
                                  const std::filesystem::path &dir, double runtime_seconds = 0.0) {
    detail::prepare_dir(dir);
    OutputBundle bundle{dir / "ensemble.csv", std::nullopt, dir / "metadata.json"};

    detail::CsvFile csv(bundle.data);
    csv.row({"t", "mean_expectation", "standard_error"});
    for (std::size_t t = 0; t < result.mean.size(); ++t) {
        csv.row({std::to_string(t), format_double(result.mean[t]), format_double(result.standard_error[t])});
    }
    csv.close();

    auto meta = detail::base_metadata(config, runtime_seconds);
    meta["schedule"] = result.schedule;
    meta["randomness"] = "ensemble-mean";
    meta["iterations"] = result.iterations;
    meta["master_seed"] = result.master_seed;
    meta["degenerate"] = result.degenerate;
    meta["seed_derivation"] =
        "iteration r uses seed derive_seed(master_seed, r); within it coin A phases use derive_seed(seed, 1), "
        "coin B phases derive_seed(seed, 2), the A/B choice derive_seed(seed, 3)";
    nlohmann::json iteration_seeds = nlohmann::json::array();
    for (std::size_t r = 0; r < result.iterations; ++r) {
        iteration_seeds.push_back(derive_seed(result.master_seed, r));
    }
    meta["iteration_seeds"] = std::move(iteration_seeds);
    meta["final_mean_expectation"] = result.mean.back();
    meta["final_standard_error"] = result.standard_error.back();
    meta["files"] = {bundle.data.filename().string()};
    detail::write_json(bundle.metadata, meta);
    return bundle;
}

/// sweep.csv (value matrix), classification.csv (labels) and metadata.json.
/// Both matrices have a header row of axis-2 values and one row per axis-1
/// value, led by that value.
inline OutputBundle emit_sweep(const SweepResult &result, const RunConfig &config, const std::filesystem::path &dir,
                               double runtime_seconds = 0.0) {
    detail::prepare_dir(dir);
    OutputBundle bundle{dir / "sweep.csv", dir / "classification.csv", dir / "metadata.json"};

    std::vector<std::string> header{result.grid.axis1.name + "\\" + result.grid.axis2.name};
    for (double v : result.axis2_values) {
        header.push_back(format_double(v));
    }
    detail::CsvFile values(bundle.data);
    detail::CsvFile labels(*bundle.secondary);
    values.row(header);
    labels.row(header);
    for (std::size_t i = 0; i < result.rows(); ++i) {
        std::vector<std::string> vrow{format_double(result.axis1_values[i])};
        std::vector<std::string> lrow{vrow.front()};
        for (std::size_t j = 0; j < result.cols(); ++j) {
            vrow.push_back(format_double(result.value(i, j)));
            lrow.emplace_back(to_string(result.outcome(i, j)));
        }
        values.row(vrow);
        labels.row(lrow);
    }
    values.close();
    labels.close();

    auto meta = detail::base_metadata(config, runtime_seconds);
    const auto schedule = build_schedule(
        [&] {
            auto d = result.grid.schedule;
            // Seeds do not depend on the swept values; bind the first point to list them.
            if (is_schedule_parameter(result.grid.axis1.name)) {
                set_parameter(d, result.grid.axis1.name, result.axis1_values.front());
            }
            if (is_schedule_parameter(result.grid.axis2.name)) {
                set_parameter(d, result.grid.axis2.name, result.axis2_values.front());
            }
            return d;
        }(),
        result.grid.seed);
    meta["seeds"] = detail::seeds_json(consumed_seeds(schedule));
    meta["master_seed"] = result.grid.seed;
    meta["randomness"] = is_stochastic(schedule) ? "single-realization (shared by every grid point)" : "deterministic";
    meta["metric"] = result.grid.metric == SweepMetric::final_expectation ? "final_expectation" : "drift_slope";
    meta["tie_tolerance"] = result.grid.tie_tolerance;
    meta["grid"] = {
        {"axis1", {{"name", result.grid.axis1.name}, {"lower", result.grid.axis1.lower},
                   {"upper", result.grid.axis1.upper}, {"points", result.grid.axis1.points}}},
        {"axis2", {{"name", result.grid.axis2.name}, {"lower", result.grid.axis2.lower},
                   {"upper", result.grid.axis2.upper}, {"points", result.grid.axis2.points}}},
        {"steps", result.grid.steps},
        {"sites", result.grid.n_sites},
    };
    meta["sweep_runtime_seconds"] = result.runtime_seconds;
    meta["files"] = {bundle.data.filename().string(), bundle.secondary->filename().string()};
    detail::write_json(bundle.metadata, meta);
    return bundle;
}

/// classical.csv (t, expectation, variance), distribution.csv when requested,
/// and metadata.json.
inline OutputBundle emit_classical(const ClassicalWalkResult &result, const RunConfig &config,
                                   const std::filesystem::path &dir, double runtime_seconds = 0.0) {
    detail::prepare_dir(dir);
    OutputBundle bundle{dir / "classical.csv", std::nullopt, dir / "metadata.json"};

    detail::CsvFile csv(bundle.data);
    csv.row({"t", "expectation", "variance"});
    for (std::size_t t = 0; t < result.variance.size(); ++t) {
        csv.row({std::to_string(t), format_double(result.expectation[t]), format_double(result.variance[t])});
    }
    csv.close();

    if (config.record_full) {
        bundle.secondary = dir / "distribution.csv";
        detail::write_distribution(*bundle.secondary, result.distribution, -static_cast<int>(result.steps));
    }

    auto meta = detail::base_metadata(config, runtime_seconds);
    meta["seeds"] = nlohmann::json::array();
    meta["randomness"] = "deterministic (exact distribution evolution)";
    meta["files"] = {bundle.data.filename().string()};
    if (bundle.secondary) {
        meta["files"].push_back(bundle.secondary->filename().string());
    }
    detail::write_json(bundle.metadata, meta);
    return bundle;
}

}  // namespace qwp::io

#endif  // QWP_IO_OUTPUT_HPP
