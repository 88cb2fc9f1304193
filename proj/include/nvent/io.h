// Copyright 2026 The nvent Authors
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

#ifndef NVENT_IO_H
#define NVENT_IO_H

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nvent/experiments.h"
#include "nvent/qsim.h"

namespace nvent::io {

/// Everything needed to regenerate an output file. Unset fields fall back to
/// the subcommand defaults.
struct RunConfig {
    std::optional<double> v_ac_khz;
    std::optional<double> v_ab_khz;
    std::optional<double> v_cb_khz;
    std::optional<double> v_khz;
    std::optional<double> two_tau_max_us;
    std::optional<double> step_us;
    std::optional<double> two_tau_us;
    /// Absent means exact probabilities.
    std::optional<std::uint64_t> shots;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> backend;
    std::optional<double> kappa;
    /// "ac", "ab", "cb" or "none".
    std::optional<std::string> decouple;
    std::optional<std::string> trier_variant;
    std::optional<std::string> pair_order;
    std::optional<std::string> bell_tail;
    std::optional<std::string> target;
    std::optional<std::string> out_dir;

    /// Fields set in `other` win.
    void merge(const RunConfig &other);
    /// key=value lines in a fixed key order; unset keys are omitted.
    std::string to_text() const;

    bool operator==(const RunConfig &other) const = default;
};

/// Flat key=value text; '#' starts a comment line. Unknown keys, repeated
/// keys and malformed numbers throw kInvalidConfig naming the line.
RunConfig parse_run_config(const std::string &text);
RunConfig load_run_config(const std::filesystem::path &path);

/// $NVENT_OUT_DIR when set and non-empty, else the working directory.
std::filesystem::path default_out_dir();

/// "%.6g".
std::string format_number(double value);

/// Provenance sidecar path of an output file: "<file>.run.cfg".
std::filesystem::path sidecar_path(const std::filesystem::path &path);

/// Writes `text` to `path` (LF endings, no BOM); throws kFile with the path.
void write_text(const std::filesystem::path &path, const std::string &text);
std::string read_text(const std::filesystem::path &path);

/// Header two_tau_us,p_<label>...,fidelity_<target>...; one row per grid
/// point. The run configuration goes to the sidecar.
std::string sweep_csv(const SweepResult &result);
void write_sweep_csv(const SweepResult &result, const RunConfig &config, const std::filesystem::path &path);

/// Real part of rho as a dim x dim matrix.
std::string density_csv(const DensityMatrix &rho);
void write_density_csv(const DensityMatrix &rho, const RunConfig &config, const std::filesystem::path &path);

struct Provenance {
    RunConfig config;
    std::string tool_version;
    std::optional<double> step_us;
    std::optional<double> two_tau_max_us;
};

Provenance make_provenance(const RunConfig &config);

/// JSON document with a provenance block and one object per report.
std::string report_json(const std::vector<EntanglementReport> &reports, const Provenance &provenance);
void write_report(const std::vector<EntanglementReport> &reports, const Provenance &provenance,
                  const std::filesystem::path &path);
std::vector<EntanglementReport> parse_report(const std::string &json_text);

/// Report plus per-row comparison against the published table.
std::string table1_json(const Table1Result &table, const Provenance &provenance);
std::string table1_csv(const Table1Result &table);

std::string trend_csv(const TrendResult &trend);

struct PlotSeries {
    /// A basis label ("011") for counts or a target label for fidelity.
    std::string label;
    bool fidelity = false;
};

/// One polyline per series over the sweep grid, axes labelled in us and
/// normalized counts, config embedded in <metadata>. A dashed vertical line
/// marks `marker_us` when given.
std::string svg_plot(const SweepResult &result, const std::vector<PlotSeries> &series, const Provenance &provenance,
                     std::optional<double> marker_us = std::nullopt);
void write_svg_plot(const SweepResult &result, const std::vector<PlotSeries> &series, const Provenance &provenance,
                    const std::filesystem::path &path, std::optional<double> marker_us = std::nullopt);

}  // namespace nvent::io

#endif
