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

#ifndef NVENT_EXPERIMENTS_H
#define NVENT_EXPERIMENTS_H

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nvent/circuits.h"
#include "nvent/nv_model.h"
#include "nvent/qsim.h"

namespace nvent {

struct TargetState {
    std::string label;
    StateVector state;
};

/// (|00> + |11>)/sqrt(2), labelled "bell".
TargetState bell_target();
/// The eight states (|x> +- |~x>)/sqrt(2) on three qubits, labelled like
/// "000+111" or "001-110" (x has a leading 0).
std::vector<TargetState> ghz_family();
/// "100+011" -> "011+100": the family label of the same state (up to phase).
std::string canonical_ghz_label(const std::string &label);
/// One member of ghz_family() by label in either order; throws kInvalidInput otherwise.
TargetState ghz_target(const std::string &label);

/// What produced a sweep. Copied into every report for provenance.
struct SweepContext {
    std::string experiment;
    std::optional<CouplingConfig> config;
    EvolutionBackend backend = EvolutionBackend::kPaperLiteral;
    double kappa = kDefaultKappa;
    std::string trier_variant;
};

struct SweepSpec {
    double two_tau_max_us = 150.0;
    double step_us = 0.1;
    CountsMode counts_mode = ExactCounts{};
    std::vector<TargetState> targets;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
    SweepContext context;

    /// step > 0, two_tau_max >= step, unique target labels of matching size.
    void validate() const;
    /// k * step for k = 1 .. floor(two_tau_max / step).
    std::vector<double> grid() const;
};

struct SweepRow {
    double two_tau_us = 0.0;
    CountsTable counts;
    /// Aligned with SweepResult::target_labels.
    std::vector<double> fidelities;
};

struct SweepResult {
    int n_qubits = 0;
    std::vector<std::string> target_labels;
    std::vector<SweepRow> rows;
    double step_us = 0.0;
    CountsMode counts_mode = ExactCounts{};
    SweepContext context;

    /// Index of `label` in target_labels; throws kInvalidInput when absent.
    std::size_t target_index(const std::string &label) const;
    std::vector<double> fidelity_series(const std::string &label) const;
    std::vector<double> counts_series(const std::string &label) const;
};

using CircuitBuilder = std::function<Circuit(double two_tau_us)>;

/// Seed of grid row `row` under base seed `base` (splitmix64 of both).
std::uint64_t row_seed(std::uint64_t base, std::size_t row);

/// Builds and runs one circuit per grid point from |0...0>. Rows are computed
/// in parallel and stored in grid order; the result depends only on `spec`.
SweepResult run_sweep(const CircuitBuilder &builder, const SweepSpec &spec);

struct Argmax {};
struct Crossing {
    std::string state_x;
    std::string state_y;
};
using EntanglementMethod = std::variant<Argmax, Crossing>;

/// Fidelities within this of the curve maximum count as ties.
inline constexpr double kDefaultTieTolerance = 5e-3;

struct CrossingDetail {
    std::string state_x;
    std::string state_y;
    double two_tau_us = 0.0;
    /// |p_x - p_y| at two_tau_us.
    double gap = 0.0;

    bool operator==(const CrossingDetail &other) const = default;
};

struct EntanglementReport {
    std::optional<CouplingConfig> config;
    double two_tau_ent_us = 0.0;
    double fidelity_max = 0.0;
    std::string target_state;
    std::string method;
    EvolutionBackend backend = EvolutionBackend::kPaperLiteral;
    double kappa = kDefaultKappa;
    std::string trier_variant;
    /// Argmax location, reported whatever the method.
    double argmax_two_tau_us = 0.0;
    std::optional<CrossingDetail> crossing;

    bool operator==(const EntanglementReport &other) const = default;
};

/// Argmax: the first grid point whose fidelity is within `tie_tolerance` of
/// the maximum, moved uphill to the top of its lobe. Crossing: the first grid
/// point minimizing |p_x - p_y| inside the lobe around the argmax.
EntanglementReport find_entanglement_time(const SweepResult &result, const std::string &target,
                                          const EntanglementMethod &method = Argmax{},
                                          double tie_tolerance = kDefaultTieTolerance);

/// Target with the highest fidelity anywhere on the sweep (first on ties).
std::string best_target(const SweepResult &result);

struct CalibrationSpec {
    double v_khz = 4.93;
    double target_us = 21.2;
    double step_us = 0.1;
    /// The Bell sweep covers (0, window_factor * target].
    double window_factor = 2.0;
    double range_decades_below = 1.0;
    double range_decades_above = 1.0;
    int grid_points = 81;
    /// Relative kappa resolution of the bisection.
    double rel_tolerance = 1e-3;
    PulseSchedule schedule;

    void validate() const;
};

struct CalibrationResult {
    double kappa = kDefaultKappa;
    double two_tau_ent_us = 0.0;
    double fidelity_max = 0.0;
    double residual_us = 0.0;
    bool approximate = false;
    /// Range of kappa reproducing the target grid point.
    double kappa_low = 0.0;
    double kappa_high = 0.0;
    /// The same Bell sweep under kDefaultKappa.
    double default_two_tau_ent_us = 0.0;
    double default_fidelity_max = 0.0;
    std::vector<std::pair<double, double>> scan;  // (kappa, 2tau_ent)
};

/// 2tau_ent of the two-qubit entangler at `kappa` over the calibration window.
EntanglementReport bell_entanglement(const CalibrationSpec &spec, double kappa);

/// Log-grid scan of kappa, then bisection on the edges of the kappa interval
/// whose 2tau_ent equals the grid point nearest the target; returns its
/// geometric midpoint. Throws kAmbiguity when the scanned objective has more
/// than one local minimum and kInvalidInput when the fidelity curve is flat
/// (nothing to calibrate against).
CalibrationResult calibrate_kappa(const CalibrationSpec &spec = {});

/// One row of the published three-qubit table.
struct PaperRow {
    std::string family;
    CouplingConfig config;
    double two_tau_ent_us;
    double fidelity;
    /// Entangled state named in the text for this arrangement, if any.
    std::optional<std::string> target;
};

const std::vector<PaperRow> &paper_table1();
/// The two-qubit reference point.
inline constexpr double kPaperBellV = 4.93;
inline constexpr double kPaperBellTwoTau = 21.2;

struct Table1Spec {
    double two_tau_max_us = 150.0;
    double step_us = 0.1;
    PulseSchedule schedule;
    TrierLayout layout;
    double tie_tolerance = kDefaultTieTolerance;
    unsigned threads = 0;
    /// Also evaluate every anchor-passing layout and keep the best per row.
    bool scan_variants = true;
};

struct Table1Row {
    PaperRow paper;
    EntanglementReport report;
    double delta_two_tau_us = 0.0;
    double delta_fidelity = 0.0;
    double time_tolerance_us = 0.0;
    bool time_ok = false;
    bool fidelity_ok = false;
    /// round(2tau_ent * v_max * kappa / pi); diagnostic only.
    long n_diagnostic = 0;
    std::string best_variant;
    double best_delta_two_tau_us = 0.0;
    double best_delta_fidelity = 0.0;
    bool best_ok = false;
};

struct Table1Result {
    std::vector<Table1Row> rows;
    bool all_ok = false;
    /// True when some row fails under every evaluated layout.
    bool unreachable = false;
};

Table1Row evaluate_table1_row(const PaperRow &paper, const Table1Spec &spec, const TrierLayout &layout);
Table1Result reproduce_table1(const Table1Spec &spec);

struct TrendSample {
    CouplingConfig config;
    double two_tau_ent_us;
    double fidelity;
};

struct TrendPoint {
    double r_khz;
    double two_tau_ent_us;
    double fidelity;
};

struct TrendResult {
    std::vector<TrendPoint> points;
    std::size_t excluded = 0;
    double spearman = 0.0;
};

inline constexpr double kTrendFidelityFloor = 0.9;

/// Drops samples with fidelity < 0.9, sorts by R and computes Spearman's rho
/// with average ranks. Throws kInsufficientData below three samples.
TrendResult r_trend(std::span<const TrendSample> samples);
/// Reports without a configuration are rejected with kInvalidInput.
TrendResult r_trend(std::span<const EntanglementReport> reports);
std::vector<TrendSample> paper_trend_samples();

/// Spearman's rho with average ranks for ties.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace nvent

#endif
