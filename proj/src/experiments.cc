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

#include "nvent/experiments.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "nvent/error.h"

namespace nvent {

TargetState bell_target() {
    return {"bell", StateVector::superposition("00", "11", Complex{1.0, 0.0})};
}

std::vector<TargetState> ghz_family() {
    std::vector<TargetState> out;
    for (std::uint64_t x = 0; x < 4; ++x) {
        const std::string a = basis_label(x, 3);
        const std::string b = basis_label(7 - x, 3);
        for (int sign : {+1, -1}) {
            out.push_back({a + (sign > 0 ? "+" : "-") + b,
                           StateVector::superposition(a, b, Complex{static_cast<double>(sign), 0.0})});
        }
    }
    return out;
}

std::string canonical_ghz_label(const std::string &label) {
    // (|x> +- |~x>) and (|~x> +- |x>) differ by a global phase at most.
    if (label.size() == 7 && (label[3] == '+' || label[3] == '-') && label[0] == '1') {
        return label.substr(4) + label[3] + label.substr(0, 3);
    }
    return label;
}

TargetState ghz_target(const std::string &label) {
    const std::string canonical = canonical_ghz_label(label);
    for (auto &t : ghz_family()) {
        if (t.label == canonical) return t;
    }
    throw Error(ErrorKind::kInvalidInput, "unknown three-qubit target '" + label + "' (expected e.g. 000+111)");
}

void SweepSpec::validate() const {
    if (!std::isfinite(step_us) || step_us <= 0.0) {
        throw Error(ErrorKind::kInvalidInput, "step must be finite and > 0 us, got " + std::to_string(step_us));
    }
    if (!std::isfinite(two_tau_max_us) || two_tau_max_us < step_us) {
        throw Error(ErrorKind::kInvalidInput, "two_tau_max must be >= step, got " + std::to_string(two_tau_max_us));
    }
    if (two_tau_max_us / step_us > 1e7) throw Error(ErrorKind::kSizeCap, "sweep grid exceeds 1e7 points");
    if (const auto *s = std::get_if<SampledCounts>(&counts_mode); s && s->shots == 0) {
        throw Error(ErrorKind::kInvalidInput, "shots must be > 0");
    }
    std::set<std::string> seen;
    for (const auto &t : targets) {
        if (!seen.insert(t.label).second) throw Error(ErrorKind::kInvalidInput, "duplicate target label " + t.label);
    }
    if (context.kappa <= 0.0 || !std::isfinite(context.kappa)) {
        throw Error(ErrorKind::kInvalidInput, "kappa must be finite and > 0");
    }
}

std::vector<double> SweepSpec::grid() const {
    const auto n = static_cast<std::size_t>(std::floor(two_tau_max_us / step_us + 1e-9));
    std::vector<double> g(n);
    for (std::size_t k = 0; k < n; ++k) g[k] = static_cast<double>(k + 1) * step_us;
    return g;
}

std::size_t SweepResult::target_index(const std::string &label) const {
    const auto it = std::find(target_labels.begin(), target_labels.end(), label);
    if (it == target_labels.end()) throw Error(ErrorKind::kInvalidInput, "target '" + label + "' not in sweep");
    return static_cast<std::size_t>(it - target_labels.begin());
}

std::vector<double> SweepResult::fidelity_series(const std::string &label) const {
    const auto i = target_index(label);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto &r : rows) out.push_back(r.fidelities[i]);
    return out;
}

std::vector<double> SweepResult::counts_series(const std::string &label) const {
    if (label.size() != static_cast<std::size_t>(n_qubits) ||
        label.find_first_not_of("01") != std::string::npos) {
        throw Error(ErrorKind::kInvalidInput, "'" + label + "' is not a basis label of this sweep");
    }
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto &r : rows) out.push_back(r.counts.at(label));
    return out;
}

std::uint64_t row_seed(std::uint64_t base, std::size_t row) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(base) ^ static_cast<std::uint64_t>(row));
}

SweepResult run_sweep(const CircuitBuilder &builder, const SweepSpec &spec) {
    spec.validate();
    const auto grid = spec.grid();

    SweepResult result;
    result.step_us = spec.step_us;
    result.counts_mode = spec.counts_mode;
    result.context = spec.context;
    for (const auto &t : spec.targets) result.target_labels.push_back(t.label);
    result.rows.resize(grid.size());

    auto compute = [&](std::size_t k) {
        const Circuit circuit = builder(grid[k]);
        const StateVector state = run_circuit(circuit);
        for (const auto &t : spec.targets) {
            if (t.state.n_qubits() != state.n_qubits()) {
                throw Error(ErrorKind::kInvalidInput, "target " + t.label + " does not match the register size");
            }
        }
        CountsMode mode = spec.counts_mode;
        if (auto *s = std::get_if<SampledCounts>(&mode)) s->seed = row_seed(s->seed, k);
        SweepRow row{grid[k], measure_counts(state, mode), {}};
        row.counts.mode = spec.counts_mode;
        for (const auto &t : spec.targets) row.fidelities.push_back(fidelity(t.state, state));
        result.rows[k] = std::move(row);
    };

    unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, grid.size() / 32)));
    if (threads <= 1) {
        for (std::size_t k = 0; k < grid.size(); ++k) compute(k);
    } else {
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t k = w; k < grid.size(); k += threads) compute(k);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
        for (auto &t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }
    result.n_qubits = result.rows.empty() ? 0 : static_cast<int>(result.rows.front().counts.entries.begin()->first.size());
    return result;
}

namespace {

// First point within `tol` of the maximum, then uphill to the top of its lobe.
std::size_t first_lobe_peak(const std::vector<double> &f, double tol) {
    const double top = *std::max_element(f.begin(), f.end());
    std::size_t i = 0;
    while (f[i] < top - tol) ++i;
    while (i + 1 < f.size() && f[i + 1] > f[i]) ++i;
    return i;
}

}  // namespace

EntanglementReport find_entanglement_time(const SweepResult &result, const std::string &target,
                                          const EntanglementMethod &method, double tie_tolerance) {
    if (result.rows.empty()) throw Error(ErrorKind::kInvalidInput, "empty sweep");
    if (!(tie_tolerance >= 0.0)) throw Error(ErrorKind::kInvalidInput, "tie tolerance must be >= 0");
    const auto f = result.fidelity_series(target);
    const std::size_t peak = first_lobe_peak(f, tie_tolerance);

    EntanglementReport report;
    report.config = result.context.config;
    report.target_state = target;
    report.backend = result.context.backend;
    report.kappa = result.context.kappa;
    report.trier_variant = result.context.trier_variant;
    report.argmax_two_tau_us = result.rows[peak].two_tau_us;
    report.fidelity_max = f[peak];
    report.two_tau_ent_us = report.argmax_two_tau_us;
    report.method = "argmax";

    if (const auto *c = std::get_if<Crossing>(&method)) {
        const auto px = result.counts_series(c->state_x);
        const auto py = result.counts_series(c->state_y);
        std::size_t lo = peak, hi = peak;
        while (lo > 0 && f[lo - 1] <= f[lo]) --lo;
        while (hi + 1 < f.size() && f[hi + 1] <= f[hi]) ++hi;
        std::size_t best = lo;
        for (std::size_t k = lo; k <= hi; ++k) {
            if (std::abs(px[k] - py[k]) < std::abs(px[best] - py[best])) best = k;
        }
        report.crossing = CrossingDetail{c->state_x, c->state_y, result.rows[best].two_tau_us,
                                         std::abs(px[best] - py[best])};
        report.two_tau_ent_us = report.crossing->two_tau_us;
        report.method = "crossing";
    }
    return report;
}

std::string best_target(const SweepResult &result) {
    if (result.target_labels.empty() || result.rows.empty()) {
        throw Error(ErrorKind::kInvalidInput, "sweep has no targets to choose from");
    }
    std::string best;
    double best_f = -1.0;
    for (const auto &label : result.target_labels) {
        const auto f = result.fidelity_series(label);
        const double m = *std::max_element(f.begin(), f.end());
        if (m > best_f + 1e-12) {
            best_f = m;
            best = label;
        }
    }
    return best;
}

void CalibrationSpec::validate() const {
    schedule.validate();
    auto positive = [](double x, const char *what) {
        if (!std::isfinite(x) || x <= 0.0) throw Error(ErrorKind::kInvalidInput, std::string(what) + " must be > 0");
    };
    positive(v_khz, "calibration coupling");
    positive(target_us, "calibration target time");
    positive(step_us, "calibration step");
    positive(rel_tolerance, "calibration tolerance");
    if (window_factor < 1.0) throw Error(ErrorKind::kInvalidInput, "calibration window must cover the target");
    if (range_decades_below + range_decades_above < 2.0) {
        throw Error(ErrorKind::kInvalidInput, "calibration range must span at least two decades");
    }
    if (grid_points < 3) throw Error(ErrorKind::kInvalidInput, "calibration grid needs at least 3 points");
}

EntanglementReport bell_entanglement(const CalibrationSpec &spec, double kappa) {
    PulseSchedule schedule = spec.schedule;
    schedule.convention.kappa = kappa;
    SweepSpec sweep;
    sweep.two_tau_max_us = spec.window_factor * spec.target_us;
    sweep.step_us = spec.step_us;
    sweep.targets = {bell_target()};
    sweep.threads = 1;
    sweep.context = {"bell", std::nullopt, schedule.backend, kappa, ""};
    const auto result =
        run_sweep([&](double t) { return bell_circuit(spec.v_khz, t, schedule); }, sweep);
    const auto f = result.fidelity_series("bell");
    const auto [mn, mx] = std::minmax_element(f.begin(), f.end());
    if (*mx - *mn < 1e-9) {
        std::ostringstream msg;
        msg << "two-qubit entangler fidelity is flat at " << *mx << " (bell tail " << to_string(schedule.bell_tail)
            << ", backend " << to_string(schedule.backend) << "); no entanglement time to calibrate against";
        throw Error(ErrorKind::kInvalidInput, msg.str());
    }
    return find_entanglement_time(result, "bell");
}

CalibrationResult calibrate_kappa(const CalibrationSpec &spec) {
    spec.validate();
    const double step = spec.step_us;
    const long goal = std::lround(spec.target_us / step);
    auto index_at = [&](double kappa) { return std::lround(bell_entanglement(spec, kappa).two_tau_ent_us / step); };

    CalibrationResult out;
    const double lo_exp = std::log10(kDefaultKappa) - spec.range_decades_below;
    const double hi_exp = std::log10(kDefaultKappa) + spec.range_decades_above;
    std::vector<double> kappas, objective;
    std::vector<long> idx;
    for (int i = 0; i < spec.grid_points; ++i) {
        const double k = std::pow(10.0, lo_exp + (hi_exp - lo_exp) * i / (spec.grid_points - 1));
        const auto r = bell_entanglement(spec, k);
        kappas.push_back(k);
        idx.push_back(std::lround(r.two_tau_ent_us / step));
        objective.push_back(std::abs(r.two_tau_ent_us - spec.target_us));
        out.scan.emplace_back(k, r.two_tau_ent_us);
    }

    // Local minima of the objective with plateaus collapsed to one point.
    std::vector<std::pair<std::size_t, std::size_t>> runs;  // [first, last] of equal values
    for (std::size_t i = 0; i < objective.size(); ++i) {
        if (!runs.empty() && std::abs(objective[i] - objective[runs.back().second]) < 1e-12) {
            runs.back().second = i;
        } else {
            runs.emplace_back(i, i);
        }
    }
    std::vector<std::size_t> minima;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        const double v = objective[runs[r].first];
        const bool left = r == 0 || objective[runs[r - 1].first] > v;
        const bool right = r + 1 == runs.size() || objective[runs[r + 1].first] > v;
        if (left && right) minima.push_back(r);
    }
    if (minima.size() > 1) {
        std::ostringstream msg;
        msg << "calibration objective has " << minima.size() << " local minima:";
        for (auto r : minima) {
            msg << " kappa in [" << kappas[runs[r].first] << ", " << kappas[runs[r].second]
                << "] -> |d| = " << objective[runs[r].first] << " us;";
        }
        throw Error(ErrorKind::kAmbiguity, msg.str());
    }

    // Bisection for the boundary between kappa_a (pred false) and kappa_b (pred true).
    auto bisect = [&](double a, double b, auto pred) {
        while (b / a > 1.0 + spec.rel_tolerance) {
            const double m = std::sqrt(a * b);
            (pred(m) ? b : a) = m;
        }
        return std::pair{a, b};
    };
    auto at_or_below = [&](double k) { return index_at(k) <= goal; };
    auto below = [&](double k) { return index_at(k) < goal; };

    // 2tau_ent falls as kappa grows; locate the first grid kappa at or below the goal.
    std::size_t j = 0;
    while (j < idx.size() && idx[j] > goal) ++j;
    bool bracketed = j > 0 && j < idx.size();
    if (bracketed) {
        const auto left = bisect(kappas[j - 1], kappas[j], at_or_below);
        std::size_t m = j;
        while (m < idx.size() && idx[m] <= goal && idx[m] >= goal) ++m;
        double right_lo = left.second, right_hi = m < idx.size() ? kappas[m] : kappas.back();
        if (m < idx.size()) {
            const auto right = bisect(m > j ? kappas[m - 1] : left.second, right_hi, below);
            right_lo = right.first;
        }
        out.kappa_low = left.second;
        out.kappa_high = std::max(right_lo, out.kappa_low);
        out.kappa = std::sqrt(out.kappa_low * out.kappa_high);
    } else {
        const auto best = static_cast<std::size_t>(
            std::min_element(objective.begin(), objective.end()) - objective.begin());
        out.kappa = out.kappa_low = out.kappa_high = kappas[best];
    }

    const auto final_report = bell_entanglement(spec, out.kappa);
    out.two_tau_ent_us = final_report.two_tau_ent_us;
    out.fidelity_max = final_report.fidelity_max;
    out.residual_us = std::abs(out.two_tau_ent_us - spec.target_us);
    out.approximate = !bracketed || out.residual_us > step + 1e-9;

    const auto def = bell_entanglement(spec, kDefaultKappa);
    out.default_two_tau_ent_us = def.two_tau_ent_us;
    out.default_fidelity_max = def.fidelity_max;
    return out;
}

const std::vector<PaperRow> &paper_table1() {
    static const std::vector<PaperRow> rows = {
        {"equilateral", {50, 50, 50}, 12.5, 0.996, "000-111"},
        {"equilateral", {20, 20, 20}, 31.5, 0.996, "000-111"},
        {"equilateral", {5, 5, 5}, 125.7, 0.996, "000-111"},
        {"isosceles-double", {50, 50, 5}, 62.8, 0.996, std::nullopt},
        {"isosceles-double", {50, 5, 50}, 12.5, 0.896, std::nullopt},
        {"isosceles-double", {5, 50, 50}, 12.5, 0.898, std::nullopt},
        {"isosceles-single", {5, 5, 50}, 6.3, 0.963, "011+100"},
        {"isosceles-single", {5, 50, 5}, 125.7, 0.990, std::nullopt},
        {"isosceles-single", {50, 5, 5}, 125.7, 0.990, std::nullopt},
        {"realistic", {53.0, 4.6, 24.1}, 11.7, 0.897, "000+111"},
        {"realistic", {4.6, 24.1, 53.0}, 130.1, 0.972, std::nullopt},
        {"realistic", {24.1, 53.0, 4.6}, 130.1, 0.980, std::nullopt},
    };
    return rows;
}

Table1Row evaluate_table1_row(const PaperRow &paper, const Table1Spec &spec, const TrierLayout &layout) {
    SweepSpec sweep;
    sweep.two_tau_max_us = spec.two_tau_max_us;
    sweep.step_us = spec.step_us;
    sweep.targets = ghz_family();
    sweep.threads = spec.threads;
    sweep.context = {"ghz", paper.config, spec.schedule.backend, spec.schedule.convention.kappa, layout.id()};
    const auto result =
        run_sweep([&](double t) { return trier_circuit(paper.config, t, spec.schedule, layout); }, sweep);
    const std::string target = paper.target ? *paper.target : best_target(result);

    Table1Row row;
    row.paper = paper;
    row.report = find_entanglement_time(result, target, Argmax{}, spec.tie_tolerance);
    row.delta_two_tau_us = row.report.two_tau_ent_us - paper.two_tau_ent_us;
    row.delta_fidelity = row.report.fidelity_max - paper.fidelity;
    row.time_tolerance_us = std::max(spec.step_us, 0.05 * paper.two_tau_ent_us);
    row.time_ok = std::abs(row.delta_two_tau_us) <= row.time_tolerance_us + 1e-9;
    row.fidelity_ok = std::abs(row.delta_fidelity) <= 0.05 + 1e-12;
    row.n_diagnostic = std::lround(row.report.two_tau_ent_us * paper.config.max_coupling() *
                                   spec.schedule.convention.kappa / std::numbers::pi);
    row.best_variant = layout.id();
    row.best_delta_two_tau_us = row.delta_two_tau_us;
    row.best_delta_fidelity = row.delta_fidelity;
    row.best_ok = row.time_ok && row.fidelity_ok;
    return row;
}

Table1Result reproduce_table1(const Table1Spec &spec) {
    spec.schedule.validate();
    Table1Result out;
    std::vector<TrierLayout> alternatives;
    if (spec.scan_variants) {
        for (const auto &r : anchor_passing_layouts(spec.schedule.decoupled_pair)) {
            if (!(r.layout == spec.layout)) alternatives.push_back(r.layout);
        }
    }
    auto score = [](const Table1Row &r) {
        return std::abs(r.delta_two_tau_us) / r.time_tolerance_us + std::abs(r.delta_fidelity) / 0.05;
    };
    out.all_ok = true;
    for (const auto &paper : paper_table1()) {
        Table1Row row = evaluate_table1_row(paper, spec, spec.layout);
        double best_score = score(row);
        for (const auto &layout : alternatives) {
            if (row.best_ok) break;
            const Table1Row alt = evaluate_table1_row(paper, spec, layout);
            const bool alt_ok = alt.time_ok && alt.fidelity_ok;
            if (alt_ok || score(alt) < best_score) {
                best_score = score(alt);
                row.best_variant = alt.best_variant;
                row.best_delta_two_tau_us = alt.delta_two_tau_us;
                row.best_delta_fidelity = alt.delta_fidelity;
                row.best_ok = alt_ok;
            }
        }
        out.all_ok = out.all_ok && row.time_ok && row.fidelity_ok;
        out.unreachable = out.unreachable || !row.best_ok;
        out.rows.push_back(std::move(row));
    }
    return out;
}

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw Error(ErrorKind::kInvalidInput, "spearman needs equal-length inputs");
    if (x.size() < 2) throw Error(ErrorKind::kInsufficientData, "spearman needs at least two points");
    auto ranks = [](std::span<const double> v) {
        std::vector<std::size_t> order(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < order.size();) {
            std::size_t j = i;
            while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
            const double avg = (static_cast<double>(i + j) / 2.0) + 1.0;
            for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
            i = j + 1;
        }
        return r;
    };
    const auto rx = ranks(x), ry = ranks(y);
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) throw Error(ErrorKind::kInsufficientData, "spearman undefined for constant input");
    return sxy / std::sqrt(sxx * syy);
}

TrendResult r_trend(std::span<const TrendSample> samples) {
    TrendResult out;
    for (const auto &s : samples) {
        if (s.fidelity < kTrendFidelityFloor) {
            ++out.excluded;
            continue;
        }
        out.points.push_back({coupling_constant(s.config), s.two_tau_ent_us, s.fidelity});
    }
    if (out.points.size() < 3) {
        throw Error(ErrorKind::kInsufficientData, "r_trend needs at least 3 samples with fidelity >= 0.9, got " +
                                                      std::to_string(out.points.size()));
    }
    std::stable_sort(out.points.begin(), out.points.end(),
                     [](const TrendPoint &a, const TrendPoint &b) { return a.r_khz < b.r_khz; });
    std::vector<double> r, t;
    for (const auto &p : out.points) {
        r.push_back(p.r_khz);
        t.push_back(p.two_tau_ent_us);
    }
    out.spearman = spearman(r, t);
    return out;
}

TrendResult r_trend(std::span<const EntanglementReport> reports) {
    std::vector<TrendSample> samples;
    for (const auto &r : reports) {
        if (!r.config) throw Error(ErrorKind::kInvalidInput, "report for target " + r.target_state + " has no configuration");
        samples.push_back({*r.config, r.two_tau_ent_us, r.fidelity_max});
    }
    return r_trend(std::span<const TrendSample>(samples));
}

std::vector<TrendSample> paper_trend_samples() {
    std::vector<TrendSample> out;
    for (const auto &row : paper_table1()) out.push_back({row.config, row.two_tau_ent_us, row.fidelity});
    return out;
}

}  // namespace nvent
