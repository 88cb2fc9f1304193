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

// Command-line driver for the NV-center entanglement simulations.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "nvent/circuits.h"
#include "nvent/error.h"
#include "nvent/experiments.h"
#include "nvent/io.h"
#include "nvent/nv_model.h"
#include "nvent/oracle.h"
#include "nvent/qsim.h"

namespace fs = std::filesystem;
using namespace nvent;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitReconstruction = 3;

struct Options {
    io::RunConfig flags;
    std::string config_path;
    std::string crossing;
    std::string experiment;
    bool from_sim = false;
    std::uint64_t random_circuits = 1000;
};

void add_sweep_flags(CLI::App *cmd, Options &o) {
    cmd->add_option_function<double>("--two-tau-max", [&](const double &v) { o.flags.two_tau_max_us = v; },
                                     "Sweep end in us");
    cmd->add_option_function<double>("--step", [&](const double &v) { o.flags.step_us = v; }, "Grid step in us");
    cmd->add_option_function<std::uint64_t>("--shots", [&](const std::uint64_t &v) { o.flags.shots = v; },
                                            "Sampled counts with this many shots (default: exact)");
    cmd->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t &v) { o.flags.seed = v; },
                                            "Base seed for sampled counts");
}

void add_schedule_flags(CLI::App *cmd, Options &o) {
    cmd->add_option_function<std::string>("--backend", [&](const std::string &v) { o.flags.backend = v; },
                                          "literal | physical");
    cmd->add_option_function<double>("--kappa", [&](const double &v) { o.flags.kappa = v; },
                                     "Phase per kHz*us (default 2*pi*1e-3)");
    cmd->add_option_function<std::string>("--pair-order", [&](const std::string &v) { o.flags.pair_order = v; },
                                          "Block order, e.g. ac,ab,cb");
}

void add_trier_flags(CLI::App *cmd, Options &o) {
    cmd->add_option_function<std::string>("--decouple", [&](const std::string &v) { o.flags.decouple = v; },
                                          "Pair off during the final segment: ac | ab | cb | none");
    cmd->add_option_function<std::string>("--trier-variant", [&](const std::string &v) { o.flags.trier_variant = v; },
                                          "auto | layout id | index into the layout space");
}

void add_coupling_flags(CLI::App *cmd, Options &o) {
    cmd->add_option_function<double>("--v-ac", [&](const double &v) { o.flags.v_ac_khz = v; }, "v_AC in kHz");
    cmd->add_option_function<double>("--v-ab", [&](const double &v) { o.flags.v_ab_khz = v; }, "v_AB in kHz");
    cmd->add_option_function<double>("--v-cb", [&](const double &v) { o.flags.v_cb_khz = v; }, "v_CB in kHz");
}

void add_common_flags(CLI::App *cmd, Options &o) {
    cmd->add_option("--config", o.config_path, "key=value run configuration file");
    cmd->add_option_function<std::string>("--out", [&](const std::string &v) { o.flags.out_dir = v; },
                                          "Output directory (default $NVENT_OUT_DIR or .)");
}

// Resolved run settings; every field validated before any simulation.
struct Run {
    io::RunConfig cfg;
    PulseSchedule schedule;
    SweepSpec sweep;
    fs::path out_dir;
    std::optional<CouplingConfig> couplings;
    std::optional<TrierLayout> layout;
};

std::optional<Pair> parse_decouple(const std::string &s) {
    if (s == "none") return std::nullopt;
    return parse_pair(s);
}

Run resolve(Options &o, bool needs_couplings) {
    io::RunConfig cfg;
    if (!o.config_path.empty()) cfg = io::load_run_config(o.config_path);
    cfg.merge(o.flags);

    Run run;
    if (cfg.backend) run.schedule.backend = parse_backend(*cfg.backend);
    if (cfg.kappa) run.schedule.convention.kappa = *cfg.kappa;
    if (cfg.pair_order) run.schedule.pair_order = parse_pair_order(*cfg.pair_order);
    if (cfg.bell_tail) run.schedule.bell_tail = parse_bell_tail(*cfg.bell_tail);
    if (cfg.decouple) run.schedule.decoupled_pair = parse_decouple(*cfg.decouple);
    run.schedule.validate();

    run.sweep.two_tau_max_us = cfg.two_tau_max_us.value_or(150.0);
    run.sweep.step_us = cfg.step_us.value_or(0.1);
    if (cfg.shots) run.sweep.counts_mode = SampledCounts{*cfg.shots, cfg.seed.value_or(0)};
    run.sweep.context.backend = run.schedule.backend;
    run.sweep.context.kappa = run.schedule.convention.kappa;
    run.sweep.validate();

    const bool any_coupling = cfg.v_ac_khz || cfg.v_ab_khz || cfg.v_cb_khz;
    if (needs_couplings || any_coupling) {
        if (!(cfg.v_ac_khz && cfg.v_ab_khz && cfg.v_cb_khz)) {
            throw Error(ErrorKind::kInvalidInput, "--v-ac, --v-ab and --v-cb must be given together");
        }
        run.couplings = CouplingConfig{*cfg.v_ac_khz, *cfg.v_ab_khz, *cfg.v_cb_khz};
        run.couplings->validate();
    }
    if (cfg.v_khz && (!std::isfinite(*cfg.v_khz) || *cfg.v_khz <= 0.0)) {
        throw Error(ErrorKind::kInvalidConfig, "--v must be finite and > 0 kHz");
    }
    if (cfg.two_tau_us && (!std::isfinite(*cfg.two_tau_us) || *cfg.two_tau_us < 0.0)) {
        throw Error(ErrorKind::kInvalidInput, "--two-tau must be finite and >= 0 us");
    }
    run.out_dir = cfg.out_dir ? fs::path(*cfg.out_dir) : io::default_out_dir();
    if (fs::exists(run.out_dir) && !fs::is_directory(run.out_dir)) {
        throw Error(ErrorKind::kFile, run.out_dir.string() + " exists and is not a directory");
    }
    run.cfg = cfg;
    return run;
}

// Picks the three-qubit layout and records its id in the run config.
void resolve_layout(Run &run) {
    const std::string choice = run.cfg.trier_variant.value_or("auto");
    TrierLayout layout;
    if (choice == "auto") {
        layout = resolve_trier_layout(run.schedule.decoupled_pair).layout;
    } else if (!choice.empty() && choice.find_first_not_of("0123456789") == std::string::npos) {
        const auto space = trier_layout_space();
        const auto i = std::stoull(choice);
        if (i >= space.size()) {
            throw Error(ErrorKind::kInvalidInput,
                        "trier variant index " + choice + " out of range (" + std::to_string(space.size()) + ")");
        }
        layout = space[i];
    } else {
        layout = TrierLayout::parse(choice);
    }
    const double f = trier_anchor_fidelity(layout, run.schedule.decoupled_pair);
    if (f < 1.0 - kAnchorTolerance) {
        std::ostringstream msg;
        msg << "layout " << layout.id() << " misses the 2tau=0 anchor state (fidelity " << f << ")";
        throw Error(ErrorKind::kReconstructionFailure, msg.str());
    }
    run.layout = layout;
    run.cfg.trier_variant = layout.id();
    run.sweep.context.trier_variant = layout.id();
}

// Fills the run config with every effective default so the file regenerates.
void pin_defaults(Run &run) {
    auto &c = run.cfg;
    c.backend = std::string(to_string(run.schedule.backend));
    c.kappa = run.schedule.convention.kappa;
    c.pair_order = to_string(run.schedule.pair_order);
    c.bell_tail = std::string(to_string(run.schedule.bell_tail));
    c.decouple = run.schedule.decoupled_pair ? std::string(to_string(*run.schedule.decoupled_pair)) : "none";
    c.two_tau_max_us = run.sweep.two_tau_max_us;
    c.step_us = run.sweep.step_us;
    c.out_dir.reset();
}

void ensure_out_dir(const Run &run) {
    std::error_code ec;
    fs::create_directories(run.out_dir, ec);
    if (ec) throw Error(ErrorKind::kFile, "cannot create " + run.out_dir.string() + ": " + ec.message());
}

std::vector<io::PlotSeries> counts_series(int n_qubits) {
    std::vector<io::PlotSeries> out;
    for (std::uint64_t i = 0; i < (1ULL << n_qubits); ++i) out.push_back({basis_label(i, n_qubits), false});
    return out;
}

void print_report(const EntanglementReport &r) {
    std::printf("target %s: 2tau_ent = %s us (%s), fidelity %s, kappa %s, backend %s\n", r.target_state.c_str(),
                io::format_number(r.two_tau_ent_us).c_str(), r.method.c_str(),
                io::format_number(r.fidelity_max).c_str(), io::format_number(r.kappa).c_str(),
                std::string(to_string(r.backend)).c_str());
    if (r.crossing) {
        std::printf("argmax at %s us; |p_%s - p_%s| = %s at %s us\n", io::format_number(r.argmax_two_tau_us).c_str(),
                    r.crossing->state_x.c_str(), r.crossing->state_y.c_str(),
                    io::format_number(r.crossing->gap).c_str(), io::format_number(r.crossing->two_tau_us).c_str());
    }
}

EntanglementMethod parse_method(const std::string &crossing) {
    if (crossing.empty()) return Argmax{};
    const auto comma = crossing.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::kInvalidInput, "--crossing expects X,Y basis labels");
    return Crossing{crossing.substr(0, comma), crossing.substr(comma + 1)};
}

void check_crossing_labels(const EntanglementMethod &m, int n_qubits) {
    if (const auto *c = std::get_if<Crossing>(&m)) {
        for (const auto &l : {c->state_x, c->state_y}) {
            if (l.size() != static_cast<std::size_t>(n_qubits) || l.find_first_not_of("01") != std::string::npos) {
                throw Error(ErrorKind::kInvalidInput, "--crossing label '" + l + "' is not a basis label");
            }
        }
    }
}

int cmd_deer(Options &o) {
    Run run = resolve(o, false);
    pin_defaults(run);
    struct Job {
        std::string name;
        double v;
    };
    std::vector<Job> jobs;
    if (run.couplings) {
        for (const auto &cp : coupled_pairs(*run.couplings)) {
            std::string name = "deer_" + std::string(to_string(cp.pair));
            for (auto &ch : name) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
            jobs.push_back({name, cp.v_khz});
        }
    } else {
        run.cfg.v_khz = run.cfg.v_khz.value_or(kPaperBellV);
        jobs.push_back({"deer", *run.cfg.v_khz});
    }
    std::vector<std::pair<Job, SweepResult>> results;
    for (const auto &job : jobs) {
        SweepSpec spec = run.sweep;
        spec.context.experiment = "deer";
        // The grid variable is the total 2tau before the sensor pi pulse.
        results.emplace_back(job, run_sweep([&](double t) { return deer_circuit(job.v, t / 2.0, run.schedule); }, spec));
    }
    ensure_out_dir(run);
    for (const auto &[job, result] : results) {
        const auto csv = run.out_dir / (job.name + ".csv");
        io::write_sweep_csv(result, run.cfg, csv);
        io::write_svg_plot(result, counts_series(2), io::make_provenance(run.cfg), run.out_dir / (job.name + ".svg"));
        const auto p0 = result.counts_series("00");
        const auto p1 = result.counts_series("01");
        std::size_t first_min = 0;
        for (std::size_t k = 0; k < p0.size(); ++k) {
            if (p0[k] + p1[k] < p0[first_min] + p1[first_min] - 1e-12) first_min = k;
            else if (k > first_min + 1 && p0[k] + p1[k] > p0[first_min] + p1[first_min] + 1e-9) break;
        }
        std::printf("%s: v = %s kHz, first minimum of P(sensor=0) at 2tau = %s us -> %s\n", job.name.c_str(),
                    io::format_number(job.v).c_str(), io::format_number(result.rows[first_min].two_tau_us).c_str(),
                    csv.string().c_str());
    }
    return kExitOk;
}

int cmd_bell(Options &o) {
    Run run = resolve(o, false);
    const EntanglementMethod method = parse_method(o.crossing);
    check_crossing_labels(method, 2);
    if (!run.cfg.kappa) std::printf("kappa not given; using default %.10g rad/(kHz us)\n", kDefaultKappa);
    run.cfg.v_khz = run.cfg.v_khz.value_or(kPaperBellV);
    pin_defaults(run);
    const double v = *run.cfg.v_khz;
    SweepSpec spec = run.sweep;
    spec.targets = {bell_target()};
    spec.context.experiment = "bell";
    const auto result = run_sweep([&](double t) { return bell_circuit(v, t, run.schedule); }, spec);
    const auto report = find_entanglement_time(result, "bell", method);

    ensure_out_dir(run);
    const auto prov = io::make_provenance(run.cfg);
    io::write_sweep_csv(result, run.cfg, run.out_dir / "bell.csv");
    auto series = counts_series(2);
    series.push_back({"bell", true});
    io::write_svg_plot(result, series, prov, run.out_dir / "bell.svg", report.two_tau_ent_us);
    io::write_report({report}, prov, run.out_dir / "bell_report.json");
    print_report(report);
    return kExitOk;
}

int cmd_ghz(Options &o) {
    Run run = resolve(o, true);
    resolve_layout(run);
    const EntanglementMethod method = parse_method(o.crossing);
    check_crossing_labels(method, 3);
    std::optional<std::string> target;
    if (run.cfg.target) target = ghz_target(*run.cfg.target).label;
    pin_defaults(run);
    SweepSpec spec = run.sweep;
    spec.targets = ghz_family();
    spec.context.experiment = "ghz";
    spec.context.config = run.couplings;
    const auto result =
        run_sweep([&](double t) { return trier_circuit(*run.couplings, t, run.schedule, *run.layout); }, spec);
    const std::string chosen = target ? *target : best_target(result);
    run.cfg.target = chosen;
    const auto report = find_entanglement_time(result, chosen, method);

    ensure_out_dir(run);
    const auto prov = io::make_provenance(run.cfg);
    io::write_sweep_csv(result, run.cfg, run.out_dir / "ghz.csv");
    const std::string a = chosen.substr(0, 3), b = chosen.substr(4, 3);
    io::write_svg_plot(result, {{a, false}, {b, false}, {chosen, true}}, prov, run.out_dir / "ghz.svg",
                       report.two_tau_ent_us);
    io::write_report({report}, prov, run.out_dir / "ghz_report.json");
    std::printf("layout %s\n", run.layout->id().c_str());
    print_report(report);
    return kExitOk;
}

CalibrationResult run_calibration(const Run &run) {
    CalibrationSpec spec;
    spec.step_us = run.sweep.step_us;
    spec.schedule = run.schedule;
    if (run.cfg.v_khz) spec.v_khz = *run.cfg.v_khz;
    return calibrate_kappa(spec);
}

void print_calibration(const CalibrationResult &c) {
    std::printf("calibrated kappa = %.6g rad/(kHz us) [%.6g, %.6g]: 2tau_ent = %s us, fidelity %s, residual %s us%s\n",
                c.kappa, c.kappa_low, c.kappa_high, io::format_number(c.two_tau_ent_us).c_str(),
                io::format_number(c.fidelity_max).c_str(), io::format_number(c.residual_us).c_str(),
                c.approximate ? " (approximate)" : "");
    std::printf("default kappa %.6g: 2tau_ent = %s us, fidelity %s\n", kDefaultKappa,
                io::format_number(c.default_two_tau_ent_us).c_str(), io::format_number(c.default_fidelity_max).c_str());
}

int cmd_calibrate(Options &o) {
    Run run = resolve(o, false);
    const auto c = run_calibration(run);
    pin_defaults(run);
    run.cfg.kappa = c.kappa;
    run.cfg.v_khz = run.cfg.v_khz.value_or(kPaperBellV);
    nlohmann::json doc = {{"kappa", c.kappa},
                          {"kappa_low", c.kappa_low},
                          {"kappa_high", c.kappa_high},
                          {"two_tau_ent_us", c.two_tau_ent_us},
                          {"fidelity_max", c.fidelity_max},
                          {"residual_us", c.residual_us},
                          {"approximate", c.approximate},
                          {"default_kappa", kDefaultKappa},
                          {"default_two_tau_ent_us", c.default_two_tau_ent_us},
                          {"default_fidelity_max", c.default_fidelity_max},
                          {"run_config", run.cfg.to_text()}};
    ensure_out_dir(run);
    io::write_text(run.out_dir / "calibration.json", doc.dump(2) + "\n");
    print_calibration(c);
    return kExitOk;
}

Table1Result run_table1(Run &run) {
    if (!run.cfg.kappa) {
        const auto c = run_calibration(run);
        print_calibration(c);
        run.schedule.convention.kappa = c.kappa;
        run.sweep.context.kappa = c.kappa;
    }
    resolve_layout(run);
    Table1Spec spec;
    spec.two_tau_max_us = run.sweep.two_tau_max_us;
    spec.step_us = run.sweep.step_us;
    spec.schedule = run.schedule;
    spec.layout = *run.layout;
    return reproduce_table1(spec);
}

int cmd_table1(Options &o) {
    Run run = resolve(o, false);
    const auto table = run_table1(run);
    pin_defaults(run);
    ensure_out_dir(run);
    const auto prov = io::make_provenance(run.cfg);
    io::write_text(run.out_dir / "table1.csv", io::table1_csv(table));
    io::write_text(io::sidecar_path(run.out_dir / "table1.csv"), "# nvent table1\n" + run.cfg.to_text());
    io::write_text(run.out_dir / "table1_report.json", io::table1_json(table, prov));
    std::printf("%-18s %-22s %-8s %9s %8s %9s %8s  %s\n", "family", "v_ac,v_ab,v_cb", "target", "2tau_ent", "F",
                "published", "F_pub", "ok");
    for (const auto &r : table.rows) {
        const auto &c = r.paper.config;
        const std::string v = io::format_number(c.v_ac_khz) + "," + io::format_number(c.v_ab_khz) + "," +
                              io::format_number(c.v_cb_khz);
        std::printf("%-18s %-22s %-8s %9s %8.3f %9s %8.3f  %s%s\n", r.paper.family.c_str(), v.c_str(),
                    r.report.target_state.c_str(), io::format_number(r.report.two_tau_ent_us).c_str(),
                    r.report.fidelity_max, io::format_number(r.paper.two_tau_ent_us).c_str(), r.paper.fidelity,
                    r.time_ok && r.fidelity_ok ? "yes" : "no", r.best_ok && !(r.time_ok && r.fidelity_ok) ? " (other layout ok)" : "");
    }
    std::printf("rows matching the published table: %zu/%zu\n",
                static_cast<std::size_t>(std::count_if(table.rows.begin(), table.rows.end(),
                                                       [](const Table1Row &r) { return r.time_ok && r.fidelity_ok; })),
                table.rows.size());
    return kExitOk;
}

int cmd_rtrend(Options &o) {
    Run run = resolve(o, false);
    TrendResult trend;
    if (o.from_sim) {
        const auto table = run_table1(run);
        std::vector<EntanglementReport> reports;
        for (const auto &r : table.rows) reports.push_back(r.report);
        trend = r_trend(std::span<const EntanglementReport>(reports));
    } else {
        const auto samples = paper_trend_samples();
        trend = r_trend(std::span<const TrendSample>(samples));
    }
    pin_defaults(run);
    ensure_out_dir(run);
    io::write_text(run.out_dir / "rtrend.csv", io::trend_csv(trend));
    io::write_text(io::sidecar_path(run.out_dir / "rtrend.csv"),
                   std::string("# nvent rtrend source=") + (o.from_sim ? "simulation" : "published") + "\n" +
                       run.cfg.to_text());
    for (const auto &p : trend.points) {
        std::printf("R = %8.4f kHz  2tau_ent = %8s us  F = %.3f\n", p.r_khz, io::format_number(p.two_tau_ent_us).c_str(),
                    p.fidelity);
    }
    std::printf("excluded (fidelity < 0.9): %zu; spearman rho = %.5f\n", trend.excluded, trend.spearman);
    return kExitOk;
}

int cmd_density(Options &o) {
    Run run = resolve(o, false);
    if (!run.cfg.two_tau_us) throw Error(ErrorKind::kInvalidInput, "density needs --two-tau");
    const double t = *run.cfg.two_tau_us;
    std::string experiment = o.experiment.empty() ? (run.couplings ? "ghz" : "bell") : o.experiment;
    Circuit circuit(1);
    if (experiment == "ghz") {
        if (!run.couplings) throw Error(ErrorKind::kInvalidInput, "density --experiment ghz needs the three couplings");
        resolve_layout(run);
        circuit = trier_circuit(*run.couplings, t, run.schedule, *run.layout);
    } else if (experiment == "bell") {
        run.cfg.v_khz = run.cfg.v_khz.value_or(kPaperBellV);
        circuit = bell_circuit(*run.cfg.v_khz, t, run.schedule);
    } else if (experiment == "deer") {
        run.cfg.v_khz = run.cfg.v_khz.value_or(kPaperBellV);
        circuit = deer_circuit(*run.cfg.v_khz, t / 2.0, run.schedule);
    } else {
        throw Error(ErrorKind::kInvalidInput, "--experiment must be bell, deer or ghz");
    }
    pin_defaults(run);
    const auto rho = density_matrix(run_circuit(circuit));
    ensure_out_dir(run);
    const auto path = run.out_dir / ("density_" + experiment + ".csv");
    io::write_density_csv(rho, run.cfg, path);
    std::printf("%s: %zux%zu real part of rho at 2tau = %s us -> %s\n", experiment.c_str(), rho.dim(), rho.dim(),
                io::format_number(t).c_str(), path.string().c_str());
    return kExitOk;
}

Circuit random_circuit(std::mt19937_64 &rng, int n) {
    Circuit c(n);
    std::uniform_int_distribution<int> len(0, 40), kind(0, n > 1 ? 4 : 2), wire(0, n - 1);
    std::uniform_real_distribution<double> angle(-4.0 * std::numbers::pi, 4.0 * std::numbers::pi);
    const int gates = len(rng);
    for (int g = 0; g < gates; ++g) {
        const int k = kind(rng), t = wire(rng);
        int ctl = wire(rng);
        while (n > 1 && ctl == t) ctl = wire(rng);
        switch (k) {
            case 0: c.append(Gate::hadamard(t)); break;
            case 1: c.append(Gate::pauli_x(t)); break;
            case 2: c.append(Gate::rot_z(t, angle(rng))); break;
            case 3: c.append(Gate::cnot(ctl, t)); break;
            default: c.append(Gate::cphase(ctl, t, angle(rng))); break;
        }
    }
    return c;
}

int cmd_verify(Options &o) {
    Run run = resolve(o, false);
    std::mt19937_64 rng(run.cfg.seed.value_or(0));
    std::uniform_int_distribution<int> qubits(1, 3);
    double worst_random = 0.0;
    for (std::uint64_t i = 0; i < o.random_circuits; ++i) {
        const auto c = random_circuit(rng, qubits(rng));
        worst_random = std::max(worst_random, oracle::verify_state(c, StateVector(c.n_qubits())));
    }
    double worst_builders = 0.0;
    std::size_t builder_checks = 0;
    const auto layout = resolve_trier_layout(run.schedule.decoupled_pair).layout;
    for (double t : {0.0, 0.7, 6.3, 21.2, 125.7}) {
        for (const auto &entry : enumerate_configurations()) {
            worst_builders = std::max(worst_builders, oracle::verify_state(trier_circuit(entry.config, t, run.schedule, layout),
                                                                           StateVector(3)));
            ++builder_checks;
        }
        worst_builders = std::max(worst_builders, oracle::verify_state(bell_circuit(4.93, t, run.schedule), StateVector(2)));
        worst_builders = std::max(worst_builders, oracle::verify_state(deer_circuit(4.93, t / 2, run.schedule), StateVector(2)));
        builder_checks += 2;
    }
    const double anchor = fidelity(trier_anchor_state(),
                                   oracle::oracle_state(trier_circuit({1, 1, 1}, 0.0, PulseSchedule{}, layout), StateVector(3)));
    std::printf("random circuits: %llu, max deviation %.3g\n", static_cast<unsigned long long>(o.random_circuits),
                worst_random);
    std::printf("builder circuits: %zu, max deviation %.3g\n", builder_checks, worst_builders);
    std::printf("oracle anchor fidelity (layout %s): %.15f\n", layout.id().c_str(), anchor);
    const bool ok = worst_random < 1e-12 && worst_builders < 1e-12 && anchor >= 1.0 - kAnchorTolerance;
    std::printf("%s\n", ok ? "oracle agreement: ok" : "oracle agreement: FAILED");
    return ok ? kExitOk : kExitFailure;
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::kInvalidGate:
        case ErrorKind::kInvalidInput:
        case ErrorKind::kInvalidConfig:
        case ErrorKind::kSizeCap:
            return kExitUsage;
        case ErrorKind::kReconstructionFailure:
            return kExitReconstruction;
        default:
            return kExitFailure;
    }
}

void emit_error(std::string_view kind, const std::string &message) {
    nlohmann::json rec = {{"error", {{"kind", kind}, {"message", message}}}};
    std::cerr << rec.dump() << "\n";
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"nvent: entanglement of dipolar-coupled NV-center qubits, simulated at gate level"};
    app.set_version_flag("--version", NVENT_VERSION);
    app.require_subcommand(1);
    Options o;

    auto *deer = app.add_subcommand("deer", "DEER curves for one coupling (--v) or all three pairs (--v-ac/ab/cb)");
    deer->add_option_function<double>("--v", [&](const double &v) { o.flags.v_khz = v; }, "Coupling in kHz");
    add_coupling_flags(deer, o);
    add_sweep_flags(deer, o);
    add_schedule_flags(deer, o);
    add_common_flags(deer, o);

    auto *bell = app.add_subcommand("bell", "Two-qubit entangler sweep");
    bell->add_option_function<double>("--v", [&](const double &v) { o.flags.v_khz = v; }, "Coupling in kHz");
    bell->add_option_function<std::string>("--bell-tail", [&](const std::string &v) { o.flags.bell_tail = v; },
                                           "retained | dropped");
    bell->add_option("--crossing", o.crossing, "Also locate the equal-counts point of X,Y");
    add_sweep_flags(bell, o);
    add_schedule_flags(bell, o);
    add_common_flags(bell, o);

    auto *ghz = app.add_subcommand("ghz", "Three-qubit sweep for one coupling configuration");
    add_coupling_flags(ghz, o);
    add_trier_flags(ghz, o);
    ghz->add_option_function<std::string>("--target", [&](const std::string &v) { o.flags.target = v; },
                                          "Target such as 000+111 (default: best of the family)");
    ghz->add_option("--crossing", o.crossing, "Also locate the equal-counts point of X,Y");
    add_sweep_flags(ghz, o);
    add_schedule_flags(ghz, o);
    add_common_flags(ghz, o);

    auto *table1 = app.add_subcommand("table1", "Twelve published arrangements with comparison columns");
    add_trier_flags(table1, o);
    add_sweep_flags(table1, o);
    add_schedule_flags(table1, o);
    add_common_flags(table1, o);

    auto *rtrend = app.add_subcommand("rtrend", "2tau_ent against the coupling constant R");
    rtrend->add_flag("--from-sim", o.from_sim, "Use simulated rows instead of the published ones");
    add_trier_flags(rtrend, o);
    add_sweep_flags(rtrend, o);
    add_schedule_flags(rtrend, o);
    add_common_flags(rtrend, o);

    auto *calibrate = app.add_subcommand("calibrate", "Fit kappa to the two-qubit entanglement time");
    calibrate->add_option_function<double>("--v", [&](const double &v) { o.flags.v_khz = v; }, "Coupling in kHz");
    calibrate->add_option_function<std::string>("--bell-tail", [&](const std::string &v) { o.flags.bell_tail = v; },
                                                "retained | dropped");
    calibrate->add_option_function<double>("--step", [&](const double &v) { o.flags.step_us = v; }, "Grid step in us");
    add_schedule_flags(calibrate, o);
    add_common_flags(calibrate, o);

    auto *density = app.add_subcommand("density", "Real part of the density matrix at one 2tau");
    density->add_option_function<double>("--two-tau", [&](const double &v) { o.flags.two_tau_us = v; },
                                         "Free evolution time in us")->required();
    density->add_option("--experiment", o.experiment, "bell | deer | ghz");
    density->add_option_function<double>("--v", [&](const double &v) { o.flags.v_khz = v; }, "Coupling in kHz");
    add_coupling_flags(density, o);
    add_trier_flags(density, o);
    add_schedule_flags(density, o);
    add_common_flags(density, o);

    auto *verify = app.add_subcommand("verify", "Cross-check the engine against the dense-matrix oracle");
    verify->add_option("--random", o.random_circuits, "Number of random circuits");
    verify->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t &v) { o.flags.seed = v; }, "Seed");
    add_trier_flags(verify, o);
    add_schedule_flags(verify, o);
    add_common_flags(verify, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        emit_error("usage", e.what());
        return kExitUsage;
    }

    try {
        if (deer->parsed()) return cmd_deer(o);
        if (bell->parsed()) return cmd_bell(o);
        if (ghz->parsed()) return cmd_ghz(o);
        if (table1->parsed()) return cmd_table1(o);
        if (rtrend->parsed()) return cmd_rtrend(o);
        if (calibrate->parsed()) return cmd_calibrate(o);
        if (density->parsed()) return cmd_density(o);
        if (verify->parsed()) return cmd_verify(o);
    } catch (const Error &e) {
        emit_error(to_string(e.kind()), e.what());
        return exit_code(e.kind());
    } catch (const std::exception &e) {
        emit_error("internal", e.what());
        return kExitFailure;
    }
    return kExitUsage;
}
