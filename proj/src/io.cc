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

#include "nvent/io.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nvent/error.h"

#ifndef NVENT_VERSION
#define NVENT_VERSION "0.0.0"
#endif

namespace nvent::io {

using nlohmann::json;

namespace {

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string &key, const std::string &value, int line) {
    double out = 0.0;
    const auto *end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end || !std::isfinite(out)) {
        throw Error(ErrorKind::kInvalidConfig,
                    "line " + std::to_string(line) + ": " + key + " expects a number, got '" + value + "'");
    }
    return out;
}

std::uint64_t parse_uint(const std::string &key, const std::string &value, int line) {
    std::uint64_t out = 0;
    const auto *end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end) {
        throw Error(ErrorKind::kInvalidConfig,
                    "line " + std::to_string(line) + ": " + key + " expects a non-negative integer, got '" + value + "'");
    }
    return out;
}

// Shortest text that reads back to the same double.
std::string exact_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

template <typename F>
void for_each_field(RunConfig &c, F &&f) {
    f("v_ac_khz", c.v_ac_khz);
    f("v_ab_khz", c.v_ab_khz);
    f("v_cb_khz", c.v_cb_khz);
    f("v_khz", c.v_khz);
    f("two_tau_max_us", c.two_tau_max_us);
    f("step_us", c.step_us);
    f("two_tau_us", c.two_tau_us);
    f("shots", c.shots);
    f("seed", c.seed);
    f("backend", c.backend);
    f("kappa", c.kappa);
    f("decouple", c.decouple);
    f("trier_variant", c.trier_variant);
    f("pair_order", c.pair_order);
    f("bell_tail", c.bell_tail);
    f("target", c.target);
    f("out_dir", c.out_dir);
}

std::string field_text(const std::optional<double> &v) {
    return exact_number(*v);
}
std::string field_text(const std::optional<std::uint64_t> &v) {
    return std::to_string(*v);
}
std::string field_text(const std::optional<std::string> &v) {
    return *v;
}

std::string xml_escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&':
                out += "&amp;";
                break;
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '"':
                out += "&quot;";
                break;
            default:
                out.push_back(c);
        }
    }
    return out;
}

}  // namespace

void RunConfig::merge(const RunConfig &other) {
    RunConfig copy = other;
    for_each_field(*this, [&](const char *key, auto &mine) {
        for_each_field(copy, [&](const char *other_key, auto &theirs) {
            if constexpr (std::is_same_v<std::decay_t<decltype(mine)>, std::decay_t<decltype(theirs)>>) {
                if (std::string_view(key) == other_key && theirs) mine = theirs;
            }
        });
    });
}

std::string RunConfig::to_text() const {
    std::ostringstream out;
    RunConfig copy = *this;
    for_each_field(copy, [&](const char *key, auto &value) {
        if (value) out << key << "=" << field_text(value) << "\n";
    });
    return out.str();
}

RunConfig parse_run_config(const std::string &text) {
    RunConfig config;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::kInvalidConfig, "line " + std::to_string(line) + ": expected key=value");
        }
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (!seen.insert(key).second) {
            throw Error(ErrorKind::kInvalidConfig, "line " + std::to_string(line) + ": repeated key " + key);
        }
        bool known = false;
        for_each_field(config, [&](const char *name, auto &field) {
            if (key != name) return;
            known = true;
            using T = typename std::decay_t<decltype(field)>::value_type;
            if constexpr (std::is_same_v<T, double>) {
                field = parse_double(key, value, line);
            } else if constexpr (std::is_same_v<T, std::uint64_t>) {
                field = parse_uint(key, value, line);
            } else {
                if (value.empty()) {
                    throw Error(ErrorKind::kInvalidConfig, "line " + std::to_string(line) + ": empty value for " + key);
                }
                field = value;
            }
        });
        if (!known) throw Error(ErrorKind::kInvalidConfig, "line " + std::to_string(line) + ": unknown key " + key);
    }
    return config;
}

RunConfig load_run_config(const std::filesystem::path &path) {
    return parse_run_config(read_text(path));
}

std::filesystem::path default_out_dir() {
    const char *env = std::getenv("NVENT_OUT_DIR");
    if (env && *env) return env;
    return ".";
}

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

std::filesystem::path sidecar_path(const std::filesystem::path &path) {
    auto p = path;
    p += ".run.cfg";
    return p;
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kFile, "cannot open " + path.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) throw Error(ErrorKind::kFile, "failed writing " + path.string());
}

std::string read_text(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::kFile, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

namespace {

std::string sidecar_text(const RunConfig &config, const std::filesystem::path &path) {
    return "# nvent " NVENT_VERSION " run configuration for " + path.filename().string() + "\n" + config.to_text();
}

}  // namespace

std::string sweep_csv(const SweepResult &result) {
    std::ostringstream out;
    out << "two_tau_us";
    std::vector<std::string> labels;
    if (!result.rows.empty()) {
        for (const auto &[label, p] : result.rows.front().counts.entries) labels.push_back(label);
    }
    for (const auto &l : labels) out << ",p_" << l;
    for (const auto &t : result.target_labels) out << ",fidelity_" << t;
    out << "\n";
    for (const auto &row : result.rows) {
        out << format_number(row.two_tau_us);
        for (const auto &l : labels) out << "," << format_number(row.counts.at(l));
        for (double f : row.fidelities) out << "," << format_number(f);
        out << "\n";
    }
    return out.str();
}

void write_sweep_csv(const SweepResult &result, const RunConfig &config, const std::filesystem::path &path) {
    const std::string body = sweep_csv(result);
    write_text(path, body);
    write_text(sidecar_path(path), sidecar_text(config, path));
}

std::string density_csv(const DensityMatrix &rho) {
    std::ostringstream out;
    for (std::size_t r = 0; r < rho.dim(); ++r) {
        for (std::size_t c = 0; c < rho.dim(); ++c) {
            if (c) out << ",";
            out << format_number(rho(r, c).real());
        }
        out << "\n";
    }
    return out.str();
}

void write_density_csv(const DensityMatrix &rho, const RunConfig &config, const std::filesystem::path &path) {
    const std::string body = density_csv(rho);
    write_text(path, body);
    write_text(sidecar_path(path), sidecar_text(config, path));
}

Provenance make_provenance(const RunConfig &config) {
    return {config, NVENT_VERSION, config.step_us, config.two_tau_max_us};
}

namespace {

json provenance_json(const Provenance &p) {
    json cfg = json::object();
    RunConfig copy = p.config;
    for_each_field(copy, [&](const char *key, auto &value) {
        if (value) cfg[key] = *value;
    });
    json out = {{"tool", "nvent"}, {"tool_version", p.tool_version}, {"run_config", cfg}};
    out["grid"] = {{"step_us", p.step_us ? json(*p.step_us) : json(nullptr)},
                   {"two_tau_max_us", p.two_tau_max_us ? json(*p.two_tau_max_us) : json(nullptr)}};
    return out;
}

json report_to_json(const EntanglementReport &r) {
    json j;
    if (r.config) {
        j["config"] = {{"v_ac_khz", r.config->v_ac_khz}, {"v_ab_khz", r.config->v_ab_khz}, {"v_cb_khz", r.config->v_cb_khz}};
    } else {
        j["config"] = nullptr;
    }
    j["two_tau_ent_us"] = r.two_tau_ent_us;
    j["fidelity_max"] = r.fidelity_max;
    j["target_state"] = r.target_state;
    j["method"] = r.method;
    j["backend"] = std::string(to_string(r.backend));
    j["kappa"] = r.kappa;
    j["trier_variant"] = r.trier_variant;
    j["argmax_two_tau_us"] = r.argmax_two_tau_us;
    if (r.crossing) {
        j["crossing"] = {{"state_x", r.crossing->state_x}, {"state_y", r.crossing->state_y},
                         {"two_tau_us", r.crossing->two_tau_us}, {"gap", r.crossing->gap}};
    } else {
        j["crossing"] = nullptr;
    }
    return j;
}

EntanglementReport report_from_json(const json &j) {
    EntanglementReport r;
    if (!j.at("config").is_null()) {
        const auto &c = j.at("config");
        r.config = CouplingConfig{c.at("v_ac_khz").get<double>(), c.at("v_ab_khz").get<double>(),
                                  c.at("v_cb_khz").get<double>()};
    }
    r.two_tau_ent_us = j.at("two_tau_ent_us").get<double>();
    r.fidelity_max = j.at("fidelity_max").get<double>();
    r.target_state = j.at("target_state").get<std::string>();
    r.method = j.at("method").get<std::string>();
    r.backend = parse_backend(j.at("backend").get<std::string>());
    r.kappa = j.at("kappa").get<double>();
    r.trier_variant = j.at("trier_variant").get<std::string>();
    r.argmax_two_tau_us = j.at("argmax_two_tau_us").get<double>();
    if (!j.at("crossing").is_null()) {
        const auto &c = j.at("crossing");
        r.crossing = CrossingDetail{c.at("state_x").get<std::string>(), c.at("state_y").get<std::string>(),
                                    c.at("two_tau_us").get<double>(), c.at("gap").get<double>()};
    }
    return r;
}

}  // namespace

std::string report_json(const std::vector<EntanglementReport> &reports, const Provenance &provenance) {
    json doc;
    doc["provenance"] = provenance_json(provenance);
    doc["reports"] = json::array();
    for (const auto &r : reports) doc["reports"].push_back(report_to_json(r));
    return doc.dump(2) + "\n";
}

void write_report(const std::vector<EntanglementReport> &reports, const Provenance &provenance,
                  const std::filesystem::path &path) {
    write_text(path, report_json(reports, provenance));
}

std::vector<EntanglementReport> parse_report(const std::string &json_text) {
    try {
        const json doc = json::parse(json_text);
        std::vector<EntanglementReport> out;
        for (const auto &j : doc.at("reports")) out.push_back(report_from_json(j));
        return out;
    } catch (const json::exception &e) {
        throw Error(ErrorKind::kInvalidInput, std::string("malformed report: ") + e.what());
    }
}

std::string table1_json(const Table1Result &table, const Provenance &provenance) {
    json doc;
    doc["provenance"] = provenance_json(provenance);
    doc["reports"] = json::array();
    doc["comparison"] = json::array();
    for (const auto &row : table.rows) {
        doc["reports"].push_back(report_to_json(row.report));
        doc["comparison"].push_back({
            {"family", row.paper.family},
            {"published_two_tau_ent_us", row.paper.two_tau_ent_us},
            {"published_fidelity", row.paper.fidelity},
            {"published_target", row.paper.target ? json(*row.paper.target) : json(nullptr)},
            {"delta_two_tau_us", row.delta_two_tau_us},
            {"delta_fidelity", row.delta_fidelity},
            {"time_tolerance_us", row.time_tolerance_us},
            {"time_ok", row.time_ok},
            {"fidelity_ok", row.fidelity_ok},
            {"n_diagnostic", row.n_diagnostic},
            {"best_variant", row.best_variant},
            {"best_delta_two_tau_us", row.best_delta_two_tau_us},
            {"best_delta_fidelity", row.best_delta_fidelity},
            {"best_ok", row.best_ok},
        });
    }
    doc["all_ok"] = table.all_ok;
    doc["unreachable_under_every_variant"] = table.unreachable;
    return doc.dump(2) + "\n";
}

std::string table1_csv(const Table1Result &table) {
    std::ostringstream out;
    out << "family,v_ac_khz,v_ab_khz,v_cb_khz,target,two_tau_ent_us,fidelity,published_two_tau_ent_us,"
           "published_fidelity,delta_two_tau_us,delta_fidelity,time_ok,fidelity_ok,n,best_variant,"
           "best_delta_two_tau_us,best_delta_fidelity,best_ok\n";
    for (const auto &r : table.rows) {
        const auto &c = r.paper.config;
        out << r.paper.family << "," << format_number(c.v_ac_khz) << "," << format_number(c.v_ab_khz) << ","
            << format_number(c.v_cb_khz) << "," << r.report.target_state << "," << format_number(r.report.two_tau_ent_us)
            << "," << format_number(r.report.fidelity_max) << "," << format_number(r.paper.two_tau_ent_us) << ","
            << format_number(r.paper.fidelity) << "," << format_number(r.delta_two_tau_us) << ","
            << format_number(r.delta_fidelity) << "," << r.time_ok << "," << r.fidelity_ok << "," << r.n_diagnostic
            << ",\"" << r.best_variant << "\"," << format_number(r.best_delta_two_tau_us) << ","
            << format_number(r.best_delta_fidelity) << "," << r.best_ok << "\n";
    }
    return out.str();
}

std::string trend_csv(const TrendResult &trend) {
    std::ostringstream out;
    out << "r_khz,two_tau_ent_us,fidelity\n";
    for (const auto &p : trend.points) {
        out << format_number(p.r_khz) << "," << format_number(p.two_tau_ent_us) << "," << format_number(p.fidelity)
            << "\n";
    }
    return out.str();
}

std::string svg_plot(const SweepResult &result, const std::vector<PlotSeries> &series, const Provenance &provenance,
                     std::optional<double> marker_us) {
    if (result.rows.empty()) throw Error(ErrorKind::kInvalidInput, "cannot plot an empty sweep");
    if (series.empty()) throw Error(ErrorKind::kInvalidInput, "no series requested");

    constexpr double kW = 800, kH = 500, kLeft = 70, kRight = 160, kTop = 20, kBottom = 60;
    const double x_max = result.rows.back().two_tau_us;
    const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
    auto px = [&](double x) { return kLeft + pw * x / x_max; };
    auto py = [&](double y) { return kTop + ph * (1.0 - y); };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", v);
        return std::string(buf);
    };
    static const char *kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\" viewBox=\"0 0 "
        << kW << " " << kH << "\">\n";
    out << "<metadata>" << xml_escape(provenance_json(provenance).dump()) << "</metadata>\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
    out << "<g id=\"axes\" stroke=\"black\" fill=\"none\">\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << py(0) << "\" x2=\"" << kLeft + pw << "\" y2=\"" << py(0) << "\"/>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << py(0) << "\" x2=\"" << kLeft << "\" y2=\"" << py(1) << "\"/>\n"
        << "</g>\n";
    out << "<g id=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double x = x_max * i / 5.0;
        out << "<text x=\"" << num(px(x)) << "\" y=\"" << num(py(0) + 16) << "\" text-anchor=\"middle\">"
            << format_number(x) << "</text>\n";
    }
    for (int i = 0; i <= 4; ++i) {
        const double y = i / 4.0;
        out << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(py(y) + 4) << "\" text-anchor=\"end\">"
            << format_number(y) << "</text>\n";
    }
    out << "</g>\n";
    out << "<text id=\"xlabel\" x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kH - 15)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">2&#964; (&#956;s)</text>\n";
    out << "<text id=\"ylabel\" x=\"18\" y=\"" << num(kTop + ph / 2) << "\" transform=\"rotate(-90 18 "
        << num(kTop + ph / 2)
        << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">normalized counts / fidelity</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto &spec = series[s];
        const auto ys = spec.fidelity ? result.fidelity_series(spec.label) : result.counts_series(spec.label);
        const std::string name = spec.fidelity ? "fidelity " + spec.label : "|" + spec.label + "&gt;";
        const char *color = kColors[s % 8];
        out << "<polyline class=\"series\" data-label=\"" << xml_escape(spec.fidelity ? "fidelity_" + spec.label
                                                                                       : "p_" + spec.label)
            << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < ys.size(); ++k) {
            if (k) out << " ";
            out << num(px(result.rows[k].two_tau_us)) << "," << num(py(ys[k]));
        }
        out << "\"/>\n";
        const double ly = kTop + 14 + 18 * static_cast<double>(s);
        out << "<line x1=\"" << num(kLeft + pw + 12) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(kLeft + pw + 32)
            << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << num(kLeft + pw + 36) << "\" y=\"" << num(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << name << "</text>\n";
    }
    if (marker_us) {
        out << "<line id=\"marker\" data-two-tau-us=\"" << exact_number(*marker_us) << "\" x1=\"" << num(px(*marker_us))
            << "\" y1=\"" << num(py(0)) << "\" x2=\"" << num(px(*marker_us)) << "\" y2=\"" << num(py(1))
            << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void write_svg_plot(const SweepResult &result, const std::vector<PlotSeries> &series, const Provenance &provenance,
                    const std::filesystem::path &path, std::optional<double> marker_us) {
    write_text(path, svg_plot(result, series, provenance, marker_us));
}

}  // namespace nvent::io
