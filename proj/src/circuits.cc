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

#include "nvent/circuits.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "nvent/error.h"

namespace nvent {

std::string_view to_string(EvolutionBackend backend) {
    return backend == EvolutionBackend::kPaperLiteral ? "literal" : "physical";
}

EvolutionBackend parse_backend(std::string_view text) {
    if (text == "literal") return EvolutionBackend::kPaperLiteral;
    if (text == "physical") return EvolutionBackend::kPhysicalDiagonal;
    throw Error(ErrorKind::kInvalidInput, "unknown backend '" + std::string(text) + "' (expected literal or physical)");
}

void PhaseConvention::validate() const {
    if (!std::isfinite(kappa) || kappa <= 0.0) {
        throw Error(ErrorKind::kInvalidInput, "kappa must be finite and > 0, got " + std::to_string(kappa));
    }
}

std::string_view to_string(HadamardPlacement placement) {
    return placement == HadamardPlacement::kPerBlock ? "block" : "once";
}

std::string_view to_string(BellTail tail) {
    return tail == BellTail::kDropped ? "dropped" : "retained";
}

BellTail parse_bell_tail(std::string_view text) {
    if (text == "dropped") return BellTail::kDropped;
    if (text == "retained") return BellTail::kRetained;
    throw Error(ErrorKind::kInvalidInput, "unknown bell tail '" + std::string(text) + "' (expected dropped or retained)");
}

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

bool is_permutation_of_pairs(const PairOrder &order) {
    for (Pair p : kAllPairs) {
        if (std::count(order.begin(), order.end(), p) != 1) return false;
    }
    return true;
}

void check_duration(double duration_us, const char *what) {
    if (!std::isfinite(duration_us) || duration_us < 0.0) {
        throw Error(ErrorKind::kInvalidInput, std::string(what) + " must be finite and >= 0 us, got " +
                                                  std::to_string(duration_us));
    }
}

}  // namespace

PairOrder parse_pair_order(std::string_view text) {
    const auto parts = split(text, ',');
    if (parts.size() != 3) throw Error(ErrorKind::kInvalidInput, "pair order needs three pairs: " + std::string(text));
    PairOrder order{};
    for (std::size_t i = 0; i < 3; ++i) order[i] = parse_pair(parts[i]);
    if (!is_permutation_of_pairs(order)) {
        throw Error(ErrorKind::kInvalidInput, "pair order must name AC, AB and CB once each: " + std::string(text));
    }
    return order;
}

std::string to_string(const PairOrder &order) {
    std::string out;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i) out += ",";
        out += to_string(order[i]);
    }
    return out;
}

void PulseSchedule::validate() const {
    convention.validate();
    if (!is_permutation_of_pairs(pair_order)) {
        throw Error(ErrorKind::kInvalidInput, "pair order must be a permutation of AC, AB, CB");
    }
}

std::vector<CoupledPair> coupled_pairs(const CouplingConfig &config) {
    config.validate();
    return {
        {Pair::kAC, kQubitA, kQubitC, config.v_ac_khz},
        {Pair::kAB, kQubitA, kQubitB, config.v_ab_khz},
        {Pair::kCB, kQubitC, kQubitB, config.v_cb_khz},
    };
}

std::vector<Gate> uc_block(int first, int second, double v_khz, double two_tau_us, const PulseSchedule &schedule) {
    check_duration(two_tau_us, "two_tau");
    if (first == second) throw Error(ErrorKind::kInvalidInput, "uc_block needs two distinct qubits");
    const double theta = schedule.convention.angle(v_khz, two_tau_us);
    if (schedule.backend == EvolutionBackend::kPhysicalDiagonal) {
        return {Gate::cphase(first, second, theta)};
    }
    std::vector<Gate> gates;
    if (schedule.hadamards == HadamardPlacement::kPerBlock) {
        gates.push_back(Gate::hadamard(first));
        gates.push_back(Gate::hadamard(second));
    }
    gates.push_back(Gate::rot_z(first, theta));
    gates.push_back(Gate::cnot(first, second));
    return gates;
}

std::vector<Gate> free_evolution(const PulseSchedule &schedule, std::span<const CoupledPair> pairs, double duration_us,
                                 SegmentKind kind) {
    check_duration(duration_us, "free evolution duration");
    std::vector<Gate> gates;
    for (Pair p : schedule.pair_order) {
        if (kind == SegmentKind::kDecoupled && schedule.decoupled_pair == p) continue;
        for (const auto &cp : pairs) {
            if (cp.pair != p) continue;
            auto block = uc_block(cp.first, cp.second, cp.v_khz, duration_us, schedule);
            gates.insert(gates.end(), block.begin(), block.end());
        }
    }
    return gates;
}

namespace {

constexpr int kSensor = 0;
constexpr int kEmitter = 1;

void check_coupling(double v_khz) {
    if (!std::isfinite(v_khz) || v_khz <= 0.0) {
        throw Error(ErrorKind::kInvalidConfig, "coupling must be finite and > 0 kHz, got " + std::to_string(v_khz));
    }
}

void opening_layer(Circuit &c, const PulseSchedule &schedule) {
    c.append(Gate::hadamard(kSensor));
    if (schedule.backend == EvolutionBackend::kPaperLiteral &&
        schedule.hadamards == HadamardPlacement::kOncePerCircuit) {
        c.append(Gate::hadamard(kEmitter));
    }
}

}  // namespace

Circuit deer_circuit(double v_khz, double tau_us, const PulseSchedule &schedule) {
    schedule.validate();
    check_coupling(v_khz);
    check_duration(tau_us, "tau");
    Circuit c(2);
    opening_layer(c, schedule);
    c.append(uc_block(kSensor, kEmitter, v_khz, 2.0 * tau_us, schedule));
    c.append(Gate::pauli_x(kSensor));
    c.append(uc_block(kSensor, kEmitter, v_khz, tau_us, schedule));
    c.append(Gate::pauli_x(kEmitter));
    c.append(uc_block(kSensor, kEmitter, v_khz, tau_us, schedule));
    c.append(Gate::hadamard(kSensor));
    return c;
}

Circuit bell_circuit(double v_khz, double two_tau_us, const PulseSchedule &schedule) {
    schedule.validate();
    check_coupling(v_khz);
    check_duration(two_tau_us, "two_tau");
    const double tau_us = two_tau_us / 2.0;
    Circuit c(2);
    opening_layer(c, schedule);
    c.append(uc_block(kSensor, kEmitter, v_khz, two_tau_us, schedule));
    c.append(Gate::pauli_x(kSensor));
    c.append(Gate::hadamard(kSensor));
    c.append(Gate::hadamard(kEmitter));
    if (schedule.bell_tail == BellTail::kRetained) {
        c.append(uc_block(kSensor, kEmitter, v_khz, tau_us, schedule));
        c.append(Gate::pauli_x(kEmitter));
        c.append(uc_block(kSensor, kEmitter, v_khz, tau_us, schedule));
    }
    return c;
}

std::string_view to_string(FinalSegment segment) {
    switch (segment) {
        case FinalSegment::kNone:
            return "none";
        case FinalSegment::kTau:
            return "tau";
        case FinalSegment::kTwoTau:
            return "2tau";
    }
    return "?";
}

namespace {

std::string mask_letters(unsigned mask) {
    std::string out;
    for (int q = 0; q < 3; ++q) {
        if (mask & (1u << q)) out.push_back(static_cast<char>('A' + q));
    }
    return out.empty() ? "none" : out;
}

unsigned parse_mask(std::string_view text) {
    if (text == "none") return 0;
    unsigned mask = 0;
    for (char c : text) {
        const char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        if (u < 'A' || u > 'C') throw Error(ErrorKind::kInvalidInput, "bad qubit letter in layout: " + std::string(text));
        mask |= 1u << (u - 'A');
    }
    return mask;
}

// ABC, AB, AC, BC, A, B, C, none.
constexpr std::array<unsigned, 8> kMaskOrder = {0b111, 0b011, 0b101, 0b110, 0b001, 0b010, 0b100, 0b000};

}  // namespace

std::string TrierLayout::id() const {
    std::ostringstream out;
    out << "pi=" << mask_letters(pi_mask) << ";h=" << mask_letters(final_h_mask) << "@"
        << (final_h_after ? "after" : "before") << ";seg=" << to_string(final_segment)
        << ";order=" << to_string(pair_order) << ";uc=" << to_string(hadamards);
    return out.str();
}

TrierLayout TrierLayout::parse(std::string_view id) {
    TrierLayout layout;
    bool seen[5] = {false, false, false, false, false};
    for (const auto &field : split(id, ';')) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::kInvalidInput, "bad layout field: " + field);
        const std::string key = field.substr(0, eq);
        const std::string value = field.substr(eq + 1);
        if (key == "pi") {
            layout.pi_mask = parse_mask(value);
            seen[0] = true;
        } else if (key == "h") {
            const auto at = value.find('@');
            if (at == std::string::npos) throw Error(ErrorKind::kInvalidInput, "layout h= needs @before/@after");
            layout.final_h_mask = parse_mask(value.substr(0, at));
            const std::string pos = value.substr(at + 1);
            if (pos != "before" && pos != "after") throw Error(ErrorKind::kInvalidInput, "bad layout position: " + pos);
            layout.final_h_after = pos == "after";
            seen[1] = true;
        } else if (key == "seg") {
            if (value == "none") {
                layout.final_segment = FinalSegment::kNone;
            } else if (value == "tau") {
                layout.final_segment = FinalSegment::kTau;
            } else if (value == "2tau") {
                layout.final_segment = FinalSegment::kTwoTau;
            } else {
                throw Error(ErrorKind::kInvalidInput, "bad layout segment: " + value);
            }
            seen[2] = true;
        } else if (key == "order") {
            layout.pair_order = parse_pair_order(value);
            seen[3] = true;
        } else if (key == "uc") {
            if (value == "block") {
                layout.hadamards = HadamardPlacement::kPerBlock;
            } else if (value == "once") {
                layout.hadamards = HadamardPlacement::kOncePerCircuit;
            } else {
                throw Error(ErrorKind::kInvalidInput, "bad layout uc placement: " + value);
            }
            seen[4] = true;
        } else {
            throw Error(ErrorKind::kInvalidInput, "unknown layout key: " + key);
        }
    }
    if (!std::all_of(std::begin(seen), std::end(seen), [](bool b) { return b; })) {
        throw Error(ErrorKind::kInvalidInput, "layout id must set pi, h, seg, order and uc: " + std::string(id));
    }
    return layout;
}

int TrierLayout::distance(const TrierLayout &other) const {
    return (pi_mask != other.pi_mask) + (final_h_mask != other.final_h_mask) +
           (final_h_after != other.final_h_after) + (final_segment != other.final_segment) +
           (pair_order != other.pair_order) + (hadamards != other.hadamards);
}

std::vector<TrierLayout> trier_layout_space() {
    std::vector<PairOrder> orders;
    PairOrder perm = kDefaultPairOrder;
    // Permutations of the default order by position, default first.
    std::array<int, 3> idx = {0, 1, 2};
    do {
        orders.push_back({perm[static_cast<std::size_t>(idx[0])], perm[static_cast<std::size_t>(idx[1])],
                          perm[static_cast<std::size_t>(idx[2])]});
    } while (std::next_permutation(idx.begin(), idx.end()));

    std::vector<TrierLayout> space;
    for (auto placement : {HadamardPlacement::kPerBlock, HadamardPlacement::kOncePerCircuit}) {
        for (const auto &order : orders) {
            for (auto segment : {FinalSegment::kTau, FinalSegment::kTwoTau, FinalSegment::kNone}) {
                for (unsigned pi : kMaskOrder) {
                    for (unsigned fh : kMaskOrder) {
                        for (bool after : {false, true}) {
                            if (segment == FinalSegment::kNone && after) continue;
                            space.push_back({pi, fh, after, segment, order, placement});
                        }
                    }
                }
            }
        }
    }
    const TrierLayout reference;
    std::stable_sort(space.begin(), space.end(), [&](const TrierLayout &a, const TrierLayout &b) {
        return a.distance(reference) < b.distance(reference);
    });
    return space;
}

Circuit trier_circuit(const CouplingConfig &config, double two_tau_us, const PulseSchedule &schedule,
                      const TrierLayout &layout) {
    schedule.validate();
    check_duration(two_tau_us, "two_tau");
    PulseSchedule local = schedule;
    local.pair_order = layout.pair_order;
    local.hadamards = layout.hadamards;
    local.validate();

    const auto pairs = coupled_pairs(config);
    auto layer = [](Circuit &c, unsigned mask, bool pauli) {
        for (int q = 0; q < 3; ++q) {
            if (mask & (1u << q)) c.append(pauli ? Gate::pauli_x(q) : Gate::hadamard(q));
        }
    };

    Circuit c(3);
    layer(c, 0b111, false);
    c.append(free_evolution(local, pairs, two_tau_us, SegmentKind::kCoupled));
    layer(c, layout.pi_mask, true);
    if (!layout.final_h_after) layer(c, layout.final_h_mask, false);
    if (layout.final_segment != FinalSegment::kNone) {
        const double duration = layout.final_segment == FinalSegment::kTau ? two_tau_us / 2.0 : two_tau_us;
        c.append(free_evolution(local, pairs, duration, SegmentKind::kDecoupled));
    }
    if (layout.final_h_after) layer(c, layout.final_h_mask, false);
    return c;
}

StateVector trier_anchor_state() {
    return StateVector::superposition("001", "110", Complex{-1.0, 0.0});
}

double trier_anchor_fidelity(const TrierLayout &layout, std::optional<Pair> decoupled) {
    PulseSchedule schedule;
    schedule.backend = EvolutionBackend::kPaperLiteral;
    schedule.decoupled_pair = decoupled;
    // At 2tau = 0 every angle vanishes, so the couplings are immaterial.
    const CouplingConfig unit{1.0, 1.0, 1.0};
    return fidelity(trier_anchor_state(), run_circuit(trier_circuit(unit, 0.0, schedule, layout)));
}

std::vector<TrierReconstruction> anchor_passing_layouts(std::optional<Pair> decoupled) {
    std::vector<TrierReconstruction> out;
    const auto space = trier_layout_space();
    for (std::size_t i = 0; i < space.size(); ++i) {
        const double f = trier_anchor_fidelity(space[i], decoupled);
        if (f >= 1.0 - kAnchorTolerance) out.push_back({space[i], static_cast<int>(i), f});
    }
    return out;
}

TrierReconstruction resolve_trier_layout(std::optional<Pair> decoupled) {
    const auto space = trier_layout_space();
    std::vector<std::pair<double, std::size_t>> tried;
    tried.reserve(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        const double f = trier_anchor_fidelity(space[i], decoupled);
        if (f >= 1.0 - kAnchorTolerance) return {space[i], static_cast<int>(i), f};
        tried.emplace_back(f, i);
    }
    std::stable_sort(tried.begin(), tried.end(), [](const auto &a, const auto &b) { return a.first > b.first; });
    std::ostringstream msg;
    msg << "no triple-resonance layout reaches the 2tau=0 anchor (" << space.size()
        << " candidates, decoupled pair " << (decoupled ? std::string(to_string(*decoupled)) : "none")
        << "); best candidates:";
    for (std::size_t k = 0; k < std::min<std::size_t>(10, tried.size()); ++k) {
        msg << "\n  F=" << tried[k].first << "  " << space[tried[k].second].id();
    }
    throw Error(ErrorKind::kReconstructionFailure, msg.str());
}

}  // namespace nvent
