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

#ifndef NVENT_CIRCUITS_H
#define NVENT_CIRCUITS_H

#include <array>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nvent/nv_model.h"
#include "nvent/qsim.h"

namespace nvent {

/// How a free-evolution period U_C = exp(i 2tau v S_z S_z) becomes gates.
///
/// kPaperLiteral: H on both qubits, RotZ(theta) on the first, CNOT first->second.
/// kPhysicalDiagonal: one CPhase(theta), exact for S_z eigenvalues {0, 1}.
enum class EvolutionBackend { kPaperLiteral, kPhysicalDiagonal };

std::string_view to_string(EvolutionBackend backend);
/// "literal" or "physical".
EvolutionBackend parse_backend(std::string_view text);

/// theta = 2 pi v tau with v in kHz and tau in us: 2 pi 1e-3 rad per (kHz us).
inline constexpr double kDefaultKappa = 2.0 * std::numbers::pi * 1e-3;

/// Phase-unit convention theta_ij = kappa * v_ij[kHz] * duration[us].
struct PhaseConvention {
    double kappa = kDefaultKappa;

    void validate() const;
    double angle(double v_khz, double duration_us) const {
        return kappa * v_khz * duration_us;
    }
};

/// Where the "initial" Hadamards of the literal U_C decomposition go.
enum class HadamardPlacement {
    kPerBlock,
    /// The sequence's opening pi/2 layer covers every qubit and blocks carry none.
    kOncePerCircuit,
};

std::string_view to_string(HadamardPlacement placement);

/// Whether the two-qubit entangler keeps the tau - pi(emitter) - tau tail of
/// the DEER sequence after the second pi/2 layer is moved up.
enum class BellTail { kDropped, kRetained };

std::string_view to_string(BellTail tail);
BellTail parse_bell_tail(std::string_view text);

using PairOrder = std::array<Pair, 3>;
inline constexpr PairOrder kDefaultPairOrder = {Pair::kAC, Pair::kAB, Pair::kCB};

/// "ac,ab,cb" style; must name each pair once.
PairOrder parse_pair_order(std::string_view text);
std::string to_string(const PairOrder &order);

struct PulseSchedule {
    EvolutionBackend backend = EvolutionBackend::kPaperLiteral;
    PhaseConvention convention;
    /// Pair switched off in the final free-evolution segment (three-qubit only).
    std::optional<Pair> decoupled_pair = Pair::kCB;
    PairOrder pair_order = kDefaultPairOrder;
    HadamardPlacement hadamards = HadamardPlacement::kPerBlock;
    BellTail bell_tail = BellTail::kRetained;

    void validate() const;
};

/// A coupled NV pair placed on register wires. The first wire carries the
/// RotZ and the CNOT control in the literal decomposition.
struct CoupledPair {
    Pair pair;
    int first;
    int second;
    double v_khz;
};

/// AC -> (A, C), AB -> (A, B), CB -> (C, B) on wires A=0, B=1, C=2.
std::vector<CoupledPair> coupled_pairs(const CouplingConfig &config);

std::vector<Gate> uc_block(int first, int second, double v_khz, double two_tau_us, const PulseSchedule &schedule);

enum class SegmentKind {
    kCoupled,
    /// Skips schedule.decoupled_pair.
    kDecoupled,
};

/// One uc_block per present pair, in schedule.pair_order; `duration_us`
/// takes the place of 2tau in the angle.
std::vector<Gate> free_evolution(const PulseSchedule &schedule, std::span<const CoupledPair> pairs, double duration_us,
                                 SegmentKind kind = SegmentKind::kCoupled);

/// Sensor = wire 0, emitter = wire 1:
/// pi/2(s) - 2tau - pi(s) - tau - pi(e) - tau - pi/2(s).
Circuit deer_circuit(double v_khz, double tau_us, const PulseSchedule &schedule);

/// DEER with the closing pi/2 moved onto both qubits right after the sensor pi
/// pulse. schedule.bell_tail decides whether the tau - pi(e) - tau tail remains.
Circuit bell_circuit(double v_khz, double two_tau_us, const PulseSchedule &schedule);

enum class FinalSegment { kNone, kTau, kTwoTau };

std::string_view to_string(FinalSegment segment);

/// One point of the documented reconstruction space for the triple-resonance
/// circuit:
///
///   H(A,B,C) - evolve(2tau, all pairs) - X(pi_mask)
///     - [H(final_h_mask) if !final_h_after] - evolve(segment, decoupled)
///     - [H(final_h_mask) if final_h_after]
///
/// Masks use bit q for wire q (A = bit 0). pair_order and hadamards override
/// the corresponding PulseSchedule fields for this circuit.
struct TrierLayout {
    unsigned pi_mask = 0b111;
    unsigned final_h_mask = 0b111;
    bool final_h_after = false;
    FinalSegment final_segment = FinalSegment::kTau;
    PairOrder pair_order = kDefaultPairOrder;
    HadamardPlacement hadamards = HadamardPlacement::kPerBlock;

    /// e.g. "pi=ABC;h=ABC@before;seg=tau;order=AC,AB,CB;uc=block".
    std::string id() const;
    static TrierLayout parse(std::string_view id);
    /// Number of differing fields.
    int distance(const TrierLayout &other) const;

    bool operator==(const TrierLayout &other) const = default;
};

/// Every layout of the reconstruction space, closest to the default first
/// (stable within equal distance). Layouts without a final segment appear once.
std::vector<TrierLayout> trier_layout_space();

Circuit trier_circuit(const CouplingConfig &config, double two_tau_us, const PulseSchedule &schedule,
                      const TrierLayout &layout);

/// (|001> - |110>)/sqrt(2): the zero-evolution output the reconstruction must hit.
StateVector trier_anchor_state();
inline constexpr double kAnchorTolerance = 1e-9;

/// Fidelity to the anchor state at 2tau = 0 with the literal backend.
double trier_anchor_fidelity(const TrierLayout &layout, std::optional<Pair> decoupled = Pair::kCB);

struct TrierReconstruction {
    TrierLayout layout;
    /// Position of `layout` in trier_layout_space().
    int index = 0;
    double anchor_fidelity = 0.0;
};

/// First layout of trier_layout_space() meeting the anchor; throws
/// kReconstructionFailure listing the best candidates when none does.
TrierReconstruction resolve_trier_layout(std::optional<Pair> decoupled = Pair::kCB);

/// All layouts meeting the anchor, in search order.
std::vector<TrierReconstruction> anchor_passing_layouts(std::optional<Pair> decoupled = Pair::kCB);

}  // namespace nvent

#endif
