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

#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <set>

#include "nvent/circuits.h"
#include "nvent/error.h"
#include "nvent/experiments.h"
#include "test_util.h"

namespace nvent {
namespace {

using testing::max_deviation;
using testing::random_state;

PulseSchedule physical() {
    PulseSchedule s;
    s.backend = EvolutionBackend::kPhysicalDiagonal;
    return s;
}

StateVector run_gates(int n, const std::vector<Gate> &gates, const StateVector &init) {
    Circuit c(n);
    c.append(gates);
    return run_circuit(c, init);
}

TEST(UcBlock, LiteralDecomposition) {
    PulseSchedule s;
    const auto g = uc_block(0, 1, 10.0, 3.0, s);
    ASSERT_EQ(g.size(), 4u);
    EXPECT_EQ(g[0], Gate::hadamard(0));
    EXPECT_EQ(g[1], Gate::hadamard(1));
    EXPECT_EQ(g[2].kind, GateKind::kRotZ);
    EXPECT_DOUBLE_EQ(g[2].angle, kDefaultKappa * 10.0 * 3.0);
    EXPECT_EQ(g[3], Gate::cnot(0, 1));
    s.hadamards = HadamardPlacement::kOncePerCircuit;
    EXPECT_EQ(uc_block(0, 1, 10.0, 3.0, s).size(), 2u);
}

TEST(UcBlock, PhysicalZeroIsIdentity) {
    std::mt19937_64 rng(1);
    const auto psi = random_state(rng, 2);
    EXPECT_LT(max_deviation(run_gates(2, uc_block(0, 1, 7.0, 0.0, physical()), psi), psi), 1e-15);
}

TEST(UcBlock, LiteralZeroMatchesHadamardsAndCnot) {
    const auto with_rz = run_gates(2, uc_block(0, 1, 7.0, 0.0, PulseSchedule{}), StateVector(2));
    const auto without = run_gates(2, {Gate::hadamard(0), Gate::hadamard(1), Gate::cnot(0, 1)}, StateVector(2));
    EXPECT_LT(max_deviation(with_rz, without), 1e-12);
}

TEST(UcBlock, PhysicalPiOnElevenFlipsSign) {
    PulseSchedule s = physical();
    const double two_tau = std::numbers::pi / (s.convention.kappa * 5.0);
    const auto out = run_gates(2, uc_block(0, 1, 5.0, two_tau, s), StateVector::basis("11"));
    EXPECT_NEAR(out[3].real(), -1.0, 1e-12);
    EXPECT_NEAR(fidelity(StateVector::basis("11"), out), 1.0, 1e-12);
}

TEST(UcBlock, Validation) {
    EXPECT_THROW(uc_block(0, 1, 5.0, -1.0, PulseSchedule{}), Error);
    EXPECT_THROW(uc_block(1, 1, 5.0, 1.0, PulseSchedule{}), Error);
    PulseSchedule s;
    s.convention.kappa = 0.0;
    EXPECT_THROW(deer_circuit(5.0, 1.0, s), Error);
    EXPECT_THROW(deer_circuit(5.0, -1.0, PulseSchedule{}), Error);
    EXPECT_THROW(bell_circuit(0.0, 1.0, PulseSchedule{}), Error);
    EXPECT_THROW(trier_circuit({1, 1, 1}, -0.1, PulseSchedule{}, TrierLayout{}), Error);
}

TEST(FreeEvolution, PhysicalZeroDurationIsIdentityLiteralIsNot) {
    std::mt19937_64 rng(2);
    const auto psi = random_state(rng, 3);
    const auto pairs = coupled_pairs({53, 4.6, 24.1});
    EXPECT_LT(max_deviation(run_gates(3, free_evolution(physical(), pairs, 0.0), psi), psi), 1e-15);
    EXPECT_GT(max_deviation(run_gates(3, free_evolution(PulseSchedule{}, pairs, 0.0), psi), psi), 1e-3);
}

TEST(FreeEvolution, DecoupledSegmentSkipsPair) {
    PulseSchedule s = physical();
    const auto pairs = coupled_pairs({53, 4.6, 24.1});
    const auto all = free_evolution(s, pairs, 2.0, SegmentKind::kCoupled);
    const auto part = free_evolution(s, pairs, 2.0, SegmentKind::kDecoupled);
    ASSERT_EQ(all.size(), 3u);
    ASSERT_EQ(part.size(), 2u);
    for (const auto &g : part) EXPECT_FALSE(g.control == kQubitC && g.target == kQubitB);
    s.decoupled_pair.reset();
    EXPECT_EQ(free_evolution(s, pairs, 2.0, SegmentKind::kDecoupled).size(), 3u);
}

TEST(FreeEvolution, PhysicalPairOrderInvariant) {
    std::mt19937_64 rng(3);
    const auto pairs = coupled_pairs({53, 4.6, 24.1});
    for (int i = 0; i < 20; ++i) {
        const auto psi = random_state(rng, 3);
        PulseSchedule s = physical();
        const auto ref = run_gates(3, free_evolution(s, pairs, 3.7), psi);
        for (const char *order : {"ac,cb,ab", "ab,ac,cb", "ab,cb,ac", "cb,ac,ab", "cb,ab,ac"}) {
            s.pair_order = parse_pair_order(order);
            EXPECT_LT(max_deviation(run_gates(3, free_evolution(s, pairs, 3.7), psi), ref), 1e-12) << order;
        }
    }
}

TEST(FreeEvolution, LiteralPairOrderMatters) {
    const auto pairs = coupled_pairs({53, 4.6, 24.1});
    PulseSchedule s;
    const auto ref = run_gates(3, free_evolution(s, pairs, 3.7), StateVector(3));
    s.pair_order = parse_pair_order("cb,ab,ac");
    EXPECT_LT(fidelity(ref, run_gates(3, free_evolution(s, pairs, 3.7), StateVector(3))), 1.0 - 1e-6);
}

TEST(FreeEvolution, PhysicalComposesLiteralDoesNot) {
    const auto pairs = coupled_pairs({50, 20, 5});
    for (const bool literal : {false, true}) {
        PulseSchedule s = literal ? PulseSchedule{} : physical();
        auto halves = free_evolution(s, pairs, 1.3);
        const auto second = free_evolution(s, pairs, 1.3);
        halves.insert(halves.end(), second.begin(), second.end());
        const auto split = run_gates(3, halves, StateVector(3));
        const auto whole = run_gates(3, free_evolution(s, pairs, 2.6), StateVector(3));
        if (literal) {
            EXPECT_LT(fidelity(whole, split), 1.0 - 1e-6);
        } else {
            EXPECT_LT(max_deviation(whole, split), 1e-12);
        }
    }
}

TEST(FreeEvolution, KappaScalingCovariance) {
    for (double c : {2.0, 10.0, 0.37}) {
        PulseSchedule a, b;
        b.convention.kappa = a.convention.kappa / c;
        const auto ga = trier_circuit({53, 4.6, 24.1}, 7.1, a, TrierLayout{});
        const auto gb = trier_circuit({53 * c, 4.6 * c, 24.1 * c}, 7.1, b, TrierLayout{});
        ASSERT_EQ(ga.size(), gb.size());
        for (std::size_t i = 0; i < ga.size(); ++i) {
            EXPECT_EQ(ga.gates()[i].kind, gb.gates()[i].kind);
            EXPECT_EQ(ga.gates()[i].target, gb.gates()[i].target);
            EXPECT_EQ(ga.gates()[i].control, gb.gates()[i].control);
            EXPECT_NEAR(ga.gates()[i].angle, gb.gates()[i].angle, 1e-12 * (1 + std::abs(ga.gates()[i].angle)));
        }
    }
}

TEST(Deer, GateOrder) {
    const auto c = deer_circuit(5.0, 2.0, physical());
    const auto g = c.gates();
    ASSERT_EQ(g.size(), 7u);
    EXPECT_EQ(g[0], Gate::hadamard(0));
    EXPECT_EQ(g[1].kind, GateKind::kCPhase);
    EXPECT_DOUBLE_EQ(g[1].angle, kDefaultKappa * 5.0 * 4.0);
    EXPECT_EQ(g[2], Gate::pauli_x(0));
    EXPECT_DOUBLE_EQ(g[3].angle, kDefaultKappa * 5.0 * 2.0);
    EXPECT_EQ(g[4], Gate::pauli_x(1));
    EXPECT_EQ(g[6], Gate::hadamard(0));
}

TEST(Deer, ZeroTauPhysicalGivesZeroOne) {
    // H X H on the sensor is Z, which leaves |0> alone; the emitter flips.
    const auto out = run_circuit(deer_circuit(5.0, 0.0, physical()));
    EXPECT_NEAR(fidelity(StateVector::basis("01"), out), 1.0, 1e-12);
}

std::size_t first_minimum_index(const std::vector<double> &p) {
    std::size_t i = 0;
    while (i + 1 < p.size() && p[i + 1] <= p[i]) ++i;
    return i;
}

double deer_first_minimum(double v, double step, double max) {
    SweepSpec spec;
    spec.two_tau_max_us = max;
    spec.step_us = step;
    const auto s = physical();
    const auto r = run_sweep([&](double t) { return deer_circuit(v, t / 2.0, s); }, spec);
    auto p0 = r.counts_series("00");
    const auto p1 = r.counts_series("01");
    for (std::size_t k = 0; k < p0.size(); ++k) p0[k] += p1[k];
    return r.rows[first_minimum_index(p0)].two_tau_us;
}

TEST(Deer, DoublingCouplingHalvesFirstMinimum) {
    const double t5 = deer_first_minimum(5.0, 0.1, 300.0);
    const double t10 = deer_first_minimum(10.0, 0.1, 300.0);
    // P(sensor = 0) = cos^2(kappa v tau / 2): first minimum at 2tau = 2 pi / (kappa v).
    EXPECT_NEAR(t5, 200.0, 0.1);
    EXPECT_NEAR(t10, t5 / 2.0, 0.1);
}

TEST(Deer, ThreePairPeriodsOrderedInverselyToCoupling) {
    const double t53 = deer_first_minimum(53.0, 0.1, 300.0);
    const double t46 = deer_first_minimum(4.6, 0.1, 600.0);
    const double t241 = deer_first_minimum(24.1, 0.1, 300.0);
    EXPECT_LT(t53, t241);
    EXPECT_LT(t241, t46);
    EXPECT_NEAR(t53 * 53.0, t241 * 24.1, 0.1 * 53.0);
}

TEST(Bell, GateOrderWithTailDropped) {
    PulseSchedule s = physical();
    s.bell_tail = BellTail::kDropped;
    const Circuit circuit = bell_circuit(4.93, 3.0, s);
    const auto g = circuit.gates();
    ASSERT_EQ(g.size(), 5u);
    EXPECT_EQ(g[0], Gate::hadamard(0));
    EXPECT_EQ(g[1].kind, GateKind::kCPhase);
    EXPECT_EQ(g[2], Gate::pauli_x(0));
    EXPECT_EQ(g[3], Gate::hadamard(0));
    EXPECT_EQ(g[4], Gate::hadamard(1));
    s.bell_tail = BellTail::kRetained;
    EXPECT_EQ(bell_circuit(4.93, 3.0, s).size(), 8u);
}

TEST(Bell, ZeroTimePhysicalIsQuarterBell) {
    // H X H |0> = |0> and H |0> = |+>, so <bell|0+> = 1/2 and the fidelity is 1/4.
    for (auto tail : {BellTail::kDropped, BellTail::kRetained}) {
        PulseSchedule s = physical();
        s.bell_tail = tail;
        const auto out = run_circuit(bell_circuit(4.93, 0.0, s));
        EXPECT_NEAR(fidelity(bell_target().state, out), 0.25, 1e-12);
    }
}

TEST(Bell, DroppedTailCannotReachBellState) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> t(0.0, 200.0);
    for (auto backend : {EvolutionBackend::kPaperLiteral, EvolutionBackend::kPhysicalDiagonal}) {
        PulseSchedule s;
        s.backend = backend;
        s.bell_tail = BellTail::kDropped;
        for (int i = 0; i < 50; ++i) {
            EXPECT_NEAR(fidelity(bell_target().state, run_circuit(bell_circuit(4.93, t(rng), s))), 0.25, 1e-12);
        }
    }
}

TEST(Bell, RetainedTailLiteralReachesBellAtFullTurn) {
    PulseSchedule s;
    const double two_tau = 2.0 * std::numbers::pi / (s.convention.kappa * 4.93);
    EXPECT_NEAR(fidelity(bell_target().state, run_circuit(bell_circuit(4.93, two_tau, s))), 1.0, 1e-12);
}

TEST(TrierLayout, SpaceIsCompleteAndIdsRoundTrip) {
    const auto space = trier_layout_space();
    // 2 placements x 6 orders x (2 segments x 64 masks x 2 positions + 64 masks).
    EXPECT_EQ(space.size(), 3840u);
    std::set<std::string> ids;
    for (const auto &l : space) {
        ids.insert(l.id());
        EXPECT_EQ(TrierLayout::parse(l.id()), l);
    }
    EXPECT_EQ(ids.size(), space.size());
    EXPECT_EQ(space.front(), TrierLayout{});
    for (std::size_t i = 1; i < space.size(); ++i) {
        EXPECT_LE(space[i - 1].distance(TrierLayout{}), space[i].distance(TrierLayout{}));
    }
}

TEST(TrierLayout, ParseRejectsGarbage) {
    EXPECT_THROW(TrierLayout::parse("pi=ABC"), Error);
    EXPECT_THROW(TrierLayout::parse("pi=ABD;h=A@before;seg=tau;order=AC,AB,CB;uc=block"), Error);
    EXPECT_THROW(TrierLayout::parse("pi=A;h=A@middle;seg=tau;order=AC,AB,CB;uc=block"), Error);
    EXPECT_THROW(TrierLayout::parse("pi=A;h=A@before;seg=3tau;order=AC,AB,CB;uc=block"), Error);
    EXPECT_THROW(TrierLayout::parse("pi=A;h=A@before;seg=tau;order=AC,AC,CB;uc=block"), Error);
    EXPECT_THROW(TrierLayout::parse("pi=A;h=A@before;seg=tau;order=AC,AB,CB;uc=twice"), Error);
}

TEST(Trier, DefaultLayoutMissesAnchor) {
    EXPECT_NEAR(trier_anchor_fidelity(TrierLayout{}), 0.0, 1e-12);
}

TEST(Trier, ResolvedLayoutHitsAnchor) {
    const auto r = resolve_trier_layout();
    EXPECT_EQ(r.layout.id(), "pi=AB;h=AC@after;seg=tau;order=AC,AB,CB;uc=block");
    EXPECT_GE(r.anchor_fidelity, 1.0 - kAnchorTolerance);
    EXPECT_EQ(r.layout.distance(TrierLayout{}), 3);
    const auto out = run_circuit(trier_circuit({50, 50, 50}, 0.0, PulseSchedule{}, r.layout));
    EXPECT_GE(fidelity(trier_anchor_state(), out), 1.0 - 1e-9);
    const auto all = anchor_passing_layouts();
    ASSERT_FALSE(all.empty());
    EXPECT_EQ(all.front().layout, r.layout);
    EXPECT_EQ(all.size(), 6u);
}

TEST(Trier, AnchorHoldsForAnyCouplings) {
    const auto layout = resolve_trier_layout().layout;
    for (const auto &e : enumerate_configurations()) {
        const auto out = run_circuit(trier_circuit(e.config, 0.0, PulseSchedule{}, layout));
        EXPECT_GE(fidelity(trier_anchor_state(), out), 1.0 - 1e-9) << e.label;
    }
}

TEST(Trier, LayoutOverridesScheduleOrder) {
    const auto layout = resolve_trier_layout().layout;
    PulseSchedule s;
    s.pair_order = parse_pair_order("cb,ab,ac");
    EXPECT_EQ(trier_circuit({53, 4.6, 24.1}, 5.0, s, layout), trier_circuit({53, 4.6, 24.1}, 5.0, PulseSchedule{}, layout));
}

TEST(PairOrder, ParseAndFormat) {
    EXPECT_EQ(to_string(parse_pair_order("ac,ab,cb")), "AC,AB,CB");
    EXPECT_EQ(parse_pair_order("BC,BA,CA"), (PairOrder{Pair::kCB, Pair::kAB, Pair::kAC}));
    EXPECT_THROW(parse_pair_order("ac,ab"), Error);
    EXPECT_THROW(parse_pair_order("ac,ac,cb"), Error);
    EXPECT_THROW(parse_backend("quantum"), Error);
    EXPECT_THROW(parse_bell_tail("maybe"), Error);
}

}  // namespace
}  // namespace nvent
