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

#include "nvent/qsim.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include "nvent/error.h"

namespace nvent {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::kInvalidGate:
            return "invalid-gate";
        case ErrorKind::kInvalidInput:
            return "invalid-input";
        case ErrorKind::kInvalidConfig:
            return "invalid-config";
        case ErrorKind::kSizeCap:
            return "size-cap";
        case ErrorKind::kReconstructionFailure:
            return "reconstruction-failure";
        case ErrorKind::kAmbiguity:
            return "ambiguity";
        case ErrorKind::kInsufficientData:
            return "insufficient-data";
        case ErrorKind::kFile:
            return "file";
    }
    return "unknown";
}

namespace {

void check_qubit_count(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw Error(ErrorKind::kInvalidInput, "qubit count must be in [1, " + std::to_string(kMaxQubits) +
                                                  "], got " + std::to_string(n_qubits));
    }
}

}  // namespace

// In-place kernels. StateVector stays immutable from the outside; these only
// ever touch a private copy.
class Engine {
   public:
    static StateVector make(int n_qubits, std::vector<Complex> amplitudes) {
        return StateVector(n_qubits, std::move(amplitudes));
    }

    static void apply(StateVector &state, const Gate &gate) {
        auto &amps = state.amplitudes_;
        const int n = state.n_qubits_;
        const std::size_t dim = amps.size();
        const std::size_t tmask = std::size_t{1} << (n - 1 - gate.target);
        switch (gate.kind) {
            case GateKind::kHadamard: {
                const double s = 1.0 / std::sqrt(2.0);
                for (std::size_t i = 0; i < dim; ++i) {
                    if (i & tmask) continue;
                    const Complex a0 = amps[i];
                    const Complex a1 = amps[i | tmask];
                    amps[i] = s * (a0 + a1);
                    amps[i | tmask] = s * (a0 - a1);
                }
                break;
            }
            case GateKind::kPauliX:
                for (std::size_t i = 0; i < dim; ++i) {
                    if (!(i & tmask)) std::swap(amps[i], amps[i | tmask]);
                }
                break;
            case GateKind::kRotZ: {
                const Complex lo = std::polar(1.0, -gate.angle / 2);
                const Complex hi = std::polar(1.0, gate.angle / 2);
                for (std::size_t i = 0; i < dim; ++i) {
                    amps[i] *= (i & tmask) ? hi : lo;
                }
                break;
            }
            case GateKind::kCNOT: {
                const std::size_t cmask = std::size_t{1} << (n - 1 - gate.control);
                for (std::size_t i = 0; i < dim; ++i) {
                    if ((i & cmask) && !(i & tmask)) std::swap(amps[i], amps[i | tmask]);
                }
                break;
            }
            case GateKind::kCPhase: {
                const std::size_t cmask = std::size_t{1} << (n - 1 - gate.control);
                const Complex phase = std::polar(1.0, gate.angle);
                for (std::size_t i = 0; i < dim; ++i) {
                    if ((i & cmask) && (i & tmask)) amps[i] *= phase;
                }
                break;
            }
        }
    }
};

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    check_qubit_count(n_qubits);
    amplitudes_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
    check_qubit_count(n_qubits);
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (index >= dim) {
        throw Error(ErrorKind::kInvalidInput,
                    "basis index " + std::to_string(index) + " out of range for " + std::to_string(n_qubits) + " qubits");
    }
    std::vector<Complex> amps(dim, Complex{0.0, 0.0});
    amps[index] = 1.0;
    return StateVector(n_qubits, std::move(amps));
}

StateVector StateVector::basis(std::string_view label) {
    std::uint64_t index = 0;
    for (char c : label) {
        if (c != '0' && c != '1') {
            throw Error(ErrorKind::kInvalidInput, "basis label must contain only '0'/'1': " + std::string(label));
        }
        index = (index << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return basis(static_cast<int>(label.size()), index);
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes, double tolerance) {
    const std::size_t dim = amplitudes.size();
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw Error(ErrorKind::kInvalidInput, "amplitude count must be a power of two >= 2, got " + std::to_string(dim));
    }
    const int n = std::countr_zero(dim);
    check_qubit_count(n);
    double sum = 0.0;
    for (const auto &a : amplitudes) sum += std::norm(a);
    if (std::abs(sum - 1.0) > tolerance) {
        std::ostringstream msg;
        msg << "state is not normalized: sum |a|^2 = " << sum;
        throw Error(ErrorKind::kInvalidInput, msg.str());
    }
    return StateVector(n, std::move(amplitudes));
}

StateVector StateVector::superposition(std::string_view label_a, std::string_view label_b, Complex phase) {
    if (label_a.size() != label_b.size() || label_a == label_b) {
        throw Error(ErrorKind::kInvalidInput, "superposition needs two distinct labels of equal length");
    }
    const StateVector a = basis(label_a);
    const StateVector b = basis(label_b);
    std::vector<Complex> amps(a.dim());
    const double s = 1.0 / std::sqrt(2.0);
    const Complex p = phase / std::abs(phase);
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = s * (a[i] + p * b[i]);
    return StateVector(a.n_qubits(), std::move(amps));
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const auto &a : amplitudes_) sum += std::norm(a);
    return std::sqrt(sum);
}

std::string basis_label(std::uint64_t index, int n_qubits) {
    std::string label(static_cast<std::size_t>(n_qubits), '0');
    for (int q = 0; q < n_qubits; ++q) {
        if ((index >> (n_qubits - 1 - q)) & 1) label[static_cast<std::size_t>(q)] = '1';
    }
    return label;
}

std::string_view to_string(GateKind kind) {
    switch (kind) {
        case GateKind::kHadamard:
            return "H";
        case GateKind::kPauliX:
            return "X";
        case GateKind::kRotZ:
            return "RZ";
        case GateKind::kCNOT:
            return "CNOT";
        case GateKind::kCPhase:
            return "CPHASE";
    }
    return "?";
}

void Gate::validate(int n_qubits) const {
    auto bad = [&](const std::string &why) {
        throw Error(ErrorKind::kInvalidGate, to_string(*this) + ": " + why);
    };
    if (target < 0 || target >= n_qubits) bad("target out of range for " + std::to_string(n_qubits) + " qubits");
    if (is_two_qubit()) {
        if (control < 0 || control >= n_qubits) bad("control out of range for " + std::to_string(n_qubits) + " qubits");
        if (control == target) bad("control equals target");
    }
    if (!std::isfinite(angle)) bad("angle is not finite");
}

std::string to_string(const Gate &gate) {
    std::ostringstream out;
    out << to_string(gate.kind) << "(";
    if (gate.is_two_qubit()) out << gate.control << ",";
    out << gate.target;
    if (gate.kind == GateKind::kRotZ || gate.kind == GateKind::kCPhase) out << "," << gate.angle;
    out << ")";
    return out.str();
}

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
    check_qubit_count(n_qubits);
}

Circuit &Circuit::append(const Gate &gate) {
    gate.validate(n_qubits_);
    gates_.push_back(gate);
    return *this;
}

Circuit &Circuit::append(std::span<const Gate> gates) {
    for (const auto &g : gates) g.validate(n_qubits_);
    gates_.insert(gates_.end(), gates.begin(), gates.end());
    return *this;
}

DensityMatrix::DensityMatrix(std::size_t dim, std::vector<Complex> entries) : dim_(dim), entries_(std::move(entries)) {
    if (entries_.size() != dim * dim) {
        throw Error(ErrorKind::kInvalidInput, "density matrix needs dim*dim entries");
    }
}

Complex DensityMatrix::trace() const {
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double DensityMatrix::purity() const {
    // tr(rho^2) = sum_ij rho_ij rho_ji = sum_ij |rho_ij|^2 for Hermitian rho.
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) t += (*this)(i, j) * (*this)(j, i);
    }
    return t.real();
}

std::string to_string(const CountsMode &mode) {
    if (const auto *s = std::get_if<SampledCounts>(&mode)) {
        return "sampled(shots=" + std::to_string(s->shots) + ",seed=" + std::to_string(s->seed) + ")";
    }
    return "exact";
}

double CountsTable::at(const std::string &label) const {
    auto it = entries.find(label);
    if (it == entries.end()) throw Error(ErrorKind::kInvalidInput, "no such basis label: " + label);
    return it->second;
}

StateVector apply_gate(const StateVector &state, const Gate &gate) {
    gate.validate(state.n_qubits());
    StateVector out = state;
    Engine::apply(out, gate);
    return out;
}

StateVector run_circuit(const Circuit &circuit, const StateVector &initial) {
    if (circuit.n_qubits() != initial.n_qubits()) {
        throw Error(ErrorKind::kInvalidInput, "circuit has " + std::to_string(circuit.n_qubits()) +
                                                  " qubits but the initial state has " +
                                                  std::to_string(initial.n_qubits()));
    }
    StateVector out = initial;
    for (const auto &g : circuit.gates()) Engine::apply(out, g);
    return out;
}

StateVector run_circuit(const Circuit &circuit) {
    return run_circuit(circuit, StateVector(circuit.n_qubits()));
}

CountsTable measure_counts(const StateVector &state, const CountsMode &mode) {
    const std::size_t dim = state.dim();
    std::vector<double> probs(dim);
    for (std::size_t i = 0; i < dim; ++i) probs[i] = std::norm(state[i]);

    CountsTable table{mode, {}};
    if (const auto *s = std::get_if<SampledCounts>(&mode)) {
        if (s->shots == 0) throw Error(ErrorKind::kInvalidInput, "shots must be positive");
        std::vector<double> cdf(dim);
        double acc = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            acc += probs[i];
            cdf[i] = acc;
        }
        // Inverse-CDF on 53-bit uniforms from mt19937_64: bit-reproducible
        // across standard libraries, unlike std::discrete_distribution.
        std::mt19937_64 rng(s->seed);
        std::vector<std::uint64_t> hits(dim, 0);
        for (std::uint64_t k = 0; k < s->shots; ++k) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
            auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
            if (idx >= dim) idx = dim - 1;
            ++hits[idx];
        }
        for (std::size_t i = 0; i < dim; ++i) {
            table.entries[basis_label(i, state.n_qubits())] =
                static_cast<double>(hits[i]) / static_cast<double>(s->shots);
        }
    } else {
        for (std::size_t i = 0; i < dim; ++i) table.entries[basis_label(i, state.n_qubits())] = probs[i];
    }
    return table;
}

DensityMatrix density_matrix(const StateVector &state) {
    const std::size_t dim = state.dim();
    std::vector<Complex> rho(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) rho[r * dim + c] = state[r] * std::conj(state[c]);
    }
    return DensityMatrix(dim, std::move(rho));
}

Complex inner_product(const StateVector &bra, const StateVector &ket) {
    if (bra.n_qubits() != ket.n_qubits()) {
        throw Error(ErrorKind::kInvalidInput, "qubit-count mismatch: " + std::to_string(bra.n_qubits()) + " vs " +
                                                  std::to_string(ket.n_qubits()));
    }
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < bra.dim(); ++i) sum += std::conj(bra[i]) * ket[i];
    return sum;
}

double fidelity(const StateVector &target, const StateVector &actual) {
    return std::clamp(std::norm(inner_product(target, actual)), 0.0, 1.0);
}

}  // namespace nvent
