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

#ifndef NVENT_QSIM_H
#define NVENT_QSIM_H

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nvent {

using Complex = std::complex<double>;

/// Largest register the engine accepts. The physics here never needs more
/// than three qubits; the cap only guards against accidental huge allocations.
inline constexpr int kMaxQubits = 20;

/// Normalized pure state over 2^n basis states.
///
/// Qubit 0 is the most significant bit of the amplitude index, so the binary
/// rendering of an index is the basis label with qubit 0 (NV_A) leftmost.
class StateVector {
   public:
    /// |0...0> on `n_qubits` qubits.
    explicit StateVector(int n_qubits);

    static StateVector basis(int n_qubits, std::uint64_t index);
    /// Basis state from a label such as "011" (leftmost character = qubit 0).
    static StateVector basis(std::string_view label);
    /// Takes ownership of `amplitudes`; throws unless the length is a power of
    /// two and the norm is 1 within `tolerance`.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes, double tolerance = 1e-9);
    /// Equal-weight superposition (|a> + phase |b>)/sqrt(2) of two distinct basis labels.
    static StateVector superposition(std::string_view label_a, std::string_view label_b, Complex phase);

    int n_qubits() const noexcept {
        return n_qubits_;
    }
    std::size_t dim() const noexcept {
        return amplitudes_.size();
    }
    std::span<const Complex> amplitudes() const noexcept {
        return amplitudes_;
    }
    const Complex &operator[](std::size_t index) const {
        return amplitudes_[index];
    }
    double norm() const;

    bool operator==(const StateVector &other) const = default;

   private:
    StateVector(int n_qubits, std::vector<Complex> amplitudes);

    friend class Engine;
    int n_qubits_;
    std::vector<Complex> amplitudes_;
};

/// Basis label of `index` on `n_qubits` qubits, qubit 0 leftmost.
std::string basis_label(std::uint64_t index, int n_qubits);

enum class GateKind { kHadamard, kPauliX, kRotZ, kCNOT, kCPhase };

std::string_view to_string(GateKind kind);

struct Gate {
    GateKind kind;
    int target = 0;
    int control = -1;
    double angle = 0.0;

    static Gate hadamard(int target) {
        return {GateKind::kHadamard, target, -1, 0.0};
    }
    static Gate pauli_x(int target) {
        return {GateKind::kPauliX, target, -1, 0.0};
    }
    /// diag(e^{-i angle/2}, e^{+i angle/2}) on the target.
    static Gate rot_z(int target, double angle) {
        return {GateKind::kRotZ, target, -1, angle};
    }
    static Gate cnot(int control, int target) {
        return {GateKind::kCNOT, target, control, 0.0};
    }
    /// Multiplies the |11> component of (control, target) by e^{i angle}.
    static Gate cphase(int control, int target, double angle) {
        return {GateKind::kCPhase, target, control, angle};
    }

    bool is_two_qubit() const noexcept {
        return kind == GateKind::kCNOT || kind == GateKind::kCPhase;
    }
    /// Throws kInvalidGate unless every index is below `n_qubits` and control != target.
    void validate(int n_qubits) const;

    bool operator==(const Gate &other) const = default;
};

std::string to_string(const Gate &gate);

class Circuit {
   public:
    explicit Circuit(int n_qubits);

    int n_qubits() const noexcept {
        return n_qubits_;
    }
    std::span<const Gate> gates() const noexcept {
        return gates_;
    }
    std::size_t size() const noexcept {
        return gates_.size();
    }

    Circuit &append(const Gate &gate);
    Circuit &append(std::span<const Gate> gates);

    bool operator==(const Circuit &other) const = default;

   private:
    int n_qubits_;
    std::vector<Gate> gates_;
};

/// Row-major dim x dim complex matrix of a pure state.
class DensityMatrix {
   public:
    DensityMatrix(std::size_t dim, std::vector<Complex> entries);

    std::size_t dim() const noexcept {
        return dim_;
    }
    const Complex &operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }
    std::span<const Complex> entries() const noexcept {
        return entries_;
    }
    Complex trace() const;
    /// tr(rho^2).
    double purity() const;

   private:
    std::size_t dim_;
    std::vector<Complex> entries_;
};

struct ExactCounts {};
struct SampledCounts {
    std::uint64_t shots = 1024;
    std::uint64_t seed = 0;
};
using CountsMode = std::variant<ExactCounts, SampledCounts>;

std::string to_string(const CountsMode &mode);

/// Normalized counts per basis label. Every label of the register is present,
/// zero-probability ones included, in lexicographic order.
struct CountsTable {
    CountsMode mode;
    std::map<std::string, double> entries;

    double at(const std::string &label) const;
};

StateVector apply_gate(const StateVector &state, const Gate &gate);
StateVector run_circuit(const Circuit &circuit, const StateVector &initial);
/// Runs from |0...0>.
StateVector run_circuit(const Circuit &circuit);
CountsTable measure_counts(const StateVector &state, const CountsMode &mode);
DensityMatrix density_matrix(const StateVector &state);
Complex inner_product(const StateVector &bra, const StateVector &ket);
/// |<target|actual>|^2, i.e. tr(rho_target rho_actual) for pure states.
double fidelity(const StateVector &target, const StateVector &actual);

}  // namespace nvent

#endif
