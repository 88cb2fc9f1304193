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

#include "nvent/oracle.h"

#include <cmath>
#include <numbers>
#include <unsupported/Eigen/KroneckerProduct>

#include "nvent/error.h"

namespace nvent::oracle {

namespace {

using Mat = Eigen::MatrixXcd;

Mat identity(std::size_t dim) {
    return Mat::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

// Kronecker product of per-wire factors, wire 0 leftmost.
Mat kron_wires(const std::vector<Mat> &factors) {
    Mat out = Mat::Identity(1, 1);
    for (const auto &f : factors) {
        Mat next = Eigen::kroneckerProduct(out, f).eval();
        out = std::move(next);
    }
    return out;
}

Mat projector(int bit) {
    Mat p = Mat::Zero(2, 2);
    p(bit, bit) = 1.0;
    return p;
}

void check_size(int n) {
    if (n > kMaxOracleQubits) {
        throw Error(ErrorKind::kSizeCap,
                    "oracle handles at most 3 qubits, circuit has " + std::to_string(n));
    }
}

}  // namespace

Eigen::MatrixXcd local_matrix(const Gate &gate) {
    const double s = 1.0 / std::numbers::sqrt2;
    Mat m;
    switch (gate.kind) {
        case GateKind::kHadamard:
            m = Mat(2, 2);
            m << s, s, s, -s;
            return m;
        case GateKind::kPauliX:
            m = Mat(2, 2);
            m << 0.0, 1.0, 1.0, 0.0;
            return m;
        case GateKind::kRotZ:
            m = Mat::Zero(2, 2);
            m(0, 0) = std::polar(1.0, -gate.angle / 2.0);
            m(1, 1) = std::polar(1.0, gate.angle / 2.0);
            return m;
        case GateKind::kCNOT:
            m = Mat::Zero(4, 4);
            m(0, 0) = m(1, 1) = 1.0;
            m(2, 3) = m(3, 2) = 1.0;
            return m;
        case GateKind::kCPhase:
            m = identity(4);
            m(3, 3) = std::polar(1.0, gate.angle);
            return m;
    }
    throw Error(ErrorKind::kInvalidGate, "unknown gate kind");
}

namespace {

// Full-register matrix of one gate.
Mat embed(const Gate &gate, int n) {
    const Mat id2 = identity(2);
    if (!gate.is_two_qubit()) {
        std::vector<Mat> f(static_cast<std::size_t>(n), id2);
        f[static_cast<std::size_t>(gate.target)] = local_matrix(gate);
        return kron_wires(f);
    }
    // Sum over control projectors: |0><0| x I + |1><1| x V, V the target action.
    Mat v;
    if (gate.kind == GateKind::kCNOT) {
        v = Mat(2, 2);
        v << 0.0, 1.0, 1.0, 0.0;
    } else {
        v = id2;
        v(1, 1) = std::polar(1.0, gate.angle);
    }
    std::vector<Mat> off(static_cast<std::size_t>(n), id2);
    std::vector<Mat> on(static_cast<std::size_t>(n), id2);
    off[static_cast<std::size_t>(gate.control)] = projector(0);
    on[static_cast<std::size_t>(gate.control)] = projector(1);
    on[static_cast<std::size_t>(gate.target)] = v;
    return kron_wires(off) + kron_wires(on);
}

}  // namespace

DenseUnitary circuit_unitary(const Circuit &circuit) {
    const int n = circuit.n_qubits();
    check_size(n);
    Mat u = identity(std::size_t{1} << n);
    for (const auto &g : circuit.gates()) {
        g.validate(n);
        u = (embed(g, n) * u).eval();
    }
    return u;
}

StateVector oracle_state(const Circuit &circuit, const StateVector &initial) {
    check_size(circuit.n_qubits());
    if (initial.n_qubits() != circuit.n_qubits()) {
        throw Error(ErrorKind::kInvalidInput, "initial state size does not match the circuit");
    }
    const Mat u = circuit_unitary(circuit);
    Eigen::VectorXcd psi(static_cast<Eigen::Index>(initial.dim()));
    for (std::size_t i = 0; i < initial.dim(); ++i) psi(static_cast<Eigen::Index>(i)) = initial[i];
    const Eigen::VectorXcd out = u * psi;
    return StateVector::from_amplitudes(std::vector<Complex>(out.data(), out.data() + out.size()), 1e-9);
}

double verify_state(const Circuit &circuit, const StateVector &initial) {
    const StateVector expected = oracle_state(circuit, initial);
    const StateVector actual = run_circuit(circuit, initial);
    double worst = 0.0;
    for (std::size_t i = 0; i < expected.dim(); ++i) worst = std::max(worst, std::abs(expected[i] - actual[i]));
    return worst;
}

double unitarity_deviation(const DenseUnitary &u) {
    const Mat d = u.adjoint() * u - identity(static_cast<std::size_t>(u.rows()));
    return d.cwiseAbs().maxCoeff();
}

}  // namespace nvent::oracle
