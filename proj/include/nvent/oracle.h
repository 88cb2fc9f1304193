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

#ifndef NVENT_ORACLE_H
#define NVENT_ORACLE_H

#include <Eigen/Dense>

#include "nvent/qsim.h"

namespace nvent::oracle {

using DenseUnitary = Eigen::MatrixXcd;

/// Dense matrix cap: three qubits.
inline constexpr int kMaxOracleQubits = 3;

/// 2x2 matrix of a single-qubit gate, or 4x4 of a two-qubit gate in the
/// (control, target) basis with the control as the high bit.
Eigen::MatrixXcd local_matrix(const Gate &gate);

/// Product of per-gate matrices, each embedded by Kronecker products with
/// wire 0 as the leftmost factor. Throws kSizeCap above three qubits.
DenseUnitary circuit_unitary(const Circuit &circuit);

/// max |engine(initial) - U initial| over amplitudes.
double verify_state(const Circuit &circuit, const StateVector &initial);

/// max |(U^dagger U - I)_rc|.
double unitarity_deviation(const DenseUnitary &u);

/// U applied to `initial`, computed without the statevector engine.
StateVector oracle_state(const Circuit &circuit, const StateVector &initial);

}  // namespace nvent::oracle

#endif
