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

#ifndef NVENT_TESTS_TEST_UTIL_H
#define NVENT_TESTS_TEST_UTIL_H

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "nvent/qsim.h"

namespace nvent::testing {

inline StateVector random_state(std::mt19937_64 &rng, int n) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Complex> amps(std::size_t{1} << n);
    double norm = 0.0;
    for (auto &a : amps) {
        a = {g(rng), g(rng)};
        norm += std::norm(a);
    }
    for (auto &a : amps) a /= std::sqrt(norm);
    return StateVector::from_amplitudes(std::move(amps));
}

inline Gate random_gate(std::mt19937_64 &rng, int n) {
    std::uniform_int_distribution<int> kind(0, n > 1 ? 4 : 2), wire(0, n - 1);
    std::uniform_real_distribution<double> angle(-4.0 * std::numbers::pi, 4.0 * std::numbers::pi);
    const int k = kind(rng), t = wire(rng);
    int c = wire(rng);
    while (n > 1 && c == t) c = wire(rng);
    switch (k) {
        case 0:
            return Gate::hadamard(t);
        case 1:
            return Gate::pauli_x(t);
        case 2:
            return Gate::rot_z(t, angle(rng));
        case 3:
            return Gate::cnot(c, t);
        default:
            return Gate::cphase(c, t, angle(rng));
    }
}

inline Circuit random_circuit(std::mt19937_64 &rng, int n, int max_gates = 40) {
    std::uniform_int_distribution<int> len(0, max_gates);
    Circuit c(n);
    const int gates = len(rng);
    for (int i = 0; i < gates; ++i) c.append(random_gate(rng, n));
    return c;
}

inline double max_deviation(const StateVector &a, const StateVector &b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace nvent::testing

#endif
