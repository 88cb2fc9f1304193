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

#ifndef NVENT_NV_MODEL_H
#define NVENT_NV_MODEL_H

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace nvent {

/// The three dipolar-coupled NV pairs, in Hamiltonian term order.
enum class Pair { kAC, kAB, kCB };

inline constexpr std::array<Pair, 3> kAllPairs = {Pair::kAC, Pair::kAB, Pair::kCB};

std::string_view to_string(Pair pair);
/// Accepts "ac", "AC", "ab", "cb", ... (case-insensitive).
Pair parse_pair(std::string_view text);

/// Register wires of NV_A, NV_B, NV_C in three-qubit circuits.
inline constexpr int kQubitA = 0;
inline constexpr int kQubitB = 1;
inline constexpr int kQubitC = 2;

/// Dipolar coupling strengths in kHz.
struct CouplingConfig {
    double v_ac_khz = 0.0;
    double v_ab_khz = 0.0;
    double v_cb_khz = 0.0;

    /// Throws kInvalidConfig unless all three are finite and > 0.
    void validate() const;
    double coupling(Pair pair) const;
    double max_coupling() const;
    std::string to_string() const;

    bool operator==(const CouplingConfig &other) const = default;
};

enum class ShapeClass { kEquilateral, kIsoscelesSingleDominant, kIsoscelesDoubleDominant, kScalene };

std::string_view to_string(ShapeClass shape);

/// Ground-state constants of the NV centre. They enter the secular
/// Hamiltonian but not the zero-field dipolar circuit model, so nothing in the
/// simulation reads them.
struct PhysicalConstants {
    static constexpr double kZeroFieldSplittingGhz = 2.87;
    static constexpr double kGyromagneticRatioMhzPerGauss = 2.8;
};

/// R = (1/v_ac + 1/v_ab + 1/v_cb)^-1, in kHz.
double coupling_constant(const CouplingConfig &config);

ShapeClass classify(const CouplingConfig &config, double tol_rel = 1e-6);

enum class ConfigFamily { kEquilateral, kIsosceles, kScalene, kRealistic };

std::string_view to_string(ConfigFamily family);

struct CatalogueEntry {
    CouplingConfig config;
    ConfigFamily family;
    /// Unique arrangement label, e.g. "iso-single-cb" or "realistic-r1".
    std::string label;
    /// Number of cyclic left shifts (v_ac, v_ab, v_cb) -> (v_ab, v_cb, v_ac)
    /// applied to the family's base tuple; -1 for reflected arrangements and
    /// for families where rotation is not meaningful.
    int rotation = -1;
};

struct CatalogueSpec {
    std::array<double, 3> equilateral_levels_khz = {5.0, 20.0, 50.0};
    /// (small, large) values used for every isosceles arrangement.
    std::array<double, 2> iso_pair_khz = {5.0, 50.0};
    std::array<double, 3> scalene_set_khz = {5.0, 20.0, 50.0};
    std::array<double, 3> realistic_set_khz = {53.0, 4.6, 24.1};
};

/// 3 equilateral + 12 isosceles + 6 scalene + 6 realistic arrangements.
std::vector<CatalogueEntry> enumerate_configurations(const CatalogueSpec &spec = {});

/// Catalogue entry by label; throws kInvalidInput when absent.
const CatalogueEntry &find_entry(const std::vector<CatalogueEntry> &catalogue, std::string_view label);

}  // namespace nvent

#endif
