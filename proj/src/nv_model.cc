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

#include "nvent/nv_model.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "nvent/error.h"

namespace nvent {

std::string_view to_string(Pair pair) {
    switch (pair) {
        case Pair::kAC:
            return "AC";
        case Pair::kAB:
            return "AB";
        case Pair::kCB:
            return "CB";
    }
    return "?";
}

Pair parse_pair(std::string_view text) {
    std::string up(text);
    for (auto &c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (up == "AC" || up == "CA") return Pair::kAC;
    if (up == "AB" || up == "BA") return Pair::kAB;
    if (up == "CB" || up == "BC") return Pair::kCB;
    throw Error(ErrorKind::kInvalidInput, "unknown NV pair '" + std::string(text) + "' (expected ac, ab or cb)");
}

void CouplingConfig::validate() const {
    for (Pair p : kAllPairs) {
        const double v = coupling(p);
        if (!std::isfinite(v) || v <= 0.0) {
            std::ostringstream msg;
            msg << "coupling v_" << nvent::to_string(p) << " must be finite and > 0 kHz, got " << v;
            throw Error(ErrorKind::kInvalidConfig, msg.str());
        }
    }
}

double CouplingConfig::coupling(Pair pair) const {
    switch (pair) {
        case Pair::kAC:
            return v_ac_khz;
        case Pair::kAB:
            return v_ab_khz;
        case Pair::kCB:
            return v_cb_khz;
    }
    return 0.0;
}

double CouplingConfig::max_coupling() const {
    return std::max({v_ac_khz, v_ab_khz, v_cb_khz});
}

std::string CouplingConfig::to_string() const {
    std::ostringstream out;
    out << "(v_ac=" << v_ac_khz << ", v_ab=" << v_ab_khz << ", v_cb=" << v_cb_khz << ") kHz";
    return out.str();
}

std::string_view to_string(ShapeClass shape) {
    switch (shape) {
        case ShapeClass::kEquilateral:
            return "equilateral";
        case ShapeClass::kIsoscelesSingleDominant:
            return "isosceles-single-dominant";
        case ShapeClass::kIsoscelesDoubleDominant:
            return "isosceles-double-dominant";
        case ShapeClass::kScalene:
            return "scalene";
    }
    return "?";
}

std::string_view to_string(ConfigFamily family) {
    switch (family) {
        case ConfigFamily::kEquilateral:
            return "equilateral";
        case ConfigFamily::kIsosceles:
            return "isosceles";
        case ConfigFamily::kScalene:
            return "scalene";
        case ConfigFamily::kRealistic:
            return "realistic";
    }
    return "?";
}

double coupling_constant(const CouplingConfig &config) {
    config.validate();
    return 1.0 / (1.0 / config.v_ac_khz + 1.0 / config.v_ab_khz + 1.0 / config.v_cb_khz);
}

namespace {

bool nearly_equal(double a, double b, double tol_rel) {
    return std::abs(a - b) <= tol_rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

ShapeClass classify(const CouplingConfig &config, double tol_rel) {
    config.validate();
    const double a = config.v_ac_khz;
    const double b = config.v_ab_khz;
    const double c = config.v_cb_khz;
    const bool ab = nearly_equal(a, b, tol_rel);
    const bool ac = nearly_equal(a, c, tol_rel);
    const bool bc = nearly_equal(b, c, tol_rel);
    if (ab && ac && bc) return ShapeClass::kEquilateral;

    double pair_value;
    double odd_value;
    if (ab) {
        pair_value = a, odd_value = c;
    } else if (ac) {
        pair_value = a, odd_value = b;
    } else if (bc) {
        pair_value = b, odd_value = a;
    } else {
        return ShapeClass::kScalene;
    }
    return odd_value > pair_value ? ShapeClass::kIsoscelesSingleDominant : ShapeClass::kIsoscelesDoubleDominant;
}

namespace {

std::array<double, 3> rotate_left(std::array<double, 3> v, int times) {
    for (int k = 0; k < times; ++k) v = {v[1], v[2], v[0]};
    return v;
}

CouplingConfig from_tuple(const std::array<double, 3> &v) {
    return CouplingConfig{v[0], v[1], v[2]};
}

std::string level_tag(double v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

// Three cyclic rotations of `base` followed by the three rotations of its reflection.
void add_permutations(std::vector<CatalogueEntry> &out, ConfigFamily family, const std::string &prefix,
                      const std::array<double, 3> &base) {
    for (int r = 0; r < 3; ++r) {
        out.push_back({from_tuple(rotate_left(base, r)), family, prefix + "-r" + std::to_string(r), r});
    }
    const std::array<double, 3> reflected = {base[0], base[2], base[1]};
    for (int r = 0; r < 3; ++r) {
        out.push_back({from_tuple(rotate_left(reflected, r)), family, prefix + "-m" + std::to_string(r), -1});
    }
}

}  // namespace

std::vector<CatalogueEntry> enumerate_configurations(const CatalogueSpec &spec) {
    std::vector<CatalogueEntry> out;
    out.reserve(27);

    for (double level : spec.equilateral_levels_khz) {
        out.push_back({CouplingConfig{level, level, level}, ConfigFamily::kEquilateral,
                       "equilateral-" + level_tag(level), 0});
    }

    // Base isosceles tuple puts the odd coupling on CB; one left shift moves it
    // to AB, two to AC. Each arrangement also appears with the two equal slots
    // exchanged ("-mirror"), which is the same coupling triple.
    const double lo = std::min(spec.iso_pair_khz[0], spec.iso_pair_khz[1]);
    const double hi = std::max(spec.iso_pair_khz[0], spec.iso_pair_khz[1]);
    const std::array<const char *, 3> odd_slot = {"cb", "ab", "ac"};
    for (const bool single : {true, false}) {
        const double pair_value = single ? lo : hi;
        const double odd_value = single ? hi : lo;
        const std::string dom = single ? "single" : "double";
        for (int r = 0; r < 3; ++r) {
            const auto v = rotate_left({pair_value, pair_value, odd_value}, r);
            const std::string label = "iso-" + dom + "-" + odd_slot[static_cast<std::size_t>(r)];
            out.push_back({from_tuple(v), ConfigFamily::kIsosceles, label, r});
            out.push_back({from_tuple(v), ConfigFamily::kIsosceles, label + "-mirror", -1});
        }
    }

    add_permutations(out, ConfigFamily::kScalene, "scalene", spec.scalene_set_khz);
    add_permutations(out, ConfigFamily::kRealistic, "realistic", spec.realistic_set_khz);
    return out;
}

const CatalogueEntry &find_entry(const std::vector<CatalogueEntry> &catalogue, std::string_view label) {
    auto it = std::find_if(catalogue.begin(), catalogue.end(), [&](const auto &e) { return e.label == label; });
    if (it == catalogue.end()) throw Error(ErrorKind::kInvalidInput, "no catalogue entry labelled " + std::string(label));
    return *it;
}

}  // namespace nvent
