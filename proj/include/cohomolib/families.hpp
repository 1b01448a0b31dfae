// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <cohomolib/circlemap.hpp>

namespace cohomo {

// "kind:key=value,..." where kind is rotation, arnold or spectral. The key
// rho takes a rotation-number spec (see make_cf); brackets may hold commas.
struct MapSpec {
    std::string kind;
    FamilyParams params;
    std::optional<std::string> rho;
};

MapSpec parse_map_spec(std::string_view spec);

struct MapBuildOptions {
    std::size_t grid = kDefaultGrid;
    int depth = 60;
    unsigned bits = kDefaultBits;
    std::int64_t tune_budget = kDefaultQBudget;
    double tune_tol = 1e-14;
};

struct BuiltMap {
    CircleLift map;
    ContinuedFraction cf;      // of rho(map), certified prefix for tuned maps
    double a = 0;
    int certified_level = -1;  // -1 for rigid rotations (cf is the target itself)
    bool tuned = false;
};

// With rho given the translation is tuned (rigid rotations take alpha
// directly); without it the map is built from a and its rotation number measured.
BuiltMap build_map(const MapSpec& spec, const MapBuildOptions& opt = {});

// Terms joined by '+', each "name" or "name:key=value,...":
//   cos, sin         k (1), amp (1), phase (0)     amp cos(2 pi k x + phase)
//   sawtooth         K (16), s (32)                sum_{j<=K} sin(2 pi j x)/(pi j) exp(-j^2/s)
//   const            c
//   spectral         c<k>, s<k>
//   cobound          v (sin|cos), k (1), amp (1)   v o f - v, needs a map
PeriodicFunction parse_phi(std::string_view spec, std::size_t grid, const CircleLift* f = nullptr);

} // namespace cohomo
