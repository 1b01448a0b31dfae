// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include <cohomolib/arithmetic.hpp>
#include <cohomolib/periodic_function.hpp>

namespace cohomo {

// e^{2 pi i k alpha} - 1 with k alpha reduced mod 1 in alpha's precision.
cplx rotation_divisor(const BigFloat& alpha, std::int64_t k);

struct ModeRow {
    std::int64_t k = 0;
    double psi_abs = 0, divisor_abs = 0, u_abs = 0;
    double exactness = 0; // |u_k d_k - psi_k| / |psi_k|
};

struct SmallDivisorReport {
    int K = 0;
    double psi_mean_removed = 0;
    std::vector<ModeRow> modes;
    double residual = 0; // sup over the grid of |u(x + alpha) - u(x) - (psi - mean)|
    double max_psi = 0, max_u = 0;
    bool growth = false; // max |u_k| > 1e6 max |psi_k|
};

struct RotationSolution {
    PeriodicFunction u;
    SmallDivisorReport report;
};

// u with u o R_alpha - u = psi - psi_0 on modes 0 < |k| <= K, normalised to u_0 = 0.
RotationSolution solve_rotation(const PeriodicFunction& psi, const BigFloat& alpha, int K);
RotationSolution solve_rotation(const PeriodicFunction& psi, double alpha, int K);

struct LiouvilleCounterexample {
    PeriodicFunction psi;
    std::vector<int> levels;             // m in L(alpha, tau)
    std::vector<std::int64_t> modes;     // n_j = q_m
};

// psi = sum_j (e^{2 pi i n_j alpha} - 1) e^{2 pi i n_j x} + conj, whose formal
// solution has coefficient exactly 1 at every witness mode.
LiouvilleCounterexample liouville_counterexample(const ContinuedFraction& cf, int J, double tau = 2.0,
                                                 std::size_t grid = kDefaultGrid);

} // namespace cohomo
