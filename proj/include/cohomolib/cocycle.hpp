// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <cohomolib/circlemap.hpp>

namespace cohomo {

// S^k phi(x) = sum_{i<k} phi(f^i x); for k < 0, -sum_{i=1..|k|} phi(f^{-i} x).
double birkhoff_sum(const PeriodicFunction& phi, const CircleLift& f, std::int64_t k, double x);

// S^k phi at every point of xs, orbits interleaved and split across threads.
std::vector<double> birkhoff_values(const PeriodicFunction& phi, const CircleLift& f, std::int64_t k,
                                    std::span<const double> xs);

// S^{ks[i]} phi(xs[j]) from a single pass; ks sorted and non-negative.
std::vector<std::vector<double>> birkhoff_checkpoints(const PeriodicFunction& phi, const CircleLift& f,
                                                      std::span<const std::int64_t> ks, std::span<const double> xs);
// Same for several observables along shared orbits; indexed [observable][checkpoint][point].
std::vector<std::vector<std::vector<double>>> birkhoff_checkpoints(std::span<const PeriodicFunction* const> phis,
                                                                   const CircleLift& f,
                                                                   std::span<const std::int64_t> ks,
                                                                   std::span<const double> xs);

// Grid variant: S^k phi sampled at j/grid (grid 0 means phi's grid).
PeriodicFunction birkhoff_sum_grid(const PeriodicFunction& phi, const CircleLift& f, std::int64_t k,
                                   std::size_t grid = 0);

struct BirkhoffRecord {
    int n = 0;
    std::int64_t k = 0;
    PeriodicFunction values;
    double mean_estimate = 0; // mean of S^k phi / k over the grid
    double sup_deviation = 0; // sup |S^k phi - k * mean_estimate|
};

BirkhoffRecord birkhoff_record(const PeriodicFunction& phi, const CircleLift& f, const ContinuedFraction& cf, int n,
                               std::size_t grid = 0, std::int64_t budget = kDefaultQBudget);

struct Variation {
    double value = 0;
    bool lower_bound = false; // grid sum for inputs without a derivative
    int extrema = 0;
};

// Var(phi) as the sum of |phi| increments between consecutive critical points.
Variation total_variation(const PeriodicFunction& phi);

// max_{j<=r} sup |D^j phi| over the grid.
double cr_norm(const PeriodicFunction& phi, int r);
// Same over the grid points of I (taken mod 1) and the endpoints.
double cr_norm_on_interval(const PeriodicFunction& phi, const Interval& I, int r);
// For functions on the line: `samples` equispaced points of I plus endpoints.
double cr_norm_on_interval(const LineFunction& phi, const Interval& I, int r, std::size_t samples = 512);

struct InvariantAverage {
    double mu = 0;
    double error_bound = 0; // Var(phi) / q_N
    int level = 0;
    std::int64_t q = 0;
};

InvariantAverage invariant_average(const PeriodicFunction& phi, const CircleLift& f, const ContinuedFraction& cf,
                                   int level, double x0 = 0.0, std::int64_t budget = 100'000'000);
std::vector<InvariantAverage> invariant_averages(std::span<const PeriodicFunction* const> phis, const CircleLift& f,
                                                const ContinuedFraction& cf, int level, double x0 = 0.0,
                                                std::int64_t budget = 100'000'000);

struct DKOptions {
    std::size_t grid = 512;          // points for the sup over x
    std::size_t interval_points = 4; // points of I_n(0) for the bounded-distortion form
    std::int64_t budget = kDefaultQBudget;
    std::int64_t interval_budget = 20'000'000; // cap on q_{n+1} for the interval form
    bool throw_on_violation = true;
};

struct DKReport {
    int n = 0;
    std::int64_t q = 0;
    double sup_dev = 0;     // sup_x |S^{q_n} phi - q_n mu|
    double var = 0;         // Var(phi)
    double slack = 0;       // interp_slack + mu_slack
    double interp_slack = 0;
    double mu_slack = 0;
    double interval_dev = 0; // max_{k <= q_{n+1}} spread of S^k phi over sampled points of I_n(0)
    bool interval_checked = false;
    bool pass = false;
};

// Checks every level in `levels` with the invariant average `avg`; throws
// BoundViolated when a deviation exceeds Var + slack.
std::vector<DKReport> denjoy_koksma_sweep(const PeriodicFunction& phi, const CircleLift& f,
                                          const ContinuedFraction& cf, std::span<const int> levels,
                                          const InvariantAverage& avg, const DKOptions& opt = {});
// Several observables along the same orbits; result indexed [observable][level].
std::vector<std::vector<DKReport>> denjoy_koksma_sweep(std::span<const PeriodicFunction* const> phis,
                                                       const CircleLift& f, const ContinuedFraction& cf,
                                                       std::span<const int> levels,
                                                       std::span<const InvariantAverage> avgs,
                                                       const DKOptions& opt = {});

DKReport denjoy_koksma_check(const PeriodicFunction& phi, const CircleLift& f, const ContinuedFraction& cf, int n,
                             const InvariantAverage& avg, const DKOptions& opt = {});

struct HermanEntry {
    int n = 0;
    std::int64_t q = 0;
    double norm = 0; // sup |log Df^{q_n}| = sup |S^{q_n} log Df|
};

std::vector<HermanEntry> herman_sequence(const CircleLift& f, const ContinuedFraction& cf, int n_max,
                                         std::size_t grid = 512, std::int64_t budget = kDefaultQBudget);

// sum_{i=0..r} (beta_{n-1} / (beta_{n-1} - beta_n))^i
double theta(const ContinuedFraction& cf, int n, int r);

} // namespace cohomo
