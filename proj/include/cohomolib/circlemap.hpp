// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <cohomolib/arithmetic.hpp>
#include <cohomolib/line.hpp>

namespace cohomo {

inline constexpr std::int64_t kDefaultQBudget = 1'000'000;

using FamilyParams = std::map<std::string, double>;

// Test families, all of the form x + a + g(x):
//   rotation        a
//   arnold          a, eps           g = eps/(2 pi) sin(2 pi x), |eps| < 1
//   spectral        a, c<k>, s<k>    g = sum c_k cos(2 pi k x) + s_k sin(2 pi k x)
CircleLift make_family(const std::string& kind, const FamilyParams& params, std::size_t grid = kDefaultGrid);

// (x0, f(x0), ..., f^k(x0))
std::vector<double> iterate_orbit(const CircleLift& f, double x0, std::int64_t k);

struct RotationNumber {
    double alpha = 0;          // p_L / q_L
    double error_bound = 0;    // |alpha - rho| bound, 1/(q_L (q_L + q_{L-1}))
    ContinuedFraction cf;      // quotients a_0..a_L found
    std::int64_t iterations = 0;
    bool max_iter_reached = false;
};

// Combinatorial rotation number: a_{n+1} is the number of applications of
// f_n that keep f_{n-1} f_n^k (0) on the side of f_{n-1}(0). Stops once
// 1/(q_n q_{n+1}) < tol.
RotationNumber rotation_number(const CircleLift& f, double tol = 1e-12, std::int64_t max_iter = 50'000'000);

struct TunedMap {
    CircleLift map;
    double a = 0;               // translation parameter
    ContinuedFraction cf;       // certified prefix a_0..a_L of rho(map)
    int certified_level = -1;
    double rho = 0;             // achieved rotation number estimate
    double rho_error = 0;
};

// Root-finds the translation a so that rho(f_a) shares the target's quotients
// through the deepest level L with q_L + q_{L-1} <= budget (and width above tol).
TunedMap tune_to_rotation(const std::string& kind, const FamilyParams& params, const ContinuedFraction& target,
                          double tol = 1e-14, std::int64_t budget = kDefaultQBudget, std::size_t grid = kDefaultGrid);

// Closed interval on the line stored as lo <= hi; parity is +1 when it was
// given as [from, to] with from <= to.
struct Interval {
    double lo = 0, hi = 0;
    int parity = 1;

    static Interval between(double from, double to) noexcept
    {
        return from <= to ? Interval{from, to, 1} : Interval{to, from, -1};
    }
    double length() const noexcept { return hi - lo; }
    bool contains(double x, double slack = 0.0) const noexcept { return x >= lo - slack && x <= hi + slack; }
};

struct GeometryOptions {
    std::size_t grid = 0;                // 0: the map's grid
    std::int64_t budget = kDefaultQBudget;
};

struct RenormGeometry {
    int n = 0;
    std::int64_t p_prev = 0, q_prev = 0, p_cur = 0, q_cur = 0;
    std::shared_ptr<const CircleLift> base;
    LineMap f_prev, f_cur;                // f_{n-1}, f_n
    PeriodicFunction m_prev, m_cur;       // |f_{n-1} - id|, |f_n - id| on the grid
    double M_prev = 0, M_cur = 0;         // grid maxima
    double x_star = 0;                    // refined maximiser of m_{n-1}
    double m_star = 0;                    // m_{n-1}(x_star), at least M_prev
    int sign_prev = 0, sign_cur = 0;      // sign of f_k - id, (-1)^k
    double min_m_cur = 0, min_m_prev = 0;

    // I_k(x) = [x, f_k x], J_k(x) = [f_{k+1} x, f_k x], K_k(x) = [f_k^{-2} x, f_k x], k in {n-1, n}.
    Interval I(int k, double x) const;
    Interval J(int k, double x) const;
    Interval K(int k, double x) const;
    const LineMap& f(int k) const;
};

// Requires 1 <= n <= cf.usable_depth() (RationalRotation otherwise) and q_n <= budget.
RenormGeometry renorm_geometry(const CircleLift& f, const ContinuedFraction& cf, int n, const GeometryOptions& opt = {});

struct PartitionReport {
    int n = 0;
    std::int64_t pieces = 0;        // q_{n+1}
    double worst_overlap = 0;       // largest interior overlap among circle intervals
    double covered = 0;             // total length of the pieces
    bool j_split = true;            // J_n = I_{n+1} u I_n
    bool k_split = true;            // K_n = I_n(f_n^{-2}x) u I_n(f_n^{-1}x) u I_n(x)
    bool ok = true;
};

// Throws PartitionViolation when overlaps exceed tol.
PartitionReport check_partition(const CircleLift& f, const ContinuedFraction& cf, int n, double x = 0.0,
                                double tol = 1e-10, std::int64_t budget = 100'000);

// (D^1 f^k, ..., D^s f^k)(x); the logarithmic derivatives come from Birkhoff
// sums of log Df along the orbit, the rest from dr1_from_log.
std::vector<double> iterate_derivatives(const CircleLift& f, std::int64_t k, int s, double x);

} // namespace cohomo
