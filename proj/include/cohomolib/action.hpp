// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include <cohomolib/circlemap.hpp>

namespace cohomo {

// (x, y) -> (base(x), y + fiber(x))
struct FiberedPair {
    LineMap base;
    LineFunction fiber;

    static FiberedPair identity() { return {LineMap::identity(), LineFunction::zero()}; }
    // (f, psi)(g, xi) = (f o g, xi + psi o g): apply (g, xi) first.
    friend FiberedPair operator*(const FiberedPair& a, const FiberedPair& b);
    FiberedPair inverse() const;
    FiberedPair power(std::int64_t k) const;
};

FiberedPair operator*(const FiberedPair& a, const FiberedPair& b);

// Sup distance of two pairs over sample points of [0, 1).
double pair_distance(const FiberedPair& a, const FiberedPair& b, std::size_t samples = 256);

class FiberedAction {
public:
    FiberedAction() = default;
    // Checks g10 g01 = g01 g10 on `check_points` points (0 skips); NotCommuting otherwise.
    FiberedAction(FiberedPair g10, FiberedPair g01, std::size_t check_points = 64, double tol = 1e-9);

    const FiberedPair& g10() const noexcept { return g10_; }
    const FiberedPair& g01() const noexcept { return g01_; }
    double commutation_defect() const noexcept { return defect_; }

private:
    FiberedPair g10_ = FiberedPair::identity(), g01_ = FiberedPair::identity();
    double defect_ = 0.0;
};

// Gamma(f, phi): (1,0) -> (x - 1, 0), (0,1) -> (f, phi).
FiberedAction induced_action(const CircleLift& f, const PeriodicFunction& phi);
FiberedAction induced_action(std::shared_ptr<const CircleLift> f, const LineFunction& phi);

// Phi(m, n) = g10^m g01^n.
FiberedPair act(const FiberedAction& phi, std::int64_t m, std::int64_t n,
                std::int64_t budget = 4 * kDefaultQBudget);

// T_{(g, xi)}: (f, psi) -> (g f g^-1, (psi + xi o f - xi) o g^-1) per generator.
// g must commute with x -> x + 1 and xi be periodic (NonPeriodicConjugator).
FiberedAction conjugate(const FiberedAction& phi, const LineMap& g, const LineFunction& xi);

struct IntMat2 {
    std::int64_t a = 1, b = 0, c = 0, d = 1;
    std::int64_t det() const noexcept { return a * d - b * c; }
    friend IntMat2 operator*(const IntMat2& x, const IntMat2& y) noexcept
    {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
};

// U_A(Phi)(v) = Phi(A^{-1} v); NotUnimodular unless det A = +-1.
FiberedAction rebase(const FiberedAction& phi, const IntMat2& A, std::size_t check_points = 64);
IntMat2 to_int(const Mat2& m);

// Gamma_n(phi) = U_{A_n} Gamma(f, phi): generators (f_{n-1}, S^{q_{n-1}} phi), (f_n, S^{q_n} phi).
FiberedAction renormalize(const CircleLift& f, const PeriodicFunction& phi, const ContinuedFraction& cf, int n,
                          std::int64_t budget = kDefaultQBudget, std::size_t check_points = 16);
FiberedAction renormalize(std::shared_ptr<const CircleLift> f, const LineFunction& phi, const ContinuedFraction& cf,
                          int n, std::int64_t budget = kDefaultQBudget, std::size_t check_points = 16);

// Finite scan: f^{m,n} has no fixed point on `samples` points for 0 < max(|m|,|n|) <= range.
bool fixed_point_free_scan(const FiberedAction& phi, int range = 3, std::size_t samples = 16);

struct CoboundaryWitness {
    bool pass = false;
    double sup10 = 0; // sup |psi^{1,0}| on [x*, f^{0,1}(x*)]
    double sup01 = 0; // sup |psi^{0,1}| on [x*, f^{1,0}(x*)]
    double tol = 0;
};

CoboundaryWitness flatness_test(const FiberedAction& phi, double x_star, double tol, std::size_t samples = 257);

struct LineCohomology {
    LineFunction u;
    double x0 = 0, z = 0;       // fundamental domain [x0, f(x0)]
    Interval window;           // [f^{-K} x0, f^{K} x0]
    double residual = 0;        // sup |u o f - u - phi| on the window samples
};

// u on [x0, f x0] is zeta(3s - 1) phi(f^{-1} x), s = (x - x0)/(f x0 - x0), and
// u(x) = u(f^{-k} x) + S^k phi(f^{-k} x) elsewhere in the window.
LineCohomology solve_line_cohomology(const LineMap& f, const LineFunction& phi, double x0, int K = 4,
                                     std::size_t samples = 512);

} // namespace cohomo
