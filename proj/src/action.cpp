// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cohomolib/action.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include <cohomolib/error.hpp>
#include <cohomolib/parallel.hpp>
#include <cohomolib/smoothstep.hpp>

namespace cohomo {

FiberedPair operator*(const FiberedPair& a, const FiberedPair& b)
{
    return {compose(a.base, b.base), LineFunction::combine(1.0, b.fiber, 1.0, LineFunction::compose(a.fiber, b.base))};
}

FiberedPair FiberedPair::inverse() const { return {base.inverse_map(), LineFunction::birkhoff(fiber, base, -1)}; }

FiberedPair FiberedPair::power(std::int64_t k) const { return {base.power(k), LineFunction::birkhoff(fiber, base, k)}; }

double pair_distance(const FiberedPair& a, const FiberedPair& b, std::size_t samples)
{
    std::vector<double> d(samples, 0.0);
    parallel_for(
        samples,
        [&](std::size_t j) {
            const double x = static_cast<double>(j) / static_cast<double>(samples);
            d[j] = std::max(std::abs(a.base(x) - b.base(x)), std::abs(a.fiber(x) - b.fiber(x)));
        },
        4);
    return samples ? *std::max_element(d.begin(), d.end()) : 0.0;
}

FiberedAction::FiberedAction(FiberedPair g10, FiberedPair g01, std::size_t check_points, double tol)
    : g10_(std::move(g10)), g01_(std::move(g01))
{
    if (check_points == 0) return;
    defect_ = pair_distance(g10_ * g01_, g01_ * g10_, check_points);
    if (!(defect_ <= tol))
        fail(ErrorCode::NotCommuting, "generators fail to commute by " + std::to_string(defect_));
}

FiberedAction induced_action(std::shared_ptr<const CircleLift> f, const LineFunction& phi)
{
    FiberedPair tau{LineMap::translation(-1.0), LineFunction::zero()};
    FiberedPair gen{LineMap::lift_power(std::move(f), 1, 0), phi};
    return FiberedAction(std::move(tau), std::move(gen), 0);
}

FiberedAction induced_action(const CircleLift& f, const PeriodicFunction& phi)
{
    return induced_action(std::make_shared<CircleLift>(f), LineFunction::periodic(phi));
}

FiberedPair act(const FiberedAction& phi, std::int64_t m, std::int64_t n, std::int64_t budget)
{
    if (std::abs(m) > budget || std::abs(n) > budget)
        fail(ErrorCode::BudgetExceeded, "word length exceeds the evaluation budget");
    return phi.g10().power(m) * phi.g01().power(n);
}

FiberedAction conjugate(const FiberedAction& phi, const LineMap& g, const LineFunction& xi)
{
    if (!g.periodic() || !xi.periodic())
        fail(ErrorCode::NonPeriodicConjugator, "conjugator must commute with the unit translation");
    const LineMap ginv = g.inverse_map();
    auto one = [&](const FiberedPair& p) {
        LineFunction fib = LineFunction::combine(1.0, p.fiber, 1.0,
                                                 LineFunction::combine(1.0, LineFunction::compose(xi, p.base), -1.0, xi));
        return FiberedPair{compose(g, compose(p.base, ginv)), LineFunction::compose(fib, ginv)};
    };
    return FiberedAction(one(phi.g10()), one(phi.g01()), 0);
}

IntMat2 to_int(const Mat2& m)
{
    auto cv = [](const BigInt& v) {
        require(boost::multiprecision::abs(v) <= BigInt(std::numeric_limits<std::int64_t>::max() / 4),
                ErrorCode::BudgetExceeded, "matrix entry does not fit 64 bits");
        return v.convert_to<std::int64_t>();
    };
    return {cv(m.a), cv(m.b), cv(m.c), cv(m.d)};
}

FiberedAction rebase(const FiberedAction& phi, const IntMat2& A, std::size_t check_points)
{
    const std::int64_t det = A.det();
    if (det != 1 && det != -1) fail(ErrorCode::NotUnimodular, "det A = " + std::to_string(det));
    // A^{-1} = det [[d, -b], [-c, a]]
    FiberedPair e1 = act(phi, det * A.d, -det * A.c, std::numeric_limits<std::int64_t>::max());
    FiberedPair e2 = act(phi, -det * A.b, det * A.a, std::numeric_limits<std::int64_t>::max());
    return FiberedAction(std::move(e1), std::move(e2), check_points);
}

FiberedAction renormalize(std::shared_ptr<const CircleLift> f, const LineFunction& phi, const ContinuedFraction& cf,
                          int n, std::int64_t budget, std::size_t check_points)
{
    require(n >= 1, ErrorCode::InvalidArgument, "renormalization level must be at least 1");
    if (n > cf.usable_depth())
        fail(ErrorCode::RationalRotation, "level " + std::to_string(n) + " is beyond the irrational part of the expansion");
    cf.q_count(n, budget);
    return rebase(induced_action(std::move(f), phi), to_int(renormalization_matrix(cf, n)), check_points);
}

FiberedAction renormalize(const CircleLift& f, const PeriodicFunction& phi, const ContinuedFraction& cf, int n,
                          std::int64_t budget, std::size_t check_points)
{
    return renormalize(std::make_shared<CircleLift>(f), LineFunction::periodic(phi), cf, n, budget, check_points);
}

bool fixed_point_free_scan(const FiberedAction& phi, int range, std::size_t samples)
{
    for (int m = 0; m <= range; ++m) {
        for (int n = -range; n <= range; ++n) {
            if (m == 0 && n <= 0) continue; // (-m, -n) gives the inverse map
            const LineMap g = act(phi, m, n).base;
            int sign = 0;
            for (std::size_t j = 0; j < samples; ++j) {
                const double x = static_cast<double>(j) / static_cast<double>(samples);
                const double d = g(x) - x;
                const int s = d > 0 ? 1 : (d < 0 ? -1 : 0);
                if (s == 0 || (sign != 0 && s != sign)) return false;
                sign = s;
            }
        }
    }
    return true;
}

CoboundaryWitness flatness_test(const FiberedAction& phi, double x_star, double tol, std::size_t samples)
{
    CoboundaryWitness w;
    w.tol = tol;
    auto sup_on = [&](const LineFunction& psi, double a, double b) {
        std::vector<double> v(samples, 0.0);
        parallel_for(
            samples,
            [&](std::size_t j) {
                const double t = samples > 1 ? static_cast<double>(j) / static_cast<double>(samples - 1) : 0.0;
                v[j] = std::abs(psi(a + t * (b - a)));
            },
            4);
        return samples ? *std::max_element(v.begin(), v.end()) : 0.0;
    };
    w.sup10 = sup_on(phi.g10().fiber, x_star, phi.g01().base(x_star));
    w.sup01 = sup_on(phi.g01().fiber, x_star, phi.g10().base(x_star));
    w.pass = w.sup10 <= tol && w.sup01 <= tol;
    return w;
}

namespace {

struct LineSolver {
    LineMap f;
    LineFunction phi;
    double x0, z, s, len;

    double pos(double y) const { return (y - x0) * s; }

    template <class T>
    T domain_value(const T& y) const
    {
        T t = (y - x0) * (1.0 / (z - x0));
        if constexpr (std::is_same_v<T, double>)
            return SmoothStep::value(3.0 * t - 1.0) * phi(f.inverse(y));
        else
            return SmoothStep::eval(3.0 * t - 1.0) * phi(f.inverse(y));
    }

    template <class T>
    T eval(const T& x) const
    {
        auto val = [](const T& v) {
            if constexpr (std::is_same_v<T, double>)
                return v;
            else
                return v.value();
        };
        T y = x;
        T acc = y * 0.0;
        int steps = 0;
        while (pos(val(y)) >= len) {
            T yp = f.inverse(y);
            if (!(std::abs(val(yp) - val(y)) > 1e-14))
                fail(ErrorCode::FixedPointInWindow, "map is numerically stationary inside the window");
            acc += phi(yp);
            y = yp;
            if (++steps > 1000000) fail(ErrorCode::BudgetExceeded, "point lies too many domains away");
        }
        while (pos(val(y)) < 0) {
            T yn = f(y);
            if (!(std::abs(val(yn) - val(y)) > 1e-14))
                fail(ErrorCode::FixedPointInWindow, "map is numerically stationary inside the window");
            acc -= phi(y);
            y = yn;
            if (++steps > 1000000) fail(ErrorCode::BudgetExceeded, "point lies too many domains away");
        }
        return domain_value(y) + acc;
    }
};

} // namespace

LineCohomology solve_line_cohomology(const LineMap& f, const LineFunction& phi, double x0, int K, std::size_t samples)
{
    require(K >= 1, ErrorCode::InvalidArgument, "window needs at least one domain on each side");
    LineCohomology out;
    out.x0 = x0;
    out.z = f(x0);
    if (!(std::abs(out.z - x0) > 1e-14)) fail(ErrorCode::FixedPointInWindow, "f(x0) = x0");
    double lo = x0, hi = x0;
    for (int k = 0; k < K; ++k) {
        lo = f.inverse(lo);
        hi = f(hi);
        if (!(std::abs(hi - x0) > 1e-14) || !(std::abs(lo - x0) > 1e-14))
            fail(ErrorCode::FixedPointInWindow, "orbit of x0 returns inside the window");
    }
    out.window = Interval::between(lo, hi);

    auto solver = std::make_shared<LineSolver>(
        LineSolver{f, phi, x0, out.z, out.z > x0 ? 1.0 : -1.0, std::abs(out.z - x0)});
    out.u = LineFunction::custom([solver](double x) { return solver->eval(x); },
                                 [solver](const Jet& x) { return solver->eval(x); }, false);

    // residual on [f^{-K} x0, f^{K-1} x0] so that f(x) stays in the window
    const double a = lo, b = f.inverse(hi);
    std::vector<double> r(samples + 1, 0.0);
    parallel_for(
        samples + 1,
        [&](std::size_t j) {
            const double x = a + (b - a) * static_cast<double>(j) / static_cast<double>(samples);
            r[j] = std::abs(out.u(f(x)) - out.u(x) - phi(x));
        },
        8);
    out.residual = *std::max_element(r.begin(), r.end());
    return out;
}

} // namespace cohomo
