// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cohomolib/lift.hpp>

#include <algorithm>
#include <cmath>

#include <cohomolib/error.hpp>

namespace cohomo {

CircleLift CircleLift::from_displacement(PeriodicFunction d, int order, std::string label)
{
    require(order >= 1 && order <= d.order(), ErrorCode::OrderUnavailable, "lift order exceeds displacement order");
    CircleLift f{Raw{}};
    f.order_ = order;
    f.label_ = std::move(label);
    const auto& s = d.samples();
    f.dmin_ = *std::min_element(s.begin(), s.end());
    f.dmax_ = *std::max_element(s.begin(), s.end());
    double mind = 1.0;
    if (d.bandwidth() > 0) {
        PeriodicFunction dd = d.derivative_function(1);
        for (double v : dd.samples()) mind = std::min(mind, 1.0 + v);
        // the interpolant may overshoot the samples between grid points
        double spread = 0.0;
        for (std::size_t k = 1; k < d.coefficients().size(); ++k) spread += 2.0 * std::abs(d.coefficients()[k]);
        f.dmin_ = std::min(f.dmin_, d.mean() - spread);
        f.dmax_ = std::max(f.dmax_, d.mean() + spread);
    }
    if (!(mind > 1e-8))
        fail(ErrorCode::NotADiffeomorphism, "minimum grid derivative " + std::to_string(mind) + " is not above 1e-8");
    f.min_df_ = mind;
    f.disp_ = std::move(d);
    return f;
}

CircleLift CircleLift::rotation(double a, std::size_t grid)
{
    return from_displacement(PeriodicFunction::constant(grid, a), kMaxJetOrder, "rotation");
}

void CircleLift::derivatives(double x, int smax, double* out) const
{
    require(smax <= order_, ErrorCode::DerivativeUnavailable,
            "derivative order " + std::to_string(smax) + " exceeds map order " + std::to_string(order_));
    disp_.derivatives(x, smax, out);
    out[0] += x;
    if (smax >= 1) out[1] += 1.0;
}

double CircleLift::deriv(int s, double x) const
{
    double buf[kMaxJetOrder + 1];
    derivatives(x, s, buf);
    return buf[s];
}

double CircleLift::log_df(double x) const { return std::log(1.0 + disp_.derivative(1, x)); }

Jet CircleLift::eval(const Jet& x) const
{
    require(x.order() <= order_, ErrorCode::DerivativeUnavailable, "jet order exceeds map order");
    return x + disp_.eval(x);
}

namespace {

// u with u + d(u) = s; bracket from the displacement range.
double solve_reduced(const PeriodicFunction& d, double dmin, double dmax, double s)
{
    const double margin = 1e-9;
    double lo = s - dmax - margin, hi = s - dmin + margin;
    auto g = [&](double u) { return u + d(u) - s; };
    for (int k = 0; k < 8 && g(lo) > 0; ++k) lo -= 0.5;
    for (int k = 0; k < 8 && g(hi) < 0; ++k) hi += 0.5;
    double u = std::clamp(s - d(s), lo, hi);
    double buf[2];
    for (int it = 0; it < 200; ++it) {
        d.derivatives(u, 1, buf);
        double gv = u + buf[0] - s;
        if (gv == 0.0) return u;
        if (gv < 0)
            lo = u;
        else
            hi = u;
        double un = u - gv / (1.0 + buf[1]);
        if (!(un > lo && un < hi)) un = 0.5 * (lo + hi);
        if (std::abs(un - u) <= 1e-17 * (1.0 + std::abs(u)) || hi - lo <= 4e-16 * (1.0 + std::abs(u))) {
            u = un;
            break;
        }
        u = un;
    }
    if (!(std::abs(g(u)) < 1e-13)) fail(ErrorCode::NewtonDivergence, "inverse evaluation did not converge");
    return u;
}

} // namespace

double CircleLift::inverse(double y) const
{
    if (is_rotation()) return y - disp_.mean();
    LiftPoint p = LiftPoint::of(y);
    return static_cast<double>(p.n) + solve_reduced(disp_, dmin_, dmax_, p.t);
}

LiftPoint CircleLift::inverse_step(LiftPoint p) const
{
    double u = is_rotation() ? p.t - disp_.mean() : solve_reduced(disp_, dmin_, dmax_, p.t);
    p.normalize(u);
    return p;
}

void CircleLift::advance(std::span<LiftPoint> pts, std::int64_t k) const
{
    if (k == 0) return;
    if (is_rotation()) {
        const double a = disp_.mean() * static_cast<double>(k >= 0 ? 1 : -1);
        const std::int64_t steps = k >= 0 ? k : -k;
        for (auto& p : pts)
            for (std::int64_t i = 0; i < steps; ++i) p.normalize(p.t + a);
        return;
    }
    constexpr std::size_t kLanes = 8;
    for (std::size_t b = 0; b < pts.size(); b += kLanes) {
        const std::size_t e = std::min(pts.size(), b + kLanes);
        if (k > 0) {
            for (std::int64_t i = 0; i < k; ++i)
                for (std::size_t l = b; l < e; ++l) pts[l] = step(pts[l]);
        } else {
            for (std::int64_t i = 0; i < -k; ++i)
                for (std::size_t l = b; l < e; ++l) pts[l] = inverse_step(pts[l]);
        }
    }
}

Jet CircleLift::inverse(const Jet& y) const
{
    require(y.order() <= order_, ErrorCode::DerivativeUnavailable, "jet order exceeds map order");
    const double x0 = inverse(y.value());
    const double df = deriv(1, x0);
    Jet x(x0, y.order());
    for (int it = 0; it <= y.order(); ++it) {
        Jet r = y - eval(x);
        r[0] = 0.0;
        x += r * (1.0 / df);
    }
    return x;
}

} // namespace cohomo
