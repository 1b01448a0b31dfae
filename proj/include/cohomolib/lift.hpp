// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>

#include <cohomolib/periodic_function.hpp>

namespace cohomo {

// Point of the line split as n + t with t in [0, 1). Orbits keep the integer
// part exactly, so f^q(x) - x - p is formed without cancellation.
struct LiftPoint {
    std::int64_t n = 0;
    double t = 0.0;

    static LiftPoint of(double x) noexcept
    {
        double fl = std::floor(x);
        LiftPoint p{static_cast<std::int64_t>(fl), x - fl};
        if (p.t >= 1.0) {
            p.t -= 1.0;
            ++p.n;
        }
        return p;
    }
    double value() const noexcept { return static_cast<double>(n) + t; }
    // (this - o) as a real number.
    double minus(const LiftPoint& o) const noexcept { return static_cast<double>(n - o.n) + (t - o.t); }
    void normalize(double y) noexcept
    {
        double fl = std::floor(y);
        n += static_cast<std::int64_t>(fl);
        t = y - fl;
        if (t >= 1.0) {
            t -= 1.0;
            ++n;
        }
    }
};

// Lift x + d(x) of an orientation-preserving circle diffeomorphism, d periodic.
class CircleLift {
public:
    CircleLift() : CircleLift(rotation(0.0)) {}

    // Rejects maps whose grid derivative drops to 1e-8 or below.
    static CircleLift from_displacement(PeriodicFunction d, int order = kMaxJetOrder, std::string label = "custom");
    static CircleLift rotation(double a, std::size_t grid = kDefaultGrid);

    const PeriodicFunction& displacement() const noexcept { return disp_; }
    int order() const noexcept { return order_; }
    std::size_t grid() const noexcept { return disp_.size(); }
    const std::string& label() const noexcept { return label_; }
    bool is_rotation() const noexcept { return disp_.bandwidth() == 0; }
    double min_derivative() const noexcept { return min_df_; }
    double displacement_min() const noexcept { return dmin_; }
    double displacement_max() const noexcept { return dmax_; }

    double operator()(double x) const noexcept { return x + disp_(x); }
    LiftPoint step(LiftPoint p) const noexcept
    {
        p.normalize(p.t + disp_(p.t));
        return p;
    }
    // Moves every point k steps (k < 0 steps backwards), lanes interleaved.
    void advance(std::span<LiftPoint> pts, std::int64_t k) const;

    // out[0] = f(x), out[s] = D^s f(x)
    void derivatives(double x, int smax, double* out) const;
    double deriv(int s, double x) const;
    double log_df(double x) const;
    Jet eval(const Jet& x) const;

    // Unique x with f(x) = y via safeguarded Newton.
    double inverse(double y) const;
    LiftPoint inverse_step(LiftPoint p) const;
    Jet inverse(const Jet& y) const;

private:
    struct Raw {};
    explicit CircleLift(Raw) {}

    PeriodicFunction disp_;
    int order_ = kMaxJetOrder;
    std::string label_;
    double min_df_ = 1.0;
    double dmin_ = 0.0, dmax_ = 0.0;
};

} // namespace cohomo
