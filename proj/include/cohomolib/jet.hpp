// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <span>

#include <cohomolib/error.hpp>

namespace cohomo {

inline constexpr int kMaxJetOrder = 16;

// Truncated Taylor series: c[k] = D^k f(x0) / k!.
class Jet {
public:
    Jet() { c_.fill(0.0); }

    Jet(double value, int order) : order_(order)
    {
        require(order >= 0 && order <= kMaxJetOrder, ErrorCode::OrderUnavailable, "jet order out of range");
        c_.fill(0.0);
        c_[0] = value;
    }

    static Jet variable(double x0, int order)
    {
        Jet j(x0, order);
        if (order > 0) j.c_[1] = 1.0;
        return j;
    }

    int order() const noexcept { return order_; }
    double value() const noexcept { return c_[0]; }
    double operator[](int k) const noexcept { return c_[k]; }
    double& operator[](int k) noexcept { return c_[k]; }

    // k-th derivative at the expansion point.
    double derivative(int k) const noexcept
    {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return c_[k] * f;
    }

    Jet& operator+=(const Jet& o) noexcept
    {
        for (int k = 0; k <= order_; ++k) c_[k] += o.c_[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) noexcept
    {
        for (int k = 0; k <= order_; ++k) c_[k] -= o.c_[k];
        return *this;
    }
    Jet& operator+=(double s) noexcept
    {
        c_[0] += s;
        return *this;
    }
    Jet& operator-=(double s) noexcept
    {
        c_[0] -= s;
        return *this;
    }
    Jet& operator*=(double s) noexcept
    {
        for (int k = 0; k <= order_; ++k) c_[k] *= s;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) noexcept { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) noexcept { return a -= b; }
    friend Jet operator+(Jet a, double s) noexcept { return a += s; }
    friend Jet operator+(double s, Jet a) noexcept { return a += s; }
    friend Jet operator-(Jet a, double s) noexcept { return a -= s; }
    friend Jet operator-(double s, const Jet& a) noexcept
    {
        Jet r = -a;
        r.c_[0] += s;
        return r;
    }
    friend Jet operator*(Jet a, double s) noexcept { return a *= s; }
    friend Jet operator*(double s, Jet a) noexcept { return a *= s; }
    friend Jet operator-(Jet a) noexcept { return a *= -1.0; }

    friend Jet operator*(const Jet& a, const Jet& b) noexcept
    {
        Jet r(0.0, a.order_ < b.order_ ? a.order_ : b.order_);
        for (int k = 0; k <= r.order_; ++k) {
            double s = 0.0;
            for (int j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
            r.c_[k] = s;
        }
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b)
    {
        require(b.c_[0] != 0.0, ErrorCode::InvalidArgument, "jet division by zero");
        Jet r(0.0, a.order_ < b.order_ ? a.order_ : b.order_);
        for (int k = 0; k <= r.order_; ++k) {
            double s = a.c_[k];
            for (int j = 1; j <= k; ++j) s -= b.c_[j] * r.c_[k - j];
            r.c_[k] = s / b.c_[0];
        }
        return r;
    }

    friend Jet exp(const Jet& a) noexcept
    {
        Jet r(std::exp(a.c_[0]), a.order_);
        for (int k = 1; k <= a.order_; ++k) {
            double s = 0.0;
            for (int j = 1; j <= k; ++j) s += j * a.c_[j] * r.c_[k - j];
            r.c_[k] = s / k;
        }
        return r;
    }

    friend Jet log(const Jet& a)
    {
        require(a.c_[0] > 0.0, ErrorCode::InvalidArgument, "jet log of nonpositive value");
        Jet r(std::log(a.c_[0]), a.order_);
        for (int k = 1; k <= a.order_; ++k) {
            double s = 0.0;
            for (int j = 1; j < k; ++j) s += j * r.c_[j] * a.c_[k - j];
            r.c_[k] = (a.c_[k] - s / k) / a.c_[0];
        }
        return r;
    }

private:
    int order_ = 0;
    std::array<double, kMaxJetOrder + 1> c_;
};

// g(h) given derivs[m] = D^m g(h.value()), m = 0..h.order().
inline Jet compose(std::span<const double> derivs, const Jet& h)
{
    const int n = h.order();
    require(static_cast<int>(derivs.size()) >= n + 1, ErrorCode::LengthMismatch, "compose: too few derivatives");
    Jet d = h;
    d[0] = 0.0;
    double fact[kMaxJetOrder + 1];
    fact[0] = 1.0;
    for (int m = 1; m <= n; ++m) fact[m] = fact[m - 1] * m;
    Jet r(derivs[n] / fact[n], n);
    for (int m = n - 1; m >= 0; --m) {
        r = r * d;
        r[0] += derivs[m] / fact[m];
    }
    return r;
}

} // namespace cohomo
