// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include <cohomolib/lift.hpp>

namespace cohomo {

// Increasing homeomorphism of the line, evaluated lazily (value semantics).
class LineMap {
public:
    class Impl {
    public:
        virtual ~Impl() = default;
        virtual double eval(double x) const = 0;
        virtual double inverse(double y) const = 0;
        virtual Jet eval(const Jet& x) const = 0;
        virtual Jet inverse(const Jet& y) const;
        // commutes with x -> x + 1
        virtual bool periodic() const = 0;
        virtual std::string describe() const = 0;
    };

    LineMap();
    explicit LineMap(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    static LineMap identity();
    static LineMap translation(double c);
    // x -> f^k(x) - p, orbit tracked with exact integer parts; k < 0 iterates the inverse.
    static LineMap lift_power(std::shared_ptr<const CircleLift> f, std::int64_t k, std::int64_t p = 0);
    static LineMap lift(const CircleLift& f);

    double operator()(double x) const { return impl_->eval(x); }
    Jet operator()(const Jet& x) const { return impl_->eval(x); }
    double inverse(double y) const { return impl_->inverse(y); }
    Jet inverse(const Jet& y) const { return impl_->inverse(y); }
    bool periodic() const { return impl_->periodic(); }
    std::string describe() const { return impl_->describe(); }
    const Impl& impl() const { return *impl_; }
    const std::shared_ptr<const Impl>& handle() const { return impl_; }

    LineMap inverse_map() const;
    LineMap power(std::int64_t k) const;
    friend LineMap compose(const LineMap& outer, const LineMap& inner);

private:
    std::shared_ptr<const Impl> impl_;
};

LineMap compose(const LineMap& outer, const LineMap& inner);

// Real function on the line, optionally 1-periodic.
class LineFunction {
public:
    class Impl {
    public:
        virtual ~Impl() = default;
        virtual double eval(double x) const = 0;
        virtual Jet eval(const Jet& x) const = 0;
        virtual bool periodic() const = 0;
        virtual bool is_zero() const { return false; }
    };

    LineFunction();
    explicit LineFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    static LineFunction zero();
    static LineFunction periodic(PeriodicFunction f);
    static LineFunction custom(std::function<double(double)> f, std::function<Jet(const Jet&)> jf, bool periodic);
    // a * f + b * g
    static LineFunction combine(double a, const LineFunction& f, double b, const LineFunction& g);
    // psi o g
    static LineFunction compose(const LineFunction& psi, const LineMap& g);
    // S^k psi over g, with S^{-k} psi = -sum_{i=1..k} psi o g^{-i}.
    static LineFunction birkhoff(const LineFunction& psi, const LineMap& g, std::int64_t k);

    double operator()(double x) const { return impl_->eval(x); }
    Jet operator()(const Jet& x) const { return impl_->eval(x); }
    bool periodic() const { return impl_->periodic(); }
    bool is_zero() const { return impl_->is_zero(); }
    const Impl& impl() const { return *impl_; }

    friend LineFunction operator+(const LineFunction& a, const LineFunction& b) { return combine(1, a, 1, b); }
    friend LineFunction operator-(const LineFunction& a, const LineFunction& b) { return combine(1, a, -1, b); }
    friend LineFunction operator*(double s, const LineFunction& a) { return combine(s, a, 0, zero()); }

    // Samples on the grid j/N (requires a periodic function).
    PeriodicFunction to_periodic(std::size_t n, int order = kMaxJetOrder) const;

private:
    std::shared_ptr<const Impl> impl_;
};

// Compensated sum.
class NeumaierSum {
public:
    void add(double v) noexcept
    {
        double t = s_ + v;
        if (std::abs(s_) >= std::abs(v))
            c_ += (s_ - t) + v;
        else
            c_ += (v - t) + s_;
        s_ = t;
    }
    double value() const noexcept { return s_ + c_; }

private:
    double s_ = 0.0, c_ = 0.0;
};

} // namespace cohomo
