// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cohomolib/line.hpp>

#include <cmath>

#include <cohomolib/error.hpp>

namespace cohomo {

Jet LineMap::Impl::inverse(const Jet& y) const
{
    const double x0 = inverse(y.value());
    Jet probe = Jet::variable(x0, y.order() < 1 ? 0 : 1);
    const double df = y.order() < 1 ? 1.0 : eval(probe)[1];
    Jet x(x0, y.order());
    for (int it = 0; it <= y.order(); ++it) {
        Jet r = y - eval(x);
        r[0] = 0.0;
        x += r * (1.0 / df);
    }
    return x;
}

namespace {

inline void renormalize(Jet& X, std::int64_t& n)
{
    double fl = std::floor(X[0]);
    X[0] -= fl;
    n += static_cast<std::int64_t>(fl);
}

class LiftPowerMap final : public LineMap::Impl {
public:
    LiftPowerMap(std::shared_ptr<const CircleLift> f, std::int64_t k, std::int64_t p) : f_(std::move(f)), k_(k), p_(p) {}

    const std::shared_ptr<const CircleLift>& base() const { return f_; }
    std::int64_t k() const { return k_; }
    std::int64_t p() const { return p_; }

    double eval(double x) const override
    {
        if (k_ == 0) return x - static_cast<double>(p_);
        LiftPoint pt = LiftPoint::of(x);
        walk(pt, k_);
        return static_cast<double>(pt.n - p_) + pt.t;
    }

    double inverse(double y) const override
    {
        if (k_ == 0) return y + static_cast<double>(p_);
        LiftPoint pt = LiftPoint::of(y);
        walk(pt, -k_);
        return static_cast<double>(pt.n + p_) + pt.t;
    }

    Jet eval(const Jet& x) const override { return jet_walk(x, k_, -p_); }
    Jet inverse(const Jet& y) const override { return jet_walk(y, -k_, p_); }

    bool periodic() const override { return true; }
    std::string describe() const override
    {
        return "f^" + std::to_string(k_) + (p_ ? " - " + std::to_string(p_) : std::string());
    }

private:
    void walk(LiftPoint& pt, std::int64_t k) const
    {
        if (k > 0)
            for (std::int64_t i = 0; i < k; ++i) pt = f_->step(pt);
        else
            for (std::int64_t i = 0; i < -k; ++i) pt = f_->inverse_step(pt);
    }

    Jet jet_walk(const Jet& x, std::int64_t k, std::int64_t shift) const
    {
        LiftPoint pt = LiftPoint::of(x.value());
        Jet X = x;
        X[0] = pt.t;
        std::int64_t n = pt.n;
        if (k > 0) {
            for (std::int64_t i = 0; i < k; ++i) {
                X = f_->eval(X);
                renormalize(X, n);
            }
        } else {
            for (std::int64_t i = 0; i < -k; ++i) {
                X = f_->inverse(X);
                renormalize(X, n);
            }
        }
        X[0] += static_cast<double>(n + shift);
        return X;
    }

    std::shared_ptr<const CircleLift> f_;
    std::int64_t k_, p_;
};

class TranslationMap final : public LineMap::Impl {
public:
    explicit TranslationMap(double c) : c_(c) {}
    double eval(double x) const override { return x + c_; }
    double inverse(double y) const override { return y - c_; }
    Jet eval(const Jet& x) const override { return x + c_; }
    Jet inverse(const Jet& y) const override { return y - c_; }
    bool periodic() const override { return true; }
    std::string describe() const override { return "x + " + std::to_string(c_); }

private:
    double c_;
};

class ComposeMap final : public LineMap::Impl {
public:
    ComposeMap(LineMap outer, LineMap inner) : outer_(std::move(outer)), inner_(std::move(inner)) {}
    double eval(double x) const override { return outer_(inner_(x)); }
    double inverse(double y) const override { return inner_.inverse(outer_.inverse(y)); }
    Jet eval(const Jet& x) const override { return outer_(inner_(x)); }
    Jet inverse(const Jet& y) const override { return inner_.inverse(outer_.inverse(y)); }
    bool periodic() const override { return outer_.periodic() && inner_.periodic(); }
    std::string describe() const override { return "(" + outer_.describe() + ") o (" + inner_.describe() + ")"; }

private:
    LineMap outer_, inner_;
};

class InverseMap final : public LineMap::Impl {
public:
    explicit InverseMap(LineMap m) : m_(std::move(m)) {}
    double eval(double x) const override { return m_.inverse(x); }
    double inverse(double y) const override { return m_(y); }
    Jet eval(const Jet& x) const override { return m_.inverse(x); }
    Jet inverse(const Jet& y) const override { return m_(y); }
    bool periodic() const override { return m_.periodic(); }
    std::string describe() const override { return "(" + m_.describe() + ")^-1"; }

private:
    LineMap m_;
};

class PowerMap final : public LineMap::Impl {
public:
    PowerMap(LineMap m, std::int64_t k) : m_(std::move(m)), k_(k) {}
    double eval(double x) const override
    {
        for (std::int64_t i = 0; i < k_; ++i) x = m_(x);
        return x;
    }
    double inverse(double y) const override
    {
        for (std::int64_t i = 0; i < k_; ++i) y = m_.inverse(y);
        return y;
    }
    Jet eval(const Jet& x) const override
    {
        Jet r = x;
        for (std::int64_t i = 0; i < k_; ++i) r = m_(r);
        return r;
    }
    Jet inverse(const Jet& y) const override
    {
        Jet r = y;
        for (std::int64_t i = 0; i < k_; ++i) r = m_.inverse(r);
        return r;
    }
    bool periodic() const override { return m_.periodic(); }
    std::string describe() const override { return "(" + m_.describe() + ")^" + std::to_string(k_); }

private:
    LineMap m_;
    std::int64_t k_;
};

const LiftPowerMap* as_lift_power(const LineMap& m) { return dynamic_cast<const LiftPowerMap*>(&m.impl()); }

bool same_base(const LiftPowerMap* a, const LiftPowerMap* b)
{
    return a->k() == 0 || b->k() == 0 || a->base() == b->base();
}

} // namespace

LineMap::LineMap() : LineMap(identity()) {}

LineMap LineMap::identity() { return LineMap(std::make_shared<LiftPowerMap>(nullptr, 0, 0)); }

LineMap LineMap::translation(double c)
{
    if (c == std::floor(c) && std::abs(c) < 9e15)
        return LineMap(std::make_shared<LiftPowerMap>(nullptr, 0, static_cast<std::int64_t>(-c)));
    return LineMap(std::make_shared<TranslationMap>(c));
}

LineMap LineMap::lift_power(std::shared_ptr<const CircleLift> f, std::int64_t k, std::int64_t p)
{
    if (k == 0) f.reset();
    return LineMap(std::make_shared<LiftPowerMap>(std::move(f), k, p));
}

LineMap LineMap::lift(const CircleLift& f) { return lift_power(std::make_shared<CircleLift>(f), 1, 0); }

LineMap LineMap::inverse_map() const
{
    if (auto lp = as_lift_power(*this)) return lift_power(lp->base(), -lp->k(), -lp->p());
    return LineMap(std::make_shared<InverseMap>(*this));
}

LineMap LineMap::power(std::int64_t k) const
{
    if (auto lp = as_lift_power(*this)) return lift_power(lp->base(), lp->k() * k, lp->p() * k);
    if (k == 0) return identity();
    if (k == 1) return *this;
    if (k < 0) return LineMap(std::make_shared<PowerMap>(inverse_map(), -k));
    return LineMap(std::make_shared<PowerMap>(*this, k));
}

LineMap compose(const LineMap& outer, const LineMap& inner)
{
    auto a = as_lift_power(outer);
    auto b = as_lift_power(inner);
    if (a && b && same_base(a, b)) {
        auto base = a->k() != 0 ? a->base() : b->base();
        return LineMap::lift_power(base, a->k() + b->k(), a->p() + b->p());
    }
    if (a && a->k() == 0 && a->p() == 0) return inner;
    if (b && b->k() == 0 && b->p() == 0) return outer;
    return LineMap(std::make_shared<ComposeMap>(outer, inner));
}

namespace {

class ZeroFn final : public LineFunction::Impl {
public:
    double eval(double) const override { return 0.0; }
    Jet eval(const Jet& x) const override { return Jet(0.0, x.order()); }
    bool periodic() const override { return true; }
    bool is_zero() const override { return true; }
};

class PeriodicFn final : public LineFunction::Impl {
public:
    explicit PeriodicFn(PeriodicFunction f) : f_(std::move(f)) {}
    double eval(double x) const override { return f_(x); }
    Jet eval(const Jet& x) const override { return f_.eval(x); }
    bool periodic() const override { return true; }
    const PeriodicFunction& function() const { return f_; }

private:
    PeriodicFunction f_;
};

class CustomFn final : public LineFunction::Impl {
public:
    CustomFn(std::function<double(double)> f, std::function<Jet(const Jet&)> jf, bool periodic)
        : f_(std::move(f)), jf_(std::move(jf)), periodic_(periodic) {}
    double eval(double x) const override { return f_(x); }
    Jet eval(const Jet& x) const override
    {
        require(static_cast<bool>(jf_), ErrorCode::DerivativeUnavailable, "function has no jet evaluator");
        return jf_(x);
    }
    bool periodic() const override { return periodic_; }

private:
    std::function<double(double)> f_;
    std::function<Jet(const Jet&)> jf_;
    bool periodic_;
};

class CombineFn final : public LineFunction::Impl {
public:
    CombineFn(double a, LineFunction f, double b, LineFunction g) : a_(a), b_(b), f_(std::move(f)), g_(std::move(g)) {}
    double eval(double x) const override { return a_ * f_(x) + b_ * g_(x); }
    Jet eval(const Jet& x) const override { return a_ * f_(x) + b_ * g_(x); }
    bool periodic() const override { return f_.periodic() && g_.periodic(); }

private:
    double a_, b_;
    LineFunction f_, g_;
};

class ComposeFn final : public LineFunction::Impl {
public:
    ComposeFn(LineFunction psi, LineMap g) : psi_(std::move(psi)), g_(std::move(g)) {}
    double eval(double x) const override { return psi_(g_(x)); }
    Jet eval(const Jet& x) const override { return psi_(g_(x)); }
    bool periodic() const override { return psi_.periodic() && g_.periodic(); }
    const LineFunction& psi() const { return psi_; }
    const LineMap& map() const { return g_; }

private:
    LineFunction psi_;
    LineMap g_;
};

// S^k psi over a circle lift with psi periodic; orbit kept in reduced form.
class LiftBirkhoffFn final : public LineFunction::Impl {
public:
    LiftBirkhoffFn(LineFunction psi, std::shared_ptr<const CircleLift> f, std::int64_t k)
        : psi_(std::move(psi)), f_(std::move(f)), k_(k)
    {
        if (auto p = dynamic_cast<const PeriodicFn*>(&psi_.impl())) fast_ = &p->function();
    }

    const LineFunction& psi() const { return psi_; }
    const std::shared_ptr<const CircleLift>& base() const { return f_; }
    std::int64_t k() const { return k_; }

    double eval(double x) const override
    {
        LiftPoint pt = LiftPoint::of(x);
        NeumaierSum s;
        if (k_ > 0) {
            for (std::int64_t i = 0; i < k_; ++i) {
                s.add(value(pt.t));
                pt = f_->step(pt);
            }
            return s.value();
        }
        for (std::int64_t i = 0; i < -k_; ++i) {
            pt = f_->inverse_step(pt);
            s.add(value(pt.t));
        }
        return -s.value();
    }

    Jet eval(const Jet& x) const override
    {
        LiftPoint pt = LiftPoint::of(x.value());
        Jet X = x;
        X[0] = pt.t;
        std::int64_t n = 0;
        Jet sum(0.0, x.order());
        if (k_ > 0) {
            for (std::int64_t i = 0; i < k_; ++i) {
                sum += psi_(X);
                X = f_->eval(X);
                renormalize(X, n);
            }
            return sum;
        }
        for (std::int64_t i = 0; i < -k_; ++i) {
            X = f_->inverse(X);
            renormalize(X, n);
            sum += psi_(X);
        }
        return -sum;
    }

    bool periodic() const override { return true; }

private:
    double value(double t) const { return fast_ ? (*fast_)(t) : psi_(t); }

    LineFunction psi_;
    std::shared_ptr<const CircleLift> f_;
    std::int64_t k_;
    const PeriodicFunction* fast_ = nullptr;
};

class PairBirkhoffFn final : public LineFunction::Impl {
public:
    PairBirkhoffFn(LineFunction psi, LineMap g, std::int64_t k) : psi_(std::move(psi)), g_(std::move(g)), k_(k) {}

    double eval(double x) const override
    {
        NeumaierSum s;
        if (k_ > 0) {
            for (std::int64_t i = 0; i < k_; ++i) {
                s.add(psi_(x));
                x = g_(x);
            }
            return s.value();
        }
        for (std::int64_t i = 0; i < -k_; ++i) {
            x = g_.inverse(x);
            s.add(psi_(x));
        }
        return -s.value();
    }

    Jet eval(const Jet& x0) const override
    {
        Jet x = x0;
        Jet sum(0.0, x0.order());
        if (k_ > 0) {
            for (std::int64_t i = 0; i < k_; ++i) {
                sum += psi_(x);
                x = g_(x);
            }
            return sum;
        }
        for (std::int64_t i = 0; i < -k_; ++i) {
            x = g_.inverse(x);
            sum += psi_(x);
        }
        return -sum;
    }

    bool periodic() const override { return psi_.periodic() && g_.periodic(); }

private:
    LineFunction psi_;
    LineMap g_;
    std::int64_t k_;
};

const LiftBirkhoffFn* as_lift_birkhoff(const LineFunction& f) { return dynamic_cast<const LiftBirkhoffFn*>(&f.impl()); }

} // namespace

LineFunction::LineFunction() : LineFunction(zero()) {}

LineFunction LineFunction::zero()
{
    static const auto z = std::make_shared<ZeroFn>();
    return LineFunction(z);
}

LineFunction LineFunction::periodic(PeriodicFunction f) { return LineFunction(std::make_shared<PeriodicFn>(std::move(f))); }

LineFunction LineFunction::custom(std::function<double(double)> f, std::function<Jet(const Jet&)> jf, bool periodic)
{
    return LineFunction(std::make_shared<CustomFn>(std::move(f), std::move(jf), periodic));
}

LineFunction LineFunction::combine(double a, const LineFunction& f, double b, const LineFunction& g)
{
    const bool fz = f.is_zero() || a == 0.0;
    const bool gz = g.is_zero() || b == 0.0;
    if (fz && gz) return zero();
    if (gz && a == 1.0) return f;
    if (fz && b == 1.0) return g;
    if (a == 1.0 && b == 1.0) {
        // S^i psi + (S^j psi) o (f^i - p) = S^{i+j} psi
        auto try_merge = [](const LineFunction& x, const LineFunction& y) -> std::shared_ptr<const Impl> {
            auto bx = as_lift_birkhoff(x);
            auto cy = dynamic_cast<const ComposeFn*>(&y.impl());
            if (!bx || !cy) return nullptr;
            auto by = as_lift_birkhoff(cy->psi());
            auto lp = dynamic_cast<const LiftPowerMap*>(&cy->map().impl());
            if (!by || !lp) return nullptr;
            if (bx->base() != by->base() || &bx->psi().impl() != &by->psi().impl()) return nullptr;
            if (lp->k() != bx->k() || (lp->k() != 0 && lp->base() != bx->base())) return nullptr;
            return std::make_shared<LiftBirkhoffFn>(bx->psi(), bx->base(), bx->k() + by->k());
        };
        if (auto m = try_merge(f, g)) return LineFunction(m);
        if (auto m = try_merge(g, f)) return LineFunction(m);
    }
    return LineFunction(std::make_shared<CombineFn>(fz ? 0.0 : a, fz ? zero() : f, gz ? 0.0 : b, gz ? zero() : g));
}

LineFunction LineFunction::compose(const LineFunction& psi, const LineMap& g)
{
    if (psi.is_zero()) return zero();
    if (auto lp = dynamic_cast<const LiftPowerMap*>(&g.impl())) {
        if (lp->k() == 0 && (lp->p() == 0 || psi.periodic())) return psi;
    }
    return LineFunction(std::make_shared<ComposeFn>(psi, g));
}

LineFunction LineFunction::birkhoff(const LineFunction& psi, const LineMap& g, std::int64_t k)
{
    if (k == 0 || psi.is_zero()) return zero();
    if (auto lp = dynamic_cast<const LiftPowerMap*>(&g.impl()); lp && lp->k() != 0) {
        if (lp->k() == 1 && psi.periodic() && !as_lift_birkhoff(psi))
            return LineFunction(std::make_shared<LiftBirkhoffFn>(psi, lp->base(), k));
        if (auto b = as_lift_birkhoff(psi); b && b->base() == lp->base() && b->k() == lp->k())
            return LineFunction(std::make_shared<LiftBirkhoffFn>(b->psi(), b->base(), b->k() * k));
    }
    return LineFunction(std::make_shared<PairBirkhoffFn>(psi, g, k));
}

PeriodicFunction LineFunction::to_periodic(std::size_t n, int order) const
{
    require(periodic(), ErrorCode::InvalidArgument, "function is not 1-periodic");
    std::vector<double> s(n);
    for (std::size_t j = 0; j < n; ++j) s[j] = (*this)(static_cast<double>(j) / static_cast<double>(n));
    return PeriodicFunction::from_samples(std::move(s), order);
}

} // namespace cohomo
