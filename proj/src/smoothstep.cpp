// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cohomolib/smoothstep.hpp>

#include <cmath>

namespace cohomo {

double SmoothStep::value(double x) noexcept
{
    if (x <= kClamp) return 0.0;
    if (x >= 1.0 - kClamp) return 1.0;
    const double a = std::exp(-1.0 / x), b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

Jet SmoothStep::eval(const Jet& x)
{
    const double v = x.value();
    if (v <= kClamp) return Jet(0.0, x.order());
    if (v >= 1.0 - kClamp) return Jet(1.0, x.order());
    const Jet one(1.0, x.order());
    const Jet a = exp(-(one / x));
    const Jet b = exp(-(one / (1.0 - x)));
    return a / (a + b);
}

double SmoothStep::derivative(int s, double x)
{
    if (s == 0) return value(x);
    return eval(Jet::variable(x, s)).derivative(s);
}

} // namespace cohomo
