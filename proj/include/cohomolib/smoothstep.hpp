// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cohomolib/jet.hpp>

namespace cohomo {

// zeta(x) = s(x) / (s(x) + s(1 - x)) with s(t) = exp(-1/t) for t > 0, else 0.
// Flat to all orders at 0 and 1. Within kClamp of either end the value is
// replaced by 0 or 1; the error there is below exp(-1/kClamp).
class SmoothStep {
public:
    static constexpr double kClamp = 1e-3;

    static double value(double x) noexcept;
    static Jet eval(const Jet& x);
    // D^s zeta(x)
    static double derivative(int s, double x);
};

} // namespace cohomo
