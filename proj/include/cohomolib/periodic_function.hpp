// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include <cohomolib/jet.hpp>

namespace cohomo {

using cplx = std::complex<double>;

inline constexpr std::size_t kDefaultGrid = 4096;

// Forward/inverse real FFT on a power-of-two grid: c_k = (1/N) sum_j s_j e^{-2 pi i jk/N}, k = 0..N/2.
std::vector<cplx> real_fft(const std::vector<double>& samples);
std::vector<double> real_ifft(const std::vector<cplx>& coeffs, std::size_t n);

// Real 1-periodic function: samples on the uniform grid j/N together with the
// trigonometric interpolant sum_k c_k e^{2 pi i k x}, c_{-k} = conj(c_k).
class PeriodicFunction {
public:
    PeriodicFunction() : PeriodicFunction(zero(kDefaultGrid)) {}

    static PeriodicFunction zero(std::size_t n, int order = kMaxJetOrder);
    static PeriodicFunction constant(std::size_t n, double c, int order = kMaxJetOrder);
    static PeriodicFunction from_samples(std::vector<double> samples, int order = kMaxJetOrder);
    // c[k] for k = 0..K (K <= N/2); c[0] and the Nyquist entry must be real.
    static PeriodicFunction from_coefficients(std::size_t n, std::vector<cplx> c, int order = kMaxJetOrder);

    template <class F>
    static PeriodicFunction sample(std::size_t n, F&& f, int order = kMaxJetOrder)
    {
        std::vector<double> s(n);
        for (std::size_t j = 0; j < n; ++j) s[j] = f(static_cast<double>(j) / static_cast<double>(n));
        return from_samples(std::move(s), order);
    }

    std::size_t size() const noexcept { return samples_.size(); }
    int order() const noexcept { return order_; }
    int bandwidth() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& samples() const noexcept { return samples_; }
    // Retained coefficients c_0..c_K.
    const std::vector<cplx>& coefficients() const noexcept { return coeffs_; }
    cplx coefficient(long k) const noexcept;
    // 2 * sum of discarded |c_k| (noise-level trimming after a transform).
    double tail_bound() const noexcept { return tail_; }
    double mean() const noexcept { return coeffs_[0].real(); }
    double sup_norm() const noexcept;
    double roundtrip_error() const;

    double operator()(double x) const noexcept
    {
        // one harmonic below Nyquist is the hot case in orbit loops
        if (coeffs_.size() == 2 && samples_.size() > 2) {
            double s, c;
            sincos(2.0 * std::numbers::pi * (x - std::floor(x)), &s, &c);
            return coeffs_[0].real() + 2.0 * (coeffs_[1].real() * c - coeffs_[1].imag() * s);
        }
        return eval_general(x);
    }
    // out[i] = (*this)(x[i]), bit for bit; lanes run in lockstep so the recurrences overlap.
    void eval_batch(const double* x, double* out, std::size_t count) const noexcept;
    double derivative(int s, double x) const;
    // out[0..smax] = D^0 .. D^smax at x.
    void derivatives(double x, int smax, double* out) const;
    Jet eval(const Jet& x) const;

    PeriodicFunction derivative_function(int s) const;
    PeriodicFunction with_order(int order) const;

    PeriodicFunction& operator+=(const PeriodicFunction& o);
    PeriodicFunction& operator-=(const PeriodicFunction& o);
    PeriodicFunction& operator*=(double s);
    friend PeriodicFunction operator+(PeriodicFunction a, const PeriodicFunction& b) { return a += b; }
    friend PeriodicFunction operator-(PeriodicFunction a, const PeriodicFunction& b) { return a -= b; }
    friend PeriodicFunction operator*(PeriodicFunction a, double s) { return a *= s; }
    friend PeriodicFunction operator*(double s, PeriodicFunction a) { return a *= s; }

private:
    double eval_general(double x) const noexcept;
    struct Raw {};
    explicit PeriodicFunction(Raw) {}
    void trim(double rel);

    std::vector<double> samples_;
    std::vector<cplx> coeffs_;
    double tail_ = 0.0;
    int order_ = kMaxJetOrder;
};

// Fractional part in [0, 1).
inline double frac(double x) noexcept
{
    double f = x - std::floor(x);
    return f >= 1.0 ? 0.0 : f;
}

} // namespace cohomo
