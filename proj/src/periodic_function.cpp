// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cohomolib/periodic_function.hpp>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <limits>
#include <numbers>

#include <fftw3.h>

#include <cohomolib/error.hpp>

namespace cohomo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Plans {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

std::mutex plan_mutex;

// Planning is not thread safe in FFTW; execution with the new-array API is.
const Plans& plans_for(std::size_t n)
{
    static std::map<std::size_t, Plans> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    double* in = fftw_alloc_real(n);
    fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
    Plans p;
    p.forward = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
    p.backward = fftw_plan_dft_c2r_1d(static_cast<int>(n), out, in, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
    return cache.emplace(n, p).first->second;
}

struct RealBuf {
    explicit RealBuf(std::size_t n) : p(fftw_alloc_real(n)) {}
    ~RealBuf() { fftw_free(p); }
    double* p;
};

struct CplxBuf {
    explicit CplxBuf(std::size_t n) : p(fftw_alloc_complex(n)) {}
    ~CplxBuf() { fftw_free(p); }
    fftw_complex* p;
};

void check_grid(std::size_t n)
{
    require(n >= 4 && (n & (n - 1)) == 0 && n <= (std::size_t(1) << 22), ErrorCode::InvalidArgument,
            "grid size must be a power of two in [4, 2^22]");
}

} // namespace

std::vector<cplx> real_fft(const std::vector<double>& samples)
{
    const std::size_t n = samples.size();
    check_grid(n);
    const Plans& p = plans_for(n);
    RealBuf in(n);
    CplxBuf out(n / 2 + 1);
    std::memcpy(in.p, samples.data(), n * sizeof(double));
    fftw_execute_dft_r2c(p.forward, in.p, out.p);
    std::vector<cplx> c(n / 2 + 1);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k <= n / 2; ++k) c[k] = cplx(out.p[k][0], out.p[k][1]) * scale;
    c[0] = cplx(c[0].real(), 0.0);
    c[n / 2] = cplx(c[n / 2].real(), 0.0);
    return c;
}

std::vector<double> real_ifft(const std::vector<cplx>& coeffs, std::size_t n)
{
    check_grid(n);
    const Plans& p = plans_for(n);
    CplxBuf in(n / 2 + 1);
    RealBuf out(n);
    for (std::size_t k = 0; k <= n / 2; ++k) {
        cplx c = k < coeffs.size() ? coeffs[k] : cplx(0.0);
        in.p[k][0] = c.real();
        in.p[k][1] = c.imag();
    }
    in.p[0][1] = 0.0;
    in.p[n / 2][1] = 0.0;
    fftw_execute_dft_c2r(p.backward, in.p, out.p);
    return std::vector<double>(out.p, out.p + n);
}

PeriodicFunction PeriodicFunction::zero(std::size_t n, int order)
{
    return from_coefficients(n, {cplx(0.0)}, order);
}

PeriodicFunction PeriodicFunction::constant(std::size_t n, double c, int order)
{
    return from_coefficients(n, {cplx(c)}, order);
}

PeriodicFunction PeriodicFunction::from_samples(std::vector<double> samples, int order)
{
    PeriodicFunction f{Raw{}};
    f.coeffs_ = real_fft(samples);
    f.samples_ = std::move(samples);
    f.order_ = order;
    f.trim(4.0 * std::numeric_limits<double>::epsilon());
    return f;
}

PeriodicFunction PeriodicFunction::from_coefficients(std::size_t n, std::vector<cplx> c, int order)
{
    check_grid(n);
    require(!c.empty() && c.size() <= n / 2 + 1, ErrorCode::LengthMismatch, "coefficient count exceeds N/2 + 1");
    c[0] = cplx(c[0].real(), 0.0);
    if (c.size() == n / 2 + 1) c.back() = cplx(c.back().real(), 0.0);
    while (c.size() > 1 && c.back() == cplx(0.0)) c.pop_back();
    PeriodicFunction f{Raw{}};
    f.samples_ = real_ifft(c, n);
    f.coeffs_ = std::move(c);
    f.order_ = order;
    f.tail_ = 0.0;
    return f;
}

void PeriodicFunction::trim(double rel)
{
    double mx = 0.0;
    for (const auto& c : coeffs_) mx = std::max(mx, std::abs(c));
    const double thresh = rel * mx;
    std::size_t keep = coeffs_.size();
    while (keep > 1 && std::abs(coeffs_[keep - 1]) <= thresh) --keep;
    tail_ = 0.0;
    for (std::size_t k = keep; k < coeffs_.size(); ++k) tail_ += 2.0 * std::abs(coeffs_[k]);
    coeffs_.resize(keep);
}

cplx PeriodicFunction::coefficient(long k) const noexcept
{
    long a = k < 0 ? -k : k;
    if (a >= static_cast<long>(coeffs_.size())) return cplx(0.0);
    return k < 0 ? std::conj(coeffs_[a]) : coeffs_[a];
}

double PeriodicFunction::sup_norm() const noexcept
{
    double m = 0.0;
    for (double v : samples_) m = std::max(m, std::abs(v));
    return m;
}

double PeriodicFunction::roundtrip_error() const
{
    auto back = real_ifft(coeffs_, size());
    double e = 0.0;
    for (std::size_t j = 0; j < size(); ++j) e = std::max(e, std::abs(back[j] - samples_[j]));
    return e;
}

namespace {

// Accumulates sum_k w_k (2 pi i k)^s z^k for k = 1..K, re-anchoring z^k
// periodically to bound recurrence drift.
constexpr int kAnchor = 64;

inline bool has_nyquist(std::size_t n, std::size_t ncoef) { return ncoef == n / 2 + 1; }

} // namespace

double PeriodicFunction::eval_general(double x) const noexcept
{
    const std::size_t K = coeffs_.size() - 1;
    double sum = coeffs_[0].real();
    if (K == 0) return sum;
    const double t = frac(x);
    const std::size_t n = size();
    const std::size_t kmax = has_nyquist(n, coeffs_.size()) ? K - 1 : K;
    double s1, c1;
    sincos(kTwoPi * t, &s1, &c1);
    double zr = c1, zi = s1;
    double acc = 0.0;
    for (std::size_t k = 1; k <= kmax; ++k) {
        acc += coeffs_[k].real() * zr - coeffs_[k].imag() * zi;
        if (k % kAnchor == 0) {
            sincos(kTwoPi * frac(static_cast<double>(k + 1) * t), &zi, &zr);
        } else {
            double nr = zr * c1 - zi * s1;
            zi = zr * s1 + zi * c1;
            zr = nr;
        }
    }
    sum += 2.0 * acc;
    if (kmax < K) sum += coeffs_[K].real() * std::cos(std::numbers::pi * static_cast<double>(n) * t);
    return sum;
}

void PeriodicFunction::eval_batch(const double* x, double* out, std::size_t count) const noexcept
{
    constexpr std::size_t L = 16;
    if (coeffs_.size() <= 2 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) out[i] = (*this)(x[i]);
        return;
    }
    const std::size_t K = coeffs_.size() - 1;
    const std::size_t n = size();
    const std::size_t kmax = has_nyquist(n, coeffs_.size()) ? K - 1 : K;
    for (std::size_t b = 0; b < count; b += L) {
        const std::size_t m = std::min(L, count - b);
        double t[L], s1[L], c1[L], zr[L], zi[L], acc[L];
        for (std::size_t l = 0; l < m; ++l) {
            t[l] = frac(x[b + l]);
            sincos(kTwoPi * t[l], &s1[l], &c1[l]);
            zr[l] = c1[l];
            zi[l] = s1[l];
            acc[l] = 0.0;
        }
        for (std::size_t k = 1; k <= kmax; ++k) {
            const double cr = coeffs_[k].real(), ci = coeffs_[k].imag();
            for (std::size_t l = 0; l < m; ++l) acc[l] += cr * zr[l] - ci * zi[l];
            if (k % kAnchor == 0) {
                for (std::size_t l = 0; l < m; ++l)
                    sincos(kTwoPi * frac(static_cast<double>(k + 1) * t[l]), &zi[l], &zr[l]);
            } else {
                for (std::size_t l = 0; l < m; ++l) {
                    const double nr = zr[l] * c1[l] - zi[l] * s1[l];
                    zi[l] = zr[l] * s1[l] + zi[l] * c1[l];
                    zr[l] = nr;
                }
            }
        }
        for (std::size_t l = 0; l < m; ++l) {
            double sum = coeffs_[0].real() + 2.0 * acc[l];
            if (kmax < K) sum += coeffs_[K].real() * std::cos(std::numbers::pi * static_cast<double>(n) * t[l]);
            out[b + l] = sum;
        }
    }
}

void PeriodicFunction::derivatives(double x, int smax, double* out) const
{
    require(smax >= 0 && smax <= order_, ErrorCode::OrderUnavailable,
            "derivative order " + std::to_string(smax) + " exceeds declared order " + std::to_string(order_));
    for (int s = 0; s <= smax; ++s) out[s] = 0.0;
    out[0] = coeffs_[0].real();
    const std::size_t K = coeffs_.size() - 1;
    if (K == 0) return;
    const double t = frac(x);
    const std::size_t n = size();
    const std::size_t kmax = has_nyquist(n, coeffs_.size()) ? K - 1 : K;
    double s1, c1;
    sincos(kTwoPi * t, &s1, &c1);
    double zr = c1, zi = s1;
    double acc[kMaxJetOrder + 1] = {};
    for (std::size_t k = 1; k <= kmax; ++k) {
        // w = c_k z^k, multiplied by (i * 2 pi k)^s
        double wr = coeffs_[k].real() * zr - coeffs_[k].imag() * zi;
        double wi = coeffs_[k].real() * zi + coeffs_[k].imag() * zr;
        const double om = kTwoPi * static_cast<double>(k);
        double f = 1.0;
        for (int s = 0; s <= smax; ++s) {
            // Re(w * i^s) * om^s
            double re;
            switch (s & 3) {
            case 0: re = wr; break;
            case 1: re = -wi; break;
            case 2: re = -wr; break;
            default: re = wi; break;
            }
            acc[s] += re * f;
            f *= om;
        }
        if (k % kAnchor == 0) {
            sincos(kTwoPi * frac(static_cast<double>(k + 1) * t), &zi, &zr);
        } else {
            double nr = zr * c1 - zi * s1;
            zi = zr * s1 + zi * c1;
            zr = nr;
        }
    }
    for (int s = 0; s <= smax; ++s) out[s] += 2.0 * acc[s];
    if (kmax < K) {
        const double om = std::numbers::pi * static_cast<double>(n);
        const double a = coeffs_[K].real();
        double c = std::cos(om * t), sn = std::sin(om * t);
        double f = a;
        for (int s = 0; s <= smax; ++s) {
            switch (s & 3) {
            case 0: out[s] += f * c; break;
            case 1: out[s] -= f * sn; break;
            case 2: out[s] -= f * c; break;
            default: out[s] += f * sn; break;
            }
            f *= om;
        }
    }
}

double PeriodicFunction::derivative(int s, double x) const
{
    double buf[kMaxJetOrder + 1];
    derivatives(x, s, buf);
    return buf[s];
}

Jet PeriodicFunction::eval(const Jet& x) const
{
    double d[kMaxJetOrder + 1];
    derivatives(x.value(), x.order(), d);
    return compose(std::span<const double>(d, x.order() + 1), x);
}

PeriodicFunction PeriodicFunction::derivative_function(int s) const
{
    require(s >= 0 && s <= order_, ErrorCode::OrderUnavailable, "derivative order exceeds declared order");
    std::vector<cplx> c(coeffs_.size());
    const std::size_t n = size();
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        cplx m = std::pow(cplx(0.0, kTwoPi * static_cast<double>(k)), s);
        c[k] = coeffs_[k] * m;
    }
    if (has_nyquist(n, coeffs_.size()) && s > 0) c.back() = cplx(0.0);
    if (s > 0) c[0] = cplx(0.0);
    PeriodicFunction d = from_coefficients(n, std::move(c), order_ - s);
    d.tail_ = tail_;
    return d;
}

PeriodicFunction PeriodicFunction::with_order(int order) const
{
    PeriodicFunction f = *this;
    f.order_ = order;
    return f;
}

PeriodicFunction& PeriodicFunction::operator+=(const PeriodicFunction& o)
{
    require(size() == o.size(), ErrorCode::LengthMismatch, "grid sizes differ");
    for (std::size_t j = 0; j < samples_.size(); ++j) samples_[j] += o.samples_[j];
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), cplx(0.0));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    tail_ += o.tail_;
    order_ = std::min(order_, o.order_);
    return *this;
}

PeriodicFunction& PeriodicFunction::operator-=(const PeriodicFunction& o)
{
    PeriodicFunction neg = o;
    neg *= -1.0;
    return *this += neg;
}

PeriodicFunction& PeriodicFunction::operator*=(double s)
{
    for (auto& v : samples_) v *= s;
    for (auto& c : coeffs_) c *= s;
    tail_ *= std::abs(s);
    return *this;
}

} // namespace cohomo
