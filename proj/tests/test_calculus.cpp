// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include <cohomolib/calculus.hpp>
#include <cohomolib/jet.hpp>
#include <cohomolib/smoothstep.hpp>

using namespace cohomo;

namespace {

BigInt binom(int n, int k)
{
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// B_{n,k} = sum_i C(n-1, i-1) x_i B_{n-i,k-1}
BigRational bell_oracle(int n, int k, const std::vector<BigRational>& x)
{
    if (n == 0 && k == 0) return 1;
    if (n == 0 || k == 0) return 0;
    BigRational s = 0;
    for (int i = 1; i <= n - k + 1; ++i) s += BigRational(binom(n - 1, i - 1)) * x[i - 1] * bell_oracle(n - i, k - 1, x);
    return s;
}

// Complete Bell polynomial: Y_{n+1} = sum_i C(n, i) Y_{n-i} x_{i+1}.
// D^r exp(h) = exp(h) Y_r(h', .., h^(r)), so P_r = Y_r.
BigRational complete_bell(int r, const std::vector<BigRational>& x)
{
    std::vector<BigRational> Y(r + 1);
    Y[0] = 1;
    for (int n = 0; n < r; ++n) {
        BigRational s = 0;
        for (int i = 0; i <= n; ++i) s += BigRational(binom(n, i)) * Y[n - i] * x[i];
        Y[n + 1] = s;
    }
    return Y[r];
}

long long partitions_exact(int n, int k)
{
    if (n == 0 && k == 0) return 1;
    if (n <= 0 || k <= 0) return 0;
    return partitions_exact(n - 1, k - 1) + partitions_exact(n - k, k);
}

// r-th derivative by a central difference in 400-bit arithmetic.
double fd_derivative(const std::function<BigFloat(const BigFloat&)>& f, double x0, int r)
{
    PrecisionScope ps(400);
    const BigFloat h("1e-15");
    BigFloat s = 0;
    for (int k = 0; k <= r; ++k) {
        const BigFloat xk = BigFloat(x0) + (BigFloat(r) / 2 - k) * h;
        const BigFloat term = BigFloat(binom(r, k)) * f(xk);
        s += (k % 2 == 0) ? term : -term;
    }
    return static_cast<double>(s / boost::multiprecision::pow(h, r));
}

std::vector<BigRational> random_rationals(std::mt19937_64& rng, int n)
{
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    std::vector<BigRational> out;
    for (int i = 0; i < n; ++i) out.emplace_back(num(rng), den(rng));
    return out;
}

} // namespace

TEST_CASE("Bell polynomial examples")
{
    const std::vector<double> x = {2.0, 3.0, 5.0, 7.0};
    auto B = [&](int r, int j) { return bell_eval(r, j, std::span<const double>(x).first(r - j + 1)); };
    CHECK(B(2, 1) == doctest::Approx(3.0));         // x_2
    CHECK(B(2, 2) == doctest::Approx(4.0));         // x_1^2
    CHECK(B(3, 2) == doctest::Approx(3 * 2 * 3.0)); // 3 x_1 x_2
    CHECK(B(3, 3) == doctest::Approx(8.0));
    CHECK(B(4, 2) == doctest::Approx(4 * 2 * 5.0 + 3 * 9.0));
    CHECK_THROWS(bell_eval(2, 1, std::span<const double>(x)));
}

TEST_CASE("Bell index sets against the recurrence")
{
    std::mt19937_64 rng(7);
    for (int r = 1; r <= 12; ++r) {
        const auto xr = random_rationals(rng, r);
        std::vector<double> xd;
        for (const auto& v : xr) xd.push_back(static_cast<double>(v));
        for (int j = 1; j <= r; ++j) {
            const auto& set = BellIndexSet::get(r, j);
            CHECK(static_cast<long long>(set.members().size()) == partitions_exact(r, j));
            // exact sum over members
            BigRational s = 0;
            for (const auto& m : set.members()) {
                BigRational t(m.coeff);
                int w = 0, cnt = 0;
                for (std::size_t i = 0; i < m.c.size(); ++i) {
                    w += static_cast<int>(i + 1) * m.c[i];
                    cnt += m.c[i];
                    for (int e = 0; e < m.c[i]; ++e) t *= xr[i];
                }
                CHECK(w == r);
                CHECK(cnt == j);
                s += t;
            }
            const BigRational ref = bell_oracle(r, j, xr);
            CHECK(s == ref);
            const double ref_d = static_cast<double>(ref);
            CHECK(bell_eval(r, j, std::span<const double>(xd).first(r - j + 1)) == doctest::Approx(ref_d).epsilon(1e-11).scale(1.0));
        }
    }
}

TEST_CASE("Bell coefficients sum to Bell numbers")
{
    const long long bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570, 4213597};
    for (int r = 1; r <= 12; ++r) {
        BigInt s = 0;
        for (int j = 1; j <= r; ++j)
            for (const auto& m : BellIndexSet::get(r, j).members()) s += m.coeff;
        CHECK(s == bell[r]);
    }
}

TEST_CASE("Faa di Bruno against high-precision differences")
{
    for (double x0 : {-0.3, 0.2, 0.7}) {
        // exp(exp(x))
        for (int r = 1; r <= 5; ++r) {
            const double gh = std::exp(std::exp(x0));
            std::vector<double> dg(r, gh), dh(r, std::exp(x0));
            const double ref = fd_derivative([](const BigFloat& x) { return exp(exp(x)); }, x0, r);
            CHECK(faa_di_bruno(dg, dh, r) == doctest::Approx(ref).epsilon(1e-12));
        }
        // exp(sin(x))
        for (int r = 1; r <= 5; ++r) {
            std::vector<double> dg(r, std::exp(std::sin(x0))), dh(r);
            for (int i = 1; i <= r; ++i) {
                const double v[] = {std::sin(x0), std::cos(x0), -std::sin(x0), -std::cos(x0)};
                dh[i - 1] = v[i % 4];
            }
            const double ref = fd_derivative([](const BigFloat& x) { return exp(sin(x)); }, x0, r);
            CHECK(faa_di_bruno(dg, dh, r) == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("P_r polynomials")
{
    const auto& p1 = PrPolynomial::get(1).terms();
    CHECK(p1.size() == 1);
    CHECK(p1.at({1}) == 1);

    const auto& p2 = PrPolynomial::get(2).terms();
    CHECK(p2.size() == 2);
    CHECK(p2.at({2, 0}) == 1);
    CHECK(p2.at({0, 1}) == 1);

    const auto& p3 = PrPolynomial::get(3).terms();
    CHECK(p3.at({3, 0, 0}) == 1);
    CHECK(p3.at({1, 1, 0}) == 3);
    CHECK(p3.at({0, 0, 1}) == 1);

    const double x[] = {0.5, -2.0};
    CHECK(pr_eval(2, x) == doctest::Approx(0.25 - 2.0));
    CHECK(!PrPolynomial::get(2).str().empty());
}

TEST_CASE("P_r equals the complete Bell polynomial exactly")
{
    std::mt19937_64 rng(11);
    for (int r = 1; r <= 12; ++r) {
        for (int trial = 0; trial < 3; ++trial) {
            const auto x = random_rationals(rng, r);
            CHECK(PrPolynomial::get(r).eval(std::span<const BigRational>(x)) == complete_bell(r, x));
        }
    }
}

TEST_CASE("P_r weighted homogeneity")
{
    std::mt19937_64 rng(3);
    for (int r = 1; r <= 8; ++r) {
        const auto x = random_rationals(rng, r);
        const BigRational lam(3, 2);
        std::vector<BigRational> scaled(x.size());
        BigRational pw = 1;
        for (int i = 0; i < r; ++i) {
            pw *= lam;
            scaled[i] = pw * x[i];
        }
        const auto& P = PrPolynomial::get(r);
        CHECK(P.eval(std::span<const BigRational>(scaled)) == pw * P.eval(std::span<const BigRational>(x)));
        for (const auto& [e, c] : P.terms()) {
            int w = 0;
            for (int i = 0; i < r; ++i) w += (i + 1) * e[i];
            CHECK(w == r);
        }
    }
}

TEST_CASE("higher derivatives from log Dg")
{
    // Dg = exp(a x + b x^2): D log Dg = a + 2 b x, D^2 log Dg = 2 b
    const double a = 0.3, b = -0.7;
    for (double x0 : {-0.5, 0.1, 0.9}) {
        const double Dg = std::exp(a * x0 + b * x0 * x0);
        for (int r = 1; r <= 6; ++r) {
            std::vector<double> dlog(r, 0.0);
            dlog[0] = a + 2 * b * x0;
            if (r >= 2) dlog[1] = 2 * b;
            const double ref = fd_derivative(
                [&](const BigFloat& x) { return exp(BigFloat(a) * x + BigFloat(b) * x * x); }, x0, r);
            CHECK(dr1_from_log(dlog, Dg) == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("jet arithmetic")
{
    for (double x0 : {-0.4, 0.3}) {
        const int order = 6;
        const Jet x = Jet::variable(x0, order);
        const Jet f = exp(x * x) * x / (1.0 + x * x) + log(2.0 + x);
        for (int k = 0; k <= order; ++k) {
            const double ref = fd_derivative(
                [](const BigFloat& t) { return BigFloat(exp(t * t) * t / (1 + t * t) + log(2 + t)); }, x0, k);
            CHECK(f.derivative(k) == doctest::Approx(ref).epsilon(1e-11).scale(1.0));
        }
        const Jet g = log(exp(x));
        CHECK(g.value() == doctest::Approx(x0));
        CHECK(g[1] == doctest::Approx(1.0));
        for (int k = 2; k <= order; ++k) CHECK(std::abs(g[k]) < 1e-12);
    }
    CHECK_THROWS(Jet(0.0, kMaxJetOrder + 1));
}

TEST_CASE("smooth step")
{
    CHECK(SmoothStep::value(-1.0) == 0.0);
    CHECK(SmoothStep::value(0.0) == 0.0);
    CHECK(SmoothStep::value(1.0) == 1.0);
    CHECK(SmoothStep::value(2.0) == 1.0);
    CHECK(SmoothStep::value(0.5) == doctest::Approx(0.5));
    for (double x = 0.01; x < 1.0; x += 0.0371) {
        CHECK(SmoothStep::value(x) + SmoothStep::value(1.0 - x) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(SmoothStep::derivative(1, x) >= 0.0);
    }
    // flat at both ends
    for (int s = 1; s <= 5; ++s) {
        CHECK(std::abs(SmoothStep::derivative(s, 0.0015)) < 1e-100);
        CHECK(std::abs(SmoothStep::derivative(s, 0.9985)) < 1e-100);
        CHECK(SmoothStep::derivative(s, -0.5) == 0.0);
    }
    for (int s = 1; s <= 4; ++s) {
        const double x0 = 0.37;
        const double ref = fd_derivative(
            [](const BigFloat& t) {
                const BigFloat a = exp(-1 / t), b = exp(-1 / (1 - t));
                return BigFloat(a / (a + b));
            },
            x0, s);
        CHECK(SmoothStep::derivative(s, x0) == doctest::Approx(ref).epsilon(1e-11));
    }
}
