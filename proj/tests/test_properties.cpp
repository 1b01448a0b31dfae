// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

// Seeded random sweeps over the structural invariants.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <cohomolib/action.hpp>
#include <cohomolib/calculus.hpp>
#include <cohomolib/circlemap.hpp>
#include <cohomolib/coboundary.hpp>
#include <cohomolib/cocycle.hpp>
#include <cohomolib/fourier.hpp>
#include <cohomolib/smoothstep.hpp>

#include "oracles.hpp"

using namespace cohomo;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::uint64_t kSeed = 0x5eed2026;

const TunedMap& golden_arnold()
{
    static const TunedMap t = tune_to_rotation("arnold", {{"eps", 0.5}}, make_cf("golden", 60), 1e-14, 200'000);
    return t;
}

double phi1(double x) { return std::cos(kTwoPi * x) + 0.3 * std::sin(2 * kTwoPi * x); }

} // namespace

TEST_CASE("continued fraction identities for random alpha")
{
    std::mt19937_64 rng(kSeed);
    PrecisionScope ps(512);
    const BigFloat tol = ldexp(BigFloat(1), -200);
    for (int trial = 0; trial < 50; ++trial) {
        const BigFloat alpha = oracle::random_alpha(rng, 256);
        const ContinuedFraction cf = expand(alpha, 25, 256);
        CAPTURE(trial);
        CHECK(cf.depth() >= 1);
        const auto chk = oracle::cf_identities(cf, alpha, tol);
        CAPTURE(chk.failure);
        CHECK(chk.ok);
    }
}

TEST_CASE("closest returns happen exactly at the q_n")
{
    std::mt19937_64 rng(kSeed + 1);
    for (int trial = 0; trial < 50; ++trial) {
        const BigFloat alpha = oracle::random_alpha(rng, 256);
        const ContinuedFraction cf = expand(alpha, 25, 256);
        std::int64_t qmax = 1;
        std::vector<std::int64_t> expect;
        for (int n = 0; n <= cf.depth() && cf.q(n) <= 100'000; ++n) {
            const auto q = static_cast<std::int64_t>(cf.q(n));
            if (expect.empty() || expect.back() != q) expect.push_back(q);
            qmax = q;
        }
        CAPTURE(trial);
        CHECK(oracle::closest_return_records(alpha, qmax) == expect);
    }
}

TEST_CASE("lift periodicity")
{
    std::mt19937_64 rng(kSeed + 2);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    const CircleLift f = make_family("arnold", {{"a", 0.27}, {"eps", 0.8}});
    for (int i = 0; i < 1000; ++i) {
        const double x = U(rng);
        CHECK(std::abs(f(x + 1.0) - f(x) - 1.0) < 1e-13);
    }
}

TEST_CASE("sign alternation, bounded distortion and the ratio bound")
{
    const TunedMap& t = golden_arnold();
    const CircleLift& f = t.map;
    const auto logdf = PeriodicFunction::sample(f.grid(), [&](double x) { return f.log_df(x); });
    const double V = total_variation(logdf).value;
    const auto herman = herman_sequence(f, t.cf, 12);
    for (const auto& e : herman) CHECK(e.norm <= V * (1 + 1e-9));

    for (int n = 2; n <= 10; ++n) {
        CAPTURE(n);
        const RenormGeometry geo = renorm_geometry(f, t.cf, n);
        CHECK(geo.sign_prev == ((n - 1) % 2 == 0 ? 1 : -1));
        CHECK(geo.sign_cur == (n % 2 == 0 ? 1 : -1));
        for (int j = 0; j < 64; ++j) {
            const double x = j / 64.0;
            CHECK(geo.sign_cur * (geo.f_cur(x) - x) > 0.0);
            CHECK(geo.sign_prev * (geo.f_prev(x) - x) > 0.0);
        }
        // m_n(x*) / m_n(y) within e^{+-3V} on K_{n-1}(x*)
        const Interval K = geo.K(n - 1, geo.x_star);
        const double ms = std::abs(geo.f_cur(geo.x_star) - geo.x_star);
        for (int j = 0; j <= 32; ++j) {
            const double y = K.lo + K.length() * j / 32.0;
            const double ratio = ms / std::abs(geo.f_cur(y) - y);
            CHECK(ratio < std::exp(3 * V));
            CHECK(ratio > std::exp(-3 * V));
        }
    }
}

TEST_CASE("invariant mean of m_{n-1} is beta_{n-1}")
{
    const TunedMap& t = golden_arnold();
    const int N = std::min(t.certified_level, 24);
    for (int n = 2; n <= 8; ++n) {
        const RenormGeometry geo = renorm_geometry(t.map, t.cf, n);
        const auto avg = invariant_average(geo.m_prev, t.map, t.cf, N);
        CAPTURE(n);
        CHECK(std::abs(avg.mu - t.cf.beta_double(n - 1)) < 1e-6);
    }
}

TEST_CASE("cocycle identity")
{
    std::mt19937_64 rng(kSeed + 3);
    std::uniform_int_distribution<std::int64_t> K(0, 400);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const CircleLift f = make_family("arnold", {{"a", 0.61}, {"eps", 0.7}});
    const auto phi = PeriodicFunction::sample(128, phi1);
    for (int i = 0; i < 100; ++i) {
        const std::int64_t m = K(rng), n = K(rng);
        const double x = U(rng);
        double y = x;
        for (std::int64_t j = 0; j < m; ++j) y = f(y);
        const double lhs = birkhoff_sum(phi, f, m + n, x);
        const double rhs = birkhoff_sum(phi, f, m, x) + birkhoff_sum(phi, f, n, y);
        CHECK(std::abs(lhs - rhs) < 1e-9);
    }
}

TEST_CASE("Birkhoff sum of log Df is log Df_n")
{
    const TunedMap& t = golden_arnold();
    const auto logdf = PeriodicFunction::sample(t.map.grid(), [&](double x) { return t.map.log_df(x); });
    for (int n = 1; n <= 12; ++n) {
        const std::int64_t q = t.cf.q_count(n);
        for (double x : {0.0, 0.37, 0.81}) {
            const double s = birkhoff_sum(logdf, t.map, q, x);
            // independent derivative of the iterate by the chain rule along the orbit
            double y = x, lg = 0.0;
            for (std::int64_t j = 0; j < q; ++j) {
                lg += std::log(1.0 + 0.5 * std::cos(kTwoPi * y));
                y = t.map(y);
            }
            CHECK(std::abs(s - lg) < 1e-9);
        }
    }
}

TEST_CASE("Fourier solver exactness and decay in K")
{
    const ContinuedFraction cf = make_cf("golden", 60);
    // coefficients decay like r^|k| with r = 1.5 - sqrt(1.25)
    const auto psi = PeriodicFunction::sample(256, [](double x) { return 1.0 / (1.5 - std::cos(kTwoPi * x)); });
    double prev = -1.0;
    for (int K : {1, 2, 4, 8, 16, 32}) {
        const auto sol = solve_rotation(psi, cf.alpha(), K);
        for (const auto& row : sol.report.modes)
            if (row.psi_abs > 1e-300) CHECK(row.exactness < 1e-15 * 8);
        CAPTURE(K);
        if (prev > 1e-12) CHECK(sol.report.residual < 0.9 * prev);
        prev = sol.report.residual;
    }

    // coboundary round trip for random trigonometric v
    std::mt19937_64 rng(kSeed + 4);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const double a = cf.alpha_double();
    for (int trial = 0; trial < 10; ++trial) {
        double c[6];
        for (double& ci : c) ci = U(rng);
        auto v = [&](double x) {
            double s = 0;
            for (int k = 1; k <= 3; ++k) s += c[2 * k - 2] * std::cos(k * kTwoPi * x) + c[2 * k - 1] * std::sin(k * kTwoPi * x);
            return s;
        };
        const auto pf = PeriodicFunction::sample(64, [&](double x) { return v(x + a) - v(x); });
        const auto sol = solve_rotation(pf, cf.alpha(), 32);
        for (double x : {0.0, 0.3, 0.7}) CHECK(std::abs(sol.u(x) - v(x)) < 1e-10);
    }
}

TEST_CASE("Liouville blow-up")
{
    const ContinuedFraction cf = make_cf("[0,1,2,4,16,256,65536]", 10);
    const auto ce = liouville_counterexample(cf, 3, 2.0, 4096);
    double prev = 0.0;
    for (int K : {1, 2, 4, 16, 64, 256, 1024, 2048}) {
        const auto sol = solve_rotation(ce.psi, cf.alpha(), K);
        CHECK(sol.report.max_u >= prev);
        prev = sol.report.max_u;
        for (const auto& row : sol.report.modes)
            if (std::find(ce.modes.begin(), ce.modes.end(), row.k) != ce.modes.end()) CHECK(row.u_abs >= 1.0 - 1e-12);
    }
}

TEST_CASE("action homomorphism and commutation")
{
    const auto f = std::make_shared<CircleLift>(make_family("arnold", {{"a", 0.33}, {"eps", 0.6}}));
    const FiberedAction Phi = induced_action(f, LineFunction::periodic(PeriodicFunction::sample(64, phi1)));
    std::mt19937_64 rng(kSeed + 5);
    std::uniform_int_distribution<int> D(-6, 6);
    for (int i = 0; i < 50; ++i) {
        const int a = D(rng), b = D(rng), c = D(rng), d = D(rng);
        CHECK(pair_distance(act(Phi, a + c, b + d), act(Phi, a, b) * act(Phi, c, d), 64) < 1e-9);
    }
    // psi^{1,1} both ways
    const FiberedPair& A = Phi.g10();
    const FiberedPair& B = Phi.g01();
    for (double x : {0.0, 0.2, 0.65}) {
        const double w1 = B.fiber(x) + A.fiber(B.base(x));
        const double w2 = A.fiber(x) + B.fiber(A.base(x));
        CHECK(std::abs(w1 - w2) < 1e-12);
    }

    // U_B U_A = U_{BA}, T_{w1} T_{w2} = T_{w1 w2}, and T commutes with U
    const IntMat2 M1{2, 1, 1, 1}, M2{1, 1, 0, 1};
    const FiberedAction UU = rebase(rebase(Phi, M1), M2);
    const FiberedAction U = rebase(Phi, M2 * M1);
    CHECK(pair_distance(UU.g10(), U.g10(), 64) < 1e-9);
    CHECK(pair_distance(UU.g01(), U.g01(), 64) < 1e-9);

    const FiberedPair w1{LineMap::lift(make_family("arnold", {{"a", 0.1}, {"eps", 0.3}})),
                         LineFunction::periodic(PeriodicFunction::sample(64, [](double x) { return 0.2 * std::sin(kTwoPi * x); }))};
    const FiberedPair w2{LineMap::translation(0.15),
                         LineFunction::periodic(PeriodicFunction::sample(64, [](double x) { return 0.1 * std::cos(kTwoPi * x); }))};
    const FiberedPair w12 = w1 * w2;
    const FiberedAction TT = conjugate(conjugate(Phi, w2.base, w2.fiber), w1.base, w1.fiber);
    const FiberedAction T = conjugate(Phi, w12.base, w12.fiber);
    CHECK(pair_distance(TT.g10(), T.g10(), 64) < 1e-9);
    CHECK(pair_distance(TT.g01(), T.g01(), 64) < 1e-9);

    const FiberedAction TU = conjugate(rebase(Phi, M1), w1.base, w1.fiber);
    const FiberedAction UT = rebase(conjugate(Phi, w1.base, w1.fiber), M1);
    CHECK(pair_distance(TU.g10(), UT.g10(), 64) < 1e-9);
    CHECK(pair_distance(TU.g01(), UT.g01(), 64) < 1e-9);
}

TEST_CASE("smooth step is flat at both ends and monotone")
{
    for (int s = 1; s <= 8; ++s) {
        CHECK(SmoothStep::derivative(s, 0.0) == 0.0);
        CHECK(SmoothStep::derivative(s, 1.0) == 0.0);
    }
    CHECK(SmoothStep::value(0.0) == 0.0);
    CHECK(SmoothStep::value(1.0) == 1.0);
    double prev = 0.0;
    for (int j = 0; j <= 10000; ++j) {
        const double v = SmoothStep::value(j / 10000.0);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("certificate accepts synthetic coboundaries")
{
    const ContinuedFraction cf = make_cf("golden", 40);
    const auto f = std::make_shared<CircleLift>(CircleLift::rotation(cf.alpha_double()));
    std::mt19937_64 rng(kSeed + 6);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 3; ++trial) {
        const double c1 = U(rng), c2 = U(rng), c3 = U(rng);
        auto v = [=](double x) { return c1 * std::sin(kTwoPi * x) + c2 * std::cos(kTwoPi * x) + c3 * std::sin(2 * kTwoPi * x + 0.4); };
        const auto phi = PeriodicFunction::sample(f->grid(), [&](double x) { return v((*f)(x)) - v(x); });
        PipelineOptions o;
        o.levels = {3, 4, 5};
        o.exhaustive = true;
        o.certificate.throw_on_failure = false;
        const auto rep = approximate_by_coboundary(*f, phi, cf, 1e-3, 11, o);
        for (const auto& L : rep.levels) {
            CAPTURE(trial);
            CAPTURE(L.n);
            CHECK(L.certificate.pass);
        }
    }
}
