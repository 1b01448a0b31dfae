// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <cohomolib/error.hpp>
#include <cohomolib/fourier.hpp>

using namespace cohomo;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e^{2 pi i k alpha} - 1 in 512-bit arithmetic
cplx divisor_oracle(const BigFloat& alpha, std::int64_t k)
{
    PrecisionScope ps(512);
    const BigFloat tp = 2 * boost::multiprecision::acos(BigFloat(-1));
    const BigFloat t = tp * BigFloat(alpha) * BigFloat(k);
    return {static_cast<double>(BigFloat(cos(t) - 1)), static_cast<double>(BigFloat(sin(t)))};
}

} // namespace

TEST_CASE("rotation divisors")
{
    const ContinuedFraction cf = make_cf("golden", 60);
    for (std::int64_t k : {1L, 2L, 7L, 55L, 1000L, 832040L, 102334155L}) {
        const cplx d = rotation_divisor(cf.alpha(), k);
        const cplx ref = divisor_oracle(cf.alpha(), k);
        CHECK(std::abs(d - ref) <= 1e-14 * std::abs(ref) + 1e-300);
        CHECK(d == rotation_divisor(cf.alpha(), k));
    }
    // |d_{q_n}| = 2 sin(pi beta_n)
    for (int n = 5; n <= 40; n += 5) {
        const cplx d = rotation_divisor(cf.alpha(), cf.q_count(n));
        CHECK(std::abs(d) == doctest::Approx(2.0 * std::sin(std::numbers::pi * cf.beta_double(n))).epsilon(1e-13));
    }
}

TEST_CASE("solving over a Diophantine rotation")
{
    const ContinuedFraction cf = make_cf("golden", 60);
    auto psi_fn = [](double x) { return 0.4 + std::cos(kTwoPi * x) + 0.2 * std::sin(3 * kTwoPi * x) - 0.05 * std::cos(9 * kTwoPi * x + 1.0); };
    const auto psi = PeriodicFunction::sample(128, psi_fn);
    const auto sol = solve_rotation(psi, cf.alpha(), 64);
    CHECK(sol.report.psi_mean_removed == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(sol.report.residual < 1e-13);
    CHECK_FALSE(sol.report.growth);
    CHECK(sol.u.mean() == 0.0);
    const double a = cf.alpha_double();
    for (double x : {0.01, 0.5, 0.93}) CHECK(sol.u(x + a) - sol.u(x) == doctest::Approx(psi_fn(x) - 0.4).epsilon(1e-12));
    for (const auto& row : sol.report.modes) {
        CHECK(row.exactness < 1e-14);
        if (row.psi_abs > 0) CHECK(row.u_abs == doctest::Approx(row.psi_abs / row.divisor_abs));
    }
    // double overload agrees
    const auto sol2 = solve_rotation(psi, a, 64);
    CHECK(std::abs(sol2.u(0.3) - sol.u(0.3)) < 1e-12);
    CHECK_THROWS_AS(solve_rotation(psi, a, 65), Error);
}

TEST_CASE("truncation at K modes")
{
    const ContinuedFraction cf = make_cf("sqrt(2)-1", 60);
    const auto psi = PeriodicFunction::sample(64, [](double x) { return std::cos(kTwoPi * x) + std::cos(5 * kTwoPi * x); });
    const auto sol = solve_rotation(psi, cf.alpha(), 3);
    CHECK(sol.u.bandwidth() <= 3);
    // the residual sees the dropped mode 5
    CHECK(sol.report.residual == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("Liouville counterexample")
{
    const ContinuedFraction cf = make_cf("[0,1,2,4,16,256,65536]", 10);
    const auto ce = liouville_counterexample(cf, 3, 2.0, 4096);
    REQUIRE(ce.levels.size() == 3);
    for (std::size_t j = 0; j < ce.modes.size(); ++j) {
        CHECK(ce.modes[j] == cf.q_count(ce.levels[j]));
        CHECK(cf.beta(ce.levels[j]) < cf.beta(ce.levels[j] - 1) * cf.beta(ce.levels[j] - 1));
    }
    // psi_k = d_k at the chosen modes, so the solution has unit coefficients there
    const auto sol = solve_rotation(ce.psi, cf.alpha(), 2048);
    for (const auto& row : sol.report.modes) {
        const bool chosen = std::find(ce.modes.begin(), ce.modes.end(), row.k) != ce.modes.end();
        if (chosen) {
            CHECK(row.u_abs == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(row.psi_abs == doctest::Approx(std::abs(divisor_oracle(cf.alpha(), row.k))).epsilon(1e-13));
        } else {
            CHECK(row.psi_abs == 0.0);
        }
    }
    // |psi_{q_m}| = 2 sin(pi beta_m) shrinks while u keeps unit coefficients
    for (std::size_t j = 0; j < ce.modes.size(); ++j) {
        const double pk = std::abs(ce.psi.coefficient(static_cast<long>(ce.modes[j])));
        CHECK(pk <= kTwoPi * cf.beta_double(ce.levels[j]) * (1 + 1e-12));
        if (j > 0) CHECK(pk < std::abs(ce.psi.coefficient(static_cast<long>(ce.modes[j - 1]))));
    }
    CHECK(sol.u.sup_norm() > 1.0);
    CHECK(sol.report.residual < 1e-12);

    CHECK(liouville_counterexample(cf, 0).psi.sup_norm() == 0.0);
    CHECK_THROWS_AS(liouville_counterexample(make_cf("golden", 40), 1), Error);
    CHECK_THROWS_AS(liouville_counterexample(cf, 3, 2.0, 16), Error);
}
