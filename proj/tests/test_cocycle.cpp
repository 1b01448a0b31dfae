// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include <cohomolib/cocycle.hpp>
#include <cohomolib/error.hpp>

using namespace cohomo;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// sum_{i<k} cos(2 pi (x + i a)) in closed form
double rotation_cos_sum(double x, double a, long k)
{
    using C = std::complex<long double>;
    const long double tp = 2.0L * std::numbers::pi_v<long double>;
    const C e = std::polar(1.0L, tp * a);
    const C ek = std::polar(1.0L, tp * std::fmod(static_cast<long double>(k) * a, 1.0L));
    return static_cast<double>((std::polar(1.0L, tp * x) * (1.0L - ek) / (1.0L - e)).real());
}

double naive_sum(const std::function<double(double)>& phi, const std::function<double(double)>& f, long k, double x)
{
    double s = 0.0;
    for (long i = 0; i < k; ++i) {
        s += phi(x);
        x = f(x);
        x -= std::floor(x);
    }
    return s;
}

PeriodicFunction cos_k(int k, std::size_t n = 256)
{
    return PeriodicFunction::sample(n, [k](double x) { return std::cos(k * kTwoPi * x); });
}

} // namespace

TEST_CASE("Birkhoff sums over a rotation match the geometric series")
{
    const ContinuedFraction cf = make_cf("golden", 40);
    const double a = cf.alpha_double();
    const CircleLift f = CircleLift::rotation(a);
    const auto phi = cos_k(1);
    for (long k : {1L, 13L, 144L, 10946L}) {
        for (double x : {0.0, 0.31, 0.77}) {
            CHECK(birkhoff_sum(phi, f, k, x) == doctest::Approx(rotation_cos_sum(x, a, k)).epsilon(1e-10).scale(1.0));
        }
    }
    const auto grid = birkhoff_sum_grid(phi, f, 89, 64);
    CHECK(grid.size() == 64);
    CHECK(grid(0.25) == doctest::Approx(rotation_cos_sum(0.25, a, 89)).epsilon(1e-10).scale(1.0));
}

TEST_CASE("Birkhoff sums over an Arnold map match a direct loop")
{
    const double a = 0.4, eps = 0.8;
    const CircleLift f = make_family("arnold", {{"a", a}, {"eps", eps}});
    const auto phi = PeriodicFunction::sample(128, [](double x) { return std::sin(kTwoPi * x) + 0.3 * std::cos(2 * kTwoPi * x); });
    auto phi_d = [](double x) { return std::sin(kTwoPi * x) + 0.3 * std::cos(2 * kTwoPi * x); };
    auto f_d = [&](double x) { return x + a + eps / kTwoPi * std::sin(kTwoPi * x); };
    const double xs[] = {0.0, 0.2, 0.9};
    const auto vals = birkhoff_values(phi, f, 1000, xs);
    for (int i = 0; i < 3; ++i) {
        const double ref = naive_sum(phi_d, f_d, 1000, xs[i]);
        CHECK(birkhoff_sum(phi, f, 1000, xs[i]) == doctest::Approx(ref).epsilon(1e-8).scale(1.0));
        CHECK(vals[i] == doctest::Approx(ref).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("total variation")
{
    CHECK(total_variation(cos_k(1)).value == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(total_variation(cos_k(3)).value == doctest::Approx(12.0).epsilon(1e-12));
    CHECK(total_variation(PeriodicFunction::constant(64, 2.0)).value == 0.0);

    // fine-grid oracle for a function with several extrema
    auto g = [](double x) { return std::sin(kTwoPi * x) + 0.45 * std::cos(3 * kTwoPi * x + 0.3); };
    const auto phi = PeriodicFunction::sample(256, g);
    double ref = 0.0;
    const int M = 2'000'000;
    for (int j = 0; j < M; ++j) ref += std::abs(g((j + 1.0) / M) - g(static_cast<double>(j) / M));
    const auto v = total_variation(phi);
    CHECK_FALSE(v.lower_bound);
    CHECK(v.value == doctest::Approx(ref).epsilon(1e-9));
    CHECK(v.extrema >= 2);

    const auto rough = PeriodicFunction::sample(64, [](double x) { return x; }, 0);
    const auto rv = total_variation(rough);
    CHECK(rv.lower_bound);
    CHECK(rv.value == doctest::Approx(2.0 * 63.0 / 64.0));
}

TEST_CASE("C^r norms")
{
    const auto s = PeriodicFunction::sample(64, [](double x) { return std::sin(kTwoPi * x); });
    CHECK(cr_norm(s, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cr_norm(s, 2) == doctest::Approx(kTwoPi * kTwoPi).epsilon(1e-12));
    // on [0, 0.1] sin is below sin(0.2 pi) and its derivative peaks at 0
    const Interval I{0.0, 0.1, 1};
    CHECK(cr_norm_on_interval(s, I, 0) == doctest::Approx(std::sin(0.2 * std::numbers::pi)).epsilon(1e-12));
    CHECK(cr_norm_on_interval(s, I, 1) == doctest::Approx(kTwoPi).epsilon(1e-12));
    const LineFunction ls = LineFunction::periodic(s);
    CHECK(cr_norm_on_interval(ls, I, 1, 100) == doctest::Approx(kTwoPi).epsilon(1e-12));
    CHECK_THROWS(cr_norm_on_interval(s, Interval{0.3, 0.3, 1}, 1));
    CHECK_THROWS(cr_norm(s.with_order(1), 2));
}

TEST_CASE("invariant average")
{
    const ContinuedFraction cf = make_cf("golden", 60);
    SUBCASE("rotation gives the Lebesgue mean")
    {
        const auto phi = PeriodicFunction::sample(64, [](double x) { return 0.7 + std::cos(kTwoPi * x); });
        const auto avg = invariant_average(phi, CircleLift::rotation(cf.alpha_double()), cf, 20);
        CHECK(avg.q == cf.q_count(20));
        CHECK(std::abs(avg.mu - 0.7) <= avg.error_bound);
        CHECK(avg.error_bound == doctest::Approx(4.0 / avg.q));
    }
    SUBCASE("Arnold map against a long orbit")
    {
        const TunedMap t = tune_to_rotation("arnold", {{"eps", 0.5}}, cf, 1e-14, 200'000);
        const auto phi = cos_k(1);
        const auto avg = invariant_average(phi, t.map, t.cf, std::min(t.certified_level, 22));
        const long N = 3'000'000;
        const double orbit = naive_sum([](double x) { return std::cos(kTwoPi * x); }, [&](double x) { return t.map(x); }, N, 0.0) / N;
        CHECK(std::abs(avg.mu - orbit) <= avg.error_bound + 8.0 / N);
        // the invariant density is not Lebesgue, so the mean moves away from 0
        CHECK(std::abs(avg.mu) > 10 * avg.error_bound);
    }
}

TEST_CASE("Denjoy-Koksma inequality")
{
    const ContinuedFraction cf = make_cf("golden", 60);
    const CircleLift rot = CircleLift::rotation(cf.alpha_double());
    const auto phi = cos_k(1);
    const auto avg = invariant_average(phi, rot, cf, 30);
    std::vector<int> levels;
    for (int n = 1; n <= 18; ++n) levels.push_back(n);
    const auto reps = denjoy_koksma_sweep(phi, rot, cf, levels, avg);
    REQUIRE(reps.size() == levels.size());
    for (const auto& r : reps) {
        CHECK(r.pass);
        CHECK(r.var == doctest::Approx(4.0));
        CHECK(r.sup_dev <= r.var + r.slack);
        // closed form: sup_x |S^q cos| = |1 - e^{2 pi i q a}| / |1 - e^{2 pi i a}|
        const double a = cf.alpha_double();
        const double ref = std::abs(std::sin(std::numbers::pi * std::fmod(r.q * a, 1.0))) / std::sin(std::numbers::pi * a);
        CHECK(r.sup_dev == doctest::Approx(ref).epsilon(1e-3).scale(1e-6));
    }

    // a fake mean breaks the bound and is reported
    InvariantAverage bad = avg;
    bad.mu = 0.1;
    bad.error_bound = 0.0;
    int lv[] = {15};
    DKOptions opt;
    CHECK_THROWS_AS(denjoy_koksma_sweep(phi, rot, cf, lv, bad, opt), Error);
    opt.throw_on_violation = false;
    CHECK_FALSE(denjoy_koksma_sweep(phi, rot, cf, lv, bad, opt).front().pass);
}

TEST_CASE("Herman sequence")
{
    const ContinuedFraction cf = make_cf("golden", 60);
    for (const auto& e : herman_sequence(CircleLift::rotation(cf.alpha_double()), cf, 10)) CHECK(e.norm < 1e-12);

    const TunedMap t = tune_to_rotation("arnold", {{"eps", 0.5}}, cf, 1e-14, 200'000);
    const auto seq = herman_sequence(t.map, t.cf, 14);
    REQUIRE(seq.size() >= 10);
    for (const auto& e : seq) {
        CHECK(e.q == t.cf.q_count(e.n));
        // lower bound from the derivative of the iterate at a few points
        for (double x : {0.0, 0.25, 0.5, 0.75}) {
            const double dfq = iterate_derivatives(t.map, e.q, 1, x)[0];
            CHECK(std::abs(std::log(dfq)) <= e.norm + 1e-9);
        }
    }
    CHECK(seq.back().norm < seq[3].norm);
}

TEST_CASE("theta against exact rationals")
{
    // [0; 3, 1, 4, 1, 5, 9, 2]
    std::vector<BigInt> a = {0, 3, 1, 4, 1, 5, 9, 2};
    const ContinuedFraction cf = from_partial_quotients(a);
    const BigRational alpha = *cf.exact();
    for (int n = 1; n + 1 < cf.depth(); ++n) {
        for (int r : {0, 1, 5, 11}) {
            const BigRational b0 = abs(BigRational(cf.q(n - 1)) * alpha - BigRational(cf.p(n - 1)));
            const BigRational b1 = abs(BigRational(cf.q(n)) * alpha - BigRational(cf.p(n)));
            const BigRational ratio = b0 / (b0 - b1);
            BigRational s = 0, t = 1;
            for (int i = 0; i <= r; ++i) {
                s += t;
                t *= ratio;
            }
            CHECK(theta(cf, n, r) == doctest::Approx(static_cast<double>(s)).epsilon(1e-14));
        }
    }
    CHECK_THROWS(theta(cf, 0, 3));
}
