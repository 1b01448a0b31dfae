// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include <cohomolib/coboundary.hpp>
#include <cohomolib/error.hpp>
#include <cohomolib/fourier.hpp>

using namespace cohomo;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ErrorCode code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Internal;
}

PeriodicFunction cos1(std::size_t n) { return PeriodicFunction::sample(n, [](double x) { return std::cos(kTwoPi * x); }); }

PipelineOptions levels_only(std::vector<int> levels)
{
    PipelineOptions o;
    o.levels = std::move(levels);
    o.exhaustive = true;
    o.certificate.throw_on_failure = false;
    return o;
}

} // namespace

TEST_CASE("arc depth")
{
    const Arc a{0.9, 0.2, 1}; // [0.9, 1.1] mod 1
    CHECK(a.depth(0.0) == doctest::Approx(0.1));
    CHECK(a.depth(0.95) == doctest::Approx(0.05));
    CHECK(a.depth(0.5) == doctest::Approx(-0.4));
    CHECK(a.depth(0.12) == doctest::Approx(-0.02));
    const Arc b{0.3, 0.1, -1}; // [0.2, 0.3]
    CHECK(b.depth(0.25) == doctest::Approx(0.05));
    CHECK(b.depth(0.35) == doctest::Approx(-0.05));
    const Arc w = b.widened(0.01);
    CHECK(w.depth(0.195) > 0.0);
    CHECK(w.depth(0.305) > 0.0);
}

TEST_CASE("zero cocycle gives zero u and xi")
{
    const ContinuedFraction cf = make_cf("golden", 40);
    const auto f = std::make_shared<CircleLift>(CircleLift::rotation(cf.alpha_double()));
    const RenormGeometry geo = renorm_geometry(*f, cf, 5);
    const UConstruction u = build_u(f, LineFunction::zero(), geo);
    const XiConstruction xi = build_xi(f, LineFunction::zero(), geo);
    for (double x = 0.0; x < 1.0; x += 0.013) {
        CHECK(u.u(x) == 0.0);
        CHECK(xi.xi(x) == 0.0);
    }
    const auto rep = approximate_by_coboundary(*f, PeriodicFunction::zero(f->grid()), cf, 1e-3, 11, levels_only({3, 4}));
    for (const auto& L : rep.levels) {
        CHECK(L.xi_norm == 0.0);
        CHECK(L.u_norm_J == 0.0);
        CHECK(L.certificate.pass);
    }
    CHECK(rep.achieved);
}

TEST_CASE("construction over the golden rotation at level 5")
{
    const ContinuedFraction cf = make_cf("golden", 40);
    const auto f = std::make_shared<CircleLift>(CircleLift::rotation(cf.alpha_double()));
    const auto phi = cos1(f->grid());
    const auto rep = approximate_by_coboundary(*f, phi, cf, 1e-3, 11, levels_only({5}));
    REQUIRE(rep.levels.size() == 1);
    const LevelReport& L = rep.levels[0];
    CHECK(rep.mu == doctest::Approx(0.0).scale(1e-6));
    CHECK(L.q_prev == 5);
    CHECK(L.q_cur == 8);
    CHECK(L.M_prev == doctest::Approx(cf.beta_double(4)).epsilon(1e-9));
    CHECK(L.j_vanishing < 1e-7);
    CHECK(L.pairing < 1e-7);
    CHECK(L.xi_leakage < 1e-10);
    CHECK(L.periodicity_defect < 1e-6);
    CHECK(L.certificate.orbit_avoidance);
    CHECK(L.certificate.flatness);
    CHECK(L.certificate.return_times);
    CHECK(L.certificate.pass);

    // xi lives on the two arcs
    for (double x = 0.0; x < 1.0; x += 1.0 / 997) {
        if (L.xi.arc1.depth(x) < -1e-9 && L.xi.arc2.depth(x) < -1e-9) CHECK(std::abs(L.xi.xi(x)) < 1e-12);
    }
    // phitilde + xi = phi - mu, and phibar differs from phi - mu by u - u o f
    const double a = cf.alpha_double();
    for (double x : {0.1, 0.45, 0.8}) {
        const double centred = std::cos(kTwoPi * x) - rep.mu;
        CHECK(L.phitilde(x) + L.xi.xi(x) == doctest::Approx(centred).epsilon(1e-12));
        CHECK(L.phibar(x) == doctest::Approx(centred + L.u.u(x) - L.u.u(x + a)).epsilon(1e-12));
    }

    // independent check: phitilde is a coboundary over the rotation, so the
    // Fourier solver leaves a small residual and bounded solution
    const std::size_t N = 8192;
    const auto pt = L.phitilde.to_periodic(N);
    const auto sol = solve_rotation(pt, cf.alpha(), static_cast<int>(N / 2));
    CHECK(std::abs(pt.mean()) < 1e-6);
    CHECK(sol.report.residual < 1e-6);
    CHECK_FALSE(sol.report.growth);
}

TEST_CASE("certificate negative control")
{
    const ContinuedFraction cf = make_cf("golden", 40);
    const auto f = std::make_shared<CircleLift>(CircleLift::rotation(cf.alpha_double()));
    const auto rep = approximate_by_coboundary(*f, cos1(f->grid()), cf, 1e-3, 11, levels_only({5}));
    const LevelReport& L = rep.levels[0];
    const RenormGeometry geo = renorm_geometry(*f, cf, 5);
    CertificateOptions opt;
    opt.throw_on_failure = false;
    const double w = 1.0 / 4096;
    const auto bad = verify_coboundary_certificate(f, L.phitilde, L.u.u, cf, geo, L.xi.arc1.widened(w), L.xi.arc2.widened(w), opt);
    CHECK_FALSE(bad.orbit_avoidance);
    CHECK_FALSE(bad.pass);
    CHECK(bad.avoidance_margin == doctest::Approx(w).epsilon(0.05));
    opt.throw_on_failure = true;
    CHECK(code_of([&] {
              verify_coboundary_certificate(f, L.phitilde, L.u.u, cf, geo, L.xi.arc1.widened(w), L.xi.arc2.widened(w), opt);
          }) == ErrorCode::CertificateFailed);

    // a cocycle that is not flat fails clause (b)
    const auto good = verify_coboundary_certificate(f, L.phibar, L.u.u, cf, geo, L.xi.arc1, L.xi.arc2,
                                                    CertificateOptions{.throw_on_failure = false});
    CHECK_FALSE(good.flatness);
}

TEST_CASE("Arnold map levels 3 to 6")
{
    const ContinuedFraction cf = make_cf("golden", 60);
    const TunedMap t = tune_to_rotation("arnold", {{"eps", 0.5}}, cf, 1e-14, 200'000);
    const auto phi = PeriodicFunction::sample(t.map.grid(), [](double x) { return std::cos(kTwoPi * x) + 0.3 * std::sin(2 * kTwoPi * x); });
    PipelineOptions o = levels_only({3, 4, 5, 6});
    o.mu_budget = 1'000'000;
    const auto rep = approximate_by_coboundary(t.map, phi, t.cf, 1e-3, 11, o);
    REQUIRE(rep.levels.size() == 4);
    CHECK(rep.k == 1);
    for (const auto& L : rep.levels) {
        CAPTURE(L.n);
        CHECK(L.j_vanishing < 1e-7);
        CHECK(L.pairing < 1e-7);
        CHECK(L.certificate.pass);
        CHECK(L.theta == doctest::Approx(theta(t.cf, L.n, rep.k)));
        CHECK(std::abs(L.phitilde_mean) < 1e-6);
    }
}

TEST_CASE("pipeline argument checks")
{
    const ContinuedFraction cf = make_cf("golden", 40);
    const CircleLift f = CircleLift::rotation(cf.alpha_double());
    const auto phi = cos1(f.grid());
    CHECK(code_of([&] { approximate_by_coboundary(f, phi, cf, 1e-3, 4); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { approximate_by_coboundary(f, phi, cf, 0.0, 11); }) == ErrorCode::InvalidArgument);
    // golden has no Liouville levels
    CHECK(code_of([&] { approximate_by_coboundary(f, phi, cf, 1e-3, 11); }) == ErrorCode::NoQualifyingLevel);
    PipelineOptions o;
    o.levels = {3, 4};
    CHECK(code_of([&] { approximate_by_coboundary(f, phi, cf, 1e-30, 11, o); }) == ErrorCode::NoQualifyingLevel);
    o.exhaustive = true;
    const auto rep = approximate_by_coboundary(f, phi, cf, 1e-30, 11, o);
    CHECK_FALSE(rep.achieved);
    CHECK(rep.levels.size() == 2);
}

TEST_CASE("conjugacy from a log-coboundary")
{
    SUBCASE("rotation with u = 0")
    {
        const CircleLift f = CircleLift::rotation(0.3819660112501051, 256);
        const auto c = conjugacy_from_log_coboundary(f, PeriodicFunction::zero(256));
        CHECK(c.C == doctest::Approx(1.0));
        CHECK(c.rho == doctest::Approx(0.3819660112501051));
        CHECK(c.defect < 1e-14);
        for (double x : {0.0, 0.3, 0.7}) CHECK(c.h(x) == doctest::Approx(x));
    }
    SUBCASE("synthesized g = h^{-1} R h")
    {
        const double alpha = (std::sqrt(5.0) - 1.0) / 2.0, delta = 0.1;
        auto h = [&](double x) { return x + delta / kTwoPi * std::sin(kTwoPi * x); };
        auto hinv = [&](double y) {
            double x = y;
            for (int i = 0; i < 60; ++i) x -= (h(x) - y) / (1.0 + delta * std::cos(kTwoPi * x));
            return x;
        };
        const std::size_t N = 512;
        const CircleLift g = CircleLift::from_displacement(PeriodicFunction::sample(N, [&](double x) { return hinv(h(x) + alpha) - x; }));
        // log Dg = u o g - u with u = -log Dh
        const auto u = PeriodicFunction::sample(N, [&](double x) { return -std::log(1.0 + delta * std::cos(kTwoPi * x)); });
        const auto c = conjugacy_from_log_coboundary(g, u);
        CHECK(c.residual < 1e-10);
        CHECK(c.C == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(c.rho == doctest::Approx(alpha).epsilon(1e-10));
        CHECK(c.defect < 1e-10);
        for (double x : {0.1, 0.5, 0.9}) CHECK(c.h(x) == doctest::Approx(h(x)).epsilon(1e-10));
        CHECK(code_of([&] { conjugacy_from_log_coboundary(g, PeriodicFunction::zero(N)); }) == ErrorCode::ResidualTooLarge);
    }
}
