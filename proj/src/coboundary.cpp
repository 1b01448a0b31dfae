// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cohomolib/coboundary.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <cohomolib/error.hpp>
#include <cohomolib/parallel.hpp>

namespace cohomo {

namespace {

double val(double x) { return x; }
double val(const Jet& x) { return x.value(); }
double zeta(double x) { return SmoothStep::value(x); }
Jet zeta(const Jet& x) { return SmoothStep::eval(x); }
template <class T>
T zero_like(const T& x) { return x * 0.0; }

// frac(s (y - a)) reduced into [lo, lo + 1)
double oriented(double y, double a, int s, double lo, double& shift)
{
    const double t = s * (y - a);
    const double k = std::floor(t - lo);
    shift = s * k;
    return t - k;
}

struct UEval {
    LineMap f_prev;
    LineFunction phi_prev;
    double x_star;
    int s;
    double ell_abs, tau_min, tau_J, tau_E, c;

    template <class T>
    T first(const T& y) const
    {
        const double t = s * (val(y) - x_star);
        T w = f_prev.inverse(y);
        if (t >= ell_abs) return phi_prev(w);
        return zeta((y - x_star) * (s / ell_abs)) * phi_prev(w);
    }

    template <class T>
    T eval(const T& x) const
    {
        double shift = 0;
        const double t = oriented(val(x), x_star, s, tau_min, shift);
        if (t <= 0 || t >= tau_E + c) return zero_like(x);
        const T y = x - shift;
        if (t <= tau_J) return first(y);
        if (t <= tau_E) {
            T w = f_prev.inverse(y);
            return first(w) + phi_prev(w);
        }
        T w1 = f_prev.inverse(y);
        T w2 = f_prev.inverse(w1);
        T g = phi_prev(w2) + phi_prev(w1);
        return g * (1.0 - zeta((y - x_star) * (s / c) - tau_E / c));
    }
};

struct XiEval {
    LineMap f_prev;
    LineFunction phibar_n;
    double x_star;
    int s;
    double tau_J, tau_E;

    template <class T>
    T eval(const T& x) const
    {
        double shift = 0;
        const double t = oriented(val(x), x_star, s, 0.0, shift);
        if (t <= 0 || t >= tau_E) return zero_like(x);
        const T y = x - shift;
        if (t <= tau_J) return zeta((y - x_star) * (s / tau_J)) * phibar_n(y);
        T w = f_prev.inverse(y);
        return (1.0 - zeta((w - x_star) * (s / tau_J))) * phibar_n(w);
    }
};

template <class F>
double sup_over(std::size_t n, F&& fn)
{
    std::vector<double> v(n, 0.0);
    parallel_for(n, [&](std::size_t j) { v[j] = fn(j); }, 1);
    return n ? *std::max_element(v.begin(), v.end()) : 0.0;
}

double lerp(double a, double b, std::size_t j, std::size_t n)
{
    return n > 1 ? a + (b - a) * static_cast<double>(j) / static_cast<double>(n - 1) : a;
}

Interval arc_interval(const Arc& a)
{
    return Interval::between(a.start, a.start + a.orientation * a.length);
}

bool in_support(double p, const Arc& a1, const Arc& a2, double tol)
{
    return a1.depth(p) > tol || a2.depth(p) > tol;
}

} // namespace

double Arc::depth(double p) const noexcept
{
    double t = orientation * (p - start);
    t -= std::floor(t);
    if (t <= length) return std::min(t, length - t);
    return -std::min(t - length, 1.0 - t);
}

UConstruction build_u(std::shared_ptr<const CircleLift> f, const LineFunction& phi, const RenormGeometry& geo)
{
    UConstruction out;
    const double xs = geo.x_star;
    const double fp = geo.f_prev(xs);
    const double fc = geo.f_cur(xs);
    out.s = fp > xs ? 1 : -1;
    const int s = out.s;
    out.ell = geo.f_cur(fp) - xs;
    out.tau_min = s * (fc - xs);
    out.tau_J = s * (fp - xs);
    out.tau_E = s * (geo.f_prev(fp) - xs);
    if (!(out.tau_min < 0 && out.tau_J > 0 && s * out.ell > 1e-14 && s * out.ell < out.tau_J))
        fail(ErrorCode::DegenerateInterval, "x* does not split J_{n-1} as expected");
    const double room = 1.0 + out.tau_min - out.tau_E;
    if (!(room > 0)) fail(ErrorCode::DegenerateInterval, "the window for u wraps around the circle");
    out.c = std::min(geo.M_prev, room / 2);
    out.support = Arc{xs, out.tau_E + out.c, s};

    auto ev = std::make_shared<UEval>(UEval{geo.f_prev,
                                            LineFunction::birkhoff(phi, LineMap::lift_power(std::move(f), 1, 0), geo.q_prev),
                                            xs, s, std::abs(out.ell), out.tau_min, out.tau_J, out.tau_E, out.c});
    out.u = LineFunction::custom([ev](double x) { return ev->eval(x); }, [ev](const Jet& x) { return ev->eval(x); },
                                 true);
    return out;
}

XiConstruction build_xi(std::shared_ptr<const CircleLift> f, const LineFunction& phibar, const RenormGeometry& geo,
                        double tol, std::size_t samples)
{
    XiConstruction out;
    const double xs = geo.x_star;
    const double fp = geo.f_prev(xs);
    const int s = fp > xs ? 1 : -1;
    const double tau_J = s * (fp - xs);
    const double tau_E = s * (geo.f_prev(fp) - xs);
    if (!(tau_J > 0 && tau_E < 1.0)) fail(ErrorCode::DegenerateInterval, "I_{n-1}(x*) and its image overlap mod 1");
    out.arc1 = Arc{xs, tau_J, s};
    out.arc2 = Arc{fp, tau_E - tau_J, s};
    out.phibar_n = LineFunction::birkhoff(phibar, LineMap::lift_power(std::move(f), 1, 0), geo.q_cur);

    out.periodicity_defect = sup_over(samples, [&](std::size_t j) {
        const double y = lerp(xs, fp, j, samples);
        return std::abs(out.phibar_n(y) - out.phibar_n(geo.f_prev(y)));
    });
    if (!(out.periodicity_defect <= tol))
        fail(ErrorCode::PeriodicityViolated,
             "phibar_n differs from its f_{n-1} translate by " + std::to_string(out.periodicity_defect));

    auto ev = std::make_shared<XiEval>(XiEval{geo.f_prev, out.phibar_n, xs, s, tau_J, tau_E});
    out.xi = LineFunction::custom([ev](double x) { return ev->eval(x); }, [ev](const Jet& x) { return ev->eval(x); },
                                  true);
    return out;
}

CertificateReport verify_coboundary_certificate(std::shared_ptr<const CircleLift> f, const LineFunction& phitilde,
                                                const LineFunction& u, const ContinuedFraction& cf,
                                                const RenormGeometry& geo, const Arc& arc1, const Arc& arc2,
                                                const CertificateOptions& opt)
{
    CertificateReport rep;
    const double xs = geo.x_star;

    // (a) orbits of I_n(x*) up to q_{n-1} stay off the open support
    {
        const double b = geo.f_cur(xs);
        const std::size_t S = opt.avoidance_samples;
        std::vector<double> worst(S, -1.0);
        parallel_for(
            S,
            [&](std::size_t j) {
                LiftPoint p = LiftPoint::of(lerp(xs, b, j, S));
                double w = -1.0;
                for (std::int64_t i = 0; i < geo.q_prev; ++i) {
                    w = std::max(w, std::max(arc1.depth(p.t), arc2.depth(p.t)));
                    p = f->step(p);
                }
                worst[j] = w;
            },
            1);
        rep.avoidance_margin = S ? *std::max_element(worst.begin(), worst.end()) : -1.0;
        rep.orbit_avoidance = rep.avoidance_margin <= opt.arc_tol;
    }

    // (c) z interior to I_{n-1}(x*) meets the support at times 0 and q_{n-1} only
    {
        const double b = geo.f_prev(xs);
        const std::size_t S = opt.return_samples;
        std::vector<int> bad(S, 0);
        parallel_for(
            S,
            [&](std::size_t j) {
                const double t = (static_cast<double>(j) + 0.5) / static_cast<double>(S);
                LiftPoint p = LiftPoint::of(xs + t * (b - xs));
                std::vector<std::int64_t> hits;
                for (std::int64_t i = 0; i < geo.q_cur && hits.size() < 4; ++i) {
                    if (in_support(p.t, arc1, arc2, opt.arc_tol)) hits.push_back(i);
                    p = f->step(p);
                }
                bad[j] = !(hits.size() == 2 && hits[0] == 0 && hits[1] == geo.q_prev);
            },
            1);
        rep.bad_return_sets = static_cast<int>(std::count(bad.begin(), bad.end(), 1));
        rep.return_times = rep.bad_return_sets == 0;
    }

    // (b) flatness of Gamma_n(phibar - xi), i.e. Gamma_n(phitilde) conjugated by (id, -u)
    {
        FiberedAction g = renormalize(f, phitilde, cf, geo.n, std::max<std::int64_t>(geo.q_cur, 1), 0);
        FiberedAction h = conjugate(g, LineMap::identity(), -1.0 * u);
        rep.witness = flatness_test(h, xs, opt.flat_tol, opt.flat_samples);
        rep.flatness = rep.witness.pass;
        try {
            rep.line_residual = solve_line_cohomology(h.g01().base, h.g01().fiber, xs, 2, 32).residual;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::FixedPointInWindow) throw;
            rep.line_residual = std::numeric_limits<double>::infinity();
        }
    }

    rep.pass = rep.orbit_avoidance && rep.flatness && rep.return_times;
    if (!rep.orbit_avoidance)
        rep.failed = "orbit avoidance (margin " + std::to_string(rep.avoidance_margin) + ")";
    else if (!rep.flatness)
        rep.failed = "flatness (sup " + std::to_string(std::max(rep.witness.sup10, rep.witness.sup01)) + ")";
    else if (!rep.return_times)
        rep.failed = "return times (" + std::to_string(rep.bad_return_sets) + " bad points)";
    if (!rep.pass && opt.throw_on_failure) fail(ErrorCode::CertificateFailed, rep.failed);
    return rep;
}

ConstructionReport approximate_by_coboundary(const CircleLift& f, const PeriodicFunction& phi,
                                             const ContinuedFraction& cf, double epsilon, int r,
                                             const PipelineOptions& opt)
{
    require(r >= 5, ErrorCode::InvalidArgument, "smoothness r must be at least 5");
    require(epsilon > 0, ErrorCode::InvalidArgument, "epsilon must be positive");
    ConstructionReport rep;
    rep.r = r;
    rep.k = (r - 5) / 6;
    rep.epsilon = epsilon;
    const int k = rep.k;

    // invariant mean at the deepest affordable convergent
    int N = 1;
    while (N + 1 <= cf.depth() && cf.q(N + 1) <= BigInt(opt.mu_budget)) ++N;
    const InvariantAverage avg = invariant_average(phi, f, cf, N, 0.0, opt.mu_budget);
    rep.mu = avg.mu;
    rep.mu_error = avg.error_bound;
    const PeriodicFunction phi0 = phi - PeriodicFunction::constant(phi.size(), avg.mu, phi.order());

    if (!opt.levels.empty()) {
        rep.candidates = opt.levels;
    } else {
        for (int n : liouville_levels(cf, r / 2.0).levels)
            if (n >= opt.n_min) rep.candidates.push_back(n);
    }
    std::vector<int> usable;
    for (int n : rep.candidates)
        if (n >= 1 && n <= cf.usable_depth() && cf.q(n) <= BigInt(opt.budget_qn)) usable.push_back(n);
    if (usable.empty())
        fail(ErrorCode::NoQualifyingLevel, "no candidate level has q_n within the budget");

    auto fp = std::make_shared<const CircleLift>(f);
    const LineFunction phiL = LineFunction::periodic(phi0);
    const LineMap F = LineMap::lift_power(fp, 1, 0);
    const std::size_t S = opt.norm_samples;

    for (int n : usable) {
        LevelReport L;
        const RenormGeometry geo = renorm_geometry(f, cf, n, {opt.grid, opt.budget_qn});
        L.n = n;
        L.q_prev = geo.q_prev;
        L.q_cur = geo.q_cur;
        L.x_star = geo.x_star;
        L.M_prev = geo.M_prev;
        L.m_star = geo.m_star;
        L.theta = theta(cf, n, k);

        L.u = build_u(fp, phiL, geo);
        L.ell = L.u.ell;
        L.phibar = phiL + L.u.u - LineFunction::compose(L.u.u, F);

        // phibar_{n-1} = 0 on J_{n-1}(x*), by direct summation
        const Interval J = geo.J(n - 1, geo.x_star);
        const LineFunction phibar_prev = LineFunction::birkhoff(L.phibar, F, geo.q_prev);
        L.j_vanishing = sup_over(S, [&](std::size_t j) { return std::abs(phibar_prev(lerp(J.lo, J.hi, j, S))); });

        L.xi = build_xi(fp, L.phibar, geo);
        L.periodicity_defect = L.xi.periodicity_defect;
        const LineFunction& xi = L.xi.xi;
        L.phitilde = phiL - xi;

        const Interval I = geo.I(n - 1, geo.x_star);
        const Interval I2 = arc_interval(L.xi.arc2);
        L.xi_norm = std::max(cr_norm_on_interval(xi, I, k, S), cr_norm_on_interval(xi, I2, k, S));
        L.phibar_n_norm_I = cr_norm_on_interval(L.xi.phibar_n, I, k, S);
        L.u_norm_J = cr_norm_on_interval(L.u.u, J, k, S);
        const LineFunction phi_prev = LineFunction::birkhoff(phiL, F, geo.q_prev);
        L.phi_prev_norm_K = cr_norm_on_interval(phi_prev, geo.K(n - 1, geo.x_star), k, S);
        const double Mk = std::pow(L.m_star, -k);
        if (L.phi_prev_norm_K > 0) L.u_constant = L.u_norm_J / (L.phi_prev_norm_K * L.theta * Mk);
        if (L.phibar_n_norm_I > 0) L.xi_constant = L.xi_norm / (L.phibar_n_norm_I * Mk);

        L.pairing = sup_over(S, [&](std::size_t j) {
            const double y = lerp(I.lo, I.hi, j, S);
            return std::abs(xi(y) + xi(geo.f_prev(y)) - L.xi.phibar_n(y));
        });
        L.xi_leakage = sup_over(S, [&](std::size_t j) {
            const double y = (static_cast<double>(j) + 0.5) / static_cast<double>(S);
            return in_support(y, L.xi.arc1, L.xi.arc2, 0.0) ? 0.0 : std::abs(xi(y));
        });

        // zero of phibar_n on I_{n-1}(x*), up to the sampling resolution
        {
            std::vector<double> v(S), d(S);
            parallel_for(
                S,
                [&](std::size_t j) {
                    const Jet jet = L.xi.phibar_n(Jet::variable(lerp(I.lo, I.hi, j, S), 1));
                    v[j] = std::abs(jet.value());
                    d[j] = std::abs(jet[1]);
                },
                1);
            L.min_phibar_n = *std::min_element(v.begin(), v.end());
            L.spot_bound = I.length() / static_cast<double>(S - 1) * *std::max_element(d.begin(), d.end());
            L.spot_ok = L.min_phibar_n <= L.spot_bound;
        }

        {
            int M = geo.n;
            while (M + 1 <= cf.depth() && cf.q(M + 1) <= BigInt(opt.mean_check_budget)) ++M;
            L.phitilde_mean_q = cf.q_count(M);
            L.phitilde_mean = LineFunction::birkhoff(L.phitilde, F, L.phitilde_mean_q)(0.0) /
                              static_cast<double>(L.phitilde_mean_q);
        }

        if (opt.certify)
            L.certificate = verify_coboundary_certificate(fp, L.phitilde, L.u.u, cf, geo, L.xi.arc1, L.xi.arc2,
                                                          opt.certificate);

        rep.levels.push_back(std::move(L));
        const auto& last = rep.levels.back();
        if (!rep.achieved && last.xi_norm <= epsilon) {
            rep.achieved = true;
            rep.chosen = static_cast<int>(rep.levels.size()) - 1;
            if (!opt.exhaustive) break;
        }
    }

    if (!rep.achieved) {
        auto best = std::min_element(rep.levels.begin(), rep.levels.end(),
                                     [](const LevelReport& a, const LevelReport& b) { return a.xi_norm < b.xi_norm; });
        rep.chosen = static_cast<int>(best - rep.levels.begin());
        rep.best_xi = best->xi_norm;
        if (!opt.exhaustive)
            fail(ErrorCode::NoQualifyingLevel,
                 "best |xi|_C^k = " + std::to_string(rep.best_xi) + " at level " + std::to_string(best->n));
    } else {
        rep.best_xi = rep.levels[static_cast<std::size_t>(rep.chosen)].xi_norm;
    }
    return rep;
}

Conjugacy conjugacy_from_log_coboundary(const CircleLift& f, const PeriodicFunction& u, double tol)
{
    const std::size_t N = u.size();
    Conjugacy out;
    out.residual = sup_over(N, [&](std::size_t j) {
        const double x = static_cast<double>(j) / static_cast<double>(N);
        return std::abs(u(f(x)) - u(x) - f.log_df(x));
    });
    if (!(out.residual <= tol))
        fail(ErrorCode::ResidualTooLarge, "u o f - u - log Df reaches " + std::to_string(out.residual));

    std::vector<double> e(N);
    for (std::size_t j = 0; j < N; ++j) e[j] = std::exp(-u.samples()[j]);
    const PeriodicFunction hp = PeriodicFunction::from_samples(std::move(e), u.order());
    out.C = hp.mean();

    // h = x + sum_{k != 0} c_k / (2 pi i k) (e^{2 pi i k x} - 1), c = coefficients of h' / C
    const auto& c = hp.coefficients();
    std::vector<cplx> d(c.size(), cplx(0.0, 0.0));
    double at0 = 0;
    for (std::size_t k = 1; k < c.size(); ++k) {
        if (2 * k == N) continue; // Nyquist term has no real antiderivative
        d[k] = c[k] / (out.C * cplx(0.0, 2.0 * std::numbers::pi * static_cast<double>(k)));
        at0 += 2.0 * d[k].real();
    }
    d[0] = -at0;
    out.h = CircleLift::from_displacement(PeriodicFunction::from_coefficients(N, std::move(d), u.order()), u.order(),
                                          "conjugacy");

    std::vector<double> g(N);
    for (std::size_t j = 0; j < N; ++j) {
        const double x = static_cast<double>(j) / static_cast<double>(N);
        g[j] = out.h(f(x)) - out.h(x);
    }
    out.rho = 0;
    for (double v : g) out.rho += v;
    out.rho /= static_cast<double>(N);
    out.defect = 0;
    for (double v : g) out.defect = std::max(out.defect, std::abs(v - out.rho));
    return out;
}

} // namespace cohomo
