// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cohomolib/circlemap.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include <cohomolib/calculus.hpp>
#include <cohomolib/error.hpp>
#include <cohomolib/parallel.hpp>

namespace cohomo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string label_of(const std::string& kind, const FamilyParams& params)
{
    std::ostringstream os;
    os.precision(17);
    os << kind;
    char sep = ':';
    for (const auto& [k, v] : params) {
        os << sep << k << '=' << v;
        sep = ',';
    }
    return os.str();
}

// Harmonic index from keys like "c3" / "s12"; 0 when the key is not of that form.
int harmonic_index(const std::string& key)
{
    if (key.size() < 2 || (key[0] != 'c' && key[0] != 's')) return 0;
    int k = 0;
    for (std::size_t i = 1; i < key.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(key[i])) || k > 100000) return 0;
        k = 10 * k + (key[i] - '0');
    }
    return k;
}

// Displacement of the family without its translation parameter.
PeriodicFunction family_shape(const std::string& kind, const FamilyParams& params, std::size_t grid)
{
    std::vector<cplx> c(1, cplx(0.0));
    auto put = [&](int k, cplx v) {
        require(static_cast<std::size_t>(k) < grid / 2, ErrorCode::InvalidArgument,
                "harmonic " + std::to_string(k) + " does not fit the grid");
        if (c.size() <= static_cast<std::size_t>(k)) c.resize(k + 1, cplx(0.0));
        c[k] += v;
    };
    if (kind == "rotation") {
        for (const auto& [k, v] : params)
            require(k == "a", ErrorCode::InvalidArgument, "rotation takes only 'a', got '" + k + "'");
    } else if (kind == "arnold") {
        double eps = 0.0;
        for (const auto& [k, v] : params) {
            if (k == "eps")
                eps = v;
            else
                require(k == "a", ErrorCode::InvalidArgument, "arnold takes 'a' and 'eps', got '" + k + "'");
        }
        if (!(std::abs(eps) < 1.0))
            fail(ErrorCode::NotADiffeomorphism, "arnold map needs |eps| < 1, got " + std::to_string(eps));
        // eps/(2 pi) sin(2 pi x) = 2 Re(c_1 e^{2 pi i x})
        if (eps != 0.0) put(1, cplx(0.0, -eps / (2.0 * kTwoPi)));
    } else if (kind == "spectral" || kind == "custom-spectral") {
        for (const auto& [k, v] : params) {
            if (k == "a") continue;
            int h = harmonic_index(k);
            require(h >= 1, ErrorCode::InvalidArgument, "spectral takes 'a', 'c<k>', 's<k>', got '" + k + "'");
            put(h, k[0] == 'c' ? cplx(0.5 * v, 0.0) : cplx(0.0, -0.5 * v));
        }
    } else {
        fail(ErrorCode::InvalidArgument, "unknown map family '" + kind + "'");
    }
    return PeriodicFunction::from_coefficients(grid, std::move(c));
}

double param_or(const FamilyParams& p, const std::string& key, double def)
{
    auto it = p.find(key);
    return it == p.end() ? def : it->second;
}

// f_a^Q(0) - P for f_a = shape + a.
double return_defect(const PeriodicFunction& shape, double a, std::int64_t P, std::int64_t Q)
{
    LiftPoint pt;
    if (shape.bandwidth() == 0) {
        const double c = shape.mean() + a;
        for (std::int64_t i = 0; i < Q; ++i) pt.normalize(pt.t + c);
    } else if (shape.bandwidth() == 1 && shape.size() > 2) {
        // single harmonic (the Arnold family): coefficients stay in registers
        const double c = shape.mean() + a;
        const cplx c1 = shape.coefficients()[1];
        const double cr = 2.0 * c1.real(), ci = -2.0 * c1.imag();
        constexpr double tp = 2.0 * std::numbers::pi;
        for (std::int64_t i = 0; i < Q; ++i) {
            double sn, cs;
            sincos(tp * pt.t, &sn, &cs);
            pt.normalize(pt.t + c + cr * cs + ci * sn);
        }
    } else {
        for (std::int64_t i = 0; i < Q; ++i) pt.normalize(pt.t + shape(pt.t) + a);
    }
    return static_cast<double>(pt.n - P) + pt.t;
}

} // namespace

CircleLift make_family(const std::string& kind, const FamilyParams& params, std::size_t grid)
{
    PeriodicFunction d = family_shape(kind, params, grid);
    d += PeriodicFunction::constant(grid, param_or(params, "a", 0.0));
    return CircleLift::from_displacement(std::move(d), kMaxJetOrder, label_of(kind, params));
}

std::vector<double> iterate_orbit(const CircleLift& f, double x0, std::int64_t k)
{
    require(k >= 0, ErrorCode::InvalidArgument, "orbit length must be nonnegative");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(k) + 1);
    LiftPoint p = LiftPoint::of(x0);
    out.push_back(x0);
    for (std::int64_t i = 0; i < k; ++i) {
        p = f.step(p);
        out.push_back(p.value());
    }
    return out;
}

RotationNumber rotation_number(const CircleLift& f, double tol, std::int64_t max_iter)
{
    require(tol > 0, ErrorCode::InvalidArgument, "tolerance must be positive");
    RotationNumber out;
    LiftPoint f0 = f.step(LiftPoint{});
    out.iterations = 1;
    if (f0.t == 0.0) fail(ErrorCode::PeriodicOrbitDetected, "f(0) - 0 is an integer");

    std::vector<BigInt> a{BigInt(f0.n)};
    std::int64_t p_prev = 1, q_prev = 0, p_cur = f0.n, q_cur = 1;
    double d_prev = -1.0, d_cur = f0.t;

    // f_n(w) = f^{q_n}(w) - p_n for small |w|
    auto apply = [&](double w) {
        LiftPoint pt = LiftPoint::of(w);
        for (std::int64_t i = 0; i < q_cur; ++i) pt = f.step(pt);
        return static_cast<double>(pt.n - p_cur) + pt.t;
    };

    for (;;) {
        const int side = d_prev > 0 ? 1 : -1;
        double w = d_prev;
        std::int64_t k = 0;
        bool done_level = false;
        while (!done_level) {
            if (out.iterations + q_cur > max_iter) {
                out.max_iter_reached = true;
                break;
            }
            double wn = apply(w);
            out.iterations += q_cur;
            ++k;
            if (wn == 0.0)
                fail(ErrorCode::PeriodicOrbitDetected,
                     "exact return at q = " + std::to_string(q_cur * k + q_prev));
            if ((wn > 0 ? 1 : -1) != side) {
                done_level = true;
                break;
            }
            if (std::abs(wn - w) <= 1e-15)
                fail(ErrorCode::PeriodicOrbitDetected,
                     "orbit stalls near a fixed point of f^" + std::to_string(q_cur) + " - " + std::to_string(p_cur));
            w = wn;
        }
        if (!done_level) break;
        const std::int64_t an = k - 1;
        if (an < 1) fail(ErrorCode::Internal, "inconsistent closest-return ordering");
        if (q_cur > (std::numeric_limits<std::int64_t>::max() - q_prev) / an) break;
        a.emplace_back(an);
        std::int64_t q_next = an * q_cur + q_prev, p_next = an * p_cur + p_prev;
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
        d_prev = d_cur;
        d_cur = w;
        if (1.0 / (static_cast<double>(q_prev) * static_cast<double>(q_cur)) < tol) break;
    }
    out.alpha = static_cast<double>(p_cur) / static_cast<double>(q_cur);
    out.error_bound = 1.0 / (static_cast<double>(q_cur) * static_cast<double>(q_cur + q_prev));
    out.cf = from_partial_quotients(a);
    return out;
}

TunedMap tune_to_rotation(const std::string& kind, const FamilyParams& params, const ContinuedFraction& target,
                          double tol, std::int64_t budget, std::size_t grid)
{
    require(!params.count("a"), ErrorCode::InvalidArgument, "the translation 'a' is the tuned parameter");
    const PeriodicFunction shape = family_shape(kind, params, grid);
    TunedMap out;

    if (shape.bandwidth() == 0) {
        out.a = target.alpha_double();
        FamilyParams full = params;
        full["a"] = out.a;
        out.map = make_family(kind, full, grid);
        out.cf = expand(BigRational(out.a), 200);
        out.certified_level = out.cf.depth();
        out.rho = out.a;
        return out;
    }
    if (target.kind() == AlphaKind::Rational)
        fail(ErrorCode::TargetInPlateau, "rational rotation numbers are mode-locked on an interval of parameters");

    // deepest level to certify
    int N = 0;
    const int max_level = target.kind() == AlphaKind::Quotients ? target.depth() : target.usable_depth();
    require(max_level >= 0, ErrorCode::InvalidArgument, "target has no quotients");
    while (N + 1 <= max_level) {
        const BigInt qq = target.q(N + 1) + target.q(N);
        if (qq > budget) break;
        const double width = 1.0 / (target.q(N).convert_to<double>() * (target.q(N) + target.q(N - 1)).convert_to<double>());
        if (width < tol) break;
        ++N;
    }

    namespace bt = boost::math::tools;
    double lo = target.alpha_double() - 3.0, hi = target.alpha_double() + 3.0;
    double r1 = lo, r2 = hi;
    auto root = [&](std::int64_t P, std::int64_t Q, double blo, double bhi) {
        auto D = [&](double a) { return return_defect(shape, a, P, Q); };
        double flo = D(blo), fhi = D(bhi);
        for (int widen = 0; widen < 60 && flo > 0; ++widen) {
            blo -= (bhi - blo);
            flo = D(blo);
        }
        for (int widen = 0; widen < 60 && fhi < 0; ++widen) {
            bhi += (bhi - blo);
            fhi = D(bhi);
        }
        if (flo == 0) return blo;
        if (fhi == 0) return bhi;
        require(flo < 0 && fhi > 0, ErrorCode::Internal, "return defect does not change sign");
        std::uintmax_t iters = 200;
        auto r = bt::toms748_solve(D, blo, bhi, flo, fhi, bt::eps_tolerance<double>(52), iters);
        return 0.5 * (r.first + r.second);
    };
    // The cylinders of consecutive levels are nested and the defect is strictly
    // increasing in a, so every third level is enough to keep the brackets tight.
    // Level N-1 is added when it is cheap next to level N (a large last quotient),
    // so the most expensive solve starts from a tight bracket.
    std::vector<int> solve_at;
    for (int L = N % 3; L <= N; L += 3) solve_at.push_back(L);
    if (N >= 2 && 100 * target.q(N - 1) <= target.q(N)) solve_at.insert(solve_at.end() - 1, N - 1);
    for (int L : solve_at) {
        const std::int64_t P1 = target.p_count(L), Q1 = target.q_count(L);
        const std::int64_t P2 = P1 + target.p_count(L - 1), Q2 = Q1 + target.q_count(L - 1);
        r1 = root(P1, Q1, lo, hi);
        r2 = root(P2, Q2, lo, hi);
        lo = std::min(r1, r2);
        hi = std::max(r1, r2);
    }
    out.a = 0.5 * (r1 + r2);

    // certify: rho(f_a) lies between p_L/q_L and the mediant. Cylinders are
    // nested, so the deepest level that passes certifies all shallower ones.
    out.certified_level = -1;
    for (int L = N; L >= 0; --L) {
        const std::int64_t P1 = target.p_count(L), Q1 = target.q_count(L);
        const std::int64_t P2 = P1 + target.p_count(L - 1), Q2 = Q1 + target.q_count(L - 1);
        const double d1 = return_defect(shape, out.a, P1, Q1), d2 = return_defect(shape, out.a, P2, Q2);
        if (d1 * d2 < 0) {
            out.certified_level = L;
            break;
        }
    }
    FamilyParams full = params;
    full["a"] = out.a;
    out.map = make_family(kind, full, grid);
    out.cf = target.prefix(std::max(out.certified_level, 0));

    // rho is pinned to the certified cylinder
    const int C = std::max(out.certified_level, 0);
    const double q = target.q(C).convert_to<double>(), qp = target.q(C - 1).convert_to<double>();
    const double pc = target.p(C).convert_to<double>() / q;
    const double pm = (target.p(C) + target.p(C - 1)).convert_to<double>() / (q + qp);
    out.rho = 0.5 * (pc + pm);
    out.rho_error = 0.5 * std::abs(pc - pm);
    return out;
}

Interval RenormGeometry::I(int k, double x) const { return Interval::between(x, f(k)(x)); }

Interval RenormGeometry::J(int k, double x) const
{
    require(k == n - 1, ErrorCode::IndexOutOfRange, "J_k needs f_{k+1}; only k = n-1 is available");
    return Interval::between(f_cur(x), f_prev(x));
}

Interval RenormGeometry::K(int k, double x) const
{
    const LineMap& g = f(k);
    return Interval::between(g.inverse(g.inverse(x)), g(x));
}

const LineMap& RenormGeometry::f(int k) const
{
    if (k == n) return f_cur;
    require(k == n - 1, ErrorCode::IndexOutOfRange, "geometry holds levels n-1 and n only");
    return f_prev;
}

RenormGeometry renorm_geometry(const CircleLift& f, const ContinuedFraction& cf, int n, const GeometryOptions& opt)
{
    require(n >= 1, ErrorCode::InvalidArgument, "renormalization level must be at least 1");
    if (n > cf.usable_depth())
        fail(ErrorCode::RationalRotation, "level " + std::to_string(n) + " is beyond the irrational part of the expansion");
    RenormGeometry g;
    g.n = n;
    g.q_cur = cf.q_count(n, opt.budget);
    g.q_prev = cf.q_count(n - 1, opt.budget);
    g.p_cur = cf.p_count(n);
    g.p_prev = cf.p_count(n - 1);
    g.base = std::make_shared<CircleLift>(f);
    g.f_prev = LineMap::lift_power(g.base, g.q_prev, g.p_prev);
    g.f_cur = LineMap::lift_power(g.base, g.q_cur, g.p_cur);
    g.sign_prev = (n - 1) % 2 == 0 ? 1 : -1;
    g.sign_cur = -g.sign_prev;

    const std::size_t N = opt.grid ? opt.grid : f.grid();
    std::vector<double> dp(N), dc(N);
    parallel_blocks(
        N,
        [&](std::size_t b, std::size_t e) {
            std::vector<LiftPoint> pts(e - b);
            for (std::size_t j = b; j < e; ++j) pts[j - b] = LiftPoint{0, static_cast<double>(j) / static_cast<double>(N)};
            f.advance(pts, g.q_prev);
            for (std::size_t j = b; j < e; ++j)
                dp[j] = pts[j - b].minus(LiftPoint{g.p_prev, static_cast<double>(j) / static_cast<double>(N)});
            f.advance(pts, g.q_cur - g.q_prev);
            for (std::size_t j = b; j < e; ++j)
                dc[j] = pts[j - b].minus(LiftPoint{g.p_cur, static_cast<double>(j) / static_cast<double>(N)});
        },
        16);
    for (std::size_t j = 0; j < N; ++j) {
        if (!(dp[j] * g.sign_prev > 0) || !(dc[j] * g.sign_cur > 0))
            fail(ErrorCode::InvalidArgument, "rotation number of the map does not match the expansion at level " +
                                                 std::to_string(n) + " (f_k - id changes sign)");
    }
    std::vector<double> mp(N), mc(N);
    std::size_t jstar = 0;
    for (std::size_t j = 0; j < N; ++j) {
        mp[j] = std::abs(dp[j]);
        mc[j] = std::abs(dc[j]);
        if (mp[j] > mp[jstar]) jstar = j;
    }
    g.M_prev = mp[jstar];
    g.M_cur = *std::max_element(mc.begin(), mc.end());
    g.min_m_prev = *std::min_element(mp.begin(), mp.end());
    g.min_m_cur = *std::min_element(mc.begin(), mc.end());
    g.m_prev = PeriodicFunction::from_samples(mp, f.order());
    g.m_cur = PeriodicFunction::from_samples(mc, f.order());

    g.x_star = static_cast<double>(jstar) / static_cast<double>(N);
    g.m_star = g.M_prev;
    if (!f.is_rotation()) {
        // golden-section search on the exact m_{n-1} around the grid maximiser
        auto m = [&](double x) { return std::abs(g.f_prev(x) - x); };
        const double h = 1.0 / static_cast<double>(N);
        double a = g.x_star - h, b = g.x_star + h;
        const double r = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = b - r * (b - a), d = a + r * (b - a);
        double mcv = m(c), mdv = m(d);
        for (int it = 0; it < 48; ++it) {
            if (mcv >= mdv) {
                b = d;
                d = c;
                mdv = mcv;
                c = b - r * (b - a);
                mcv = m(c);
            } else {
                a = c;
                c = d;
                mcv = mdv;
                d = a + r * (b - a);
                mdv = m(d);
            }
        }
        const double xs = 0.5 * (a + b), ms = m(xs);
        if (ms >= m(g.x_star)) {
            g.x_star = frac(xs);
            g.m_star = m(g.x_star);
        } else {
            g.m_star = m(g.x_star);
        }
    }
    return g;
}

PartitionReport check_partition(const CircleLift& f, const ContinuedFraction& cf, int n, double x, double tol,
                                std::int64_t budget)
{
    require(n >= 0, ErrorCode::InvalidArgument, "level must be nonnegative");
    if (n + 1 > cf.usable_depth())
        fail(ErrorCode::RationalRotation, "level " + std::to_string(n + 1) + " is beyond the irrational part");
    const std::int64_t qn = cf.q_count(n), pn = cf.p_count(n);
    const std::int64_t qn1 = cf.q_count(n + 1, budget), pn1 = cf.p_count(n + 1);
    PartitionReport rep;
    rep.n = n;
    rep.pieces = qn1;

    LiftPoint y = LiftPoint::of(x);
    LiftPoint z = y;
    for (std::int64_t i = 0; i < qn; ++i) z = f.step(z);
    z.n -= pn; // z = f_n(x)
    std::vector<std::pair<double, double>> arcs(static_cast<std::size_t>(qn1));
    for (std::int64_t j = 0; j < qn1; ++j) {
        const double len = z.minus(y);
        const double start = len >= 0 ? y.t : frac(y.t + len);
        arcs[static_cast<std::size_t>(j)] = {start, std::abs(len)};
        y = f.step(y);
        z = f.step(z);
    }
    // y is now f^{q_{n+1}}(x)
    const double fn1 = y.minus(LiftPoint{pn1, 0.0}) - x;
    const LineMap fn = LineMap::lift_power(std::make_shared<CircleLift>(f), qn, pn);
    const double fnx = fn(x) - x;
    rep.j_split = (fn1 > 0) != (fnx > 0) && fn1 != 0 && fnx != 0;

    std::sort(arcs.begin(), arcs.end());
    double worst = 0.0, covered = 0.0;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        covered += arcs[i].second;
        const double next = i + 1 < arcs.size() ? arcs[i + 1].first : arcs[0].first + 1.0;
        worst = std::max(worst, arcs[i].first + arcs[i].second - next);
    }
    rep.worst_overlap = worst;
    rep.covered = covered;

    const double x1 = fn.inverse(x), x2 = fn.inverse(x1), x3 = fn(x);
    rep.k_split = fnx > 0 ? (x2 < x1 && x1 < x && x < x3) : (x2 > x1 && x1 > x && x > x3);
    rep.ok = worst <= tol && rep.j_split && rep.k_split;
    if (!rep.ok) {
        std::ostringstream os;
        os.precision(6);
        os << "level " << n << ": worst overlap " << worst << (rep.j_split ? "" : ", J split fails")
           << (rep.k_split ? "" : ", K split fails");
        fail(ErrorCode::PartitionViolation, os.str());
    }
    return rep;
}

std::vector<double> iterate_derivatives(const CircleLift& f, std::int64_t k, int s, double x)
{
    require(k >= 1, ErrorCode::InvalidArgument, "iterate count must be positive");
    require(s >= 1, ErrorCode::InvalidArgument, "derivative order must be positive");
    if (s >= f.order())
        fail(ErrorCode::DerivativeUnavailable,
             "order " + std::to_string(s) + " needs a map of order above " + std::to_string(s));
    const PeriodicFunction dd = f.displacement().derivative_function(1);
    LiftPoint pt = LiftPoint::of(x);
    Jet X = Jet::variable(pt.t, s - 1);
    Jet L(0.0, s - 1);
    std::int64_t shift = 0;
    for (std::int64_t i = 0; i < k; ++i) {
        L += log(1.0 + dd.eval(X));
        X = f.eval(X);
        const double fl = std::floor(X[0]);
        X[0] -= fl;
        shift += static_cast<std::int64_t>(fl);
    }
    const double Dfk = std::exp(L[0]);
    std::vector<double> out(static_cast<std::size_t>(s));
    out[0] = Dfk;
    std::vector<double> dlog(static_cast<std::size_t>(s > 1 ? s - 1 : 0));
    for (int j = 1; j < s; ++j) dlog[j - 1] = L.derivative(j);
    for (int j = 1; j < s; ++j) out[j] = dr1_from_log(std::span<const double>(dlog.data(), j), Dfk);
    return out;
}

} // namespace cohomo
