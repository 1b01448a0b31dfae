// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cohomolib/cocycle.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <cohomolib/error.hpp>
#include <cohomolib/parallel.hpp>

namespace cohomo {

namespace {

constexpr std::size_t kLanes = 8;

// Runs k steps of several orbits at once, adding phis[m](x) into sums[m][lane].
void accumulate_orbits(std::span<const PeriodicFunction* const> phis, const CircleLift& f, std::int64_t k,
                       std::span<LiftPoint> pts, std::vector<std::vector<NeumaierSum>>& sums)
{
    const std::size_t M = phis.size();
    for (std::size_t b = 0; b < pts.size(); b += kLanes) {
        const std::size_t e = std::min(pts.size(), b + kLanes);
        if (k >= 0) {
            // buffer kSteps orbit points per lane so phi is evaluated in wide batches
            constexpr std::int64_t kSteps = 16;
            double t[kSteps * kLanes], v[kSteps * kLanes];
            const std::size_t w = e - b;
            for (std::int64_t i0 = 0; i0 < k; i0 += kSteps) {
                const auto T = static_cast<std::size_t>(std::min(kSteps, k - i0));
                for (std::size_t i = 0; i < T; ++i)
                    for (std::size_t l = 0; l < w; ++l) {
                        t[i * w + l] = pts[b + l].t;
                        pts[b + l] = f.step(pts[b + l]);
                    }
                for (std::size_t m = 0; m < M; ++m) {
                    phis[m]->eval_batch(t, v, T * w);
                    for (std::size_t i = 0; i < T; ++i)
                        for (std::size_t l = 0; l < w; ++l) sums[m][b + l].add(v[i * w + l]);
                }
            }
        } else {
            for (std::int64_t i = 0; i < -k; ++i) {
                for (std::size_t l = b; l < e; ++l) {
                    pts[l] = f.inverse_step(pts[l]);
                    for (std::size_t m = 0; m < M; ++m) sums[m][l].add(-(*phis[m])(pts[l].t));
                }
            }
        }
    }
}

double abs_coeff_sum(const PeriodicFunction& phi)
{
    double s = std::abs(phi.coefficients()[0]);
    for (std::size_t k = 1; k < phi.coefficients().size(); ++k) s += 2.0 * std::abs(phi.coefficients()[k]);
    return s;
}

} // namespace

double birkhoff_sum(const PeriodicFunction& phi, const CircleLift& f, std::int64_t k, double x)
{
    double xs[1] = {x};
    return birkhoff_values(phi, f, k, xs)[0];
}

std::vector<double> birkhoff_values(const PeriodicFunction& phi, const CircleLift& f, std::int64_t k,
                                    std::span<const double> xs)
{
    std::vector<double> out(xs.size());
    const PeriodicFunction* phis[1] = {&phi};
    parallel_blocks(
        xs.size(),
        [&](std::size_t b, std::size_t e) {
            std::vector<LiftPoint> pts(e - b);
            for (std::size_t j = b; j < e; ++j) pts[j - b] = LiftPoint::of(xs[j]);
            std::vector<std::vector<NeumaierSum>> sums(1, std::vector<NeumaierSum>(e - b));
            accumulate_orbits(phis, f, k, pts, sums);
            for (std::size_t j = b; j < e; ++j) out[j] = sums[0][j - b].value();
        },
        kLanes);
    return out;
}

std::vector<std::vector<std::vector<double>>> birkhoff_checkpoints(std::span<const PeriodicFunction* const> phis,
                                                                   const CircleLift& f,
                                                                   std::span<const std::int64_t> ks,
                                                                   std::span<const double> xs)
{
    require(std::is_sorted(ks.begin(), ks.end()) && (ks.empty() || ks.front() >= 0), ErrorCode::InvalidArgument,
            "checkpoints must be non-negative and sorted");
    const std::size_t M = phis.size();
    std::vector<std::vector<std::vector<double>>> out(
        M, std::vector<std::vector<double>>(ks.size(), std::vector<double>(xs.size())));
    parallel_blocks(
        xs.size(),
        [&](std::size_t b, std::size_t e) {
            std::vector<LiftPoint> pts(e - b);
            for (std::size_t j = b; j < e; ++j) pts[j - b] = LiftPoint::of(xs[j]);
            std::vector<std::vector<NeumaierSum>> sums(M, std::vector<NeumaierSum>(e - b));
            std::int64_t done = 0;
            for (std::size_t i = 0; i < ks.size(); ++i) {
                accumulate_orbits(phis, f, ks[i] - done, pts, sums);
                done = ks[i];
                for (std::size_t m = 0; m < M; ++m)
                    for (std::size_t j = b; j < e; ++j) out[m][i][j] = sums[m][j - b].value();
            }
        },
        kLanes);
    return out;
}

std::vector<std::vector<double>> birkhoff_checkpoints(const PeriodicFunction& phi, const CircleLift& f,
                                                      std::span<const std::int64_t> ks, std::span<const double> xs)
{
    const PeriodicFunction* phis[1] = {&phi};
    return std::move(birkhoff_checkpoints(phis, f, ks, xs).front());
}

PeriodicFunction birkhoff_sum_grid(const PeriodicFunction& phi, const CircleLift& f, std::int64_t k, std::size_t grid)
{
    const std::size_t N = grid ? grid : phi.size();
    std::vector<double> xs(N);
    for (std::size_t j = 0; j < N; ++j) xs[j] = static_cast<double>(j) / static_cast<double>(N);
    return PeriodicFunction::from_samples(birkhoff_values(phi, f, k, xs), phi.order());
}

BirkhoffRecord birkhoff_record(const PeriodicFunction& phi, const CircleLift& f, const ContinuedFraction& cf, int n,
                               std::size_t grid, std::int64_t budget)
{
    BirkhoffRecord rec;
    rec.n = n;
    rec.k = cf.q_count(n, budget);
    rec.values = birkhoff_sum_grid(phi, f, rec.k, grid);
    rec.mean_estimate = rec.values.mean() / static_cast<double>(rec.k);
    for (double v : rec.values.samples())
        rec.sup_deviation = std::max(rec.sup_deviation, std::abs(v - static_cast<double>(rec.k) * rec.mean_estimate));
    return rec;
}

Variation total_variation(const PeriodicFunction& phi)
{
    Variation v;
    const auto& s = phi.samples();
    if (phi.order() < 1) {
        for (std::size_t j = 0; j < s.size(); ++j) v.value += std::abs(s[(j + 1) % s.size()] - s[j]);
        v.lower_bound = true;
        return v;
    }
    if (phi.bandwidth() == 0) return v;
    const PeriodicFunction d = phi.derivative_function(1);
    const std::size_t M = std::max<std::size_t>(2048, 32 * static_cast<std::size_t>(phi.bandwidth() + 1));
    std::vector<double> dv(M);
    parallel_for(M, [&](std::size_t j) { dv[j] = d(static_cast<double>(j) / static_cast<double>(M)); }, 64);
    std::vector<double> ext;
    for (std::size_t j = 0; j < M; ++j) {
        const double a = dv[j], b = dv[(j + 1) % M];
        if (a == 0.0) {
            ext.push_back(static_cast<double>(j) / static_cast<double>(M));
            continue;
        }
        if ((a > 0) == (b > 0) || b == 0.0) continue;
        double lo = static_cast<double>(j) / static_cast<double>(M), hi = static_cast<double>(j + 1) / static_cast<double>(M);
        double flo = a;
        for (int it = 0; it < 60 && hi - lo > 1e-17; ++it) {
            const double mid = 0.5 * (lo + hi), fm = d(mid);
            if ((fm > 0) == (flo > 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        ext.push_back(0.5 * (lo + hi));
    }
    v.extrema = static_cast<int>(ext.size());
    if (ext.size() < 2) return v;
    std::vector<double> val(ext.size());
    for (std::size_t i = 0; i < ext.size(); ++i) val[i] = phi(ext[i]);
    for (std::size_t i = 0; i < ext.size(); ++i) v.value += std::abs(val[(i + 1) % ext.size()] - val[i]);
    return v;
}

double cr_norm(const PeriodicFunction& phi, int r)
{
    require(r >= 0 && r <= phi.order(), ErrorCode::OrderUnavailable,
            "C^" + std::to_string(r) + " norm of a function of order " + std::to_string(phi.order()));
    double m = phi.sup_norm();
    for (int j = 1; j <= r; ++j) m = std::max(m, phi.derivative_function(j).sup_norm());
    return m;
}

double cr_norm_on_interval(const PeriodicFunction& phi, const Interval& I, int r)
{
    require(r >= 0 && r <= phi.order(), ErrorCode::OrderUnavailable,
            "C^" + std::to_string(r) + " norm of a function of order " + std::to_string(phi.order()));
    require(I.length() > 0, ErrorCode::DegenerateInterval, "interval has no interior");
    const std::size_t N = phi.size();
    std::vector<PeriodicFunction> ds;
    ds.reserve(static_cast<std::size_t>(r) + 1);
    for (int j = 0; j <= r; ++j) ds.push_back(j == 0 ? phi : phi.derivative_function(j));
    double m = 0.0;
    const double Nd = static_cast<double>(N);
    const std::int64_t first = static_cast<std::int64_t>(std::ceil(I.lo * Nd));
    const std::int64_t last = std::min<std::int64_t>(static_cast<std::int64_t>(std::floor(I.hi * Nd)), first + static_cast<std::int64_t>(N) - 1);
    for (std::int64_t g = first; g <= last; ++g) {
        const std::size_t j = static_cast<std::size_t>(((g % static_cast<std::int64_t>(N)) + static_cast<std::int64_t>(N)) % static_cast<std::int64_t>(N));
        for (const auto& d : ds) m = std::max(m, std::abs(d.samples()[j]));
    }
    double buf[kMaxJetOrder + 1];
    for (double x : {I.lo, I.hi}) {
        phi.derivatives(x, r, buf);
        for (int j = 0; j <= r; ++j) m = std::max(m, std::abs(buf[j]));
    }
    return m;
}

double cr_norm_on_interval(const LineFunction& phi, const Interval& I, int r, std::size_t samples)
{
    require(r >= 0 && r <= kMaxJetOrder, ErrorCode::OrderUnavailable, "derivative order out of range");
    require(I.length() > 0, ErrorCode::DegenerateInterval, "interval has no interior");
    const std::size_t S = std::max<std::size_t>(samples, 1);
    std::vector<double> m(S + 1, 0.0);
    parallel_for(
        S + 1,
        [&](std::size_t i) {
            const double x = I.lo + I.length() * static_cast<double>(i) / static_cast<double>(S);
            if (r == 0) {
                m[i] = std::abs(phi(x));
                return;
            }
            const Jet v = phi(Jet::variable(x, r));
            double best = 0.0;
            for (int j = 0; j <= r; ++j) best = std::max(best, std::abs(v.derivative(j)));
            m[i] = best;
        },
        8);
    return *std::max_element(m.begin(), m.end());
}

std::vector<InvariantAverage> invariant_averages(std::span<const PeriodicFunction* const> phis, const CircleLift& f,
                                                const ContinuedFraction& cf, int level, double x0, std::int64_t budget)
{
    InvariantAverage proto;
    proto.level = level;
    proto.q = cf.q_count(level, budget);
    require(proto.q >= 1, ErrorCode::InvalidArgument, "level must have q_N >= 1");
    const std::int64_t ks[1] = {proto.q};
    const double xs[1] = {x0};
    const auto sums = birkhoff_checkpoints(phis, f, ks, xs);
    std::vector<InvariantAverage> out(phis.size(), proto);
    for (std::size_t m = 0; m < phis.size(); ++m) {
        out[m].mu = sums[m][0][0] / static_cast<double>(proto.q);
        out[m].error_bound = total_variation(*phis[m]).value / static_cast<double>(proto.q);
    }
    return out;
}

InvariantAverage invariant_average(const PeriodicFunction& phi, const CircleLift& f, const ContinuedFraction& cf,
                                   int level, double x0, std::int64_t budget)
{
    const PeriodicFunction* phis[1] = {&phi};
    return invariant_averages(phis, f, cf, level, x0, budget).front();
}

std::vector<std::vector<DKReport>> denjoy_koksma_sweep(std::span<const PeriodicFunction* const> phis,
                                                       const CircleLift& f, const ContinuedFraction& cf,
                                                       std::span<const int> levels,
                                                       std::span<const InvariantAverage> avgs, const DKOptions& opt)
{
    const std::size_t M = phis.size();
    require(avgs.size() == M, ErrorCode::InvalidArgument, "one invariant average per observable");
    std::vector<Variation> vars;
    std::vector<double> step_errs;
    for (const PeriodicFunction* phi : phis) {
        vars.push_back(total_variation(*phi));
        const double lip = phi->order() >= 1 ? phi->derivative_function(1).sup_norm() : 0.0;
        // per-step evaluation error: discarded spectrum of phi and of f, and rounding
        step_errs.push_back(phi->tail_bound() + lip * f.displacement().tail_bound() +
                            8.0 * std::numeric_limits<double>::epsilon() * abs_coeff_sum(*phi));
    }
    // one orbit pass per grid point, read off at every q_n for every observable
    const std::size_t G = std::max<std::size_t>(opt.grid, 1);
    std::vector<double> xs(G);
    for (std::size_t j = 0; j < G; ++j) xs[j] = static_cast<double>(j) / static_cast<double>(G);
    std::vector<std::int64_t> ks;
    for (int n : levels) ks.push_back(cf.q_count(n, opt.budget));
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    const auto sums = birkhoff_checkpoints(phis, f, ks, xs);

    std::vector<std::vector<DKReport>> out(M);
    for (int n : levels) {
        const std::int64_t qn = cf.q_count(n, opt.budget);
        const double q = static_cast<double>(qn);
        const std::size_t ki = static_cast<std::size_t>(std::lower_bound(ks.begin(), ks.end(), qn) - ks.begin());
        std::vector<DKReport> reps(M);
        for (std::size_t m = 0; m < M; ++m) {
            DKReport& rep = reps[m];
            rep.n = n;
            rep.q = qn;
            rep.var = vars[m].value;
            rep.interp_slack = q * step_errs[m];
            rep.mu_slack = q * avgs[m].error_bound;
            rep.slack = rep.interp_slack + rep.mu_slack;
            for (double s : sums[m][ki]) rep.sup_dev = std::max(rep.sup_dev, std::abs(s - q * avgs[m].mu));
        }

        // bounded distortion on I_n(0) for k <= q_{n+1}
        if (n + 1 <= cf.depth() && cf.q(n + 1) <= opt.interval_budget && opt.interval_points >= 2) {
            const std::int64_t q1 = cf.q_count(n + 1);
            const LineMap fn = LineMap::lift_power(std::make_shared<CircleLift>(f), qn, cf.p_count(n));
            const double end = fn(0.0);
            const std::size_t P = opt.interval_points;
            std::vector<LiftPoint> pts(P);
            for (std::size_t i = 0; i < P; ++i)
                pts[i] = LiftPoint::of(end * static_cast<double>(i) / static_cast<double>(P - 1));
            std::vector<std::vector<NeumaierSum>> isums(M, std::vector<NeumaierSum>(P));
            std::vector<double> spread(M, 0.0), ts(P), vals(P);
            for (std::int64_t k = 0; k < q1; ++k) {
                for (std::size_t i = 0; i < P; ++i) ts[i] = pts[i].t;
                for (std::size_t m = 0; m < M; ++m) {
                    phis[m]->eval_batch(ts.data(), vals.data(), P);
                    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
                    for (std::size_t i = 0; i < P; ++i) {
                        isums[m][i].add(vals[i]);
                        const double v = isums[m][i].value();
                        lo = std::min(lo, v);
                        hi = std::max(hi, v);
                    }
                    spread[m] = std::max(spread[m], hi - lo);
                }
                for (std::size_t i = 0; i < P; ++i) pts[i] = f.step(pts[i]);
            }
            for (std::size_t m = 0; m < M; ++m) {
                reps[m].interval_dev = spread[m];
                reps[m].interval_checked = true;
            }
        }
        for (std::size_t m = 0; m < M; ++m) {
            DKReport& rep = reps[m];
            rep.pass = rep.sup_dev <= rep.var + rep.slack &&
                       (!rep.interval_checked || rep.interval_dev <= rep.var + 2.0 * rep.interp_slack);
            if (!rep.pass && opt.throw_on_violation) {
                std::ostringstream os;
                os.precision(10);
                os << "level " << n << ": deviation " << rep.sup_dev << " (interval " << rep.interval_dev
                   << ") exceeds Var " << rep.var << " + slack " << rep.slack;
                fail(ErrorCode::BoundViolated, os.str());
            }
            out[m].push_back(rep);
        }
    }
    return out;
}

std::vector<DKReport> denjoy_koksma_sweep(const PeriodicFunction& phi, const CircleLift& f,
                                          const ContinuedFraction& cf, std::span<const int> levels,
                                          const InvariantAverage& avg, const DKOptions& opt)
{
    const PeriodicFunction* phis[1] = {&phi};
    return std::move(denjoy_koksma_sweep(phis, f, cf, levels, std::span<const InvariantAverage>(&avg, 1), opt).front());
}

DKReport denjoy_koksma_check(const PeriodicFunction& phi, const CircleLift& f, const ContinuedFraction& cf, int n,
                             const InvariantAverage& avg, const DKOptions& opt)
{
    int levels[1] = {n};
    return denjoy_koksma_sweep(phi, f, cf, levels, avg, opt).front();
}

std::vector<HermanEntry> herman_sequence(const CircleLift& f, const ContinuedFraction& cf, int n_max, std::size_t grid,
                                         std::int64_t budget)
{
    require(f.order() >= 3, ErrorCode::OrderUnavailable, "Herman sequence needs a C^3 map");
    // log Df^{q} = S^{q} log Df (chain rule)
    const PeriodicFunction d1 = f.displacement().derivative_function(1);
    const PeriodicFunction logdf =
        PeriodicFunction::sample(f.grid(), [&](double x) { return std::log(1.0 + d1(x)); }, f.order() - 1);
    std::vector<double> xs(grid);
    for (std::size_t j = 0; j < grid; ++j) xs[j] = static_cast<double>(j) / static_cast<double>(grid);
    std::vector<HermanEntry> out;
    std::vector<std::int64_t> ks;
    for (int n = 0; n <= std::min(n_max, cf.usable_depth()); ++n) {
        HermanEntry e;
        e.n = n;
        e.q = cf.q_count(n, budget);
        ks.push_back(e.q);
        out.push_back(e);
    }
    // q_0 = q_1 = 1 is the only repeat
    std::vector<std::int64_t> uk = ks;
    uk.erase(std::unique(uk.begin(), uk.end()), uk.end());
    const auto sums = birkhoff_checkpoints(logdf, f, uk, xs);
    for (auto& e : out) {
        const auto& S = sums[static_cast<std::size_t>(std::lower_bound(uk.begin(), uk.end(), e.q) - uk.begin())];
        for (double v : S) e.norm = std::max(e.norm, std::abs(v));
    }
    return out;
}

double theta(const ContinuedFraction& cf, int n, int r)
{
    require(n >= 1 && n <= cf.depth(), ErrorCode::IndexOutOfRange, "theta needs 1 <= n <= depth");
    require(r >= 0, ErrorCode::InvalidArgument, "theta needs r >= 0");
    PrecisionScope ps(cf.bits());
    const BigFloat& b0 = cf.beta(n - 1);
    const BigFloat& b1 = cf.beta(n);
    if (!(b0 > b1)) fail(ErrorCode::DegenerateBetas, "beta_{n-1} <= beta_n at level " + std::to_string(n));
    const BigFloat ratio = b0 / (b0 - b1);
    BigFloat sum = 0, term = 1;
    for (int i = 0; i <= r; ++i) {
        sum += term;
        term *= ratio;
    }
    return sum.convert_to<double>();
}

} // namespace cohomo
