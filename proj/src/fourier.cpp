// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cohomolib/fourier.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <cohomolib/error.hpp>
#include <cohomolib/parallel.hpp>

namespace cohomo {

namespace mp = boost::multiprecision;

cplx rotation_divisor(const BigFloat& alpha, std::int64_t k)
{
    PrecisionScope ps(std::max<unsigned>(64, static_cast<unsigned>(alpha.precision() * 3.33) + 8));
    BigFloat t = alpha * BigFloat(k);
    t -= mp::round(t);
    const double th = t.convert_to<double>();
    // e^{2 pi i th} - 1 = -2 sin^2(pi th) + i sin(2 pi th), no cancellation near th = 0
    const double s = std::sin(std::numbers::pi * th);
    return {-2.0 * s * s, std::sin(2.0 * std::numbers::pi * th)};
}

RotationSolution solve_rotation(const PeriodicFunction& psi, const BigFloat& alpha, int K)
{
    const std::size_t N = psi.size();
    require(K >= 0 && static_cast<std::size_t>(K) <= N / 2, ErrorCode::InvalidArgument,
            "mode count must lie in [0, N/2]");
    RotationSolution out;
    auto& rep = out.report;
    rep.K = K;
    rep.psi_mean_removed = psi.mean();
    const int kmax = std::min(K, psi.bandwidth());
    std::vector<cplx> u(static_cast<std::size_t>(std::max(kmax, 0)) + 1, cplx(0.0));
    for (int k = 1; k <= kmax; ++k) {
        const cplx pk = psi.coefficients()[k];
        const cplx d = rotation_divisor(alpha, k);
        if (!(std::abs(d) >= 1e-300))
            fail(ErrorCode::DivisorUnderflow, "divisor underflows at mode " + std::to_string(k));
        u[k] = pk / d;
        ModeRow row;
        row.k = k;
        row.psi_abs = std::abs(pk);
        row.divisor_abs = std::abs(d);
        row.u_abs = std::abs(u[k]);
        row.exactness = row.psi_abs > 0 ? std::abs(u[k] * d - pk) / row.psi_abs : std::abs(u[k]);
        rep.max_psi = std::max(rep.max_psi, row.psi_abs);
        rep.max_u = std::max(rep.max_u, row.u_abs);
        rep.modes.push_back(row);
    }
    if (static_cast<std::size_t>(kmax) == N / 2 && kmax > 0) u[kmax] = cplx(u[kmax].real(), 0.0);
    rep.growth = rep.max_u > 1e6 * rep.max_psi;
    out.u = PeriodicFunction::from_coefficients(N, std::move(u), psi.order());

    const double a = alpha.convert_to<double>();
    std::vector<double> res(N);
    parallel_for(
        N,
        [&](std::size_t j) {
            const double x = static_cast<double>(j) / static_cast<double>(N);
            res[j] = std::abs(out.u(x + a) - out.u(x) - (psi.samples()[j] - rep.psi_mean_removed));
        },
        64);
    rep.residual = *std::max_element(res.begin(), res.end());
    return out;
}

RotationSolution solve_rotation(const PeriodicFunction& psi, double alpha, int K)
{
    PrecisionScope ps(128);
    return solve_rotation(psi, BigFloat(alpha), K);
}

LiouvilleCounterexample liouville_counterexample(const ContinuedFraction& cf, int J, double tau, std::size_t grid)
{
    LiouvilleCounterexample out;
    require(J >= 0, ErrorCode::InvalidArgument, "mode count must be nonnegative");
    if (J == 0) {
        out.psi = PeriodicFunction::zero(grid);
        return out;
    }
    const LiouvilleLevels L = liouville_levels(cf, tau);
    for (int m : L.levels) {
        if (static_cast<int>(out.levels.size()) == J) break;
        if (cf.q(m) >= BigInt(grid / 2)) break;
        out.levels.push_back(m);
        out.modes.push_back(cf.q_count(m));
    }
    if (static_cast<int>(out.levels.size()) < J)
        fail(ErrorCode::NotLiouvilleEnough, "only " + std::to_string(out.levels.size()) + " qualifying modes fit, " +
                                                std::to_string(J) + " requested");
    std::vector<cplx> c(static_cast<std::size_t>(out.modes.back()) + 1, cplx(0.0));
    for (auto k : out.modes) c[static_cast<std::size_t>(k)] += rotation_divisor(cf.alpha(), k);
    out.psi = PeriodicFunction::from_coefficients(grid, std::move(c));
    return out;
}

} // namespace cohomo
