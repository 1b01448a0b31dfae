// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <cohomolib/action.hpp>
#include <cohomolib/cocycle.hpp>
#include <cohomolib/smoothstep.hpp>

namespace cohomo {

// Circle arc {a + s t : 0 <= t <= length}, s = +-1.
struct Arc {
    double start = 0;
    double length = 0;
    int orientation = 1;

    // distance of p into the open arc (positive inside), measured along the circle
    double depth(double p) const noexcept;
    Arc widened(double w) const noexcept { return {start - orientation * w, length + 2 * w, orientation}; }
};

// Transfer function u making the level n-1 sums of phi + u - u o F vanish on
// J_{n-1}(x*). In the orientation s = sign(f_{n-1} x* - x*) and t = s (y - x*) mod 1:
//   t <= 0                 0
//   0 < t <= tJ            zeta(t / |l|) phi_{n-1}(f_{n-1}^{-1} y)         l = f_n f_{n-1} x* - x*
//   tJ < t <= tE           u(f_{n-1}^{-1} y) + phi_{n-1}(f_{n-1}^{-1} y)   tE = s (f_{n-1}^2 x* - x*)
//   tE < t < tE + c        G(y) (1 - zeta((t - tE) / c))                  G = phi_{n-1} o f_{n-1}^{-2} + phi_{n-1} o f_{n-1}^{-1}
//   otherwise              0
struct UConstruction {
    LineFunction u;
    int s = 1;
    double ell = 0;        // signed l
    double tau_min = 0;    // -m_n(x*)
    double tau_J = 0, tau_E = 0, c = 0;
    Arc support;           // where u may be nonzero
};

UConstruction build_u(std::shared_ptr<const CircleLift> f, const LineFunction& phi, const RenormGeometry& geo);

struct XiConstruction {
    LineFunction xi;
    LineFunction phibar_n;  // S^{q_n} phibar
    Arc arc1, arc2;         // I_{n-1}(x*), I_{n-1}(f_{n-1} x*)
    double periodicity_defect = 0;
};

// Raises PeriodicityViolated when phibar_n(y) and phibar_n(f_{n-1} y) differ by
// more than tol on I_{n-1}(x*).
XiConstruction build_xi(std::shared_ptr<const CircleLift> f, const LineFunction& phibar, const RenormGeometry& geo,
                        double tol = 1e-6, std::size_t samples = 65);

struct CertificateReport {
    bool orbit_avoidance = false;  // (a)
    double avoidance_margin = 0;   // max depth of an orbit point into the open support arcs
    bool flatness = false;         // (b)
    CoboundaryWitness witness;
    bool return_times = false;     // (c) A_z = {0, q_{n-1}}
    int bad_return_sets = 0;
    double line_residual = 0;      // line solver on f_n with psi^{1,0}
    bool pass = false;
    std::string failed;            // first failing clause
};

struct CertificateOptions {
    std::size_t avoidance_samples = 33;
    std::size_t return_samples = 9;
    std::size_t flat_samples = 129;
    double flat_tol = 1e-7;
    double arc_tol = 1e-12;
    bool throw_on_failure = true;
};

// u: the transfer from build_u, so that the certificate runs on Gamma_n(phibar - xi).
CertificateReport verify_coboundary_certificate(std::shared_ptr<const CircleLift> f, const LineFunction& phitilde,
                                                const LineFunction& u, const ContinuedFraction& cf,
                                                const RenormGeometry& geo, const Arc& arc1, const Arc& arc2,
                                                const CertificateOptions& opt = {});

struct LevelReport {
    int n = 0;
    std::int64_t q_prev = 0, q_cur = 0;
    double x_star = 0, M_prev = 0, m_star = 0, ell = 0;
    double theta = 0;
    double u_norm_J = 0;          // C^k on J_{n-1}(x*)
    double phi_prev_norm_K = 0;   // C^k of phi_{n-1} on K_{n-1}(x*)
    double u_constant = 0;        // u_norm_J / (phi_prev_norm_K * theta * M^{-k})
    double phibar_n_norm_I = 0;   // C^k of phibar_n on I_{n-1}(x*)
    double xi_norm = 0;           // C^k
    double xi_constant = 0;       // xi_norm / (phibar_n_norm_I * M^{-k})
    double j_vanishing = 0;
    double xi_leakage = 0;
    double pairing = 0;
    double periodicity_defect = 0;
    double min_phibar_n = 0, spot_bound = 0;
    bool spot_ok = false;
    double phitilde_mean = 0;     // Birkhoff average of phitilde over q = phitilde_mean_q
    std::int64_t phitilde_mean_q = 0;
    CertificateReport certificate;
    UConstruction u;
    XiConstruction xi;
    LineFunction phibar, phitilde;
};

struct ConstructionReport {
    int r = 0, k = 0;
    double epsilon = 0;
    double mu = 0, mu_error = 0;  // removed invariant mean of phi
    std::vector<int> candidates;
    std::vector<LevelReport> levels;
    int chosen = -1;              // index into levels
    bool achieved = false;
    double best_xi = 0;
};

struct PipelineOptions {
    std::vector<int> levels;          // explicit levels; empty means L(alpha, r/2)
    int n_min = 3;
    std::int64_t budget_qn = 10'000;
    std::int64_t mu_budget = 10'000'000;
    std::int64_t mean_check_budget = 100'000;
    std::size_t grid = 0;             // geometry grid, 0 = map grid
    std::size_t norm_samples = 257;
    bool exhaustive = false;          // keep going after epsilon is met
    bool certify = true;
    CertificateOptions certificate;
};

ConstructionReport approximate_by_coboundary(const CircleLift& f, const PeriodicFunction& phi,
                                             const ContinuedFraction& cf, double epsilon, int r,
                                             const PipelineOptions& opt = {});

struct Conjugacy {
    CircleLift h;
    double C = 0;         // integral of exp(-u)
    double rho = 0;       // h f - h
    double defect = 0;    // sup |h f - h - rho|
    double residual = 0;  // sup |u o f - u - log Df|
};

// h' = exp(-u) / C, h(0) = 0.
Conjugacy conjugacy_from_log_coboundary(const CircleLift& f, const PeriodicFunction& u, double tol = 1e-6);

} // namespace cohomo
