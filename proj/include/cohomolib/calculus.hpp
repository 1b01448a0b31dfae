// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include <cohomolib/arithmetic.hpp>

namespace cohomo {

struct BellTerm {
    std::vector<int> c; // c_1 .. c_{r-j+1}
    BigInt coeff;       // r! / prod(c_i! (i!)^{c_i})
    double coeff_d;
};

// Omega_{r,j}: tuples with sum i*c_i = r and sum c_i = j.
class BellIndexSet {
public:
    // Cached, built once per (r, j).
    static const BellIndexSet& get(int r, int j);

    int r() const noexcept { return r_; }
    int j() const noexcept { return j_; }
    const std::vector<BellTerm>& members() const noexcept { return members_; }

private:
    BellIndexSet(int r, int j);
    int r_, j_;
    std::vector<BellTerm> members_;
};

// Partial Bell polynomial B_{r,j}(x_1..x_{r-j+1}).
double bell_eval(int r, int j, std::span<const double> x);

// D^r(g o h) from dg = (D^1 g .. D^r g at h(x)) and dh = (D^1 h .. D^r h at x).
double faa_di_bruno(std::span<const double> dg, std::span<const double> dh, int r);

class PrPolynomial {
public:
    static const PrPolynomial& get(int r);

    int r() const noexcept { return r_; }
    // exponent vector over X_1..X_r -> integer coefficient
    const std::map<std::vector<int>, BigInt>& terms() const noexcept { return terms_; }

    double eval(std::span<const double> x) const;
    BigRational eval(std::span<const BigRational> x) const;
    std::string str() const;

private:
    PrPolynomial() = default;
    int r_ = 0;
    std::map<std::vector<int>, BigInt> terms_;
};

double pr_eval(int r, std::span<const double> x);

// D^{r+1} g = P_r(D log Dg, ..., D^r log Dg) * Dg with r = dlog.size().
double dr1_from_log(std::span<const double> dlog, double Dg);

} // namespace cohomo
