// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace cohomo {

using BigInt = boost::multiprecision::mpz_int;
using BigRational = boost::multiprecision::mpq_rational;
using BigFloat = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultBits = 256;

// Decimal digits used by BigFloat for a binary precision.
unsigned digits_for_bits(unsigned bits) noexcept;

// Sets the BigFloat default precision for the current thread while alive.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

enum class AlphaKind { Rational, Quotients, Real };

class ContinuedFraction {
public:
    AlphaKind kind() const noexcept { return kind_; }
    unsigned bits() const noexcept { return bits_; }
    int depth() const noexcept { return static_cast<int>(a_.size()) - 1; }
    int requested_depth() const noexcept { return requested_; }
    // Rational value reached (Euclid ran out, or a quotient list was given).
    bool terminating() const noexcept { return terminating_; }
    // Precision ran out before the requested depth.
    bool truncated() const noexcept { return truncated_; }
    // Deepest n with 0 < beta_n < beta_{n-1}; levels beyond are meaningless.
    int usable_depth() const noexcept { return usable_; }

    const BigInt& a(int n) const { return a_.at(n); }
    const BigInt& p(int n) const { return p_.at(n + 2); }
    const BigInt& q(int n) const { return q_.at(n + 2); }
    const BigFloat& alpha_n(int n) const { return alpha_seq_.at(n); }
    const BigFloat& beta(int n) const { return beta_.at(n + 1); }
    const BigFloat& alpha() const noexcept { return alpha_; }
    const std::optional<BigRational>& exact() const noexcept { return exact_; }
    // Relative error bound on beta_n (zero for exact kinds).
    double beta_relerr(int n) const { return beta_err_.at(n + 1); }

    double alpha_double() const;
    double beta_double(int n) const;
    // q_n as a 64-bit count; throws BudgetExceeded if it does not fit or exceeds cap.
    std::int64_t q_count(int n, std::int64_t cap = INT64_MAX) const;
    std::int64_t p_count(int n) const;

    // Prefix a_0..a_m as a quotient-built fraction.
    ContinuedFraction prefix(int m) const;

    std::vector<std::string> quotient_strings() const;

    friend ContinuedFraction expand(const BigRational& alpha, int depth, unsigned bits);
    friend ContinuedFraction expand(const BigFloat& alpha, int depth, unsigned bits, bool strict);
    friend ContinuedFraction from_partial_quotients(const std::vector<BigInt>& a, unsigned bits);

private:
    void finish_exact(const BigRational& value);

    AlphaKind kind_ = AlphaKind::Real;
    unsigned bits_ = kDefaultBits;
    int requested_ = 0;
    int usable_ = -1;
    bool terminating_ = false;
    bool truncated_ = false;
    std::vector<BigInt> a_;
    std::vector<BigInt> p_, q_;
    std::vector<BigFloat> alpha_seq_;
    std::vector<BigFloat> beta_;
    std::vector<double> beta_err_;
    BigFloat alpha_;
    std::optional<BigRational> exact_;
};

// Euclid on an exact rational; terminating() is set when the expansion ends
// within depth.
ContinuedFraction expand(const BigRational& alpha, int depth, unsigned bits = kDefaultBits);

// Gauss map in high precision with a running error bound. A quotient is kept
// only when both ends of the error interval give the same floor and at least
// 16 bits of relative accuracy remain. strict=true raises PrecisionExhausted
// instead of truncating.
ContinuedFraction expand(const BigFloat& alpha, int depth, unsigned bits = kDefaultBits, bool strict = false);

ContinuedFraction from_partial_quotients(const std::vector<BigInt>& a, unsigned bits = kDefaultBits);

// Real expression: numbers, + - * / ^, parentheses, pi, e, golden, silver,
// sqrt(), exp(), log().
BigFloat parse_real(std::string_view expr, unsigned bits = kDefaultBits);

// Rotation-number spec: "p/q" (exact), "[a0,a1,...]" or "cf:a0,a1,..."
// (quotients), "liouville:a1,K" (a_{n+1} = a_n^2 from a_1, K quotients),
// otherwise a real expression. Plain decimals are exact rationals.
ContinuedFraction make_cf(std::string_view spec, int depth, unsigned bits = kDefaultBits);

struct LiouvilleLevels {
    double tau = 0;
    std::vector<int> levels;
    int examined = 0;  // levels 1..usable_depth tested
    double density = 0; // |levels| / examined, finite-depth statistic only
};

// {m <= usable depth : beta_m < beta_{m-1}^tau}, strict beyond working precision.
LiouvilleLevels liouville_levels(const ContinuedFraction& cf, double tau);

struct DiophantineReport {
    double C = 0, tau = 0;
    std::vector<int> level;
    std::vector<bool> pass;
    std::vector<double> log_margin; // log beta_{n+1} - log C - (1+tau) log beta_n
    bool all_pass = true;
    static constexpr const char* label = "finite-depth evidence only";
};

DiophantineReport diophantine_test(const ContinuedFraction& cf, double C, double tau);

// Exact integer matrix helpers on convergents.
struct Mat2 {
    BigInt a, b, c, d;
    BigInt det() const { return a * d - b * c; }
};

// A_n = (-1)^n [[q_n, -p_n], [-q_{n-1}, p_{n-1}]].
Mat2 renormalization_matrix(const ContinuedFraction& cf, int n);

} // namespace cohomo
