// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cohomolib/calculus.hpp>

#include <memory>
#include <mutex>
#include <sstream>

#include <cohomolib/error.hpp>

namespace cohomo {

namespace {

BigInt factorial(int n)
{
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

void enumerate(int r, int j, int i, int remaining_sum, int remaining_count, std::vector<int>& c,
               std::vector<BellTerm>& out)
{
    const int len = r - j + 1;
    if (i > len) {
        if (remaining_sum == 0 && remaining_count == 0) {
            BigInt den = 1;
            for (int k = 1; k <= len; ++k) {
                den *= factorial(c[k - 1]);
                BigInt fk = factorial(k);
                for (int t = 0; t < c[k - 1]; ++t) den *= fk;
            }
            BigInt coeff = factorial(r) / den;
            out.push_back({c, coeff, coeff.convert_to<double>()});
        }
        return;
    }
    for (int ci = 0; ci * i <= remaining_sum && ci <= remaining_count; ++ci) {
        c[i - 1] = ci;
        enumerate(r, j, i + 1, remaining_sum - ci * i, remaining_count - ci, c, out);
    }
    c[i - 1] = 0;
}

std::mutex cache_mutex;

} // namespace

BellIndexSet::BellIndexSet(int r, int j) : r_(r), j_(j)
{
    std::vector<int> c(r - j + 1, 0);
    enumerate(r, j, 1, r, j, c, members_);
}

const BellIndexSet& BellIndexSet::get(int r, int j)
{
    require(r >= 1 && j >= 1 && j <= r && r <= 64, ErrorCode::IndexOutOfRange,
            "Bell index (" + std::to_string(r) + ", " + std::to_string(j) + ") out of range");
    static std::map<std::pair<int, int>, std::unique_ptr<const BellIndexSet>> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto& slot = cache[{r, j}];
    if (!slot) slot.reset(new BellIndexSet(r, j));
    return *slot;
}

double bell_eval(int r, int j, std::span<const double> x)
{
    const BellIndexSet& set = BellIndexSet::get(r, j);
    require(static_cast<int>(x.size()) == r - j + 1, ErrorCode::LengthMismatch, "bell_eval expects r-j+1 arguments");
    double sum = 0.0;
    for (const auto& t : set.members()) {
        double term = t.coeff_d;
        for (std::size_t i = 0; i < t.c.size(); ++i)
            for (int k = 0; k < t.c[i]; ++k) term *= x[i];
        sum += term;
    }
    return sum;
}

double faa_di_bruno(std::span<const double> dg, std::span<const double> dh, int r)
{
    require(r >= 1, ErrorCode::IndexOutOfRange, "faa_di_bruno needs r >= 1");
    require(static_cast<int>(dg.size()) >= r && static_cast<int>(dh.size()) >= r, ErrorCode::LengthMismatch,
            "faa_di_bruno needs r derivatives of g and h");
    double sum = 0.0;
    for (int j = 1; j <= r; ++j) sum += dg[j - 1] * bell_eval(r, j, dh.subspan(0, r - j + 1));
    return sum;
}

const PrPolynomial& PrPolynomial::get(int r)
{
    require(r >= 0 && r <= 24, ErrorCode::IndexOutOfRange, "P_r supported for 0 <= r <= 24");
    static std::vector<std::unique_ptr<const PrPolynomial>> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (cache.empty()) {
        auto p0 = std::unique_ptr<PrPolynomial>(new PrPolynomial());
        p0->terms_[{}] = 1;
        cache.push_back(std::move(p0));
    }
    while (static_cast<int>(cache.size()) <= r) {
        const PrPolynomial& prev = *cache.back();
        auto next = std::unique_ptr<PrPolynomial>(new PrPolynomial());
        const int n = prev.r_;
        next->r_ = n + 1;
        for (const auto& [e, coeff] : prev.terms_) {
            std::vector<int> ext(e);
            ext.resize(n + 1, 0);
            std::vector<int> t1 = ext;
            t1[0] += 1;
            next->terms_[t1] += coeff;
            for (int i = 1; i <= n; ++i) {
                if (ext[i - 1] == 0) continue;
                std::vector<int> t2 = ext;
                t2[i - 1] -= 1;
                t2[i] += 1;
                next->terms_[t2] += coeff * ext[i - 1];
            }
        }
        cache.push_back(std::move(next));
    }
    return *cache[r];
}

double PrPolynomial::eval(std::span<const double> x) const
{
    require(static_cast<int>(x.size()) >= r_, ErrorCode::LengthMismatch, "P_r needs r arguments");
    double sum = 0.0;
    for (const auto& [e, coeff] : terms_) {
        double t = coeff.convert_to<double>();
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= x[i];
        sum += t;
    }
    return sum;
}

BigRational PrPolynomial::eval(std::span<const BigRational> x) const
{
    require(static_cast<int>(x.size()) >= r_, ErrorCode::LengthMismatch, "P_r needs r arguments");
    BigRational sum = 0;
    for (const auto& [e, coeff] : terms_) {
        BigRational t{coeff};
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= x[i];
        sum += t;
    }
    return sum;
}

std::string PrPolynomial::str() const
{
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        const auto& [e, coeff] = *it;
        bool unit = true;
        if (coeff != 1) {
            os << coeff;
            unit = false;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!unit) os << '*';
            os << 'X' << (i + 1);
            if (e[i] > 1) os << '^' << e[i];
            unit = false;
        }
        if (unit) os << '1';
    }
    return os.str();
}

double pr_eval(int r, std::span<const double> x) { return PrPolynomial::get(r).eval(x); }

double dr1_from_log(std::span<const double> dlog, double Dg)
{
    require(Dg > 0.0, ErrorCode::NonpositiveDerivative, "Dg must be positive");
    return pr_eval(static_cast<int>(dlog.size()), dlog) * Dg;
}

} // namespace cohomo
