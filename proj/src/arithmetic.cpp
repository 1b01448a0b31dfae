// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cohomolib/arithmetic.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include <cohomolib/error.hpp>

namespace cohomo {

namespace mp = boost::multiprecision;

unsigned digits_for_bits(unsigned bits) noexcept
{
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 2;
}

PrecisionScope::PrecisionScope(unsigned bits) : saved_(BigFloat::default_precision())
{
    BigFloat::default_precision(digits_for_bits(bits));
}

PrecisionScope::~PrecisionScope() { BigFloat::default_precision(saved_); }

namespace {

void build_convergents(const std::vector<BigInt>& a, std::vector<BigInt>& p, std::vector<BigInt>& q)
{
    p.assign({BigInt(0), BigInt(1)});
    q.assign({BigInt(1), BigInt(0)});
    for (std::size_t n = 0; n < a.size(); ++n) {
        p.push_back(a[n] * p[n + 1] + p[n]);
        q.push_back(a[n] * q[n + 1] + q[n]);
    }
}

BigInt floor_rational(const BigRational& r)
{
    BigInt num = mp::numerator(r), den = mp::denominator(r);
    BigInt fl = num / den;
    if (num < 0 && fl * den != num) fl -= 1;
    return fl;
}

BigRational beta_exact(const BigRational& r, const BigInt& p, const BigInt& q, int n)
{
    BigRational v = BigRational(q) * r - BigRational(p);
    return (n % 2 == 0) ? v : BigRational(-v);
}

} // namespace

void ContinuedFraction::finish_exact(const BigRational& value)
{
    PrecisionScope ps(bits_);
    exact_ = value;
    alpha_ = BigFloat(value);
    build_convergents(a_, p_, q_);
    const int N = depth();
    alpha_seq_.clear();
    beta_.assign({BigFloat(1)});
    beta_err_.assign({0.0});
    BigRational prev(1);
    for (int n = 0; n <= N; ++n) {
        BigRational b = beta_exact(value, p_[n + 2], q_[n + 2], n);
        BigRational an = (prev == 0) ? BigRational(0) : BigRational(b / prev);
        alpha_seq_.emplace_back(an);
        beta_.emplace_back(b);
        beta_err_.push_back(0.0);
        prev = b;
    }
    usable_ = -1;
    for (int n = 0; n <= N; ++n) {
        const BigFloat& b = beta_[n + 1];
        if (!(b > 0 && b < beta_[n])) break;
        usable_ = n;
    }
}

double ContinuedFraction::alpha_double() const { return alpha_.convert_to<double>(); }

double ContinuedFraction::beta_double(int n) const { return beta(n).convert_to<double>(); }

std::int64_t ContinuedFraction::q_count(int n, std::int64_t cap) const
{
    const BigInt& v = q(n);
    if (v > BigInt(cap) || v > BigInt(std::numeric_limits<std::int64_t>::max()))
        fail(ErrorCode::BudgetExceeded, "q_" + std::to_string(n) + " = " + v.str() + " exceeds the iterate budget");
    return v.convert_to<std::int64_t>();
}

std::int64_t ContinuedFraction::p_count(int n) const
{
    const BigInt& v = p(n);
    require(mp::abs(v) <= BigInt(std::numeric_limits<std::int64_t>::max()), ErrorCode::BudgetExceeded,
            "p_" + std::to_string(n) + " does not fit 64 bits");
    return v.convert_to<std::int64_t>();
}

ContinuedFraction ContinuedFraction::prefix(int m) const
{
    require(m >= 0 && m <= depth(), ErrorCode::IndexOutOfRange, "prefix length");
    std::vector<BigInt> a(a_.begin(), a_.begin() + m + 1);
    return from_partial_quotients(a, bits_);
}

std::vector<std::string> ContinuedFraction::quotient_strings() const
{
    std::vector<std::string> out;
    for (const auto& v : a_) out.push_back(v.str());
    return out;
}

ContinuedFraction expand(const BigRational& alpha, int depth, unsigned bits)
{
    require(depth >= 0, ErrorCode::InvalidArgument, "depth must be nonnegative");
    ContinuedFraction cf;
    cf.kind_ = AlphaKind::Rational;
    cf.bits_ = bits;
    cf.requested_ = depth;
    BigInt a0 = floor_rational(alpha);
    cf.a_.push_back(a0);
    BigRational x = alpha - BigRational(a0);
    while (x != 0 && cf.depth() < depth) {
        x = BigRational(1) / x;
        BigInt an = floor_rational(x);
        cf.a_.push_back(an);
        x -= BigRational(an);
    }
    cf.terminating_ = (x == 0);
    cf.finish_exact(alpha);
    return cf;
}

ContinuedFraction expand(const BigFloat& alpha, int depth, unsigned bits, bool strict)
{
    require(depth >= 0, ErrorCode::InvalidArgument, "depth must be nonnegative");
    require(bits >= 32, ErrorCode::InvalidArgument, "at least 32 bits of precision required");
    PrecisionScope ps(bits);
    ContinuedFraction cf;
    cf.kind_ = AlphaKind::Real;
    cf.bits_ = bits;
    cf.requested_ = depth;
    cf.alpha_ = BigFloat(alpha);

    const BigFloat ulp = mp::ldexp(BigFloat(1), -static_cast<int>(bits) + 1);
    const BigFloat guard = mp::ldexp(BigFloat(1), -16);

    BigFloat x = cf.alpha_;
    BigInt a0 = mp::floor(x).convert_to<BigInt>();
    x -= BigFloat(a0);
    BigFloat err = ulp * 4 * mp::max(BigFloat(1), mp::abs(cf.alpha_));
    cf.a_.push_back(a0);
    cf.beta_.assign({BigFloat(1)});
    cf.beta_err_.assign({0.0});
    if (x <= err) {
        cf.truncated_ = depth > 0 || x <= 0;
    }
    BigFloat relerr = (x > 0) ? BigFloat(err / x) : BigFloat(1);
    cf.alpha_seq_.push_back(x);
    cf.beta_.push_back(x);
    cf.beta_err_.push_back(relerr.convert_to<double>());

    while (!cf.truncated_ && cf.depth() < depth) {
        if (x - err <= 0) {
            cf.truncated_ = true;
            break;
        }
        BigFloat lo = 1 / (x + err), hi = 1 / (x - err);
        BigFloat fl = mp::floor(lo), fh = mp::floor(hi);
        if (fl != fh) {
            cf.truncated_ = true;
            break;
        }
        BigFloat y = 1 / x - fl;
        BigFloat err_next = err / (x * (x - err)) + ulp * (1 / x);
        if (y <= 0 || err_next / y > guard) {
            cf.truncated_ = true;
            break;
        }
        cf.a_.push_back(fl.convert_to<BigInt>());
        relerr += err_next / y + ulp;
        x = y;
        err = err_next;
        cf.alpha_seq_.push_back(x);
        cf.beta_.push_back(cf.beta_.back() * x);
        cf.beta_err_.push_back(relerr.convert_to<double>());
    }
    if (cf.truncated_ && strict && cf.depth() < depth)
        fail(ErrorCode::PrecisionExhausted, "only " + std::to_string(cf.depth()) + " of " + std::to_string(depth) +
                                                " quotients are reliable at " + std::to_string(bits) + " bits");
    if (cf.depth() >= depth) cf.truncated_ = false;
    build_convergents(cf.a_, cf.p_, cf.q_);
    cf.usable_ = -1;
    for (int n = 0; n <= cf.depth(); ++n) {
        if (!(cf.beta_[n + 1] > 0 && cf.beta_[n + 1] < cf.beta_[n])) break;
        cf.usable_ = n;
    }
    return cf;
}

ContinuedFraction from_partial_quotients(const std::vector<BigInt>& a, unsigned bits)
{
    require(!a.empty(), ErrorCode::InvalidQuotient, "empty quotient list");
    require(a[0] >= 0, ErrorCode::InvalidQuotient, "a_0 must be nonnegative");
    for (std::size_t n = 1; n < a.size(); ++n)
        require(a[n] >= 1, ErrorCode::InvalidQuotient, "a_" + std::to_string(n) + " must be at least 1");
    ContinuedFraction cf;
    cf.kind_ = AlphaKind::Quotients;
    cf.bits_ = bits;
    cf.a_ = a;
    cf.requested_ = cf.depth();
    cf.terminating_ = true;
    build_convergents(cf.a_, cf.p_, cf.q_);
    BigRational value(cf.p_.back(), cf.q_.back());
    cf.finish_exact(value);
    return cf;
}

namespace {

class ExprParser {
public:
    explicit ExprParser(std::string_view s) : s_(s) {}

    BigFloat parse()
    {
        BigFloat v = expr();
        skip();
        if (pos_ != s_.size()) error("unexpected trailing input");
        return v;
    }

private:
    [[noreturn]] void error(const std::string& what) const
    {
        fail(ErrorCode::InvalidArgument,
             "cannot parse real '" + std::string(s_) + "' at offset " + std::to_string(pos_) + ": " + what);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    BigFloat expr()
    {
        BigFloat v = term();
        for (;;) {
            if (eat('+'))
                v += term();
            else if (eat('-'))
                v -= term();
            else
                return v;
        }
    }

    BigFloat term()
    {
        BigFloat v = power();
        for (;;) {
            if (eat('*'))
                v *= power();
            else if (eat('/')) {
                BigFloat d = power();
                if (d == 0) error("division by zero");
                v /= d;
            } else
                return v;
        }
    }

    BigFloat power()
    {
        BigFloat v = unary();
        if (eat('^')) return BigFloat(mp::pow(v, power()));
        return v;
    }

    BigFloat unary()
    {
        if (eat('-')) return BigFloat(-unary());
        if (eat('+')) return unary();
        return atom();
    }

    BigFloat atom()
    {
        skip();
        if (eat('(')) {
            BigFloat v = expr();
            if (!eat(')')) error("missing ')'");
            return v;
        }
        if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
            return number();
        std::size_t b = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string name(s_.substr(b, pos_ - b));
        if (name.empty()) error("expected a number or name");
        if (name == "pi") return BigFloat(4 * mp::atan(BigFloat(1)));
        if (name == "e") return BigFloat(mp::exp(BigFloat(1)));
        if (name == "golden") return BigFloat((mp::sqrt(BigFloat(5)) - 1) / 2);
        if (name == "silver") return BigFloat(mp::sqrt(BigFloat(2)) - 1);
        if (name == "sqrt" || name == "exp" || name == "log") {
            if (!eat('(')) error("expected '(' after " + name);
            BigFloat v = expr();
            if (!eat(')')) error("missing ')'");
            if (name == "sqrt") {
                if (v < 0) error("sqrt of negative value");
                return BigFloat(mp::sqrt(v));
            }
            if (name == "exp") return BigFloat(mp::exp(v));
            if (v <= 0) error("log of nonpositive value");
            return BigFloat(mp::log(v));
        }
        error("unknown name '" + name + "'");
    }

    BigFloat number()
    {
        std::size_t b = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E') && pos_ + 1 < s_.size() &&
            (std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) || s_[pos_ + 1] == '-' || s_[pos_ + 1] == '+')) {
            pos_ += 2;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        return BigFloat(parse_decimal(s_.substr(b, pos_ - b)));
    }

public:
    static BigRational parse_decimal(std::string_view t)
    {
        std::size_t epos = t.find_first_of("eE");
        std::string mant(t.substr(0, epos));
        long exp10 = 0;
        if (epos != std::string_view::npos) exp10 = std::stol(std::string(t.substr(epos + 1)));
        std::size_t dot = mant.find('.');
        if (dot != std::string::npos) {
            exp10 -= static_cast<long>(mant.size() - dot - 1);
            mant.erase(dot, 1);
        }
        if (mant.empty() || mant.find_first_not_of("0123456789") != std::string::npos)
            fail(ErrorCode::InvalidArgument, "malformed number '" + std::string(t) + "'");
        BigRational r{BigInt(mant)};
        BigInt ten = mp::pow(BigInt(10), static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
        if (exp10 < 0)
            r /= BigRational(ten);
        else
            r *= BigRational(ten);
        return r;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

std::string trim(std::string_view s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<BigInt> parse_int_list(std::string_view body)
{
    std::vector<BigInt> out;
    std::string cur;
    auto flush = [&] {
        std::string t = trim(cur);
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
            fail(ErrorCode::InvalidArgument, "bad partial quotient '" + t + "'");
        out.emplace_back(t);
        cur.clear();
    };
    for (char c : body) {
        if (c == ',')
            flush();
        else
            cur.push_back(c);
    }
    flush();
    return out;
}

bool is_plain_decimal(const std::string& s)
{
    if (s.empty()) return false;
    std::size_t i = 0;
    bool digits = false, dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c)))
            digits = true;
        else if (c == '.' && !dot)
            dot = true;
        else
            break;
    }
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        std::size_t b = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == b) return false;
    }
    return digits && i == s.size();
}

} // namespace

BigFloat parse_real(std::string_view expr, unsigned bits)
{
    PrecisionScope ps(bits);
    return ExprParser(expr).parse();
}

ContinuedFraction make_cf(std::string_view spec_in, int depth, unsigned bits)
{
    std::string spec = trim(spec_in);
    require(!spec.empty(), ErrorCode::InvalidArgument, "empty rotation-number spec");
    if (spec.front() == '[') {
        require(spec.back() == ']', ErrorCode::InvalidArgument, "unterminated quotient list");
        return from_partial_quotients(parse_int_list(std::string_view(spec).substr(1, spec.size() - 2)), bits);
    }
    if (spec.rfind("cf:", 0) == 0) return from_partial_quotients(parse_int_list(std::string_view(spec).substr(3)), bits);
    if (spec.rfind("liouville:", 0) == 0) {
        auto args = parse_int_list(std::string_view(spec).substr(10));
        require(args.size() == 2 && args[0] >= 2 && args[1] >= 1, ErrorCode::InvalidArgument,
                "liouville spec is liouville:a1,K with a1 >= 2");
        std::vector<BigInt> a{BigInt(0), args[0]};
        while (static_cast<long>(a.size()) - 1 < args[1].convert_to<long>()) a.push_back(a.back() * a.back());
        return from_partial_quotients(a, bits);
    }
    std::size_t slash = spec.find('/');
    if (slash != std::string::npos) {
        std::string num = trim(std::string_view(spec).substr(0, slash));
        std::string den = trim(std::string_view(spec).substr(slash + 1));
        bool neg = !num.empty() && num[0] == '-';
        std::string un = neg ? num.substr(1) : num;
        if (!un.empty() && un.find_first_not_of("0123456789") == std::string::npos && !den.empty() &&
            den.find_first_not_of("0123456789") == std::string::npos) {
            BigInt d(den);
            require(d != 0, ErrorCode::InvalidArgument, "zero denominator");
            BigRational r(BigInt(un), d);
            if (neg) r = -r;
            return expand(r, depth, bits);
        }
    }
    {
        bool neg = spec[0] == '-';
        std::string body = neg ? spec.substr(1) : spec;
        if (is_plain_decimal(body)) {
            BigRational r = ExprParser::parse_decimal(body);
            if (neg) r = -r;
            return expand(r, depth, bits);
        }
    }
    return expand(parse_real(spec, bits), depth, bits, false);
}

LiouvilleLevels liouville_levels(const ContinuedFraction& cf, double tau)
{
    require(tau > 1, ErrorCode::InvalidArgument, "tau must exceed 1");
    PrecisionScope ps(cf.bits());
    LiouvilleLevels out;
    out.tau = tau;
    const bool integer_tau = tau == std::floor(tau) && tau < 64;
    const BigFloat floor_margin = mp::ldexp(BigFloat(1), -static_cast<int>(cf.bits()) + 16);
    for (int m = 1; m <= cf.usable_depth(); ++m) {
        ++out.examined;
        bool in;
        if (cf.exact() && integer_tau) {
            const BigRational& r = *cf.exact();
            BigRational bm = beta_exact(r, cf.p(m), cf.q(m), m);
            BigRational bp = beta_exact(r, cf.p(m - 1), cf.q(m - 1), m - 1);
            BigRational pw(1);
            for (int i = 0; i < static_cast<int>(tau); ++i) pw *= bp;
            in = bm < pw;
        } else {
            BigFloat lhs = mp::log(cf.beta(m));
            BigFloat rhs = BigFloat(tau) * mp::log(cf.beta(m - 1));
            BigFloat margin = BigFloat(tau * cf.beta_relerr(m - 1) + cf.beta_relerr(m)) +
                              floor_margin * (1 + mp::abs(rhs));
            in = rhs - lhs > margin;
        }
        if (in) out.levels.push_back(m);
    }
    out.density = out.examined ? static_cast<double>(out.levels.size()) / out.examined : 0.0;
    return out;
}

DiophantineReport diophantine_test(const ContinuedFraction& cf, double C, double tau)
{
    require(C > 0 && tau > 0, ErrorCode::InvalidArgument, "C and tau must be positive");
    PrecisionScope ps(cf.bits());
    DiophantineReport rep;
    rep.C = C;
    rep.tau = tau;
    const BigFloat floor_margin = mp::ldexp(BigFloat(1), -static_cast<int>(cf.bits()) + 16);
    const BigFloat logC = mp::log(BigFloat(C));
    for (int n = 0; n + 1 <= cf.usable_depth(); ++n) {
        BigFloat lhs = mp::log(cf.beta(n + 1));
        BigFloat rhs = logC + BigFloat(1 + tau) * mp::log(cf.beta(n));
        BigFloat margin = BigFloat((1 + tau) * cf.beta_relerr(n) + cf.beta_relerr(n + 1)) +
                          floor_margin * (1 + mp::abs(rhs));
        BigFloat d = lhs - rhs;
        bool ok = d > margin;
        rep.level.push_back(n);
        rep.pass.push_back(ok);
        rep.log_margin.push_back(d.convert_to<double>());
        rep.all_pass = rep.all_pass && ok;
    }
    return rep;
}

Mat2 renormalization_matrix(const ContinuedFraction& cf, int n)
{
    require(n >= 0 && n <= cf.depth(), ErrorCode::IndexOutOfRange, "renormalization level out of range");
    Mat2 m{cf.q(n), BigInt(-cf.p(n)), BigInt(-cf.q(n - 1)), cf.p(n - 1)};
    if (n % 2 != 0) {
        m.a = -m.a;
        m.b = -m.b;
        m.c = -m.c;
        m.d = -m.d;
    }
    return m;
}

} // namespace cohomo
