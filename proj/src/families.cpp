// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cohomolib/families.hpp>

#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

#include <cohomolib/error.hpp>

namespace cohomo {

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

// split on sep outside brackets
std::vector<std::string> split_top(std::string_view s, char sep)
{
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '[' || s[i] == '(') ++depth;
        if (s[i] == ']' || s[i] == ')') --depth;
        if (s[i] == sep && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim(s.substr(start)));
    return out;
}

double to_double(const std::string& key, const std::string& v)
{
    double x = 0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size())
        fail(ErrorCode::InvalidArgument, "parameter " + key + " needs a number, got '" + v + "'");
    return x;
}

struct Term {
    std::string name;
    std::map<std::string, std::string> kv;
};

Term parse_term(std::string_view s)
{
    Term t;
    const auto colon = s.find(':');
    t.name = trim(s.substr(0, colon));
    require(!t.name.empty(), ErrorCode::InvalidArgument, "empty name in spec");
    if (colon == std::string_view::npos) return t;
    for (const auto& item : split_top(s.substr(colon + 1), ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        require(eq != std::string::npos, ErrorCode::InvalidArgument, "expected key=value, got '" + item + "'");
        const std::string key = trim(std::string_view(item).substr(0, eq));
        require(!t.kv.count(key), ErrorCode::InvalidArgument, "duplicate key " + key);
        t.kv[key] = trim(std::string_view(item).substr(eq + 1));
    }
    return t;
}

double take(Term& t, const std::string& key, double dflt)
{
    auto it = t.kv.find(key);
    if (it == t.kv.end()) return dflt;
    const double v = to_double(key, it->second);
    t.kv.erase(it);
    return v;
}

void no_leftovers(const Term& t)
{
    if (!t.kv.empty())
        fail(ErrorCode::InvalidArgument, "unknown parameter '" + t.kv.begin()->first + "' for " + t.name);
}

} // namespace

MapSpec parse_map_spec(std::string_view spec)
{
    Term t = parse_term(spec);
    MapSpec out;
    out.kind = t.name;
    for (auto& [k, v] : t.kv) {
        if (k == "rho")
            out.rho = v;
        else
            out.params[k] = to_double(k, v);
    }
    if (out.rho && out.params.count("a"))
        fail(ErrorCode::InvalidArgument, "give either a or rho, not both");
    return out;
}

BuiltMap build_map(const MapSpec& spec, const MapBuildOptions& opt)
{
    BuiltMap out;
    if (spec.rho) {
        ContinuedFraction target = make_cf(*spec.rho, opt.depth, opt.bits);
        if (spec.kind == "rotation") {
            require(spec.params.empty(), ErrorCode::InvalidArgument, "rotation takes only rho");
            out.a = target.alpha_double();
            out.map = CircleLift::rotation(out.a, opt.grid);
            out.cf = std::move(target);
            return out;
        }
        TunedMap tm = tune_to_rotation(spec.kind, spec.params, target, opt.tune_tol, opt.tune_budget, opt.grid);
        out.map = std::move(tm.map);
        out.cf = std::move(tm.cf);
        out.a = tm.a;
        out.certified_level = tm.certified_level;
        out.tuned = true;
        return out;
    }
    require(spec.params.count("a") == 1, ErrorCode::InvalidArgument, "map spec needs a or rho");
    out.map = make_family(spec.kind, spec.params, opt.grid);
    out.a = spec.params.at("a");
    if (out.map.is_rotation()) {
        out.cf = expand(BigRational(out.a), opt.depth, opt.bits);
    } else {
        const RotationNumber rn = rotation_number(out.map, 1e-12);
        out.cf = rn.cf;
        out.certified_level = rn.cf.depth();
    }
    return out;
}

PeriodicFunction parse_phi(std::string_view spec, std::size_t grid, const CircleLift* f)
{
    using std::numbers::pi;
    PeriodicFunction sum = PeriodicFunction::zero(grid);
    for (const auto& part : split_top(spec, '+')) {
        Term t = parse_term(part);
        PeriodicFunction term;
        if (t.name == "cos" || t.name == "sin") {
            const double k = take(t, "k", 1), amp = take(t, "amp", 1), ph = take(t, "phase", 0);
            const bool c = t.name == "cos";
            term = PeriodicFunction::sample(grid, [&](double x) {
                return amp * (c ? std::cos(2 * pi * k * x + ph) : std::sin(2 * pi * k * x + ph));
            });
        } else if (t.name == "sawtooth") {
            const int K = static_cast<int>(take(t, "K", 16));
            const double s = take(t, "s", 32);
            term = PeriodicFunction::sample(grid, [&](double x) {
                double v = 0;
                for (int j = 1; j <= K; ++j) v += std::sin(2 * pi * j * x) / (pi * j) * std::exp(-double(j) * j / s);
                return v;
            });
        } else if (t.name == "const") {
            term = PeriodicFunction::constant(grid, take(t, "c", 0));
        } else if (t.name == "spectral") {
            std::map<int, std::pair<double, double>> cs;
            for (const auto& [k, v] : t.kv) {
                require(k.size() >= 2 && (k[0] == 'c' || k[0] == 's'), ErrorCode::InvalidArgument,
                        "unknown parameter '" + k + "' for spectral");
                const int m = static_cast<int>(to_double(k, k.substr(1)));
                (k[0] == 'c' ? cs[m].first : cs[m].second) = to_double(k, v);
            }
            t.kv.clear();
            term = PeriodicFunction::sample(grid, [&](double x) {
                double v = 0;
                for (const auto& [m, cc] : cs) v += cc.first * std::cos(2 * pi * m * x) + cc.second * std::sin(2 * pi * m * x);
                return v;
            });
        } else if (t.name == "cobound") {
            require(f != nullptr, ErrorCode::InvalidArgument, "cobound needs a map");
            std::string v = "sin";
            if (auto it = t.kv.find("v"); it != t.kv.end()) {
                v = it->second;
                t.kv.erase(it);
            }
            require(v == "sin" || v == "cos", ErrorCode::InvalidArgument, "cobound v must be sin or cos");
            const double k = take(t, "k", 1), amp = take(t, "amp", 1);
            auto vf = [&](double x) { return amp * (v == "sin" ? std::sin(2 * pi * k * x) : std::cos(2 * pi * k * x)); };
            term = PeriodicFunction::sample(grid, [&](double x) { return vf((*f)(x)) - vf(x); });
        } else {
            fail(ErrorCode::InvalidArgument, "unknown function '" + t.name + "'");
        }
        no_leftovers(t);
        sum += term;
    }
    return sum;
}

} // namespace cohomo
