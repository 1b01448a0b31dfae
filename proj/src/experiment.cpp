// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cohomolib/experiment.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include <cohomolib/calculus.hpp>
#include <cohomolib/coboundary.hpp>
#include <cohomolib/error.hpp>
#include <cohomolib/families.hpp>
#include <cohomolib/fourier.hpp>

#ifndef COHOMOLIB_VERSION
#define COHOMOLIB_VERSION "0.0.0"
#endif

namespace cohomo {

namespace {

using json = nlohmann::json;

const std::vector<std::string> kMapKeys = {"map", "grid", "depth", "bits", "tune_budget", "tune_tol"};

const std::map<std::string, std::vector<std::string>>& key_table()
{
    static const std::map<std::string, std::vector<std::string>> t = [] {
        std::map<std::string, std::vector<std::string>> m;
        auto with_map = [](std::vector<std::string> extra) {
            extra.insert(extra.end(), kMapKeys.begin(), kMapKeys.end());
            return extra;
        };
        m["cf"] = {"alpha", "depth", "bits", "tau"};
        m["map"] = with_map({"level", "budget", "partition_budget"});
        m["dk"] = with_map({"phi", "levels", "budget", "dk_grid", "mu_budget", "interval_points", "interval_budget"});
        m["herman"] = with_map({"n_max", "budget", "herman_grid"});
        m["corollary-c"] = with_map({"phi", "budget", "dk_grid", "mu_budget", "n_start"});
        m["solve-rotation"] = {"alpha", "psi", "modes", "grid", "depth", "bits"};
        m["renorm"] = with_map({"phi", "level", "budget", "samples", "flat_tol"});
        m["coboundary"] = with_map({"phi", "r", "epsilon", "levels", "n_min", "budget_qn", "mu_budget", "exhaustive",
                                    "certify", "norm_samples"});
        m["calculus"] = {"print_pr"};
        for (auto& [k, v] : m) {
            v.push_back("command");
            v.push_back("seed");
        }
        return m;
    }();
    return t;
}

// Strict view of the config: typed reads materialise defaults into the echo.
class Config {
public:
    explicit Config(json in) : in_(std::move(in)) {}

    template <class T>
    T get(const std::string& key, const T& dflt)
    {
        T v = dflt;
        if (in_.contains(key)) v = read<T>(key);
        echo_[key] = v;
        return v;
    }

    template <class T>
    T need(const std::string& key)
    {
        if (!in_.contains(key)) fail(ErrorCode::ConfigParse, "field '" + key + "' is required");
        T v = read<T>(key);
        echo_[key] = v;
        return v;
    }

    // untyped read for fields that accept several shapes
    json raw(const std::string& key)
    {
        if (!in_.contains(key)) fail(ErrorCode::ConfigParse, "field '" + key + "' is required");
        echo_[key] = in_.at(key);
        return in_.at(key);
    }

    const json& echo() const { return echo_; }

private:
    template <class T>
    T read(const std::string& key)
    {
        try {
            return in_.at(key).get<T>();
        } catch (const json::exception&) {
            fail(ErrorCode::ConfigParse, "field '" + key + "' has the wrong type");
        }
    }

    json in_;
    json echo_ = json::object();
};

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Csv {
public:
    explicit Csv(std::vector<std::string> header)
    {
        for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
        os_ << "\r\n";
    }
    template <class... A>
    void row(const A&... a)
    {
        bool first = true;
        ((os_ << (first ? "" : ",") << cell(a), first = false), ...);
        os_ << "\r\n";
    }
    std::string str() const { return os_.str(); }

private:
    static std::string cell(double v) { return num(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(long v) { return std::to_string(v); }
    static std::string cell(long long v) { return std::to_string(v); }
    static std::string cell(bool v) { return v ? "1" : "0"; }
    static std::string cell(const std::string& s)
    {
        if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }

    std::ostringstream os_;
};

struct Checks {
    json list = json::array();
    bool all = true;
    void add(const std::string& name, bool pass, double value, double bound)
    {
        list.push_back({{"name", name}, {"pass", pass}, {"value", value}, {"bound", bound}});
        all = all && pass;
    }
};

struct Output {
    json results = json::object();
    std::string csv;
    Checks checks;
};

BuiltMap map_from(Config& c)
{
    const std::string spec = c.need<std::string>("map");
    MapBuildOptions o;
    o.grid = c.get<std::size_t>("grid", kDefaultGrid);
    o.depth = c.get<int>("depth", 60);
    o.bits = c.get<unsigned>("bits", kDefaultBits);
    o.tune_budget = c.get<std::int64_t>("tune_budget", kDefaultQBudget);
    o.tune_tol = c.get<double>("tune_tol", 1e-14);
    return build_map(parse_map_spec(spec), o);
}

json map_json(const BuiltMap& m)
{
    return {{"label", m.map.label()},
            {"a", m.a},
            {"tuned", m.tuned},
            {"certified_level", m.certified_level},
            {"quotients", m.cf.quotient_strings()},
            {"usable_depth", m.cf.usable_depth()},
            {"rho", m.cf.alpha_double()},
            {"min_derivative", m.map.min_derivative()}};
}

// deepest level n <= depth with q_n <= budget
int deepest(const ContinuedFraction& cf, std::int64_t budget)
{
    int n = 0;
    while (n + 1 <= cf.depth() && cf.q(n + 1) <= BigInt(budget)) ++n;
    return n;
}

Output cmd_cf(Config& c)
{
    const std::string alpha = c.need<std::string>("alpha");
    const int depth = c.get<int>("depth", 40);
    const unsigned bits = c.get<unsigned>("bits", kDefaultBits);
    const double tau = c.get<double>("tau", 2.0);
    const ContinuedFraction cf = make_cf(alpha, depth, bits);
    Output o;
    json p = json::array(), q = json::array(), beta = json::array();
    Csv csv({"n", "a", "p", "q", "beta"});
    const auto a = cf.quotient_strings();
    for (int n = 0; n <= cf.depth(); ++n) {
        p.push_back(cf.p(n).str());
        q.push_back(cf.q(n).str());
        beta.push_back(cf.beta_double(n));
        csv.row(n, a[static_cast<std::size_t>(n)], cf.p(n).str(), cf.q(n).str(), cf.beta_double(n));
    }
    o.results = {{"a", a},
                 {"p", p},
                 {"q", q},
                 {"beta", beta},
                 {"terminating", cf.terminating()},
                 {"usable_depth", cf.usable_depth()},
                 {"liouville_levels", liouville_levels(cf, tau).levels}};
    o.csv = csv.str();
    return o;
}

Output cmd_map(Config& c)
{
    const BuiltMap m = map_from(c);
    const int level = c.get<int>("level", 3);
    const std::int64_t budget = c.get<std::int64_t>("budget", kDefaultQBudget);
    const std::int64_t pbudget = c.get<std::int64_t>("partition_budget", 100'000);
    Output o;
    o.results["map"] = map_json(m);
    const RenormGeometry g = renorm_geometry(m.map, m.cf, level, {0, budget});
    o.results["geometry"] = {{"n", g.n},       {"p_prev", g.p_prev},     {"q_prev", g.q_prev},
                             {"p_cur", g.p_cur}, {"q_cur", g.q_cur},       {"x_star", g.x_star},
                             {"M_prev", g.M_prev}, {"M_cur", g.M_cur},     {"m_star", g.m_star},
                             {"min_m_prev", g.min_m_prev}, {"min_m_cur", g.min_m_cur}};
    if (level + 1 <= m.cf.depth() && m.cf.q(level + 1) <= BigInt(pbudget)) {
        const PartitionReport pr = check_partition(m.map, m.cf, level, 0.0, 1e-10, pbudget);
        o.results["partition"] = {{"pieces", pr.pieces},   {"worst_overlap", pr.worst_overlap}, {"covered", pr.covered},
                                  {"j_split", pr.j_split}, {"k_split", pr.k_split},             {"ok", pr.ok}};
        o.checks.add("partition", pr.ok, pr.worst_overlap, 1e-10);
    }
    Csv csv({"x", "m_prev", "m_cur"});
    const std::size_t N = g.m_prev.size();
    for (std::size_t j = 0; j < N; ++j)
        csv.row(static_cast<double>(j) / static_cast<double>(N), g.m_prev.samples()[j], g.m_cur.samples()[j]);
    o.csv = csv.str();
    return o;
}

// "phi" is one spec or a list of specs sharing the map
std::vector<std::string> phi_list(Config& c)
{
    const json v = c.raw("phi");
    std::vector<std::string> out;
    if (v.is_string()) {
        out.push_back(v.get<std::string>());
    } else if (v.is_array() && !v.empty()) {
        for (const auto& e : v) {
            if (!e.is_string()) fail(ErrorCode::ConfigParse, "field 'phi' must be a string or a list of strings");
            out.push_back(e.get<std::string>());
        }
    } else {
        fail(ErrorCode::ConfigParse, "field 'phi' must be a string or a list of strings");
    }
    return out;
}

Output cmd_dk(Config& c)
{
    const BuiltMap m = map_from(c);
    const std::vector<std::string> specs = phi_list(c);
    std::vector<int> levels = c.get<std::vector<int>>("levels", {});
    DKOptions d;
    d.budget = c.get<std::int64_t>("budget", 100'000);
    d.grid = c.get<std::size_t>("dk_grid", 512);
    d.interval_points = c.get<std::size_t>("interval_points", 4);
    d.interval_budget = c.get<std::int64_t>("interval_budget", 20'000'000);
    d.throw_on_violation = false;
    const std::int64_t mu_budget = c.get<std::int64_t>("mu_budget", 10'000'000);
    if (levels.empty())
        for (int n = 1; n <= deepest(m.cf, d.budget); ++n) levels.push_back(n);

    Output o;
    o.results["map"] = map_json(m);
    Csv csv({"phi", "n", "q_n", "sup_dev", "var_bound", "slack", "interval_dev", "pass"});
    json obs = json::array();
    std::vector<PeriodicFunction> phis;
    for (const auto& spec : specs) phis.push_back(parse_phi(spec, m.map.grid(), &m.map));
    std::vector<const PeriodicFunction*> ptrs;
    for (const auto& phi : phis) ptrs.push_back(&phi);
    const auto avgs = invariant_averages(ptrs, m.map, m.cf, deepest(m.cf, mu_budget), 0.0, mu_budget);
    const auto all_reps = denjoy_koksma_sweep(ptrs, m.map, m.cf, levels, avgs, d);
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const std::string& spec = specs[i];
        const InvariantAverage& avg = avgs[i];
        json rows = json::array();
        for (const auto& r : all_reps[i]) {
            csv.row(spec, r.n, static_cast<long long>(r.q), r.sup_dev, r.var, r.slack, r.interval_dev, r.pass);
            rows.push_back({{"n", r.n},         {"q", r.q},         {"sup_dev", r.sup_dev},           {"var", r.var},
                            {"slack", r.slack}, {"interp_slack", r.interp_slack}, {"mu_slack", r.mu_slack},
                            {"interval_dev", r.interval_dev}, {"interval_checked", r.interval_checked}, {"pass", r.pass}});
            const std::string tag = specs.size() > 1 ? spec + "_n" : "n";
            o.checks.add("denjoy_koksma_" + tag + std::to_string(r.n), r.pass, r.sup_dev, r.var + r.slack);
        }
        obs.push_back({{"phi", spec},
                       {"mu", {{"value", avg.mu}, {"error_bound", avg.error_bound}, {"level", avg.level}, {"q", avg.q}}},
                       {"levels", rows}});
    }
    o.results["observables"] = obs;
    o.csv = csv.str();
    return o;
}

Output cmd_herman(Config& c)
{
    const BuiltMap m = map_from(c);
    const std::int64_t budget = c.get<std::int64_t>("budget", 100'000);
    int n_max = c.get<int>("n_max", -1);
    const std::size_t grid = c.get<std::size_t>("herman_grid", 512);
    if (n_max < 0) n_max = deepest(m.cf, budget);
    const auto seq = herman_sequence(m.map, m.cf, n_max, grid, budget);
    Output o;
    o.results["map"] = map_json(m);
    Csv csv({"n", "q_n", "norm"});
    json rows = json::array();
    bool decreasing = true;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < seq.size(); ++i) {
        csv.row(seq[i].n, static_cast<long long>(seq[i].q), seq[i].norm);
        rows.push_back({{"n", seq[i].n}, {"q", seq[i].q}, {"norm", seq[i].norm}});
        if (i > 0 && seq[i].n > 3) {
            worst = std::max(worst, seq[i].norm - seq[i - 1].norm);
            decreasing = decreasing && seq[i].norm < seq[i - 1].norm;
        }
    }
    o.results["levels"] = rows;
    if (seq.size() > 4) o.checks.add("decreasing_from_n3", decreasing, worst, 0.0);
    o.csv = csv.str();
    return o;
}

Output cmd_corollary_c(Config& c)
{
    const BuiltMap m = map_from(c);
    const PeriodicFunction phi = parse_phi(c.need<std::string>("phi"), m.map.grid(), &m.map);
    const std::int64_t budget = c.get<std::int64_t>("budget", 100'000);
    const std::size_t grid = c.get<std::size_t>("dk_grid", 512);
    const std::int64_t mu_budget = c.get<std::int64_t>("mu_budget", 10'000'000);
    const int n_start = c.get<int>("n_start", 2);
    const InvariantAverage avg = invariant_average(phi, m.map, m.cf, deepest(m.cf, mu_budget), 0.0, mu_budget);
    std::vector<double> xs(grid);
    for (std::size_t j = 0; j < grid; ++j) xs[j] = static_cast<double>(j) / static_cast<double>(grid);

    Output o;
    o.results["map"] = map_json(m);
    o.results["mu"] = {{"value", avg.mu}, {"error_bound", avg.error_bound}, {"q", avg.q}};
    Csv csv({"n", "q_n", "sup_dev", "ratio"});
    json rows = json::array();
    double first = 0, last = 0;
    const int N = deepest(m.cf, budget);
    for (int n = n_start; n <= N; ++n) {
        const std::int64_t q = m.cf.q_count(n);
        double dev = 0;
        for (double v : birkhoff_values(phi, m.map, q, xs)) dev = std::max(dev, std::abs(v - static_cast<double>(q) * avg.mu));
        if (n == n_start) first = dev;
        last = dev;
        const double ratio = first > 0 ? dev / first : 0.0;
        csv.row(n, static_cast<long long>(q), dev, ratio);
        rows.push_back({{"n", n}, {"q", q}, {"sup_dev", dev}, {"ratio", ratio}});
    }
    o.results["levels"] = rows;
    if (N > n_start) o.checks.add("last_below_tenth_of_first", last < 0.1 * first, last, 0.1 * first);
    o.csv = csv.str();
    return o;
}

Output cmd_solve_rotation(Config& c)
{
    const std::string alpha = c.need<std::string>("alpha");
    const std::string psi_spec = c.need<std::string>("psi");
    const int K = c.get<int>("modes", 256);
    const std::size_t grid = c.get<std::size_t>("grid", kDefaultGrid);
    const int depth = c.get<int>("depth", 60);
    const unsigned bits = c.get<unsigned>("bits", kDefaultBits);
    const ContinuedFraction cf = make_cf(alpha, depth, bits);
    const PeriodicFunction psi = parse_phi(psi_spec, grid);
    const RotationSolution s = solve_rotation(psi, cf.alpha(), K);
    Output o;
    const auto& r = s.report;
    o.results = {{"K", r.K},           {"alpha", cf.alpha_double()}, {"psi_mean_removed", r.psi_mean_removed},
                 {"residual", r.residual}, {"max_psi", r.max_psi},     {"max_u", r.max_u},
                 {"growth", r.growth}};
    Csv csv({"k", "divisor_abs", "psi_abs", "u_abs", "exactness"});
    for (const auto& row : r.modes)
        csv.row(static_cast<long long>(row.k), row.divisor_abs, row.psi_abs, row.u_abs, row.exactness);
    o.csv = csv.str();
    return o;
}

Output cmd_renorm(Config& c)
{
    const BuiltMap m = map_from(c);
    const PeriodicFunction phi = parse_phi(c.need<std::string>("phi"), m.map.grid(), &m.map);
    const int n = c.get<int>("level", 3);
    const std::int64_t budget = c.get<std::int64_t>("budget", kDefaultQBudget);
    const std::size_t samples = c.get<std::size_t>("samples", 64);
    const double flat_tol = c.get<double>("flat_tol", 1e-7);
    const Mat2 A = renormalization_matrix(m.cf, n);
    const FiberedAction g = renormalize(m.map, phi, m.cf, n, budget, 16);
    const RenormGeometry geo = renorm_geometry(m.map, m.cf, n, {0, budget});
    const CoboundaryWitness w = flatness_test(g, geo.x_star, flat_tol, 257);

    Output o;
    o.results["map"] = map_json(m);
    o.results["A"] = {{A.a.str(), A.b.str()}, {A.c.str(), A.d.str()}};
    const BigInt det = A.a * A.d - A.b * A.c;
    o.results["det"] = det.str();
    o.results["commutation_defect"] = g.commutation_defect();
    o.results["x_star"] = geo.x_star;
    o.results["flatness"] = {{"sup10", w.sup10}, {"sup01", w.sup01}, {"tol", w.tol}, {"flat", w.pass}};
    Csv csv({"x", "base10_minus_x", "fiber10", "base01_minus_x", "fiber01"});
    double b10 = 0, f10 = 0, b01 = 0, f01 = 0;
    for (std::size_t j = 0; j < samples; ++j) {
        const double x = static_cast<double>(j) / static_cast<double>(samples);
        const double v[4] = {g.g10().base(x) - x, g.g10().fiber(x), g.g01().base(x) - x, g.g01().fiber(x)};
        b10 = std::max(b10, std::abs(v[0]));
        f10 = std::max(f10, std::abs(v[1]));
        b01 = std::max(b01, std::abs(v[2]));
        f01 = std::max(f01, std::abs(v[3]));
        csv.row(x, v[0], v[1], v[2], v[3]);
    }
    o.results["generator_norms"] = {{"base10", b10}, {"fiber10", f10}, {"base01", b01}, {"fiber01", f01}};
    o.checks.add("unimodular", det == 1 || det == -1, det.convert_to<double>(), 1.0);
    o.csv = csv.str();
    return o;
}

Output cmd_coboundary(Config& c)
{
    const BuiltMap m = map_from(c);
    const PeriodicFunction phi = parse_phi(c.need<std::string>("phi"), m.map.grid(), &m.map);
    const int r = c.get<int>("r", 11);
    const double eps = c.get<double>("epsilon", 1e-3);
    PipelineOptions p;
    p.levels = c.get<std::vector<int>>("levels", {});
    p.n_min = c.get<int>("n_min", 3);
    p.budget_qn = c.get<std::int64_t>("budget_qn", 10'000);
    p.mu_budget = c.get<std::int64_t>("mu_budget", 10'000'000);
    p.exhaustive = c.get<bool>("exhaustive", false);
    p.certify = c.get<bool>("certify", true);
    p.norm_samples = c.get<std::size_t>("norm_samples", 257);
    p.certificate.throw_on_failure = false;
    const ConstructionReport rep = approximate_by_coboundary(m.map, phi, m.cf, eps, r, p);

    constexpr double kJTol = 1e-7, kLeakTol = 1e-10, kPairTol = 1e-7;
    Output o;
    o.results["map"] = map_json(m);
    json lv = json::array();
    Csv csv({"n", "q_n", "M_prev", "xi_Ck", "xi_constant", "u_J", "u_constant", "phibar_n_I", "theta", "j_vanishing",
             "pairing", "certificate"});
    for (const auto& L : rep.levels) {
        const auto& ct = L.certificate;
        lv.push_back({{"n", L.n},
                      {"q_prev", L.q_prev},
                      {"q_cur", L.q_cur},
                      {"x_star", L.x_star},
                      {"M_prev", L.M_prev},
                      {"m_star", L.m_star},
                      {"ell", L.ell},
                      {"norms",
                       {{"xi_Ck", L.xi_norm},
                        {"u_J", L.u_norm_J},
                        {"phibar_n_I", L.phibar_n_norm_I},
                        {"phi_prev_K", L.phi_prev_norm_K},
                        {"theta", L.theta},
                        {"u_constant", L.u_constant},
                        {"xi_constant", L.xi_constant}}},
                      {"residuals",
                       {{"j_vanishing", L.j_vanishing},
                        {"xi_leakage", L.xi_leakage},
                        {"pairing", L.pairing},
                        {"periodicity", L.periodicity_defect},
                        {"flatness10", ct.witness.sup10},
                        {"flatness01", ct.witness.sup01},
                        {"line_solver", ct.line_residual}}},
                      {"zero_spot", {{"min_phibar_n", L.min_phibar_n}, {"bound", L.spot_bound}, {"ok", L.spot_ok}}},
                      {"phitilde_mean", {{"value", L.phitilde_mean}, {"q", L.phitilde_mean_q}}},
                      {"certificate",
                       {{"orbit_avoidance", ct.orbit_avoidance},
                        {"avoidance_margin", ct.avoidance_margin},
                        {"flatness", ct.flatness},
                        {"return_times", ct.return_times},
                        {"bad_return_sets", ct.bad_return_sets},
                        {"pass", ct.pass},
                        {"failed", ct.failed}}}});
        csv.row(L.n, static_cast<long long>(L.q_cur), L.M_prev, L.xi_norm, L.xi_constant, L.u_norm_J, L.u_constant,
                L.phibar_n_norm_I, L.theta, L.j_vanishing, L.pairing, ct.pass);
        const std::string tag = "_n" + std::to_string(L.n);
        o.checks.add("j_vanishing" + tag, L.j_vanishing < kJTol, L.j_vanishing, kJTol);
        o.checks.add("xi_leakage" + tag, L.xi_leakage < kLeakTol, L.xi_leakage, kLeakTol);
        o.checks.add("pairing" + tag, L.pairing < kPairTol, L.pairing, kPairTol);
        if (p.certify) o.checks.add("certificate" + tag, ct.pass, std::max(ct.witness.sup10, ct.witness.sup01),
                                    p.certificate.flat_tol);
    }
    o.results["report"] = {{"r", rep.r},
                           {"k", rep.k},
                           {"epsilon", rep.epsilon},
                           {"mu", rep.mu},
                           {"mu_error", rep.mu_error},
                           {"candidates", rep.candidates},
                           {"achieved", rep.achieved},
                           {"chosen_level", rep.chosen >= 0 ? rep.levels[static_cast<std::size_t>(rep.chosen)].n : -1},
                           {"best_xi", rep.best_xi},
                           {"levels", lv},
                           {"tolerances",
                            {{"j_vanishing", kJTol},
                             {"xi_leakage", kLeakTol},
                             {"pairing", kPairTol},
                             {"flatness", p.certificate.flat_tol},
                             {"arc", p.certificate.arc_tol},
                             {"periodicity", 1e-6}}}};
    o.checks.add("epsilon_reached", rep.achieved, rep.best_xi, eps);
    o.csv = csv.str();
    return o;
}

Output cmd_calculus(Config& c)
{
    const int r = c.need<int>("print_pr");
    if (r < 1 || r > 12) fail(ErrorCode::ConfigParse, "field 'print_pr' must lie in 1..12");
    const PrPolynomial& P = PrPolynomial::get(r);
    Output o;
    json terms = json::array();
    Csv csv({"exponents", "coefficient"});
    for (const auto& [e, coef] : P.terms()) {
        std::string es;
        for (std::size_t i = 0; i < e.size(); ++i) es += (i ? " " : "") + std::to_string(e[i]);
        terms.push_back({{"exponents", e}, {"coefficient", coef.str()}});
        csv.row(es, coef.str());
    }
    o.results = {{"r", r}, {"polynomial", P.str()}, {"terms", terms}};
    o.csv = csv.str();
    return o;
}

int exit_for(ErrorCode code)
{
    switch (code) {
    case ErrorCode::ConfigParse:
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidQuotient:
    case ErrorCode::RationalInput:
        return kExitConfig;
    case ErrorCode::BudgetExceeded:
        return kExitBudget;
    default:
        return kExitFailed;
    }
}

} // namespace

const char* library_version() noexcept { return COHOMOLIB_VERSION; }

std::vector<std::string> experiment_commands()
{
    std::vector<std::string> out;
    for (const auto& [k, v] : key_table()) out.push_back(k);
    return out;
}

std::vector<std::string> experiment_keys(std::string_view command)
{
    auto it = key_table().find(std::string(command));
    return it == key_table().end() ? std::vector<std::string>{} : it->second;
}

RunResult run_experiment(std::string_view config_json)
{
    RunResult res;
    json report = {{"version", library_version()}};
    json in;
    try {
        try {
            in = json::parse(config_json);
        } catch (const json::parse_error& e) {
            fail(ErrorCode::ConfigParse, e.what());
        }
        if (!in.is_object()) fail(ErrorCode::ConfigParse, "config must be a JSON object");
        if (!in.contains("command") || !in["command"].is_string())
            fail(ErrorCode::ConfigParse, "field 'command' is required");
        const std::string cmd = in["command"].get<std::string>();
        const auto keys = experiment_keys(cmd);
        if (keys.empty()) fail(ErrorCode::ConfigParse, "unknown command '" + cmd + "'");
        const std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto& [k, v] : in.items())
            if (!allowed.count(k)) fail(ErrorCode::ConfigParse, "unknown key '" + k + "' for command " + cmd);

        static const std::map<std::string, std::function<Output(Config&)>> dispatch = {
            {"cf", cmd_cf},         {"map", cmd_map},           {"dk", cmd_dk},
            {"herman", cmd_herman}, {"corollary-c", cmd_corollary_c}, {"solve-rotation", cmd_solve_rotation},
            {"renorm", cmd_renorm}, {"coboundary", cmd_coboundary}, {"calculus", cmd_calculus}};
        Config cfg(in);
        cfg.get<std::string>("command", cmd);
        cfg.get<std::int64_t>("seed", 0);
        Output out;
        try {
            out = dispatch.at(cmd)(cfg);
        } catch (...) {
            report["config"] = cfg.echo();
            throw;
        }
        report["config"] = cfg.echo();
        report["results"] = std::move(out.results);
        report["checks"] = std::move(out.checks.list);
        report["status"] = out.checks.all ? "ok" : "failed";
        res.exit_code = out.checks.all ? kExitOk : kExitFailed;
        res.csv = std::move(out.csv);
    } catch (const Error& e) {
        report["status"] = "error";
        report["error"] = {{"code", error_name(e.code())}, {"message", e.what()}};
        res.exit_code = exit_for(e.code());
    } catch (const std::exception& e) {
        report["status"] = "error";
        report["error"] = {{"code", "Internal"}, {"message", e.what()}};
        res.exit_code = kExitFailed;
    }
    if (!report.contains("config")) report["config"] = in.is_object() ? in : json::object();
    res.json = report.dump(2) + "\n";
    return res;
}

} // namespace cohomo
