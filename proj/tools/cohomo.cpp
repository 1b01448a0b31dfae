// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Every subcommand becomes a JSON config handed to
// chl_run, so `cohomo run --config` and the flag form give identical output.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <cohomolib/cohomolib.h>

namespace {

using json = nlohmann::json;

struct Common {
    bool print_json = false;
    std::string csv_path;
};

// Flags are only written into the config when given, so defaults live in one place.
struct Builder {
    CLI::App* app;
    json cfg;
    std::vector<std::function<void()>> sinks;

    template <class T>
    CLI::Option* flag(const std::string& names, const std::string& key, const std::string& help)
    {
        auto v = std::make_shared<T>();
        CLI::Option* o = app->add_option(names, *v, help);
        sinks.push_back([this, o, v, key] {
            if (o->count()) cfg[key] = *v;
        });
        return o;
    }
    void positional_map()
    {
        auto v = std::make_shared<std::string>();
        CLI::Option* o = app->add_option("map", *v, "map spec, e.g. arnold:eps=0.5,rho=golden");
        sinks.push_back([this, o, v] {
            if (o->count()) cfg["map"] = *v;
        });
    }
    void switch_(const std::string& name, const std::string& key, bool value, const std::string& help)
    {
        CLI::Option* o = app->add_flag(name, help);
        sinks.push_back([this, o, key, value] {
            if (o->count()) cfg[key] = value;
        });
    }
    json finish()
    {
        for (auto& s : sinks) s();
        return cfg;
    }
};

void map_flags(Builder& b)
{
    b.positional_map();
    b.flag<std::size_t>("--grid", "grid", "spectral grid size");
    b.flag<int>("--depth", "depth", "continued fraction depth of the target");
    b.flag<unsigned>("--bits", "bits", "working precision in bits");
    b.flag<std::int64_t>("--tune-budget", "tune_budget", "iterate budget when tuning to rho");
    b.flag<double>("--tune-tol", "tune_tol", "parameter tolerance when tuning");
}

int emit(const chl_result* r, const Common& c)
{
    const int code = chl_result_exit_code(r);
    if (!c.csv_path.empty()) {
        if (c.csv_path == "-") {
            std::fputs(chl_result_csv(r), stdout);
        } else {
            std::ofstream f(c.csv_path, std::ios::binary);
            if (!f) {
                std::cerr << "cannot write " << c.csv_path << "\n";
                return 4;
            }
            f << chl_result_csv(r);
        }
    }
    if (c.print_json || c.csv_path.empty()) std::fputs(chl_result_json(r), stdout);
    if (code != 0) {
        const json rep = json::parse(chl_result_json(r), nullptr, false);
        if (rep.is_object() && rep.contains("error"))
            std::cerr << "error: " << rep["error"]["message"].get<std::string>() << "\n";
        else
            std::cerr << "one or more checks failed\n";
    }
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Numerical toolkit for cohomological equations over circle diffeomorphisms"};
    app.set_version_flag("--version", std::string(chl_version()));
    app.require_subcommand(1);

    Common common;
    std::int64_t seed = 0;
    std::vector<std::unique_ptr<Builder>> builders;
    auto sub = [&](const std::string& name, const std::string& help) -> Builder& {
        CLI::App* s = app.add_subcommand(name, help);
        s->add_flag("--json", common.print_json, "print the JSON report to stdout");
        s->add_option("--csv", common.csv_path, "write the CSV table to this path ('-' for stdout)");
        s->add_option("--seed", seed, "seed recorded in the report");
        builders.push_back(std::make_unique<Builder>(Builder{s, json{{"command", name}}, {}}));
        return *builders.back();
    };

    {
        Builder& b = sub("cf", "continued fraction expansion and Liouville levels");
        b.flag<std::string>("--alpha", "alpha", "rational p/q, quotients [a0,a1,..], or a real expression")->required();
        b.flag<int>("--depth", "depth", "number of quotients");
        b.flag<double>("--tau", "tau", "Liouville exponent");
        b.flag<unsigned>("--bits", "bits", "working precision in bits");
    }
    {
        Builder& b = sub("map", "renormalization geometry of a circle map");
        map_flags(b);
        b.flag<int>("--level", "level", "level n");
        b.flag<std::int64_t>("--budget", "budget", "iterate budget for q_n");
    }
    {
        Builder& b = sub("dk", "Denjoy-Koksma check over levels");
        map_flags(b);
        b.flag<std::vector<std::string>>("--phi", "phi", "one or more cocycle specs, e.g. cos sawtooth");
        b.flag<std::vector<int>>("--levels", "levels", "levels to check (default: all within budget)");
        b.flag<std::int64_t>("--budget", "budget", "largest q_n checked");
        b.flag<std::size_t>("--dk-grid", "dk_grid", "points for the sup over x");
        b.flag<std::int64_t>("--mu-budget", "mu_budget", "iterate budget for the invariant mean");
    }
    {
        Builder& b = sub("herman", "sup |log Df^{q_n}| over levels");
        map_flags(b);
        b.flag<int>("--n-max", "n_max", "last level");
        b.flag<std::int64_t>("--budget", "budget", "largest q_n");
        b.flag<std::size_t>("--herman-grid", "herman_grid", "points for the sup");
    }
    {
        Builder& b = sub("corollary-c", "decay of sup |S^{q_n} phi - q_n mu|");
        map_flags(b);
        b.flag<std::string>("--phi", "phi", "cocycle spec");
        b.flag<std::int64_t>("--budget", "budget", "largest q_n");
        b.flag<std::int64_t>("--mu-budget", "mu_budget", "iterate budget for the invariant mean");
        b.flag<int>("--n-start", "n_start", "reference level");
    }
    {
        Builder& b = sub("solve-rotation", "Fourier solver over a rigid rotation");
        b.flag<std::string>("--alpha", "alpha", "rotation number spec");
        b.flag<std::string>("--psi", "psi", "right-hand side spec");
        b.flag<int>("--modes", "modes", "number of Fourier modes K");
        b.flag<std::size_t>("--grid", "grid", "grid size");
    }
    {
        Builder& b = sub("renorm", "renormalized action at level n");
        map_flags(b);
        b.flag<std::string>("--phi", "phi", "cocycle spec");
        b.flag<int>("--level,-n", "level", "level n");
        b.flag<std::int64_t>("--budget", "budget", "iterate budget");
    }
    {
        Builder& b = sub("coboundary", "approximate a cocycle by a coboundary");
        map_flags(b);
        b.flag<std::string>("--phi", "phi", "cocycle spec");
        b.flag<int>("--r", "r", "smoothness r (k = floor((r-5)/6))");
        b.flag<double>("--epsilon", "epsilon", "target C^k size of xi");
        b.flag<std::vector<int>>("--levels", "levels", "explicit levels instead of L(alpha, r/2)");
        b.flag<std::int64_t>("--budget-qn", "budget_qn", "largest q_n");
        b.flag<int>("--n-min", "n_min", "smallest level");
        b.flag<std::int64_t>("--mu-budget", "mu_budget", "iterate budget for the invariant mean");
        b.switch_("--exhaustive", "exhaustive", true, "run every level instead of stopping at epsilon");
        b.switch_("--no-certify", "certify", false, "skip the coboundary certificate");
    }
    {
        Builder& b = sub("calculus", "print the P_r polynomials");
        b.flag<int>("--print-pr", "print_pr", "r")->required();
    }
    std::string config_path;
    CLI::App* run = app.add_subcommand("run", "run a JSON config file");
    run->add_option("--config", config_path, "config path")->required();
    run->add_flag("--json", common.print_json, "print the JSON report to stdout");
    run->add_option("--csv", common.csv_path, "write the CSV table to this path ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 4;
    }

    std::string config;
    if (run->parsed()) {
        std::ifstream f(config_path, std::ios::binary);
        if (!f) {
            std::cerr << "cannot read " << config_path << "\n";
            return 4;
        }
        std::ostringstream ss;
        ss << f.rdbuf();
        config = ss.str();
    } else {
        for (auto& b : builders) {
            if (!b->app->parsed()) continue;
            json cfg = b->finish();
            if (b->app->count("--seed")) cfg["seed"] = seed;
            config = cfg.dump();
        }
    }

    chl_result* r = nullptr;
    if (chl_run(config.c_str(), &r) != CHL_OK) {
        std::cerr << "error: " << chl_last_error() << "\n";
        return 2;
    }
    const int code = emit(r, common);
    chl_result_destroy(r);
    return code;
}
