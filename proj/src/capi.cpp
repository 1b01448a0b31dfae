// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cohomolib/cohomolib.h>

#include <cstring>
#include <map>
#include <mutex>
#include <string>

#include <cohomolib/error.hpp>
#include <cohomolib/experiment.hpp>
#include <cohomolib/families.hpp>

using namespace cohomo;

struct chl_cf {
    ContinuedFraction cf;
};

struct chl_map {
    BuiltMap m;
};

struct chl_result {
    RunResult r;
};

static_assert(static_cast<int>(ErrorCode::InvalidArgument) == CHL_INVALID_ARGUMENT);
static_assert(static_cast<int>(ErrorCode::BudgetExceeded) == CHL_BUDGET_EXCEEDED);
static_assert(static_cast<int>(ErrorCode::ConfigParse) == CHL_CONFIG_PARSE);
static_assert(static_cast<int>(ErrorCode::Internal) == CHL_INTERNAL);

namespace {

thread_local std::string g_last_error;

template <class F>
chl_status guard(F&& f)
{
    try {
        f();
        g_last_error.clear();
        return CHL_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return static_cast<chl_status>(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return CHL_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return CHL_INTERNAL;
    }
}

void require_ptr(const void* p, const char* what)
{
    if (!p) fail(ErrorCode::InvalidArgument, std::string("null ") + what);
}

void copy_out(const std::string& s, char* buf, size_t len)
{
    require_ptr(buf, "buffer");
    if (s.size() + 1 > len) fail(ErrorCode::LengthMismatch, "buffer too small, need " + std::to_string(s.size() + 1));
    std::memcpy(buf, s.c_str(), s.size() + 1);
}

} // namespace

extern "C" {

const char* chl_version(void) { return library_version(); }

const char* chl_status_name(chl_status status)
{
    if (status == CHL_OK) return "Ok";
    return error_name(static_cast<ErrorCode>(status));
}

const char* chl_last_error(void) { return g_last_error.c_str(); }

chl_status chl_cf_create(const char* spec, int depth, unsigned bits, chl_cf** out)
{
    return guard([&] {
        require_ptr(spec, "spec");
        require_ptr(out, "output");
        *out = new chl_cf{make_cf(spec, depth, bits ? bits : kDefaultBits)};
    });
}

void chl_cf_destroy(chl_cf* cf) { delete cf; }

int chl_cf_depth(const chl_cf* cf) { return cf ? cf->cf.depth() : -1; }

int chl_cf_usable_depth(const chl_cf* cf) { return cf ? cf->cf.usable_depth() : -1; }

chl_status chl_cf_quotient(const chl_cf* cf, int n, char* buf, size_t len)
{
    return guard([&] {
        require_ptr(cf, "cf");
        if (n < 0 || n > cf->cf.depth()) fail(ErrorCode::IndexOutOfRange, "quotient index");
        copy_out(cf->cf.a(n).str(), buf, len);
    });
}

chl_status chl_cf_convergent(const chl_cf* cf, int n, char* p, size_t plen, char* q, size_t qlen)
{
    return guard([&] {
        require_ptr(cf, "cf");
        if (n < -2 || n > cf->cf.depth()) fail(ErrorCode::IndexOutOfRange, "convergent index");
        copy_out(cf->cf.p(n).str(), p, plen);
        copy_out(cf->cf.q(n).str(), q, qlen);
    });
}

chl_status chl_cf_beta(const chl_cf* cf, int n, double* out)
{
    return guard([&] {
        require_ptr(cf, "cf");
        require_ptr(out, "output");
        if (n < -1 || n > cf->cf.depth()) fail(ErrorCode::IndexOutOfRange, "beta index");
        *out = cf->cf.beta_double(n);
    });
}

double chl_cf_alpha(const chl_cf* cf) { return cf ? cf->cf.alpha_double() : 0.0; }

chl_status chl_map_create(const char* spec, size_t grid, int64_t tune_budget, chl_map** out)
{
    return guard([&] {
        require_ptr(spec, "spec");
        require_ptr(out, "output");
        MapBuildOptions o;
        if (grid) o.grid = grid;
        if (tune_budget > 0) o.tune_budget = tune_budget;
        *out = new chl_map{build_map(parse_map_spec(spec), o)};
    });
}

void chl_map_destroy(chl_map* map) { delete map; }

chl_status chl_map_eval(const chl_map* map, double x, double* y)
{
    return guard([&] {
        require_ptr(map, "map");
        require_ptr(y, "output");
        *y = map->m.map(x);
    });
}

chl_status chl_map_inverse(const chl_map* map, double y, double* x)
{
    return guard([&] {
        require_ptr(map, "map");
        require_ptr(x, "output");
        *x = map->m.map.inverse(y);
    });
}

chl_status chl_map_rotation_number(const chl_map* map, double* rho)
{
    return guard([&] {
        require_ptr(map, "map");
        require_ptr(rho, "output");
        *rho = map->m.cf.alpha_double();
    });
}

chl_status chl_map_cf(const chl_map* map, chl_cf** out)
{
    return guard([&] {
        require_ptr(map, "map");
        require_ptr(out, "output");
        *out = new chl_cf{map->m.cf};
    });
}

chl_status chl_run(const char* config_json, chl_result** out)
{
    return guard([&] {
        require_ptr(config_json, "config");
        require_ptr(out, "output");
        *out = new chl_result{run_experiment(config_json)};
    });
}

int chl_result_exit_code(const chl_result* r) { return r ? r->r.exit_code : kExitFailed; }

const char* chl_result_json(const chl_result* r) { return r ? r->r.json.c_str() : ""; }

const char* chl_result_csv(const chl_result* r) { return r ? r->r.csv.c_str() : ""; }

void chl_result_destroy(chl_result* r) { delete r; }

const char* chl_commands(void)
{
    static const std::string s = [] {
        std::string out;
        for (const auto& c : experiment_commands()) out += c + "\n";
        return out;
    }();
    return s.c_str();
}

const char* chl_command_keys(const char* command)
{
    static std::mutex mu;
    static std::map<std::string, std::string> cache;
    if (!command) return "";
    std::lock_guard lock(mu);
    auto [it, fresh] = cache.try_emplace(command);
    if (fresh)
        for (const auto& k : experiment_keys(command)) it->second += k + "\n";
    return it->second.c_str();
}

} // extern "C"
