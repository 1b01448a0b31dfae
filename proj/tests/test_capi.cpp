// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

// Exercises the shared library through its C header only.

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstring>
#include <string>

#include <cohomolib/cohomolib.h>

namespace {

struct Result {
    chl_status status;
    int exit_code = -1;
    std::string json, csv;
};

Result run(const std::string& cfg)
{
    chl_result* r = nullptr;
    Result out{chl_run(cfg.c_str(), &r)};
    if (out.status == CHL_OK) {
        out.exit_code = chl_result_exit_code(r);
        out.json = chl_result_json(r);
        out.csv = chl_result_csv(r);
        chl_result_destroy(r);
    }
    return out;
}

} // namespace

TEST_CASE("version and status names")
{
    CHECK(std::strlen(chl_version()) > 0);
    CHECK(std::string(chl_status_name(CHL_OK)) == "Ok");
    CHECK(std::string(chl_status_name(CHL_CONFIG_PARSE)) == "ConfigParse");
    CHECK(std::string(chl_status_name(CHL_INVALID_QUOTIENT)) == "InvalidQuotient");
}

TEST_CASE("continued fractions through the C API")
{
    chl_cf* cf = nullptr;
    REQUIRE(chl_cf_create("golden", 30, 256, &cf) == CHL_OK);
    CHECK(chl_cf_depth(cf) == 30);
    CHECK(chl_cf_usable_depth(cf) >= 30);
    CHECK(chl_cf_alpha(cf) == doctest::Approx((std::sqrt(5.0) - 1) / 2).epsilon(1e-15));
    char buf[64], pb[64], qb[64];
    REQUIRE(chl_cf_quotient(cf, 7, buf, sizeof buf) == CHL_OK);
    CHECK(std::string(buf) == "1");
    REQUIRE(chl_cf_convergent(cf, 20, pb, sizeof pb, qb, sizeof qb) == CHL_OK);
    CHECK(std::string(pb) == "6765");
    CHECK(std::string(qb) == "10946");
    double b = 0;
    REQUIRE(chl_cf_beta(cf, 10, &b) == CHL_OK);
    CHECK(b == doctest::Approx(std::pow((std::sqrt(5.0) - 1) / 2, 11)).epsilon(1e-12));

    char tiny[3];
    CHECK(chl_cf_convergent(cf, 20, tiny, sizeof tiny, qb, sizeof qb) == CHL_LENGTH_MISMATCH);
    CHECK(std::strlen(chl_last_error()) > 0);
    CHECK(chl_cf_quotient(cf, 99, buf, sizeof buf) == CHL_INDEX_OUT_OF_RANGE);
    CHECK(chl_cf_beta(cf, 10, nullptr) == CHL_INVALID_ARGUMENT);
    chl_cf_destroy(cf);

    chl_cf* bad = nullptr;
    CHECK(chl_cf_create("[0,1,0,3]", 10, 256, &bad) == CHL_INVALID_QUOTIENT);
    CHECK(bad == nullptr);
    CHECK(chl_cf_create(nullptr, 10, 256, &bad) == CHL_INVALID_ARGUMENT);
    chl_cf_destroy(nullptr);
}

TEST_CASE("maps through the C API")
{
    chl_map* m = nullptr;
    REQUIRE(chl_map_create("arnold:a=0.3,eps=0.5", 256, 100000, &m) == CHL_OK);
    double y = 0, x = 0, rho = 0;
    REQUIRE(chl_map_eval(m, 0.2, &y) == CHL_OK);
    CHECK(y == doctest::Approx(0.2 + 0.3 + 0.5 / (2 * M_PI) * std::sin(2 * M_PI * 0.2)).epsilon(1e-14));
    REQUIRE(chl_map_inverse(m, y, &x) == CHL_OK);
    CHECK(x == doctest::Approx(0.2).epsilon(1e-13));
    REQUIRE(chl_map_rotation_number(m, &rho) == CHL_OK);
    CHECK(rho > 0.0);
    CHECK(rho < 1.0);
    chl_cf* cf = nullptr;
    REQUIRE(chl_map_cf(m, &cf) == CHL_OK);
    CHECK(chl_cf_alpha(cf) == doctest::Approx(rho).epsilon(1e-9));
    chl_cf_destroy(cf);
    chl_map_destroy(m);

    // tuned to the golden mean
    REQUIRE(chl_map_create("arnold:eps=0.5,rho=golden", 256, 100000, &m) == CHL_OK);
    REQUIRE(chl_map_rotation_number(m, &rho) == CHL_OK);
    CHECK(rho == doctest::Approx((std::sqrt(5.0) - 1) / 2).epsilon(1e-9));
    chl_map_destroy(m);

    CHECK(chl_map_create("arnold:a=0.3,eps=1.5", 256, 100000, &m) != CHL_OK);
    CHECK(chl_map_create("nosuchmap:a=0.3", 256, 100000, &m) != CHL_OK);
}

TEST_CASE("experiment runner")
{
    const Result empty = run("{}");
    CHECK(empty.status == CHL_OK);
    CHECK(empty.exit_code == 4);
    CHECK(empty.json.find("ConfigParse") != std::string::npos);

    CHECK(run("not json").exit_code == 4);
    CHECK(run(R"({"command": "cf", "alpha": "golden", "bogus": 1})").exit_code == 4);
    CHECK(run(R"({"command": "nosuch"})").exit_code == 4);

    const Result cf = run(R"({"command": "cf", "alpha": "pi-3", "depth": 4})");
    CHECK(cf.exit_code == 0);
    const auto j = nlohmann::json::parse(cf.json);
    CHECK(j["status"] == "ok");
    CHECK(j["results"]["a"] == nlohmann::json::array({"0", "7", "15", "1", "292"}));
    CHECK(cf.csv.rfind("n,a,p,q,beta", 0) == 0);

    // defaults are materialised in the echoed config, and feeding it back reproduces the run
    const std::string dk = R"({"command": "dk", "map": "rotation:rho=golden", "phi": "cos", "grid": 128, "budget": 1000})";
    const Result a = run(dk);
    CHECK(a.exit_code == 0);
    const auto ja = nlohmann::json::parse(a.json);
    CHECK(ja["config"].contains("mu_budget"));
    CHECK(ja["config"].contains("tune_tol"));
    const Result b = run(ja["config"].dump());
    CHECK(b.json == a.json);
    CHECK(b.csv == a.csv);

    // a failed check is exit code 2, not an API error
    const Result cob = run(R"({"command": "coboundary", "map": "rotation:rho=golden", "phi": "cos", "levels": [3],
                               "epsilon": 1e-30, "exhaustive": true, "grid": 256})");
    CHECK(cob.status == CHL_OK);
    CHECK(cob.exit_code == 2);

    chl_result* r = nullptr;
    CHECK(chl_run(nullptr, &r) == CHL_INVALID_ARGUMENT);
}

TEST_CASE("command discovery")
{
    const std::string cmds = chl_commands();
    for (const char* c : {"cf", "map", "dk", "herman", "corollary-c", "solve-rotation", "renorm", "coboundary", "calculus"})
        CHECK(cmds.find(c) != std::string::npos);
    const std::string keys = chl_command_keys("coboundary");
    CHECK(keys.find("epsilon") != std::string::npos);
    CHECK(keys.find("levels") != std::string::npos);
    CHECK(std::string(chl_command_keys("nosuch")).empty());
}
