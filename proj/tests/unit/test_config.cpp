// Copyright 2026 The embell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <string>

#include "embell/config.hpp"
#include "embell/errors.hpp"
#include "embell/report.hpp"

using namespace embell;

namespace {

const char *kBaseline = R"({
  "system": {"omega_m": 62831853.07179586, "kappa_lc_over_omega_m": 0.125, "Q": 3e6,
             "nbar": 40, "n0": 0.1, "lambda_t": 1.0, "cooperativity": 100}
})";

std::string key_path_of(const std::string &text) {
    try {
        parse_config_text(text);
    } catch (const ConfigError &e) {
        return e.key_path();
    }
    return "<no error>";
}

std::string message_of(const std::string &text) {
    try {
        parse_config_text(text);
    } catch (const ConfigError &e) {
        return e.what();
    }
    return "<no error>";
}

std::string with_system(const std::string &extra) {
    return R"({"system": {"omega_m": 1e7, "kappa_lc_over_omega_m": 0.125, "gamma_m": 3, "nbar": 40, )" + extra + "}}";
}

}  // namespace

TEST_CASE("baseline configuration") {
    const ProtocolConfig cfg = parse_config_text(kBaseline);
    CHECK(cfg.params.kappa_lc == doctest::Approx(cfg.params.omega_m / 8.0));
    CHECK(cfg.params.gamma_m == doctest::Approx(cfg.params.omega_m / 3e6));
    CHECK(cfg.params.cooperativity() == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(cfg.cooperativities.size() == 1);
    CHECK_FALSE(cfg.settings.has_value());
}

TEST_CASE("out-of-range transmission is rejected with its key path") {
    CHECK(key_path_of(with_system(R"("n0": 0.1, "lambda_t": 1.2, "g_max": 1e5)")) == "system.lambda_t");
}

TEST_CASE("an empty file lists every missing key") {
    const std::string msg = message_of("");
    for (const char *k : {"system.omega_m", "system.kappa_lc_over_omega_m", "system.gamma_m or system.Q",
                          "system.nbar", "system.n0", "system.lambda_t", "system.cooperativity or system.g_max"}) {
        CAPTURE(k);
        CHECK(msg.find(k) != std::string::npos);
    }
}

TEST_CASE("unknown keys and sections are rejected") {
    CHECK(key_path_of(with_system(R"("n0": 0.1, "lambda_t": 1, "g_max": 1e5, "colour": 3)")) == "system.colour");
    CHECK(key_path_of(R"({"extras": {}})") == "extras");
}

TEST_CASE("type and exclusivity errors") {
    CHECK(key_path_of(with_system(R"("n0": "lots", "lambda_t": 1, "g_max": 1e5)")) == "system.n0");
    CHECK(key_path_of(with_system(R"("n0": 0.1, "lambda_t": 1, "g_max": 1e5, "cooperativity": 3)")) ==
          "system.g_max");
    CHECK(key_path_of("{not json") == "");
    CHECK(key_path_of("[1, 2]") == "");
}

TEST_CASE("protocol and settings sections") {
    const std::string text = R"({"system": {"omega_m": 1e7, "kappa_lc_over_omega_m": 0.125, "gamma_m": 3,
        "nbar": 40, "n0": 0.1, "lambda_t": 1, "g_max": 1e5},
        "protocol": {"tau1": 0.7, "tau2": 12, "upsilon": 2.5},
        "settings": {"alpha1": [0.1, 0], "alpha2": [-0.5, 0.1], "beta1": [0.1, 0], "beta2": [-0.5, -0.1]}})";
    const ProtocolConfig cfg = parse_config_text(text);
    CHECK(cfg.tau1 == 0.7);
    CHECK(cfg.tau2 == 12.0);
    CHECK(cfg.upsilon == 2.5);
    REQUIRE(cfg.settings.has_value());
    CHECK(cfg.settings->alpha2 == Complex(-0.5, 0.1));

    const std::string too_long = R"({"system": {"omega_m": 1e7, "kappa_lc_over_omega_m": 0.125, "gamma_m": 3,
        "nbar": 40, "n0": 0.1, "lambda_t": 1, "g_max": 1e5}, "protocol": {"tau1": 5}})";
    CHECK(key_path_of(too_long) == "protocol.tau1");
}

TEST_CASE("sweep axes replace system keys") {
    const std::string text = R"({"system": {"omega_m": 1e7, "kappa_lc_over_omega_m": 0.125, "Q": 3e6, "nbar": 40},
        "sweep": {"cooperativity": [30, 100], "lambda_t": [1, 0.95], "n0": [0.1]}})";
    const ProtocolConfig cfg = parse_config_text(text);
    CHECK(cfg.cooperativities.size() == 2);
    CHECK(cfg.lambdas.size() == 2);
    CHECK(cfg.n0s.size() == 1);
    const std::string bad = R"({"system": {"omega_m": 1e7, "kappa_lc_over_omega_m": 0.125, "Q": 3e6, "nbar": 40},
        "sweep": {"cooperativity": [30], "lambda_t": [1, 1.5], "n0": [0.1]}})";
    CHECK(key_path_of(bad) == "sweep.lambda_t[1]");
}

TEST_CASE("modes and hashing") {
    CHECK(parse_mode("sweep") == RunMode::Sweep);
    CHECK(mode_name(RunMode::Validate) == "validate");
    CHECK_THROWS_AS(parse_mode("fast"), InvalidArgument);
    CHECK(config_hash("") == "cbf29ce484222325");
    CHECK(config_hash("a") == config_hash("a"));
    CHECK(config_hash("a") != config_hash("b"));
}

TEST_CASE("result rows") {
    SweepRow row;
    row.cooperativity = 100;
    row.lambda_t = 1;
    row.n0 = 0.1;
    row.ok = false;
    CHECK(format_result_row(row).find("nan") != std::string::npos);
    CHECK(std::string(kResultColumns) == "C,lambda_t,n0,S,tau1_Gamma,tau2_Gamma,upsilon,converged");
}
