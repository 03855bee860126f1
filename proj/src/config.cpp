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

#include "embell/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "embell/errors.hpp"

namespace embell {

namespace {

using nlohmann::json;

const std::map<std::string, std::set<std::string>> kSchema{
    {"system",
     {"omega_m", "kappa_lc_over_omega_m", "gamma_m", "Q", "nbar", "n0", "lambda_t", "cooperativity", "g_max"}},
    {"protocol", {"tau1", "tau2", "upsilon"}},
    {"settings", {"alpha1", "alpha2", "beta1", "beta2"}},
    {"sweep", {"cooperativity", "lambda_t", "n0"}},
};

struct Range {
    double lo;
    double hi;
    bool lo_open;
};

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr Range kPositive{0.0, kInf, true};
constexpr Range kNonnegative{0.0, kInf, false};
constexpr Range kUnit{0.0, 1.0, false};

double number_at(const json &node, const std::string &path, Range range) {
    if (!node.is_number()) throw ConfigError(path, fmt::format("{}: expected a number", path));
    const double v = node.get<double>();
    const bool below = range.lo_open ? !(v > range.lo) : !(v >= range.lo);
    if (!std::isfinite(v) || below || v > range.hi) {
        throw ConfigError(path, fmt::format("{}: value {} out of range {}{}, {}]", path, v, range.lo_open ? "(" : "[",
                                            range.lo, range.hi));
    }
    return v;
}

std::vector<double> axis_at(const json &node, const std::string &path, Range range) {
    if (!node.is_array() || node.empty()) {
        throw ConfigError(path, fmt::format("{}: expected a nonempty array of numbers", path));
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < node.size(); ++i) {
        out.push_back(number_at(node[i], fmt::format("{}[{}]", path, i), range));
    }
    return out;
}

Complex complex_at(const json &node, const std::string &path) {
    if (!node.is_array() || node.size() != 2) {
        throw ConfigError(path, fmt::format("{}: expected [re, im]", path));
    }
    const Range any{-kSettingsBox, kSettingsBox, false};
    return {number_at(node[0], path + "[0]", any), number_at(node[1], path + "[1]", any)};
}

const json *find(const json &root, const std::string &section, const std::string &key) {
    auto s = root.find(section);
    if (s == root.end()) return nullptr;
    auto k = s->find(key);
    return k == s->end() ? nullptr : &*k;
}

}  // namespace

ProtocolConfig parse_config_text(std::string_view text) {
    json root;
    bool blank = true;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    }
    if (blank) {
        root = json::object();
    } else {
        try {
            root = json::parse(text);
        } catch (const json::parse_error &e) {
            throw ConfigError("", fmt::format("malformed configuration: {}", e.what()));
        }
    }
    if (!root.is_object()) throw ConfigError("", "configuration must be an object of sections");

    for (const auto &[section, body] : root.items()) {
        auto it = kSchema.find(section);
        if (it == kSchema.end()) throw ConfigError(section, fmt::format("{}: unknown section", section));
        if (!body.is_object()) throw ConfigError(section, fmt::format("{}: expected an object", section));
        for (const auto &[key, value] : body.items()) {
            if (!it->second.count(key)) {
                const std::string path = section + "." + key;
                throw ConfigError(path, fmt::format("{}: unknown key", path));
            }
        }
    }

    const bool sweep_c = find(root, "sweep", "cooperativity") != nullptr;
    const bool sweep_l = find(root, "sweep", "lambda_t") != nullptr;
    const bool sweep_n = find(root, "sweep", "n0") != nullptr;

    std::vector<std::string> missing;
    auto need = [&](std::initializer_list<const char *> alternatives, bool optional = false) {
        if (optional) return;
        for (const char *k : alternatives) {
            if (find(root, "system", k)) return;
        }
        std::string names;
        for (const char *k : alternatives) {
            if (!names.empty()) names += " or ";
            names += fmt::format("system.{}", k);
        }
        missing.push_back(names);
    };
    need({"omega_m"});
    need({"kappa_lc_over_omega_m"});
    need({"gamma_m", "Q"});
    need({"nbar"});
    need({"n0"}, sweep_n);
    need({"lambda_t"}, sweep_l);
    need({"cooperativity", "g_max"}, sweep_c);
    if (!missing.empty()) {
        std::string list;
        for (const auto &m : missing) list += (list.empty() ? "" : ", ") + m;
        throw ConfigError(missing.front(), fmt::format("missing required keys: {}", list));
    }
    auto exclusive = [&](const char *a, const char *b) {
        if (find(root, "system", a) && find(root, "system", b)) {
            throw ConfigError(fmt::format("system.{}", b), fmt::format("system.{} and system.{} are mutually exclusive", a, b));
        }
    };
    exclusive("gamma_m", "Q");
    exclusive("cooperativity", "g_max");

    ProtocolConfig cfg;
    SystemParams &p = cfg.params;
    p.omega_m = number_at(*find(root, "system", "omega_m"), "system.omega_m", kPositive);
    p.kappa_lc = p.omega_m * number_at(*find(root, "system", "kappa_lc_over_omega_m"),
                                       "system.kappa_lc_over_omega_m", kPositive);
    if (auto *g = find(root, "system", "gamma_m")) {
        p.gamma_m = number_at(*g, "system.gamma_m", kNonnegative);
    } else {
        p.gamma_m = p.omega_m / number_at(*find(root, "system", "Q"), "system.Q", kPositive);
    }
    p.nbar = number_at(*find(root, "system", "nbar"), "system.nbar", kNonnegative);
    if (auto *n0 = find(root, "system", "n0")) p.n0 = number_at(*n0, "system.n0", kNonnegative);
    if (auto *l = find(root, "system", "lambda_t")) p.lambda_t = number_at(*l, "system.lambda_t", kUnit);
    if (auto *g = find(root, "system", "g_max")) {
        p.g_max = number_at(*g, "system.g_max", kNonnegative);
    } else if (auto *c = find(root, "system", "cooperativity")) {
        const double C = number_at(*c, "system.cooperativity", kNonnegative);
        if (C > 0.0 && p.gamma_m == 0.0) {
            throw ConfigError("system.cooperativity", "system.cooperativity needs gamma_m > 0; give g_max instead");
        }
        p.g_max = coupling_for_cooperativity(C, p.kappa_lc, p.gamma_m, p.nbar);
    }

    if (auto *t = find(root, "protocol", "tau1")) {
        cfg.tau1 = number_at(*t, "protocol.tau1", {0.0, kMaxSqueezeTime, true});
    }
    if (auto *t = find(root, "protocol", "tau2")) cfg.tau2 = number_at(*t, "protocol.tau2", kPositive);
    if (auto *u = find(root, "protocol", "upsilon")) cfg.upsilon = number_at(*u, "protocol.upsilon", kPositive);

    if (root.contains("settings")) {
        const json &s = root["settings"];
        for (const char *k : {"alpha1", "alpha2", "beta1", "beta2"}) {
            if (!s.contains(k)) {
                throw ConfigError(fmt::format("settings.{}", k), fmt::format("missing required keys: settings.{}", k));
            }
        }
        MeasurementSettings m;
        m.alpha1 = complex_at(s["alpha1"], "settings.alpha1");
        m.alpha2 = complex_at(s["alpha2"], "settings.alpha2");
        m.beta1 = complex_at(s["beta1"], "settings.beta1");
        m.beta2 = complex_at(s["beta2"], "settings.beta2");
        cfg.settings = m;
    }

    if (sweep_c) {
        cfg.cooperativities = axis_at(*find(root, "sweep", "cooperativity"), "sweep.cooperativity", kPositive);
        if (p.gamma_m == 0.0) {
            throw ConfigError("sweep.cooperativity", "sweep.cooperativity needs gamma_m > 0");
        }
    } else {
        cfg.cooperativities = {p.cooperativity()};
    }
    cfg.lambdas = sweep_l ? axis_at(*find(root, "sweep", "lambda_t"), "sweep.lambda_t", kUnit)
                          : std::vector<double>{p.lambda_t};
    cfg.n0s = sweep_n ? axis_at(*find(root, "sweep", "n0"), "sweep.n0", kNonnegative) : std::vector<double>{p.n0};
    if (sweep_l && !find(root, "system", "lambda_t")) p.lambda_t = cfg.lambdas.front();
    if (sweep_n && !find(root, "system", "n0")) p.n0 = cfg.n0s.front();
    if (sweep_c && !find(root, "system", "cooperativity") && !find(root, "system", "g_max")) {
        p.g_max = coupling_for_cooperativity(cfg.cooperativities.front(), p.kappa_lc, p.gamma_m, p.nbar);
    }
    return cfg;
}

ProtocolConfig parse_config(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", fmt::format("cannot open configuration file '{}'", path));
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string config_hash(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return fmt::format("{:016x}", h);
}

RunMode parse_mode(std::string_view name) {
    if (name == "single") return RunMode::Single;
    if (name == "optimize") return RunMode::Optimize;
    if (name == "sweep") return RunMode::Sweep;
    if (name == "validate") return RunMode::Validate;
    throw InvalidArgument(fmt::format("unknown mode '{}' (expected single, optimize, sweep or validate)", name));
}

std::string_view mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::Single:
            return "single";
        case RunMode::Optimize:
            return "optimize";
        case RunMode::Sweep:
            return "sweep";
        case RunMode::Validate:
            return "validate";
    }
    return "unknown";
}

}  // namespace embell
