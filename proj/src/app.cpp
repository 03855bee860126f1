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

#include "embell/app.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "embell/errors.hpp"
#include "embell/pulse_shaping.hpp"
#include "embell/report.hpp"
#include "embell/validation.hpp"

namespace embell {

namespace fs = std::filesystem;

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", fmt::format("cannot open configuration file '{}'", path));
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_error(const fs::path &dir, const char *type, const std::string &message, const std::string &key_path,
                 int code) {
    ordered_json doc;
    doc["error"] = {{"type", type}, {"message", message}, {"key_path", key_path}, {"exit_code", code}};
    std::ofstream out(dir / "error.json", std::ios::binary);
    out << doc.dump(2) << '\n';
}

int run_validate(const RunConfig &config, const fs::path &dir, std::ostream &log) {
    const auto checks = run_validation_suite(config.seed);
    std::ofstream csv(dir / "validation.csv", std::ios::binary);
    csv << "# embell " << version() << '\n' << "# mode validate\n" << "# seed " << config.seed << '\n';
    csv << "check,value,tolerance,passed\n";
    ordered_json doc;
    doc["metadata"] = {{"program", "embell"}, {"version", version()}, {"mode", "validate"}, {"seed", config.seed}};
    doc["checks"] = ordered_json::array();
    bool all = true;
    for (const auto &c : checks) {
        all = all && c.passed;
        csv << fmt::format("\"{}\",{:.6g},{:.6g},{}\n", c.name, c.value, c.tolerance, c.passed ? "true" : "false");
        doc["checks"].push_back(
            {{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"passed", c.passed}, {"detail", c.detail}});
        log << fmt::format("{} {} (value {:.3g}, tolerance {:.3g}){}\n", c.passed ? "PASS" : "FAIL", c.name, c.value,
                           c.tolerance, c.detail.empty() ? "" : " " + c.detail);
    }
    std::ofstream(dir / "validation.json", std::ios::binary) << doc.dump(2) << '\n';
    return all ? kExitOk : kExitFailure;
}

SweepRow single_row(const ProtocolConfig &cfg, const BellResult &r) {
    SweepRow row;
    row.cooperativity = cfg.params.cooperativity();
    row.lambda_t = cfg.params.lambda_t;
    row.n0 = cfg.params.n0;
    row.result = r;
    row.ok = true;
    return row;
}

void write_schedule(const fs::path &dir, const ProtocolConfig &cfg, const BellResult &r) {
    const double gamma = cfg.params.gamma_max();
    if (gamma <= 0.0) return;
    const double t2 = r.tau2 / gamma;
    std::ofstream out(dir / "schedule.csv", std::ios::binary);
    write_schedule_csv(out, optimal_shapes(t2, solve_M(gamma, t2)));
}

}  // namespace

std::string version() {
#ifdef EMBELL_VERSION
    return EMBELL_VERSION;
#else
    return "unknown";
#endif
}

std::string resolve_out_dir(const std::string &explicit_dir) {
    if (!explicit_dir.empty()) return explicit_dir;
    if (const char *env = std::getenv("EMBELL_OUT_DIR"); env && *env) return env;
    return ".";
}

int run(const RunConfig &config, std::ostream &log) {
    const fs::path dir = resolve_out_dir(config.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        log << fmt::format("error: cannot create output directory '{}': {}\n", dir.string(), ec.message());
        return kExitInternalError;
    }

    try {
        if (config.mode == RunMode::Validate) return run_validate(config, dir, log);

        const std::string text = read_file(config.config_path);
        const ProtocolConfig cfg = parse_config_text(text);
        RunMetadata meta{version(), config_hash(text), std::string(mode_name(config.mode)), config.seed};

        if (config.mode == RunMode::Sweep) {
            CsvResultWriter writer((dir / "result.csv").string(), meta);
            const auto rows = sweep(
                cfg, config.threads,
                [&](const SweepRow &row) {
                    writer.write(row);
                    log << format_result_row(row) << (row.ok ? "" : "  # " + row.error) << '\n';
                });
            write_results_json((dir / "result.json").string(), meta, rows);
            for (const auto &row : rows) {
                if (!row.ok) return kExitFailure;
            }
            return kExitOk;
        }

        BellResult r;
        if (config.mode == RunMode::Optimize) {
            r = optimize_protocol(cfg);
        } else {
            const ProtocolRun run = run_protocol(cfg);
            r = cfg.settings ? evaluate_settings(run.ab, *cfg.settings) : optimize_settings(run.ab, 12);
            r.tau1 = cfg.tau1;
            r.tau2 = cfg.tau2;
            r.upsilon = cfg.upsilon;
        }
        const SweepRow row = single_row(cfg, r);
        CsvResultWriter writer((dir / "result.csv").string(), meta);
        writer.write(row);
        write_results_json((dir / "result.json").string(), meta, {row});
        write_schedule(dir, cfg, r);
        log << kResultColumns << '\n' << format_result_row(row) << '\n';
        return kExitOk;
    } catch (const ConfigError &e) {
        write_error(dir, "ConfigError", e.what(), e.key_path(), kExitConfigError);
        log << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const InvalidArgument &e) {
        write_error(dir, "InvalidArgument", e.what(), "", kExitConfigError);
        log << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const NumericalError &e) {
        write_error(dir, "NumericalError", e.what(), "", kExitNumericalError);
        log << "error: " << e.what() << '\n';
        return kExitNumericalError;
    } catch (const std::exception &e) {
        write_error(dir, "InternalError", e.what(), "", kExitInternalError);
        log << "error: " << e.what() << '\n';
        return kExitInternalError;
    }
}

}  // namespace embell
