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

#include "embell/report.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include "embell/errors.hpp"

namespace embell {

namespace {

using nlohmann::ordered_json;

std::string num(double v) { return fmt::format("{:.10g}", v); }

ordered_json complex_json(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

// JSON has no NaN; failed rows carry null.
ordered_json maybe(double v, bool ok) { return ok ? ordered_json(v) : ordered_json(nullptr); }

}  // namespace

std::string format_result_row(const SweepRow &row) {
    const BellResult &r = row.result;
    if (!row.ok) {
        return fmt::format("{},{},{},nan,nan,nan,nan,false", num(row.cooperativity), num(row.lambda_t), num(row.n0));
    }
    return fmt::format("{},{},{},{},{},{},{},{}", num(row.cooperativity), num(row.lambda_t), num(row.n0), num(r.S),
                       num(r.tau1), num(r.tau2), num(r.upsilon), r.converged ? "true" : "false");
}

CsvResultWriter::CsvResultWriter(const std::string &path, const RunMetadata &meta) : out_(path, std::ios::binary) {
    if (!out_) throw InvalidArgument(fmt::format("cannot write '{}'", path));
    out_ << "# embell " << meta.version << '\n';
    out_ << "# mode " << meta.mode << '\n';
    out_ << "# config_hash " << meta.config_hash << '\n';
    out_ << "# seed " << meta.seed << '\n';
    out_ << kResultColumns << '\n';
    out_.flush();
}

void CsvResultWriter::write(const SweepRow &row) {
    out_ << format_result_row(row) << '\n';
    out_.flush();
}

void write_results_json(const std::string &path, const RunMetadata &meta, const std::vector<SweepRow> &rows) {
    ordered_json doc;
    doc["metadata"] = {{"program", "embell"},
                       {"version", meta.version},
                       {"mode", meta.mode},
                       {"config_hash", meta.config_hash},
                       {"seed", meta.seed}};
    doc["rows"] = ordered_json::array();
    for (const auto &row : rows) {
        const BellResult &r = row.result;
        ordered_json j;
        j["C"] = row.cooperativity;
        j["lambda_t"] = row.lambda_t;
        j["n0"] = row.n0;
        j["S"] = maybe(r.S, row.ok);
        j["tau1_Gamma"] = maybe(r.tau1, row.ok);
        j["tau2_Gamma"] = maybe(r.tau2, row.ok);
        j["upsilon"] = maybe(r.upsilon, row.ok);
        j["converged"] = row.ok && r.converged;
        if (row.ok) {
            j["E"] = {{r.E[0][0], r.E[0][1]}, {r.E[1][0], r.E[1][1]}};
            j["settings"] = {{"alpha1", complex_json(r.settings.alpha1)},
                             {"alpha2", complex_json(r.settings.alpha2)},
                             {"beta1", complex_json(r.settings.beta1)},
                             {"beta2", complex_json(r.settings.beta2)}};
        } else {
            j["error"] = row.error;
        }
        doc["rows"].push_back(std::move(j));
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument(fmt::format("cannot write '{}'", path));
    out << doc.dump(2) << '\n';
}

}  // namespace embell
