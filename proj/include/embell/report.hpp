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

#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "embell/protocol.hpp"

namespace embell {

struct RunMetadata {
    std::string version;
    std::string config_hash;
    std::string mode;
    std::uint64_t seed = 0;
};

/// Column names of result tables, in order.
inline constexpr const char *kResultColumns = "C,lambda_t,n0,S,tau1_Gamma,tau2_Gamma,upsilon,converged";

std::string format_result_row(const SweepRow &row);

/**
 * Result table: '#'-prefixed metadata lines, the header, then one line per
 * row. Each row is flushed as it is written so an interrupted sweep leaves a
 * readable prefix.
 */
class CsvResultWriter {
   public:
    CsvResultWriter(const std::string &path, const RunMetadata &meta);
    void write(const SweepRow &row);

   private:
    std::ofstream out_;
};

/// JSON with "metadata" and "rows" (each row also carries settings, E and any error).
void write_results_json(const std::string &path, const RunMetadata &meta, const std::vector<SweepRow> &rows);

}  // namespace embell
