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
#include <string>
#include <vector>

namespace embell {

struct ValidationCheck {
    std::string name;
    double value = 0.0;      ///< measured deviation (or the quantity itself)
    double tolerance = 0.0;  ///< pass threshold for `value`
    bool passed = false;
    std::string detail;
};

/**
 * Cross-checks of the Gaussian code paths against the independent oracles:
 * Fock-space projections, the vectorized Lyapunov solution, the pulse-shaping
 * bound and classical transfer, the qubit POVM, the two-mode-squeezed Bell
 * benchmark, random Cirel'son checks and the full-vs-adiabatic model.
 * Random grids are drawn from `seed`.
 */
std::vector<ValidationCheck> run_validation_suite(std::uint64_t seed);

}  // namespace embell
