// Copyright 2026 The QSI Lab Authors
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

#ifndef QSI_ACCEPTANCE_H
#define QSI_ACCEPTANCE_H

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace qsi {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    /// Numbers behind the verdict, one short line each.
    std::vector<std::string> details;
    double seconds = 0.0;
    double time_limit_seconds = 0.0;
};

/// Criteria 1 through 9. Each also fails if it overruns its time limit.
/// `on_result` (optional) is called as each criterion finishes.
std::vector<CriterionResult> run_criteria_1_to_9(const std::function<void(const CriterionResult &)> &on_result = {});

/// Criterion 10: the earlier criteria all passed and every sweep target,
/// rerun with the same seed, serializes to identical bytes.
CriterionResult run_criterion_10(const std::vector<CriterionResult> &earlier);

/// "[PASS] 3 ..." followed by indented details.
void print_result(std::ostream &out, const CriterionResult &r, bool verbose);

}  // namespace qsi

#endif  // QSI_ACCEPTANCE_H
