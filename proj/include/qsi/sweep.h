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

#ifndef QSI_SWEEP_H
#define QSI_SWEEP_H

#include <cstdint>
#include <string>
#include <vector>

#include "qsi/records.h"

namespace qsi {

enum class SweepTarget { PermSoundness, RcirVsBound, SrsVsM, QBounds };

const char *to_string(SweepTarget t);
/// Accepts "perm-soundness", "rcir-vs-bound", "srs-vs-m", "qbounds".
SweepTarget parse_sweep_target(const std::string &name);

/// Grid ranges are inclusive. A zero `lo` or `hi` means the target's default.
struct SweepOptions {
    SweepTarget target = SweepTarget::PermSoundness;
    int lo = 0;
    int hi = 0;
    /// Monte Carlo trials per grid point (rcir-vs-bound, srs-vs-m); 0 skips
    /// the sampled columns.
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    bool timing = false;
};

struct SweepDefaults {
    int lo;
    int hi;
    int min;
    int max;
};
/// Default and allowed grid range for a target: n for perm-soundness (2..9,
/// up to 10), rcir-vs-bound (2..24) and qbounds (4..40), m for srs-vs-m (1..6,
/// up to 20).
SweepDefaults sweep_defaults(SweepTarget t);

/// One record per grid point in grid order. Row i of a sampled sweep uses
/// seed + i as its Monte Carlo base seed and records it.
std::vector<RunRecord> run_sweep(const SweepOptions &opts);

}  // namespace qsi

#endif  // QSI_SWEEP_H
