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

#ifndef QSI_RNG_H
#define QSI_RNG_H

#include <cstdint>
#include <random>

namespace qsi {

/// Seedable mt19937_64 with hand-written draws. The standard distribution
/// classes are implementation-defined, so they are avoided to keep transcripts
/// identical across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on {0, ..., bound - 1}; bound must be positive.
    std::uint64_t below(std::uint64_t bound);
    bool bernoulli(double p) { return uniform() < p; }
    /// Standard normal via Box-Muller.
    double normal();

  private:
    std::mt19937_64 engine_;
};

/// A fresh seed from std::random_device, for runs where the user gave none.
std::uint64_t entropy_seed();

}  // namespace qsi

#endif  // QSI_RNG_H
