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

#ifndef QSI_INSTANCES_H
#define QSI_INSTANCES_H

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "qsi/permgroup.h"
#include "qsi/qmath.h"

namespace qsi {

enum class Verdict { Yes, No, Violated };

const char *to_string(Verdict v);

/// n pure states of a common dimension, optionally carrying the block
/// partition that certifies the equal-or-orthogonal promise.
class QsiInstance {
  public:
    /// Checks that the states realize the partition: |<psi_i|psi_j>| is 1
    /// within 1e-9 inside a block and 0 within 1e-9 across blocks.
    static QsiInstance structured(Partition partition, std::vector<PureState> states);
    /// Arbitrary states; the promise is not checked. Only the EQUAL formula and
    /// circuit accept these for anything meaningful.
    static QsiInstance unstructured(std::vector<PureState> states);

    int n() const { return static_cast<int>(states_.size()); }
    std::size_t dim() const { return states_.front().dim(); }
    const std::vector<PureState> &states() const { return states_; }
    const std::optional<Partition> &partition() const { return partition_; }

    /// gram(i, j) = <psi_i|psi_j>.
    Matrix gram() const;

  private:
    QsiInstance(std::optional<Partition> partition, std::vector<PureState> states)
        : partition_(std::move(partition)), states_(std::move(states)) {}
    std::optional<Partition> partition_;
    std::vector<PureState> states_;
};

/// Block b gets the basis state e_b, then `rotation` (if any) is applied to
/// every state. Throws if dim < block count or rotation is not unitary.
QsiInstance build_instance(const Partition &partition, std::size_t dim,
                           const std::optional<Matrix> &rotation = std::nullopt);
/// Same, rotated by haar_unitary(dim, rotation_seed).
QsiInstance build_instance(const Partition &partition, std::size_t dim, std::uint64_t rotation_seed);

/// Haar-distributed unitary from a seeded complex Ginibre matrix via QR with
/// the diagonal phases fixed. Identical seeds give identical matrices.
Matrix haar_unitary(std::size_t dim, std::uint64_t seed);

Verdict verify_promise(const QsiInstance &inst);

/// Recovers the block structure from the states themselves (blocks ordered by
/// first index). Empty when the promise is violated.
std::optional<Partition> infer_partition(const QsiInstance &inst);

/// The relabeled list (phi_1, ..., phi_n) with phi_j = psi_tau(j).
QsiInstance relabel(const QsiInstance &inst, const Permutation &tau);

/// Placement of the I_1 block on the cycle 1..n (complement is I_2).
struct Alignment {
    int n = 0;
    int r = 0;
    std::vector<int> members;  // sorted, 1-based

    static Alignment from_members(int n, std::vector<int> members);
    /// {I_1, I_2}; requires 1 <= r <= n - 1.
    Partition partition() const;
};

/// Repeats the k-bit pattern s times: index j*k + i is in I_1 iff bit i is 1.
Alignment alignment_from_pattern(std::span<const int> pattern, int s);

/// Parses either {"n", "dim", "partition", "rotation_seed"?} or
/// {"n", "dim", "states": [[[re, im], ...], ...]}. Throws std::invalid_argument.
QsiInstance instance_from_json(const nlohmann::json &j);
nlohmann::json instance_to_json(const QsiInstance &inst);

}  // namespace qsi

#endif  // QSI_INSTANCES_H
