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

#ifndef QSI_PERMGROUP_H
#define QSI_PERMGROUP_H

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qsi/exact.h"

namespace qsi {

/// Largest n accepted by the S_n / A_n enumerators (10! = 3,628,800).
inline constexpr int kMaxEnumerationDegree = 10;

/// A bijection on [n] = {1, ..., n}. Storage is 0-based and inline so that
/// enumerating millions of permutations stays allocation-free.
class Permutation {
  public:
    static constexpr int kMaxDegree = 32;

    static Permutation identity(int n);
    /// One-line notation with 1-based images; throws unless it is a bijection.
    static Permutation from_one_line(std::span<const int> images);
    /// The transposition exchanging 1-based positions a and b.
    static Permutation transposition(int n, int a, int b);

    int n() const { return n_; }
    /// Image of the 1-based point i.
    int operator()(int i) const { return map_[static_cast<std::size_t>(i - 1)] + 1; }
    /// 0-based image of 0-based point i.
    int image0(int i) const { return map_[static_cast<std::size_t>(i)]; }
    std::vector<int> one_line() const;
    bool is_identity() const;

    /// (this o other)(i) = this(other(i)).
    Permutation compose(const Permutation &other) const;
    Permutation inverse() const;

    bool operator==(const Permutation &o) const;

  private:
    friend void for_each_sym(int n, const std::function<void(const Permutation &)> &visit);
    Permutation() = default;
    int n_ = 0;
    std::array<std::uint8_t, kMaxDegree> map_{};
};

int sign(const Permutation &p);

/// Disjoint nonempty blocks of 1-based indices covering [n]. Block order is
/// significant (block i is the i-th label).
class Partition {
  public:
    static Partition from_blocks(int n, std::vector<std::vector<int>> blocks);
    /// labels[i] is the block of 1-based index i + 1; labels must use every
    /// value in 0..max contiguously.
    static Partition from_labels(std::span<const int> labels);
    static Partition two_block(int n, std::span<const int> first_block);

    int n() const { return n_; }
    std::size_t block_count() const { return blocks_.size(); }
    const std::vector<std::vector<int>> &blocks() const { return blocks_; }
    /// Block label of each 0-based position.
    const std::vector<int> &labels() const { return labels_; }
    /// Union of blocks a and b (0-based block numbers), placed at min(a, b).
    Partition merge(std::size_t a, std::size_t b) const;

  private:
    Partition() = default;
    int n_ = 0;
    std::vector<std::vector<int>> blocks_;
    std::vector<int> labels_;
};

/// Lexicographic order of one-line notation; the identity comes first.
std::vector<Permutation> enumerate_sym(int n);
/// Even members of enumerate_sym(n), order preserved.
std::vector<Permutation> enumerate_alt(int n);
/// Visits S_n in the order of enumerate_sym without materializing it.
void for_each_sym(int n, const std::function<void(const Permutation &)> &visit);

/// sigma_c^(j mod n), where sigma_c(i) = i + 1 and sigma_c(n) = 1.
Permutation cycle_power(int n, long long j);

bool setwise_stabilizes(const Permutation &p, const Partition &part);

enum class GroupKind { Sym, Alt };

/// Number of elements of S_n (or A_n) mapping every block into itself,
/// counted by enumeration.
BigInt stabilizer_count(const Partition &part, GroupKind group);

}  // namespace qsi

#endif  // QSI_PERMGROUP_H
