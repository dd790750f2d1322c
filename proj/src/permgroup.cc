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

#include "qsi/permgroup.h"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "qsi/errors.h"

namespace qsi {

namespace {

void check_degree(int n) {
    if (n < 1 || n > Permutation::kMaxDegree) {
        throw std::invalid_argument("permutation degree " + std::to_string(n) + " out of range");
    }
}

void check_enumeration_degree(int n, int lowest) {
    if (n < lowest || n > kMaxEnumerationDegree) {
        throw CapExceeded("group enumeration requires " + std::to_string(lowest) + " <= n <= " +
                          std::to_string(kMaxEnumerationDegree) + ", got " + std::to_string(n));
    }
}

}  // namespace

Permutation Permutation::identity(int n) {
    check_degree(n);
    Permutation p;
    p.n_ = n;
    for (int i = 0; i < n; ++i) {
        p.map_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
    }
    return p;
}

Permutation Permutation::from_one_line(std::span<const int> images) {
    const int n = static_cast<int>(images.size());
    check_degree(n);
    Permutation p;
    p.n_ = n;
    std::array<bool, kMaxDegree> seen{};
    for (int i = 0; i < n; ++i) {
        int v = images[static_cast<std::size_t>(i)];
        if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)]) {
            throw std::invalid_argument("one-line notation is not a bijection on [n]");
        }
        seen[static_cast<std::size_t>(v - 1)] = true;
        p.map_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v - 1);
    }
    return p;
}

Permutation Permutation::transposition(int n, int a, int b) {
    Permutation p = identity(n);
    if (a < 1 || a > n || b < 1 || b > n) {
        throw std::invalid_argument("transposition point out of range");
    }
    std::swap(p.map_[static_cast<std::size_t>(a - 1)], p.map_[static_cast<std::size_t>(b - 1)]);
    return p;
}

std::vector<int> Permutation::one_line() const {
    std::vector<int> out(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        out[static_cast<std::size_t>(i)] = map_[static_cast<std::size_t>(i)] + 1;
    }
    return out;
}

bool Permutation::is_identity() const {
    for (int i = 0; i < n_; ++i) {
        if (map_[static_cast<std::size_t>(i)] != i) {
            return false;
        }
    }
    return true;
}

Permutation Permutation::compose(const Permutation &other) const {
    if (other.n_ != n_) {
        throw std::invalid_argument("composing permutations of different degree");
    }
    Permutation p;
    p.n_ = n_;
    for (int i = 0; i < n_; ++i) {
        p.map_[static_cast<std::size_t>(i)] = map_[other.map_[static_cast<std::size_t>(i)]];
    }
    return p;
}

Permutation Permutation::inverse() const {
    Permutation p;
    p.n_ = n_;
    for (int i = 0; i < n_; ++i) {
        p.map_[map_[static_cast<std::size_t>(i)]] = static_cast<std::uint8_t>(i);
    }
    return p;
}

bool Permutation::operator==(const Permutation &o) const {
    return n_ == o.n_ && std::equal(map_.begin(), map_.begin() + n_, o.map_.begin());
}

int sign(const Permutation &p) {
    std::array<bool, Permutation::kMaxDegree> visited{};
    int cycles = 0;
    for (int i = 0; i < p.n(); ++i) {
        if (visited[static_cast<std::size_t>(i)]) {
            continue;
        }
        ++cycles;
        for (int j = i; !visited[static_cast<std::size_t>(j)]; j = p.image0(j)) {
            visited[static_cast<std::size_t>(j)] = true;
        }
    }
    return (p.n() - cycles) % 2 == 0 ? 1 : -1;
}

Partition Partition::from_blocks(int n, std::vector<std::vector<int>> blocks) {
    if (n < 1) {
        throw std::invalid_argument("partition size must be positive");
    }
    Partition part;
    part.n_ = n;
    part.labels_.assign(static_cast<std::size_t>(n), -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) {
            throw std::invalid_argument("partition blocks must be nonempty");
        }
        std::sort(blocks[b].begin(), blocks[b].end());
        for (int i : blocks[b]) {
            if (i < 1 || i > n) {
                throw std::invalid_argument("partition index " + std::to_string(i) + " outside [1, n]");
            }
            int &label = part.labels_[static_cast<std::size_t>(i - 1)];
            if (label != -1) {
                throw std::invalid_argument("partition blocks overlap at index " + std::to_string(i));
            }
            label = static_cast<int>(b);
        }
    }
    if (std::find(part.labels_.begin(), part.labels_.end(), -1) != part.labels_.end()) {
        throw std::invalid_argument("partition blocks do not cover [1, n]");
    }
    part.blocks_ = std::move(blocks);
    return part;
}

Partition Partition::from_labels(std::span<const int> labels) {
    if (labels.empty()) {
        throw std::invalid_argument("partition size must be positive");
    }
    int max_label = *std::max_element(labels.begin(), labels.end());
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(max_label + 1));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0) {
            throw std::invalid_argument("partition labels must be nonnegative");
        }
        blocks[static_cast<std::size_t>(labels[i])].push_back(static_cast<int>(i) + 1);
    }
    return from_blocks(static_cast<int>(labels.size()), std::move(blocks));
}

Partition Partition::two_block(int n, std::span<const int> first_block) {
    std::vector<int> first(first_block.begin(), first_block.end());
    std::vector<int> second;
    for (int i = 1; i <= n; ++i) {
        if (std::find(first.begin(), first.end(), i) == first.end()) {
            second.push_back(i);
        }
    }
    return from_blocks(n, {std::move(first), std::move(second)});
}

Partition Partition::merge(std::size_t a, std::size_t b) const {
    if (a >= blocks_.size() || b >= blocks_.size() || a == b) {
        throw std::invalid_argument("merge needs two distinct existing blocks");
    }
    std::size_t lo = std::min(a, b), hi = std::max(a, b);
    std::vector<std::vector<int>> blocks = blocks_;
    blocks[lo].insert(blocks[lo].end(), blocks[hi].begin(), blocks[hi].end());
    blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(hi));
    return from_blocks(n_, std::move(blocks));
}

void for_each_sym(int n, const std::function<void(const Permutation &)> &visit) {
    check_enumeration_degree(n, 1);
    Permutation p = Permutation::identity(n);
    auto first = p.map_.begin();
    auto last = first + n;
    do {
        visit(p);
    } while (std::next_permutation(first, last));
}

std::vector<Permutation> enumerate_sym(int n) {
    check_enumeration_degree(n, 1);
    std::vector<Permutation> out;
    out.reserve(factorial(n).convert_to<std::size_t>());
    for_each_sym(n, [&](const Permutation &p) { out.push_back(p); });
    return out;
}

std::vector<Permutation> enumerate_alt(int n) {
    check_enumeration_degree(n, 2);
    std::vector<Permutation> out;
    out.reserve(factorial(n).convert_to<std::size_t>() / 2);
    for_each_sym(n, [&](const Permutation &p) {
        if (sign(p) == 1) {
            out.push_back(p);
        }
    });
    return out;
}

Permutation cycle_power(int n, long long j) {
    check_degree(n);
    if (j < 0) {
        throw std::invalid_argument("cycle power exponent must be nonnegative");
    }
    const int shift = static_cast<int>(j % n);
    std::vector<int> images(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        images[static_cast<std::size_t>(i - 1)] = (i - 1 + shift) % n + 1;
    }
    return Permutation::from_one_line(images);
}

bool setwise_stabilizes(const Permutation &p, const Partition &part) {
    if (p.n() != part.n()) {
        throw std::invalid_argument("permutation and partition sizes differ");
    }
    const auto &labels = part.labels();
    for (int i = 0; i < p.n(); ++i) {
        if (labels[static_cast<std::size_t>(i)] != labels[static_cast<std::size_t>(p.image0(i))]) {
            return false;
        }
    }
    return true;
}

BigInt stabilizer_count(const Partition &part, GroupKind group) {
    check_enumeration_degree(part.n(), group == GroupKind::Alt ? 2 : 1);
    std::uint64_t count = 0;
    for_each_sym(part.n(), [&](const Permutation &p) {
        if ((group == GroupKind::Sym || sign(p) == 1) && setwise_stabilizes(p, part)) {
            ++count;
        }
    });
    return BigInt(count);
}

}  // namespace qsi
