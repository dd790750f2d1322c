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

#include "qsi/instances.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qsi/rng.h"

namespace qsi {

const char *to_string(Verdict v) {
    switch (v) {
    case Verdict::Yes:
        return "YES-instance";
    case Verdict::No:
        return "NO-instance";
    case Verdict::Violated:
        return "violated";
    }
    return "?";
}

namespace {

void check_states(const std::vector<PureState> &states) {
    if (states.empty()) {
        throw std::invalid_argument("instance needs at least one state");
    }
    for (const auto &s : states) {
        if (s.dim() != states.front().dim()) {
            throw std::invalid_argument("instance states must share a dimension");
        }
    }
}

bool near_one(double x) { return std::abs(x - 1.0) <= kNormTolerance; }
bool near_zero(double x) { return x <= kNormTolerance; }

}  // namespace

QsiInstance QsiInstance::structured(Partition partition, std::vector<PureState> states) {
    check_states(states);
    if (partition.n() != static_cast<int>(states.size())) {
        throw std::invalid_argument("partition size differs from the number of states");
    }
    const auto &labels = partition.labels();
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (std::size_t j = i + 1; j < states.size(); ++j) {
            double overlap = std::abs(inner(states[i], states[j]));
            bool same = labels[i] == labels[j];
            if (same ? !near_one(overlap) : !near_zero(overlap)) {
                throw std::invalid_argument("states do not realize the partition at pair (" +
                                            std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")");
            }
        }
    }
    return QsiInstance(std::move(partition), std::move(states));
}

QsiInstance QsiInstance::unstructured(std::vector<PureState> states) {
    check_states(states);
    return QsiInstance(std::nullopt, std::move(states));
}

Matrix QsiInstance::gram() const {
    const auto n = static_cast<Eigen::Index>(states_.size());
    Matrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            g(i, j) = inner(states_[static_cast<std::size_t>(i)], states_[static_cast<std::size_t>(j)]);
        }
    }
    return g;
}

QsiInstance build_instance(const Partition &partition, std::size_t dim, const std::optional<Matrix> &rotation) {
    if (dim < partition.block_count()) {
        throw std::invalid_argument("dimension " + std::to_string(dim) + " is smaller than the block count " +
                                    std::to_string(partition.block_count()));
    }
    if (rotation) {
        if (rotation->rows() != static_cast<Eigen::Index>(dim) || !is_unitary(*rotation)) {
            throw std::invalid_argument("rotation is not a unitary of the instance dimension");
        }
    }
    std::vector<PureState> states;
    states.reserve(static_cast<std::size_t>(partition.n()));
    for (int label : partition.labels()) {
        PureState e = PureState::basis(dim, static_cast<std::size_t>(label));
        if (rotation) {
            states.push_back(PureState::normalized(*rotation * e.amps()));
        } else {
            states.push_back(std::move(e));
        }
    }
    return QsiInstance::structured(partition, std::move(states));
}

QsiInstance build_instance(const Partition &partition, std::size_t dim, std::uint64_t rotation_seed) {
    return build_instance(partition, dim, haar_unitary(dim, rotation_seed));
}

Matrix haar_unitary(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) {
        throw std::invalid_argument("unitary dimension must be positive");
    }
    Rng rng(seed);
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix z(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
            double re = rng.normal();
            double im = rng.normal();
            z(i, j) = Complex(re, im) / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < d; ++i) {
        Complex diag = r(i, i);
        double mag = std::abs(diag);
        Complex phase = mag > 0 ? diag / mag : Complex(1.0);
        q.col(i) *= phase;
    }
    return q;
}

std::optional<Partition> infer_partition(const QsiInstance &inst) {
    const auto &states = inst.states();
    std::vector<int> labels(states.size(), -1);
    std::vector<std::size_t> representatives;
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (std::size_t b = 0; b < representatives.size(); ++b) {
            if (near_one(std::abs(inner(states[representatives[b]], states[i])))) {
                labels[i] = static_cast<int>(b);
                break;
            }
        }
        if (labels[i] == -1) {
            labels[i] = static_cast<int>(representatives.size());
            representatives.push_back(i);
        }
    }
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (std::size_t j = i + 1; j < states.size(); ++j) {
            double overlap = std::abs(inner(states[i], states[j]));
            bool ok = labels[i] == labels[j] ? near_one(overlap) : near_zero(overlap);
            if (!ok) {
                return std::nullopt;
            }
        }
    }
    return Partition::from_labels(labels);
}

Verdict verify_promise(const QsiInstance &inst) {
    auto part = infer_partition(inst);
    if (!part) {
        return Verdict::Violated;
    }
    return part->block_count() == 1 ? Verdict::Yes : Verdict::No;
}

QsiInstance relabel(const QsiInstance &inst, const Permutation &tau) {
    if (tau.n() != inst.n()) {
        throw std::invalid_argument("relabeling permutation has the wrong degree");
    }
    std::vector<PureState> states;
    states.reserve(inst.states().size());
    for (int j = 0; j < inst.n(); ++j) {
        states.push_back(inst.states()[static_cast<std::size_t>(tau.image0(j))]);
    }
    if (!inst.partition()) {
        return QsiInstance::unstructured(std::move(states));
    }
    std::vector<int> labels(static_cast<std::size_t>(inst.n()));
    for (int j = 0; j < inst.n(); ++j) {
        labels[static_cast<std::size_t>(j)] = inst.partition()->labels()[static_cast<std::size_t>(tau.image0(j))];
    }
    // Relabel blocks by first appearance so from_labels sees contiguous labels.
    std::vector<int> remap(inst.partition()->block_count(), -1);
    int next = 0;
    for (int &l : labels) {
        if (remap[static_cast<std::size_t>(l)] == -1) {
            remap[static_cast<std::size_t>(l)] = next++;
        }
        l = remap[static_cast<std::size_t>(l)];
    }
    return QsiInstance::structured(Partition::from_labels(labels), std::move(states));
}

Alignment Alignment::from_members(int n, std::vector<int> members) {
    if (n < 1) {
        throw std::invalid_argument("alignment size must be positive");
    }
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
        throw std::invalid_argument("alignment members must be distinct");
    }
    for (int m : members) {
        if (m < 1 || m > n) {
            throw std::invalid_argument("alignment member outside [1, n]");
        }
    }
    Alignment a;
    a.n = n;
    a.r = static_cast<int>(members.size());
    a.members = std::move(members);
    return a;
}

Partition Alignment::partition() const {
    if (r < 1 || r > n - 1) {
        throw std::invalid_argument("alignment must be a proper nonempty subset to form two blocks");
    }
    return Partition::two_block(n, members);
}

Alignment alignment_from_pattern(std::span<const int> pattern, int s) {
    if (pattern.empty() || s < 1) {
        throw std::invalid_argument("pattern must be nonempty and s positive");
    }
    const int k = static_cast<int>(pattern.size());
    std::vector<int> members;
    for (int j = 0; j < s; ++j) {
        for (int i = 0; i < k; ++i) {
            int bit = pattern[static_cast<std::size_t>(i)];
            if (bit != 0 && bit != 1) {
                throw std::invalid_argument("pattern entries must be 0 or 1");
            }
            if (bit == 1) {
                members.push_back(j * k + i + 1);
            }
        }
    }
    return Alignment::from_members(s * k, std::move(members));
}

namespace {

template <typename T>
T require(const nlohmann::json &j, const char *key) {
    if (!j.contains(key)) {
        throw std::invalid_argument(std::string("instance JSON is missing '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("instance JSON field '") + key + "': " + e.what());
    }
}

}  // namespace

QsiInstance instance_from_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw std::invalid_argument("instance JSON must be an object");
    }
    const int n = require<int>(j, "n");
    const int dim = require<int>(j, "dim");
    if (n < 1 || dim < 1) {
        throw std::invalid_argument("instance n and dim must be positive");
    }
    const bool has_partition = j.contains("partition");
    const bool has_states = j.contains("states");
    if (has_partition == has_states) {
        throw std::invalid_argument("instance JSON needs exactly one of 'partition' or 'states'");
    }
    if (has_partition) {
        auto blocks = require<std::vector<std::vector<int>>>(j, "partition");
        Partition part = Partition::from_blocks(n, std::move(blocks));
        if (j.contains("rotation_seed") && !j.at("rotation_seed").is_null()) {
            return build_instance(part, static_cast<std::size_t>(dim), require<std::uint64_t>(j, "rotation_seed"));
        }
        return build_instance(part, static_cast<std::size_t>(dim));
    }
    auto raw = require<std::vector<std::vector<std::vector<double>>>>(j, "states");
    if (static_cast<int>(raw.size()) != n) {
        throw std::invalid_argument("instance JSON has " + std::to_string(raw.size()) + " states, expected " +
                                    std::to_string(n));
    }
    std::vector<PureState> states;
    for (const auto &amps : raw) {
        if (static_cast<int>(amps.size()) != dim) {
            throw std::invalid_argument("instance JSON state has the wrong dimension");
        }
        Vector v(dim);
        for (int i = 0; i < dim; ++i) {
            const auto &c = amps[static_cast<std::size_t>(i)];
            if (c.size() != 2) {
                throw std::invalid_argument("amplitudes must be [re, im] pairs");
            }
            v(i) = Complex(c[0], c[1]);
        }
        states.push_back(PureState::from_amplitudes(std::move(v)));
    }
    return QsiInstance::unstructured(std::move(states));
}

nlohmann::json instance_to_json(const QsiInstance &inst) {
    nlohmann::json j;
    j["n"] = inst.n();
    j["dim"] = inst.dim();
    nlohmann::json states = nlohmann::json::array();
    for (const auto &s : inst.states()) {
        nlohmann::json amps = nlohmann::json::array();
        for (Eigen::Index i = 0; i < s.amps().size(); ++i) {
            amps.push_back({s.amps()(i).real(), s.amps()(i).imag()});
        }
        states.push_back(std::move(amps));
    }
    j["states"] = std::move(states);
    return j;
}

}  // namespace qsi
