// Copyright 2026 The Bandage Authors
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

#ifndef BANDAGE_LOGICAL_H
#define BANDAGE_LOGICAL_H

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bandage/patch.h"

namespace bandage {

class NoLogicalPath : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Undisabled data nodes plus undisabled syndromes of the opposite basis.
/// X operators run top to bottom, Z operators left to right.
struct LogicalSearchGraph {
    Basis basis;
    std::vector<NodeId> nodes;
    std::vector<EdgeId> edges;
    std::vector<uint8_t> contains;

    bool has(NodeId id) const {
        return contains[id] != 0;
    }
};

LogicalSearchGraph build_logical_graph(const Lattice &lattice, const NodeStatus &status, Basis basis);

struct LogicalOperator {
    Basis basis;
    std::vector<NodeId> data_support;  // ordered along the path

    size_t weight() const {
        return data_support.size();
    }
    NodeId front() const {
        return data_support.front();
    }
    NodeId back() const {
        return data_support.back();
    }
};

/// Data qubits absent from every `basis` stabilizer's mod-2 support. A
/// `basis` logical through one of them would anticommute with a single-qubit
/// error no check can see, so logical placement avoids them.
std::vector<NodeId> blind_qubits(const Lattice &lattice, const NodeStatus &status, const Patch &patch, Basis basis);

/// Minimum-weight boundary-to-boundary operator. Among equal-weight paths the
/// lexicographically smallest coordinate sequence (from the top or left end)
/// wins. Throws NoLogicalPath if the boundaries are disconnected.
LogicalOperator find_logical(const Lattice &lattice, const NodeStatus &status, Basis basis, const Patch &patch);
LogicalOperator find_logical(const Lattice &lattice, const NodeStatus &status, Basis basis);

/// Shortest undetectable `basis`-type error string between the two opposing
/// boundaries. Vertices are the opposite-basis stabilizers (a super-stabilizer
/// is one vertex, so a string may cross it through any two of its gauges)
/// plus one virtual vertex per boundary; each undisabled data qubit is an
/// edge between the stabilizers that hold it in their mod-2 support.
struct Distances {
    size_t dx;
    size_t dz;
};
Distances code_distances(const Lattice &lattice, const NodeStatus &status, const Patch &patch);
Distances code_distances(const Lattice &lattice, const NodeStatus &status);

/// Minimum weight of a `basis`-type logical error string (see Distances).
size_t logical_distance(const Lattice &lattice, const NodeStatus &status, Basis basis, const Patch &patch);

struct LogicalCount {
    size_t weight;
    uint64_t count;
    bool lower_bound;  // count hit the cap
};

/// Number of distinct minimum-weight `basis`-type logical error strings
/// (deduplicated by data support), on the same graph as code_distances.
LogicalCount count_min_weight_logicals(
    const Lattice &lattice, const NodeStatus &status, Basis basis, const Patch &patch, uint64_t cap = UINT64_MAX);
LogicalCount count_min_weight_logicals(
    const Lattice &lattice, const NodeStatus &status, Basis basis, uint64_t cap = UINT64_MAX);

struct LogicalReport {
    std::vector<std::string> problems;

    bool ok() const {
        return problems.empty();
    }
};

/// Even overlap with every opposite-basis stabilizer, path endpoints on the
/// right boundaries, and no support on blind qubits.
LogicalReport verify_logical(
    const Lattice &lattice, const NodeStatus &status, const LogicalOperator &op, const Patch &patch);

/// The X and Z operators overlap on an odd number of data qubits.
LogicalReport verify_logical_pair(const LogicalOperator &x_op, const LogicalOperator &z_op);

struct LogicalPair {
    LogicalOperator x;
    LogicalOperator z;

    const LogicalOperator &operator[](Basis b) const {
        return b == Basis::X ? x : z;
    }
};

/// Both operators, each verified and checked against the other. Throws
/// NoLogicalPath when either is missing or fails verification, i.e. the
/// adapted device no longer encodes a qubit.
LogicalPair place_logicals(const Lattice &lattice, const NodeStatus &status, const Patch &patch);

}  // namespace bandage

#endif
