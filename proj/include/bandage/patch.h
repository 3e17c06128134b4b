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

#ifndef BANDAGE_PATCH_H
#define BANDAGE_PATCH_H

#include <string>
#include <utility>
#include <vector>

#include "bandage/adapter.h"

namespace bandage {

/// Internally disabled data nodes plus every syndrome node of one basis
/// (disabled ones included), with the original couplers between them.
struct StabilizerSearchGraph {
    Basis basis;
    std::vector<NodeId> nodes;
    std::vector<EdgeId> edges;
    std::vector<uint8_t> contains;  // indexed by NodeId

    bool has(NodeId id) const {
        return contains[id] != 0;
    }
};

StabilizerSearchGraph build_search_graph(const Lattice &lattice, const NodeStatus &status, Basis basis);

/// A (possibly super-) stabilizer: the product of its member gauge checks.
struct Stabilizer {
    Basis basis;
    std::vector<NodeId> members;                            // lexicographic
    std::vector<std::pair<NodeId, int>> support_multiset;  // data -> multiplicity
    std::vector<NodeId> support_mod2;                       // odd multiplicity
    std::vector<NodeId> defect_region;                      // internally disabled data in the component

    size_t weight() const {
        return support_mod2.size();
    }
    bool is_super() const {
        return members.size() >= 2;
    }
    NodeId key() const {
        return members.front();
    }
};

/// One stabilizer per connected component of the search graph that holds at
/// least one undisabled syndrome.
std::vector<Stabilizer> stabilizer_search(
    const Lattice &lattice, const NodeStatus &status, const StabilizerSearchGraph &graph);

struct CommutationViolation {
    size_t x_stabilizer;
    size_t z_stabilizer;
    size_t overlap;
};

struct CommutationReport {
    std::vector<CommutationViolation> violations;

    bool ok() const {
        return violations.empty();
    }
};

/// Checks that every X stabilizer overlaps every Z stabilizer (mod-2
/// supports) on an even number of data qubits.
CommutationReport verify_commutation(const std::vector<Stabilizer> &stabilizers);

/// Stabilizers scheduled jointly. Members are linked through shared
/// internally disabled data in their components, or through anticommuting
/// member gauges.
struct StabilizerGroup {
    std::vector<size_t> stabilizers;
    std::vector<NodeId> defect_region;
    int num_super_x = 0;
    int num_super_z = 0;
    double w_avg = 0;  // over the group's super-stabilizers, both bases
    double w_max = 0;
    double w_avg_x = 0;
    double w_avg_z = 0;
    double w_max_x = 0;
    double w_max_z = 0;
};

std::vector<StabilizerGroup> group_stabilizers(
    const Lattice &lattice, const std::vector<Stabilizer> &stabilizers, const NodeStatus &status);

/// All stabilizers of an adapted lattice plus their groups.
struct Patch {
    std::vector<Stabilizer> stabilizers;  // X block then Z block, each by key
    std::vector<StabilizerGroup> groups;
    std::vector<int> group_of;  // per stabilizer, -1 when measured every cycle
};

Patch build_patch(const Lattice &lattice, const NodeStatus &status);

/// Weights of the super-stabilizers (members >= 2) of a patch.
std::vector<size_t> super_weights(const Patch &patch);
double average_super_weight(const Patch &patch);

/// Whether two gauge checks (syndrome nodes of opposite basis) anticommute on
/// the undisabled data.
bool gauges_anticommute(const Lattice &lattice, const NodeStatus &status, NodeId a, NodeId b);

}  // namespace bandage

#endif
