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

#ifndef BANDAGE_ADAPTER_H
#define BANDAGE_ADAPTER_H

#include <stdexcept>
#include <string>
#include <vector>

#include "bandage/defects.h"
#include "bandage/lattice.h"

namespace bandage {

enum class DisableReason : uint8_t {
    None,
    Defective,
    UnsafeBoundary,
    FrontierCleaned,
    NeighborOfDefectSyndrome,
    CouplerDefect,
    WeightZero,
    BaselineRule,
};
const char *disable_reason_name(DisableReason r);

/// Which branch of the frontier cleaner disabled a syndrome.
enum class CleanRule : uint8_t {
    None,
    Defective,
    WeightZero,
    TypeMismatch,
    CornerFewerNeighbors,
    CornerTieZ,
};
const char *clean_rule_name(CleanRule r);

enum class Method : uint8_t { Bandage, Traditional };
const char *method_name(Method m);

class AdaptationExhausted : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class ContractViolation : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// Mutable adaptation ledger over a lattice: which nodes are disabled and
/// why, and the current boundary membership of data nodes.
class NodeStatus {
   public:
    NodeStatus() = default;
    explicit NodeStatus(const Lattice &lattice);

    bool disabled(NodeId id) const {
        return disabled_[id] != 0;
    }
    bool enabled(NodeId id) const {
        return disabled_[id] == 0;
    }
    DisableReason reason(NodeId id) const {
        return reason_[id];
    }
    CleanRule clean_rule(NodeId id) const {
        return clean_rule_[id];
    }
    /// Data disabled by internal disabling (or the baseline rules), as
    /// opposed to boundary deformation.
    bool internally_disabled(NodeId id) const {
        return internal_[id] != 0;
    }

    /// Side bitmask of an undisabled boundary data node; 0 otherwise.
    uint8_t sides(NodeId id) const {
        return sides_[id];
    }
    BoundaryClass boundary_class(NodeId id) const {
        return class_from_sides(sides_[id]);
    }
    bool on_boundary(NodeId id) const {
        return sides_[id] != 0;
    }

    void disable(NodeId id, DisableReason why, bool internal = false, CleanRule rule = CleanRule::None);
    void add_sides(NodeId data, uint8_t sides);

    /// Number of undisabled data neighbors of a syndrome.
    int weight(const Lattice &lattice, NodeId syndrome) const;

    size_t num_disabled() const;
    size_t num_disabled_data(const Lattice &lattice) const;

    /// Undisabled boundary data nodes in lexicographic order.
    std::vector<NodeId> boundary_nodes(const Lattice &lattice) const;

    bool operator==(const NodeStatus &) const = default;

   private:
    std::vector<uint8_t> disabled_;
    std::vector<DisableReason> reason_;
    std::vector<CleanRule> clean_rule_;
    std::vector<uint8_t> internal_;
    std::vector<uint8_t> sides_;
};

enum class SafetyFailure : uint8_t { None, Condition1, Condition2, Condition3 };
const char *safety_failure_name(SafetyFailure f);

struct Safety {
    bool safe;
    SafetyFailure failure;
};

/// The undisabled syndrome neighbors of a data node and the couplers to them.
struct Frontier {
    NodeId owner;
    std::vector<NodeId> syndromes;
    std::vector<EdgeId> couplers;
};
Frontier frontier_of(const Lattice &lattice, const NodeStatus &status, NodeId data);

/// Safety of a current boundary data node: defect-free itself, defect-free
/// frontier, and a frontier whose composition matches its boundary class
/// (BX: 2 X + 1 Z, BZ: 2 Z + 1 X, BC: 1 X + 1 Z).
/// Throws ContractViolation when `data` is not on the current boundary.
Safety is_safe(const Lattice &lattice, const DefectMap &defects, const NodeStatus &status, NodeId data);

struct CleanResult {
    std::vector<NodeId> disabled_syndromes;
    std::vector<NodeId> new_boundary;
    BoundaryClass final_type;
};

/// Frontier cleaning after boundary node `n0` was disabled. `type` and
/// `sides` are n0's boundary class and side mask captured before disabling.
CleanResult frontier_cleaner(
    const Lattice &lattice,
    const DefectMap &defects,
    NodeStatus &status,
    NodeId n0,
    BoundaryClass type,
    uint8_t sides);

/// One disable-and-clean event during boundary deformation.
struct DeformationStep {
    int pass;  // 0 is the corner pass
    NodeId node;
    SafetyFailure failure;
    CleanResult cleaned;
};

/// Disables unsafe boundary data nodes (corners first, then repeated passes in
/// lexicographic order) until every boundary data node is safe.
NodeStatus boundary_deformation(
    const Lattice &lattice, const DefectMap &defects, std::vector<DeformationStep> *trace = nullptr);

/// Single pass of internal defect disabling: defective syndromes with their
/// data neighbors, then defective data, then coupler defects, then weight-0
/// syndromes. Weight-1 and bridge syndromes are kept.
void disable_internal_defects(const Lattice &lattice, const DefectMap &defects, NodeStatus &status);

/// boundary_deformation followed by disable_internal_defects.
NodeStatus adapt_bandage(const Lattice &lattice, const DefectMap &defects);

NodeStatus adapt(const Lattice &lattice, const DefectMap &defects, Method method);

}  // namespace bandage

#endif
