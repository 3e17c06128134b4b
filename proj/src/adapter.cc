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

#include "bandage/adapter.h"

#include <algorithm>

#include "bandage/baseline.h"

namespace bandage {

const char *disable_reason_name(DisableReason r) {
    switch (r) {
        case DisableReason::None:
            return "none";
        case DisableReason::Defective:
            return "defective";
        case DisableReason::UnsafeBoundary:
            return "unsafe_boundary";
        case DisableReason::FrontierCleaned:
            return "frontier_cleaned";
        case DisableReason::NeighborOfDefectSyndrome:
            return "neighbor_of_defect_syndrome";
        case DisableReason::CouplerDefect:
            return "coupler_defect";
        case DisableReason::WeightZero:
            return "weight_zero";
        case DisableReason::BaselineRule:
            return "baseline_rule";
    }
    return "?";
}

const char *clean_rule_name(CleanRule r) {
    switch (r) {
        case CleanRule::None:
            return "none";
        case CleanRule::Defective:
            return "defective";
        case CleanRule::WeightZero:
            return "weight_zero";
        case CleanRule::TypeMismatch:
            return "type_mismatch";
        case CleanRule::CornerFewerNeighbors:
            return "corner_fewer_undisabled_data_neighbors";
        case CleanRule::CornerTieZ:
            return "corner_tie_disable_z";
    }
    return "?";
}

const char *method_name(Method m) {
    return m == Method::Bandage ? "bandage" : "traditional";
}

const char *safety_failure_name(SafetyFailure f) {
    switch (f) {
        case SafetyFailure::None:
            return "none";
        case SafetyFailure::Condition1:
            return "condition1_defective_node";
        case SafetyFailure::Condition2:
            return "condition2_defective_frontier";
        case SafetyFailure::Condition3:
            return "condition3_frontier_shape";
    }
    return "?";
}

NodeStatus::NodeStatus(const Lattice &lattice)
    : disabled_(lattice.num_nodes(), 0),
      reason_(lattice.num_nodes(), DisableReason::None),
      clean_rule_(lattice.num_nodes(), CleanRule::None),
      internal_(lattice.num_nodes(), 0),
      sides_(lattice.num_nodes(), 0) {
    for (NodeId d : lattice.data_nodes()) {
        sides_[d] = lattice.initial_sides(d);
    }
}

void NodeStatus::disable(NodeId id, DisableReason why, bool internal, CleanRule rule) {
    disabled_[id] = 1;
    reason_[id] = why;
    clean_rule_[id] = rule;
    internal_[id] = internal ? 1 : 0;
    sides_[id] = 0;
}

void NodeStatus::add_sides(NodeId data, uint8_t sides) {
    if (!disabled_[data]) {
        sides_[data] |= sides;
    }
}

int NodeStatus::weight(const Lattice &lattice, NodeId syndrome) const {
    int w = 0;
    for (NodeId d : lattice.neighbors(syndrome)) {
        w += disabled_[d] ? 0 : 1;
    }
    return w;
}

size_t NodeStatus::num_disabled() const {
    return std::count(disabled_.begin(), disabled_.end(), 1);
}

size_t NodeStatus::num_disabled_data(const Lattice &lattice) const {
    size_t n = 0;
    for (NodeId d : lattice.data_nodes()) {
        n += disabled_[d];
    }
    return n;
}

std::vector<NodeId> NodeStatus::boundary_nodes(const Lattice &lattice) const {
    std::vector<NodeId> out;
    for (NodeId d : lattice.data_nodes()) {
        if (!disabled_[d] && sides_[d] != 0) {
            out.push_back(d);
        }
    }
    return out;
}

Frontier frontier_of(const Lattice &lattice, const NodeStatus &status, NodeId data) {
    Frontier f{data, {}, {}};
    auto nbrs = lattice.neighbors(data);
    auto edges = lattice.incident_edges(data);
    for (size_t k = 0; k < nbrs.size(); ++k) {
        if (status.enabled(nbrs[k])) {
            f.syndromes.push_back(nbrs[k]);
            f.couplers.push_back(edges[k]);
        }
    }
    return f;
}

Safety is_safe(const Lattice &lattice, const DefectMap &defects, const NodeStatus &status, NodeId data) {
    if (!lattice.node(data).is_data() || status.disabled(data) || !status.on_boundary(data)) {
        throw ContractViolation("is_safe: " + lattice.node(data).coord.str() + " is not an undisabled boundary data node");
    }
    if (defects.qubit(data)) {
        return {false, SafetyFailure::Condition1};
    }
    Frontier f = frontier_of(lattice, status, data);
    int nx = 0, nz = 0;
    for (size_t k = 0; k < f.syndromes.size(); ++k) {
        if (defects.qubit(f.syndromes[k]) || defects.coupler(f.couplers[k])) {
            return {false, SafetyFailure::Condition2};
        }
        (lattice.node(f.syndromes[k]).basis() == Basis::X ? nx : nz)++;
    }
    bool shape_ok = false;
    switch (status.boundary_class(data)) {
        case BoundaryClass::BX:
            shape_ok = nx == 2 && nz == 1;
            break;
        case BoundaryClass::BZ:
            shape_ok = nx == 1 && nz == 2;
            break;
        case BoundaryClass::BC:
            shape_ok = nx == 1 && nz == 1;
            break;
        case BoundaryClass::Interior:
            break;
    }
    if (!shape_ok) {
        return {false, SafetyFailure::Condition3};
    }
    return {true, SafetyFailure::None};
}

namespace {

std::vector<NodeId> enabled_syndrome_neighbors(const Lattice &lattice, const NodeStatus &status, NodeId data) {
    std::vector<NodeId> out;
    for (NodeId s : lattice.neighbors(data)) {
        if (status.enabled(s)) {
            out.push_back(s);
        }
    }
    std::sort(out.begin(), out.end(), [&](NodeId a, NodeId b) {
        return lattice.node(a).coord < lattice.node(b).coord;
    });
    return out;
}

int enabled_neighbor_count(const Lattice &lattice, const NodeStatus &status, NodeId id) {
    int n = 0;
    for (NodeId v : lattice.neighbors(id)) {
        n += status.enabled(v) ? 1 : 0;
    }
    return n;
}

bool is_x(const Lattice &lattice, NodeId s) {
    return lattice.node(s).kind == NodeKind::SyndromeX;
}

}  // namespace

CleanResult frontier_cleaner(
    const Lattice &lattice,
    const DefectMap &defects,
    NodeStatus &status,
    NodeId n0,
    BoundaryClass type,
    uint8_t sides) {
    CleanResult result{{}, {}, type};
    auto disable = [&](NodeId s, CleanRule rule) {
        status.disable(s, DisableReason::FrontierCleaned, false, rule);
        result.disabled_syndromes.push_back(s);
    };

    for (NodeId s : enabled_syndrome_neighbors(lattice, status, n0)) {
        if (defects.qubit(s)) {
            disable(s, CleanRule::Defective);
        } else if (status.weight(lattice, s) == 0) {
            disable(s, CleanRule::WeightZero);
        } else if (is_x(lattice, s) && type == BoundaryClass::BZ) {
            disable(s, CleanRule::TypeMismatch);
        } else if (!is_x(lattice, s) && type == BoundaryClass::BX) {
            disable(s, CleanRule::TypeMismatch);
        }
    }

    if (type == BoundaryClass::BC) {
        auto remaining = enabled_syndrome_neighbors(lattice, status, n0);
        if (remaining.size() == 2) {
            NodeId a = remaining[0], b = remaining[1];
            int wa = status.weight(lattice, a), wb = status.weight(lattice, b);
            if (wa < wb) {
                disable(a, CleanRule::CornerFewerNeighbors);
            } else if (wb < wa) {
                disable(b, CleanRule::CornerFewerNeighbors);
            } else {
                disable(!is_x(lattice, a) ? a : b, CleanRule::CornerTieZ);
            }
        }
    }

    std::vector<NodeId> cleaned;
    for (NodeId s : lattice.neighbors(n0)) {
        if (status.disabled(s) && status.weight(lattice, s) > 0) {
            cleaned.push_back(s);
        }
    }
    std::sort(cleaned.begin(), cleaned.end(), [&](NodeId a, NodeId b) {
        return lattice.node(a).coord < lattice.node(b).coord;
    });

    BoundaryClass t = type;
    if (t == BoundaryClass::BC) {
        size_t x = 0, z = 0;
        for (NodeId s : cleaned) {
            size_t n = 0;
            for (NodeId d : lattice.neighbors(s)) {
                if (status.enabled(d) && enabled_neighbor_count(lattice, status, d) == 3) {
                    ++n;
                }
            }
            (is_x(lattice, s) ? x : z) += n;
        }
        t = x > z ? BoundaryClass::BZ : BoundaryClass::BX;
    }
    result.final_type = t;

    uint8_t new_sides = t == BoundaryClass::BX ? (sides & kXSides) : (sides & kZSides);
    for (NodeId s : cleaned) {
        bool wrong_type = (is_x(lattice, s) && t == BoundaryClass::BZ) || (!is_x(lattice, s) && t == BoundaryClass::BX);
        if (!wrong_type) {
            continue;
        }
        for (NodeId d : lattice.neighbors(s)) {
            if (status.enabled(d) && (status.sides(d) | new_sides) != status.sides(d)) {
                status.add_sides(d, new_sides);
                result.new_boundary.push_back(d);
            }
        }
    }
    std::sort(result.new_boundary.begin(), result.new_boundary.end(), [&](NodeId a, NodeId b) {
        return lattice.node(a).coord < lattice.node(b).coord;
    });
    return result;
}

NodeStatus boundary_deformation(const Lattice &lattice, const DefectMap &defects, std::vector<DeformationStep> *trace) {
    NodeStatus status(lattice);

    auto visit = [&](NodeId n0, int pass) {
        if (status.disabled(n0) || !status.on_boundary(n0)) {
            return false;
        }
        Safety safety = is_safe(lattice, defects, status, n0);
        if (safety.safe) {
            return false;
        }
        BoundaryClass type = status.boundary_class(n0);
        uint8_t sides = status.sides(n0);
        status.disable(n0, defects.qubit(n0) ? DisableReason::Defective : DisableReason::UnsafeBoundary);
        CleanResult cleaned = frontier_cleaner(lattice, defects, status, n0, type, sides);
        if (trace != nullptr) {
            trace->push_back({pass, n0, safety.failure, std::move(cleaned)});
        }
        return true;
    };

    std::vector<NodeId> corners;
    for (NodeId d : lattice.data_nodes()) {
        if (status.boundary_class(d) == BoundaryClass::BC) {
            corners.push_back(d);
        }
    }
    for (NodeId n0 : corners) {
        visit(n0, 0);
    }

    bool changed = true;
    for (int pass = 1; changed; ++pass) {
        changed = false;
        for (NodeId n0 : status.boundary_nodes(lattice)) {
            changed |= visit(n0, pass);
        }
    }

    if (status.num_disabled_data(lattice) == lattice.num_data()) {
        throw AdaptationExhausted("boundary deformation disabled every data qubit");
    }
    return status;
}

void disable_internal_defects(const Lattice &lattice, const DefectMap &defects, NodeStatus &status) {
    for (NodeId s : lattice.syndrome_nodes()) {
        if (status.enabled(s) && defects.qubit(s)) {
            status.disable(s, DisableReason::Defective);
            for (NodeId d : lattice.neighbors(s)) {
                if (status.enabled(d)) {
                    status.disable(d, DisableReason::NeighborOfDefectSyndrome, true);
                }
            }
        }
    }
    for (NodeId d : lattice.data_nodes()) {
        if (status.enabled(d) && defects.qubit(d)) {
            status.disable(d, DisableReason::Defective, true);
        }
    }
    for (EdgeId e = 0; e < lattice.num_edges(); ++e) {
        const Edge &edge = lattice.edge(e);
        if (defects.coupler(e) && status.enabled(edge.data) && status.enabled(edge.syndrome)) {
            status.disable(edge.data, DisableReason::CouplerDefect, true);
        }
    }
    for (NodeId s : lattice.syndrome_nodes()) {
        if (status.enabled(s) && status.weight(lattice, s) == 0) {
            status.disable(s, DisableReason::WeightZero);
        }
    }
}

NodeStatus adapt_bandage(const Lattice &lattice, const DefectMap &defects) {
    NodeStatus status = boundary_deformation(lattice, defects);
    disable_internal_defects(lattice, defects, status);
    if (status.num_disabled_data(lattice) == lattice.num_data()) {
        throw AdaptationExhausted("internal defect disabling disabled every data qubit");
    }
    return status;
}

NodeStatus adapt(const Lattice &lattice, const DefectMap &defects, Method method) {
    return method == Method::Bandage ? adapt_bandage(lattice, defects) : adapt_traditional(lattice, defects);
}

}  // namespace bandage
