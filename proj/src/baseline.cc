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

#include "bandage/baseline.h"

namespace bandage {

bool is_diagonal_pair(const Lattice &lattice, NodeId syndrome, NodeId a, NodeId b) {
    Coord s = lattice.node(syndrome).coord;
    Coord ca = lattice.node(a).coord;
    Coord cb = lattice.node(b).coord;
    return ca.x - s.x == s.x - cb.x && ca.y - s.y == s.y - cb.y;
}

std::vector<Offender> find_weight1_and_bridge(const Lattice &lattice, const NodeStatus &status) {
    std::vector<Offender> out;
    for (NodeId s : lattice.syndrome_nodes()) {
        if (status.disabled(s)) {
            continue;
        }
        std::vector<NodeId> live;
        bool touches_boundary = false;
        for (NodeId d : lattice.neighbors(s)) {
            if (status.enabled(d)) {
                live.push_back(d);
                touches_boundary |= status.on_boundary(d);
            }
        }
        if (touches_boundary) {
            continue;
        }
        if (live.size() == 1) {
            out.push_back({s, OffenderKind::Weight1, live});
        } else if (live.size() == 2 && is_diagonal_pair(lattice, s, live[0], live[1])) {
            out.push_back({s, OffenderKind::Bridge, live});
        }
    }
    return out;
}

NodeStatus adapt_traditional(const Lattice &lattice, const DefectMap &defects, BaselineTrace *trace) {
    NodeStatus status = adapt_bandage(lattice, defects);
    while (true) {
        auto offenders = find_weight1_and_bridge(lattice, status);
        if (offenders.empty()) {
            break;
        }
        for (const Offender &o : offenders) {
            if (status.disabled(o.syndrome)) {
                continue;
            }
            status.disable(o.syndrome, DisableReason::BaselineRule);
            for (NodeId d : o.data) {
                if (status.enabled(d)) {
                    status.disable(d, DisableReason::BaselineRule, true);
                }
            }
        }
        for (NodeId s : lattice.syndrome_nodes()) {
            if (status.enabled(s) && status.weight(lattice, s) == 0) {
                status.disable(s, DisableReason::WeightZero);
            }
        }
        if (trace != nullptr) {
            trace->rounds.push_back(std::move(offenders));
        }
    }
    if (status.num_disabled_data(lattice) == lattice.num_data()) {
        throw AdaptationExhausted("traditional adaptation disabled every data qubit");
    }
    return status;
}

}  // namespace bandage
