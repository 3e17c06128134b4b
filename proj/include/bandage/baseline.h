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

#ifndef BANDAGE_BASELINE_H
#define BANDAGE_BASELINE_H

#include <utility>
#include <vector>

#include "bandage/adapter.h"

namespace bandage {

// Traditional super-stabilizer adaptation: weight-1 and bridge syndromes are
// removed iteratively. Offenders touching a boundary data qubit are left
// alone, so the boundary found by deformation never moves.

enum class OffenderKind : uint8_t { Weight1, Bridge };

struct Offender {
    NodeId syndrome;
    OffenderKind kind;
    /// The undisabled data neighbors (one for weight-1, the diagonal pair
    /// for a bridge).
    std::vector<NodeId> data;
};

/// Whether the two data nodes sit on the same diagonal through `syndrome`.
bool is_diagonal_pair(const Lattice &lattice, NodeId syndrome, NodeId a, NodeId b);

/// Weight-1 and bridge syndromes not adjacent to any boundary data node, in
/// lexicographic order.
std::vector<Offender> find_weight1_and_bridge(const Lattice &lattice, const NodeStatus &status);

struct BaselineTrace {
    /// Offenders removed per iteration.
    std::vector<std::vector<Offender>> rounds;
};

NodeStatus adapt_traditional(const Lattice &lattice, const DefectMap &defects, BaselineTrace *trace = nullptr);

}  // namespace bandage

#endif
