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

#ifndef BANDAGE_LATTICE_H
#define BANDAGE_LATTICE_H

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bandage {

/// Position on the doubled grid. Data qubits sit at odd (x, y), syndrome
/// qubits at even (x, y). x grows to the right, y grows downward.
struct Coord {
    int x = 0;
    int y = 0;

    auto operator<=>(const Coord &) const = default;
    std::string str() const;
};

using NodeId = uint32_t;
using EdgeId = uint32_t;
inline constexpr NodeId kNoNode = UINT32_MAX;

enum class NodeKind : uint8_t { Data, SyndromeX, SyndromeZ };
enum class Basis : uint8_t { X, Z };

inline Basis opposite(Basis b) {
    return b == Basis::X ? Basis::Z : Basis::X;
}
char basis_char(Basis b);

enum class BoundaryClass : uint8_t { Interior, BX, BZ, BC };
const char *boundary_class_name(BoundaryClass c);

/// Which original sides of the patch a boundary data node belongs to.
/// Top/bottom are X boundaries, left/right are Z boundaries.
enum Side : uint8_t {
    kSideTop = 1,
    kSideBottom = 2,
    kSideLeft = 4,
    kSideRight = 8,
};
inline constexpr uint8_t kXSides = kSideTop | kSideBottom;
inline constexpr uint8_t kZSides = kSideLeft | kSideRight;

BoundaryClass class_from_sides(uint8_t sides);

struct Node {
    Coord coord;
    NodeKind kind;

    bool is_data() const {
        return kind == NodeKind::Data;
    }
    bool is_syndrome() const {
        return kind != NodeKind::Data;
    }
    /// Basis of a syndrome node. Undefined for data nodes.
    Basis basis() const {
        return kind == NodeKind::SyndromeX ? Basis::X : Basis::Z;
    }
};

/// A coupler between one data node and one diagonally adjacent syndrome node.
struct Edge {
    NodeId data;
    NodeId syndrome;
};

/// Immutable defect-free rotated surface-code lattice of size L (L x L data
/// qubits, L^2 - 1 syndrome qubits).
class Lattice {
   public:
    /// Throws std::invalid_argument for even or non-positive L.
    explicit Lattice(int size);

    int size() const {
        return size_;
    }
    size_t num_nodes() const {
        return nodes_.size();
    }
    size_t num_edges() const {
        return edges_.size();
    }
    size_t num_data() const {
        return data_.size();
    }
    size_t num_syndromes() const {
        return syndromes_.size();
    }

    const Node &node(NodeId id) const {
        return nodes_[id];
    }
    const Edge &edge(EdgeId id) const {
        return edges_[id];
    }
    std::span<const Node> nodes() const {
        return nodes_;
    }
    std::span<const Edge> edges() const {
        return edges_;
    }

    /// Data node ids in lexicographic (x, y) order.
    std::span<const NodeId> data_nodes() const {
        return data_;
    }
    /// Syndrome node ids in lexicographic (x, y) order.
    std::span<const NodeId> syndrome_nodes() const {
        return syndromes_;
    }

    /// Neighbors of a node: syndromes for a data node, data for a syndrome.
    std::span<const NodeId> neighbors(NodeId id) const {
        return adjacency_[id];
    }
    /// Incident edges, parallel to neighbors().
    std::span<const EdgeId> incident_edges(NodeId id) const {
        return incident_[id];
    }

    std::optional<NodeId> find(Coord c) const;
    NodeId at(Coord c) const;  // throws std::out_of_range
    std::optional<EdgeId> find_edge(NodeId a, NodeId b) const;

    /// Original sides (bitmask of Side) of a data node; 0 for interior.
    uint8_t initial_sides(NodeId data) const;

    /// Data node at the given offset from a syndrome (dx, dy in {-1, +1}), or
    /// kNoNode when absent.
    NodeId diagonal(NodeId syndrome, int dx, int dy) const;

   private:
    int size_;
    int stride_;
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::vector<NodeId> data_;
    std::vector<NodeId> syndromes_;
    std::vector<std::vector<NodeId>> adjacency_;
    std::vector<std::vector<EdgeId>> incident_;
    std::vector<NodeId> grid_;
};

/// Syndrome type at an even grid position. (x + y) / 2 even is Z, odd is X;
/// this puts the X neighbor of the top-left corner data qubit above it.
NodeKind syndrome_kind_at(Coord c);

}  // namespace bandage

#endif
