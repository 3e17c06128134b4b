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

#include "bandage/lattice.h"

#include <algorithm>
#include <stdexcept>

namespace bandage {

std::string Coord::str() const {
    return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
}

char basis_char(Basis b) {
    return b == Basis::X ? 'X' : 'Z';
}

const char *boundary_class_name(BoundaryClass c) {
    switch (c) {
        case BoundaryClass::Interior:
            return "interior";
        case BoundaryClass::BX:
            return "BX";
        case BoundaryClass::BZ:
            return "BZ";
        case BoundaryClass::BC:
            return "BC";
    }
    return "?";
}

BoundaryClass class_from_sides(uint8_t sides) {
    bool x = (sides & kXSides) != 0;
    bool z = (sides & kZSides) != 0;
    if (x && z) {
        return BoundaryClass::BC;
    }
    if (x) {
        return BoundaryClass::BX;
    }
    if (z) {
        return BoundaryClass::BZ;
    }
    return BoundaryClass::Interior;
}

NodeKind syndrome_kind_at(Coord c) {
    return ((c.x + c.y) / 2) % 2 == 0 ? NodeKind::SyndromeZ : NodeKind::SyndromeX;
}

namespace {

// Whether an even grid position hosts a syndrome qubit. Interior positions
// always do; weight-2 positions on the top/bottom rows only for X type and
// on the left/right columns only for Z type.
bool is_syndrome_site(Coord c, int L) {
    int hi = 2 * L;
    if (c.x < 0 || c.y < 0 || c.x > hi || c.y > hi) {
        return false;
    }
    bool x_edge = c.x == 0 || c.x == hi;
    bool y_edge = c.y == 0 || c.y == hi;
    if (x_edge && y_edge) {
        return false;
    }
    NodeKind k = syndrome_kind_at(c);
    if (y_edge) {
        return k == NodeKind::SyndromeX;
    }
    if (x_edge) {
        return k == NodeKind::SyndromeZ;
    }
    return true;
}

}  // namespace

Lattice::Lattice(int size) : size_(size), stride_(2 * size + 1) {
    if (size < 1 || size % 2 == 0) {
        throw std::invalid_argument(
            "code size must be a positive odd integer, got " + std::to_string(size) +
            " (even sizes have no consistent corner convention)");
    }
    grid_.assign(static_cast<size_t>(stride_) * stride_, kNoNode);
    for (int x = 0; x < stride_; ++x) {
        for (int y = 0; y < stride_; ++y) {
            Coord c{x, y};
            NodeKind kind;
            if (x % 2 == 1 && y % 2 == 1) {
                kind = NodeKind::Data;
            } else if (x % 2 == 0 && y % 2 == 0 && is_syndrome_site(c, size)) {
                kind = syndrome_kind_at(c);
            } else {
                continue;
            }
            NodeId id = static_cast<NodeId>(nodes_.size());
            nodes_.push_back({c, kind});
            grid_[x * stride_ + y] = id;
            (kind == NodeKind::Data ? data_ : syndromes_).push_back(id);
        }
    }
    adjacency_.resize(nodes_.size());
    incident_.resize(nodes_.size());
    for (NodeId s : syndromes_) {
        for (int dx : {-1, 1}) {
            for (int dy : {-1, 1}) {
                NodeId d = diagonal(s, dx, dy);
                if (d == kNoNode) {
                    continue;
                }
                EdgeId e = static_cast<EdgeId>(edges_.size());
                edges_.push_back({d, s});
                adjacency_[s].push_back(d);
                incident_[s].push_back(e);
                adjacency_[d].push_back(s);
                incident_[d].push_back(e);
            }
        }
    }
}

std::optional<NodeId> Lattice::find(Coord c) const {
    if (c.x < 0 || c.y < 0 || c.x >= stride_ || c.y >= stride_) {
        return std::nullopt;
    }
    NodeId id = grid_[c.x * stride_ + c.y];
    if (id == kNoNode) {
        return std::nullopt;
    }
    return id;
}

NodeId Lattice::at(Coord c) const {
    auto id = find(c);
    if (!id) {
        throw std::out_of_range("no qubit at " + c.str() + " in an L=" + std::to_string(size_) + " lattice");
    }
    return *id;
}

std::optional<EdgeId> Lattice::find_edge(NodeId a, NodeId b) const {
    const auto &adj = adjacency_[a];
    for (size_t k = 0; k < adj.size(); ++k) {
        if (adj[k] == b) {
            return incident_[a][k];
        }
    }
    return std::nullopt;
}

uint8_t Lattice::initial_sides(NodeId data) const {
    Coord c = nodes_[data].coord;
    uint8_t s = 0;
    if (c.y == 1) {
        s |= kSideTop;
    }
    if (c.y == 2 * size_ - 1) {
        s |= kSideBottom;
    }
    if (c.x == 1) {
        s |= kSideLeft;
    }
    if (c.x == 2 * size_ - 1) {
        s |= kSideRight;
    }
    return s;
}

NodeId Lattice::diagonal(NodeId syndrome, int dx, int dy) const {
    Coord c = nodes_[syndrome].coord;
    auto id = find({c.x + dx, c.y + dy});
    return id ? *id : kNoNode;
}

}  // namespace bandage
