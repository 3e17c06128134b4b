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

#include "bandage/logical.h"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

namespace bandage {

namespace {

constexpr int kUnreached = std::numeric_limits<int>::max();

NodeKind opposite_kind(Basis b) {
    return b == Basis::X ? NodeKind::SyndromeZ : NodeKind::SyndromeX;
}

uint8_t source_side(Basis b) {
    return b == Basis::X ? kSideTop : kSideLeft;
}

uint8_t target_side(Basis b) {
    return b == Basis::X ? kSideBottom : kSideRight;
}

// Data-level view of the logical search graph: two data nodes are adjacent
// when they share an undisabled opposite-basis syndrome.
struct PathGraph {
    const Lattice &lattice;
    std::vector<uint8_t> usable;
    std::vector<std::vector<NodeId>> adj;
    std::vector<NodeId> sources;
    std::vector<NodeId> targets;
};

PathGraph make_path_graph(const Lattice &lattice, const NodeStatus &status, Basis basis, const Patch &patch) {
    PathGraph g{lattice, std::vector<uint8_t>(lattice.num_nodes(), 0), std::vector<std::vector<NodeId>>(lattice.num_nodes()), {}, {}};
    auto graph = build_logical_graph(lattice, status, basis);
    for (NodeId d : lattice.data_nodes()) {
        g.usable[d] = graph.has(d) ? 1 : 0;
    }
    for (NodeId d : blind_qubits(lattice, status, patch, basis)) {
        g.usable[d] = 0;
    }
    for (NodeId d : lattice.data_nodes()) {
        if (!g.usable[d]) {
            continue;
        }
        std::set<NodeId> nbrs;
        for (NodeId s : lattice.neighbors(d)) {
            if (!graph.has(s)) {
                continue;
            }
            for (NodeId w : lattice.neighbors(s)) {
                if (w != d && g.usable[w]) {
                    nbrs.insert(w);
                }
            }
        }
        g.adj[d].assign(nbrs.begin(), nbrs.end());
        std::sort(g.adj[d].begin(), g.adj[d].end(), [&](NodeId a, NodeId b) {
            return lattice.node(a).coord < lattice.node(b).coord;
        });
        if (status.sides(d) & source_side(basis)) {
            g.sources.push_back(d);
        }
        if (status.sides(d) & target_side(basis)) {
            g.targets.push_back(d);
        }
    }
    return g;
}

// Breadth-first distance (in data hops) from the nearest target.
std::vector<int> distance_to_targets(const PathGraph &g) {
    std::vector<int> dist(g.adj.size(), kUnreached);
    std::deque<NodeId> queue;
    for (NodeId t : g.targets) {
        dist[t] = 0;
        queue.push_back(t);
    }
    while (!queue.empty()) {
        NodeId v = queue.front();
        queue.pop_front();
        for (NodeId w : g.adj[v]) {
            if (dist[w] == kUnreached) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

int shortest_hops(const PathGraph &g, const std::vector<int> &dist, Basis basis) {
    int best = kUnreached;
    for (NodeId s : g.sources) {
        best = std::min(best, dist[s]);
    }
    if (best == kUnreached) {
        throw NoLogicalPath(std::string("no ") + basis_char(basis) + " logical path: opposing boundaries are disconnected");
    }
    return best;
}

}  // namespace

LogicalSearchGraph build_logical_graph(const Lattice &lattice, const NodeStatus &status, Basis basis) {
    LogicalSearchGraph g{basis, {}, {}, std::vector<uint8_t>(lattice.num_nodes(), 0)};
    for (NodeId id = 0; id < lattice.num_nodes(); ++id) {
        const Node &n = lattice.node(id);
        if (status.enabled(id) && (n.is_data() || n.kind == opposite_kind(basis))) {
            g.contains[id] = 1;
            g.nodes.push_back(id);
        }
    }
    for (EdgeId e = 0; e < lattice.num_edges(); ++e) {
        const Edge &edge = lattice.edge(e);
        if (g.has(edge.data) && g.has(edge.syndrome)) {
            g.edges.push_back(e);
        }
    }
    return g;
}

std::vector<NodeId> blind_qubits(const Lattice &lattice, const NodeStatus &status, const Patch &patch, Basis basis) {
    std::vector<uint8_t> seen(lattice.num_nodes(), 0);
    for (const auto &s : patch.stabilizers) {
        if (s.basis == basis) {
            for (NodeId d : s.support_mod2) {
                seen[d] = 1;
            }
        }
    }
    std::vector<NodeId> out;
    for (NodeId d : lattice.data_nodes()) {
        if (status.enabled(d) && !seen[d]) {
            out.push_back(d);
        }
    }
    return out;
}

LogicalOperator find_logical(const Lattice &lattice, const NodeStatus &status, Basis basis, const Patch &patch) {
    PathGraph g = make_path_graph(lattice, status, basis, patch);
    auto dist = distance_to_targets(g);
    int hops = shortest_hops(g, dist, basis);

    auto by_coord = [&](NodeId a, NodeId b) {
        return lattice.node(a).coord < lattice.node(b).coord;
    };
    LogicalOperator op{basis, {}};
    NodeId cur = kNoNode;
    for (NodeId s : g.sources) {
        if (dist[s] == hops && (cur == kNoNode || by_coord(s, cur))) {
            cur = s;
        }
    }
    op.data_support.push_back(cur);
    while (dist[cur] > 0) {
        NodeId next = kNoNode;
        for (NodeId w : g.adj[cur]) {
            if (dist[w] == dist[cur] - 1) {
                next = w;  // adjacency is sorted, first hit is smallest
                break;
            }
        }
        cur = next;
        op.data_support.push_back(cur);
    }
    return op;
}

LogicalOperator find_logical(const Lattice &lattice, const NodeStatus &status, Basis basis) {
    return find_logical(lattice, status, basis, build_patch(lattice, status));
}

namespace {

// Error-string graph for `basis`-type errors. Vertex i < n is the i-th
// opposite-basis stabilizer; n is the source boundary and n + 1 the target.
struct ErrorGraph {
    size_t num_vertices;
    std::vector<std::vector<std::pair<size_t, NodeId>>> adj;  // (vertex, data edge)
};

ErrorGraph make_error_graph(const Lattice &lattice, const NodeStatus &status, Basis basis, const Patch &patch) {
    std::vector<size_t> checks;
    for (size_t i = 0; i < patch.stabilizers.size(); ++i) {
        if (patch.stabilizers[i].basis != basis) {
            checks.push_back(i);
        }
    }
    size_t n = checks.size();
    ErrorGraph g{n + 2, std::vector<std::vector<std::pair<size_t, NodeId>>>(n + 2)};
    std::vector<std::vector<size_t>> holders(lattice.num_nodes());
    for (size_t v = 0; v < n; ++v) {
        for (NodeId d : patch.stabilizers[checks[v]].support_mod2) {
            holders[d].push_back(v);
        }
    }
    for (NodeId d : lattice.data_nodes()) {
        if (status.disabled(d)) {
            continue;
        }
        const auto &h = holders[d];
        size_t a, b;
        if (h.size() == 2) {
            a = h[0];
            b = h[1];
        } else if (h.size() == 1) {
            a = h[0];
            if (status.sides(d) & source_side(basis)) {
                b = n;
            } else if (status.sides(d) & target_side(basis)) {
                b = n + 1;
            } else {
                continue;  // flags a single check with no boundary to absorb it
            }
        } else {
            continue;
        }
        g.adj[a].push_back({b, d});
        g.adj[b].push_back({a, d});
    }
    return g;
}

std::vector<int> error_distances(const ErrorGraph &g, size_t from) {
    std::vector<int> dist(g.num_vertices, kUnreached);
    std::deque<size_t> queue{from};
    dist[from] = 0;
    while (!queue.empty()) {
        size_t v = queue.front();
        queue.pop_front();
        for (auto [w, d] : g.adj[v]) {
            if (dist[w] == kUnreached) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

int error_hops(const ErrorGraph &g, const std::vector<int> &dist, Basis basis) {
    int hops = dist[g.num_vertices - 1];
    if (hops == kUnreached) {
        throw NoLogicalPath(std::string("no ") + basis_char(basis) + " logical error string: boundaries are disconnected");
    }
    return hops;
}

}  // namespace

size_t logical_distance(const Lattice &lattice, const NodeStatus &status, Basis basis, const Patch &patch) {
    ErrorGraph g = make_error_graph(lattice, status, basis, patch);
    return static_cast<size_t>(error_hops(g, error_distances(g, g.num_vertices - 2), basis));
}

Distances code_distances(const Lattice &lattice, const NodeStatus &status, const Patch &patch) {
    return {
        logical_distance(lattice, status, Basis::X, patch),
        logical_distance(lattice, status, Basis::Z, patch),
    };
}

Distances code_distances(const Lattice &lattice, const NodeStatus &status) {
    return code_distances(lattice, status, build_patch(lattice, status));
}

LogicalCount count_min_weight_logicals(
    const Lattice &lattice, const NodeStatus &status, Basis basis, const Patch &patch, uint64_t cap) {
    ErrorGraph g = make_error_graph(lattice, status, basis, patch);
    size_t src = g.num_vertices - 2;
    auto dist = error_distances(g, src);
    int hops = error_hops(g, dist, basis);

    bool capped = false;
    auto add = [&](uint64_t a, uint64_t b) {
        uint64_t s = a + b;
        if (s < a || s > cap) {
            capped = true;
            return cap;
        }
        return s;
    };

    // Shortest strings visit one vertex per layer, so distinct edge sequences
    // give distinct data supports and parallel edges count separately.
    std::vector<size_t> order;
    for (size_t v = 0; v < g.num_vertices; ++v) {
        if (dist[v] <= hops) {
            order.push_back(v);
        }
    }
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return dist[a] < dist[b];
    });
    std::vector<uint64_t> ways(g.num_vertices, 0);
    ways[src] = 1;
    for (size_t v : order) {
        for (auto [w, d] : g.adj[v]) {
            if (dist[w] == dist[v] + 1) {
                ways[w] = add(ways[w], ways[v]);
            }
        }
    }
    return {static_cast<size_t>(hops), ways[g.num_vertices - 1], capped};
}

LogicalCount count_min_weight_logicals(const Lattice &lattice, const NodeStatus &status, Basis basis, uint64_t cap) {
    return count_min_weight_logicals(lattice, status, basis, build_patch(lattice, status), cap);
}

LogicalReport verify_logical(
    const Lattice &lattice, const NodeStatus &status, const LogicalOperator &op, const Patch &patch) {
    LogicalReport report;
    if (op.data_support.empty()) {
        report.problems.push_back("empty logical operator");
        return report;
    }
    std::vector<uint8_t> in_op(lattice.num_nodes(), 0);
    for (NodeId d : op.data_support) {
        if (status.disabled(d)) {
            report.problems.push_back("support qubit " + lattice.node(d).coord.str() + " is disabled");
        }
        in_op[d] ^= 1;
    }
    for (size_t i = 0; i < patch.stabilizers.size(); ++i) {
        const Stabilizer &s = patch.stabilizers[i];
        if (s.basis == op.basis) {
            continue;
        }
        size_t overlap = 0;
        for (NodeId d : s.support_mod2) {
            overlap += in_op[d];
        }
        if (overlap % 2 == 1) {
            report.problems.push_back(
                std::string(1, basis_char(op.basis)) + " logical overlaps " + basis_char(s.basis) + " stabilizer at " +
                lattice.node(s.key()).coord.str() + " on " + std::to_string(overlap) + " qubits");
        }
    }
    for (NodeId d : blind_qubits(lattice, status, patch, op.basis)) {
        if (in_op[d]) {
            report.problems.push_back("logical passes through blind qubit " + lattice.node(d).coord.str());
        }
    }
    if (!(status.sides(op.front()) & source_side(op.basis)) || !(status.sides(op.back()) & target_side(op.basis))) {
        report.problems.push_back("logical endpoints are not on the opposing boundaries");
    }
    return report;
}

LogicalReport verify_logical_pair(const LogicalOperator &x_op, const LogicalOperator &z_op) {
    LogicalReport report;
    std::set<NodeId> xs(x_op.data_support.begin(), x_op.data_support.end());
    size_t overlap = 0;
    for (NodeId d : std::set<NodeId>(z_op.data_support.begin(), z_op.data_support.end())) {
        overlap += xs.count(d);
    }
    if (overlap % 2 == 0) {
        report.problems.push_back("X and Z logicals overlap on an even number (" + std::to_string(overlap) + ") of qubits");
    }
    return report;
}

LogicalPair place_logicals(const Lattice &lattice, const NodeStatus &status, const Patch &patch) {
    LogicalPair pair{find_logical(lattice, status, Basis::X, patch), find_logical(lattice, status, Basis::Z, patch)};
    for (const LogicalReport &r : {verify_logical(lattice, status, pair.x, patch),
                                   verify_logical(lattice, status, pair.z, patch), verify_logical_pair(pair.x, pair.z)}) {
        if (!r.ok()) {
            throw NoLogicalPath("logical operators are invalid: " + r.problems.front());
        }
    }
    return pair;
}

}  // namespace bandage
