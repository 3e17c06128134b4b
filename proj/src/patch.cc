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

#include "bandage/patch.h"

#include <algorithm>
#include <deque>
#include <map>

#include "bandage/union_find.h"

namespace bandage {

namespace {

NodeKind kind_of(Basis b) {
    return b == Basis::X ? NodeKind::SyndromeX : NodeKind::SyndromeZ;
}

}  // namespace

StabilizerSearchGraph build_search_graph(const Lattice &lattice, const NodeStatus &status, Basis basis) {
    StabilizerSearchGraph g{basis, {}, {}, std::vector<uint8_t>(lattice.num_nodes(), 0)};
    for (NodeId id = 0; id < lattice.num_nodes(); ++id) {
        const Node &n = lattice.node(id);
        bool in = n.is_data() ? status.internally_disabled(id) : n.kind == kind_of(basis);
        if (in) {
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

std::vector<Stabilizer> stabilizer_search(
    const Lattice &lattice, const NodeStatus &status, const StabilizerSearchGraph &graph) {
    std::vector<Stabilizer> out;
    std::vector<uint8_t> seen(lattice.num_nodes(), 0);
    auto by_coord = [&](NodeId a, NodeId b) {
        return lattice.node(a).coord < lattice.node(b).coord;
    };

    for (NodeId start : lattice.syndrome_nodes()) {
        if (!graph.has(start) || status.disabled(start) || seen[start]) {
            continue;
        }
        // Breadth-first connected component on the search graph.
        Stabilizer stab{graph.basis, {}, {}, {}, {}};
        std::deque<NodeId> queue{start};
        seen[start] = 1;
        while (!queue.empty()) {
            NodeId v = queue.front();
            queue.pop_front();
            if (lattice.node(v).is_data()) {
                stab.defect_region.push_back(v);
            } else if (status.enabled(v)) {
                stab.members.push_back(v);
            }
            for (NodeId w : lattice.neighbors(v)) {
                if (graph.has(w) && !seen[w]) {
                    seen[w] = 1;
                    queue.push_back(w);
                }
            }
        }
        std::sort(stab.members.begin(), stab.members.end(), by_coord);
        std::sort(stab.defect_region.begin(), stab.defect_region.end(), by_coord);

        std::map<Coord, std::pair<NodeId, int>> counts;
        for (NodeId m : stab.members) {
            for (NodeId d : lattice.neighbors(m)) {
                if (status.enabled(d)) {
                    auto &slot = counts[lattice.node(d).coord];
                    slot.first = d;
                    slot.second++;
                }
            }
        }
        for (const auto &[c, entry] : counts) {
            stab.support_multiset.push_back(entry);
            if (entry.second % 2 == 1) {
                stab.support_mod2.push_back(entry.first);
            }
        }
        out.push_back(std::move(stab));
    }
    std::sort(out.begin(), out.end(), [&](const Stabilizer &a, const Stabilizer &b) {
        return by_coord(a.key(), b.key());
    });
    return out;
}

CommutationReport verify_commutation(const std::vector<Stabilizer> &stabilizers) {
    // data -> stabilizers (by index) holding it in their mod-2 support
    std::map<NodeId, std::vector<size_t>> x_at, z_at;
    for (size_t i = 0; i < stabilizers.size(); ++i) {
        auto &index = stabilizers[i].basis == Basis::X ? x_at : z_at;
        for (NodeId d : stabilizers[i].support_mod2) {
            index[d].push_back(i);
        }
    }
    std::map<std::pair<size_t, size_t>, size_t> overlap;
    for (const auto &[d, xs] : x_at) {
        auto it = z_at.find(d);
        if (it == z_at.end()) {
            continue;
        }
        for (size_t xi : xs) {
            for (size_t zi : it->second) {
                overlap[{xi, zi}]++;
            }
        }
    }
    CommutationReport report;
    for (const auto &[pair, n] : overlap) {
        if (n % 2 == 1) {
            report.violations.push_back({pair.first, pair.second, n});
        }
    }
    return report;
}

bool gauges_anticommute(const Lattice &lattice, const NodeStatus &status, NodeId a, NodeId b) {
    int shared = 0;
    for (NodeId d : lattice.neighbors(a)) {
        if (status.disabled(d)) {
            continue;
        }
        for (NodeId e : lattice.neighbors(b)) {
            shared += e == d ? 1 : 0;
        }
    }
    return shared % 2 == 1;
}

std::vector<StabilizerGroup> group_stabilizers(
    const Lattice &lattice, const std::vector<Stabilizer> &stabilizers, const NodeStatus &status) {
    UnionFind uf(stabilizers.size());
    std::vector<size_t> owner(lattice.num_nodes(), SIZE_MAX);  // gauge -> stabilizer
    std::vector<size_t> region_owner(lattice.num_nodes(), SIZE_MAX);
    for (size_t i = 0; i < stabilizers.size(); ++i) {
        for (NodeId m : stabilizers[i].members) {
            owner[m] = i;
        }
        for (NodeId d : stabilizers[i].defect_region) {
            if (region_owner[d] == SIZE_MAX) {
                region_owner[d] = i;
            } else {
                uf.unite(region_owner[d], i);
            }
        }
    }
    // Anticommuting gauges of different stabilizers must never be measured in
    // the same cycle, so they are scheduled together as well.
    for (NodeId d : lattice.data_nodes()) {
        if (status.disabled(d)) {
            continue;
        }
        auto nbrs = lattice.neighbors(d);
        for (NodeId a : nbrs) {
            for (NodeId b : nbrs) {
                if (a < b && owner[a] != SIZE_MAX && owner[b] != SIZE_MAX &&
                    lattice.node(a).kind != lattice.node(b).kind && gauges_anticommute(lattice, status, a, b)) {
                    uf.unite(owner[a], owner[b]);
                }
            }
        }
    }

    std::map<size_t, std::vector<size_t>> classes;
    for (size_t i = 0; i < stabilizers.size(); ++i) {
        classes[uf.find(i)].push_back(i);
    }
    std::vector<StabilizerGroup> groups;
    for (auto &[root, members] : classes) {
        bool any_super = std::any_of(members.begin(), members.end(), [&](size_t i) {
            return stabilizers[i].is_super();
        });
        if (!any_super && members.size() < 2) {
            continue;
        }
        StabilizerGroup g;
        g.stabilizers = members;
        double sum = 0, sum_x = 0, sum_z = 0;
        for (size_t i : members) {
            const Stabilizer &s = stabilizers[i];
            g.defect_region.insert(g.defect_region.end(), s.defect_region.begin(), s.defect_region.end());
            if (!s.is_super()) {
                continue;
            }
            double w = static_cast<double>(s.weight());
            sum += w;
            g.w_max = std::max(g.w_max, w);
            if (s.basis == Basis::X) {
                g.num_super_x++;
                sum_x += w;
                g.w_max_x = std::max(g.w_max_x, w);
            } else {
                g.num_super_z++;
                sum_z += w;
                g.w_max_z = std::max(g.w_max_z, w);
            }
        }
        int n = g.num_super_x + g.num_super_z;
        g.w_avg = n > 0 ? sum / n : 0;
        g.w_avg_x = g.num_super_x > 0 ? sum_x / g.num_super_x : 0;
        g.w_avg_z = g.num_super_z > 0 ? sum_z / g.num_super_z : 0;
        std::sort(g.defect_region.begin(), g.defect_region.end(), [&](NodeId a, NodeId b) {
            return lattice.node(a).coord < lattice.node(b).coord;
        });
        g.defect_region.erase(std::unique(g.defect_region.begin(), g.defect_region.end()), g.defect_region.end());
        groups.push_back(std::move(g));
    }
    std::sort(groups.begin(), groups.end(), [](const StabilizerGroup &a, const StabilizerGroup &b) {
        return a.stabilizers.front() < b.stabilizers.front();
    });
    return groups;
}

Patch build_patch(const Lattice &lattice, const NodeStatus &status) {
    Patch patch;
    for (Basis b : {Basis::X, Basis::Z}) {
        auto stabs = stabilizer_search(lattice, status, build_search_graph(lattice, status, b));
        for (auto &s : stabs) {
            patch.stabilizers.push_back(std::move(s));
        }
    }
    patch.groups = group_stabilizers(lattice, patch.stabilizers, status);
    patch.group_of.assign(patch.stabilizers.size(), -1);
    for (size_t g = 0; g < patch.groups.size(); ++g) {
        for (size_t i : patch.groups[g].stabilizers) {
            patch.group_of[i] = static_cast<int>(g);
        }
    }
    return patch;
}

std::vector<size_t> super_weights(const Patch &patch) {
    std::vector<size_t> out;
    for (const auto &s : patch.stabilizers) {
        if (s.is_super()) {
            out.push_back(s.weight());
        }
    }
    return out;
}

double average_super_weight(const Patch &patch) {
    auto w = super_weights(patch);
    if (w.empty()) {
        return 0;
    }
    double sum = 0;
    for (size_t x : w) {
        sum += static_cast<double>(x);
    }
    return sum / static_cast<double>(w.size());
}

}  // namespace bandage
