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

#include <algorithm>
#include <set>

#include "bandage/lattice.h"
#include "doctest.h"

using namespace bandage;

namespace {

// Independent rule for which even positions carry a syndrome: it must touch
// at least two data qubits, and boundary rows/columns keep only the type
// whose check is truncated there (X on top/bottom, Z on left/right).
bool brute_has_syndrome(int L, int x, int y) {
    int n = 0;
    for (int dx : {-1, 1}) {
        for (int dy : {-1, 1}) {
            int a = x + dx, b = y + dy;
            n += (a >= 1 && a <= 2 * L - 1 && b >= 1 && b <= 2 * L - 1) ? 1 : 0;
        }
    }
    if (n < 2) {
        return false;
    }
    bool is_x = ((x + y) / 2) % 2 == 1;
    if (y == 0 || y == 2 * L) {
        return is_x;
    }
    if (x == 0 || x == 2 * L) {
        return !is_x;
    }
    return true;
}

}  // namespace

TEST_CASE("lattice node and edge counts match brute-force enumeration") {
    for (int L : {1, 3, 5, 7, 9, 11}) {
        Lattice lat(L);
        CHECK(lat.num_data() == static_cast<size_t>(L * L));
        CHECK(lat.num_syndromes() == static_cast<size_t>(L * L - 1));
        CHECK(lat.num_nodes() == static_cast<size_t>(2 * L * L - 1));
        size_t syndromes = 0, edges = 0;
        for (int x = 0; x <= 2 * L; x += 2) {
            for (int y = 0; y <= 2 * L; y += 2) {
                if (!brute_has_syndrome(L, x, y)) {
                    CHECK(!lat.find({x, y}).has_value());
                    continue;
                }
                ++syndromes;
                REQUIRE(lat.find({x, y}).has_value());
                NodeId s = *lat.find({x, y});
                CHECK(lat.node(s).kind == syndrome_kind_at({x, y}));
                size_t nb = 0;
                for (int dx : {-1, 1}) {
                    for (int dy : {-1, 1}) {
                        int a = x + dx, b = y + dy;
                        nb += (a >= 1 && a <= 2 * L - 1 && b >= 1 && b <= 2 * L - 1) ? 1 : 0;
                    }
                }
                CHECK(lat.neighbors(s).size() == nb);
                edges += nb;
            }
        }
        CHECK(syndromes == lat.num_syndromes());
        CHECK(edges == lat.num_edges());
    }
}

TEST_CASE("syndrome type follows the (x+y)/2 parity rule") {
    CHECK(syndrome_kind_at({2, 2}) == NodeKind::SyndromeZ);
    CHECK(syndrome_kind_at({2, 0}) == NodeKind::SyndromeX);
    CHECK(syndrome_kind_at({0, 2}) == NodeKind::SyndromeX);
    Lattice lat(5);
    // The X neighbor of the top-left corner sits above it.
    CHECK(lat.node(lat.at({2, 0})).kind == NodeKind::SyndromeX);
    CHECK(!lat.find({0, 2}).has_value());
    CHECK(lat.node(lat.at({0, 4})).kind == NodeKind::SyndromeZ);
}

TEST_CASE("data nodes are at odd coordinates in lexicographic order") {
    Lattice lat(7);
    auto data = lat.data_nodes();
    CHECK(std::is_sorted(data.begin(), data.end(), [&](NodeId a, NodeId b) {
        return lat.node(a).coord < lat.node(b).coord;
    }));
    for (NodeId d : data) {
        Coord c = lat.node(d).coord;
        CHECK(c.x % 2 == 1);
        CHECK(c.y % 2 == 1);
        CHECK(lat.node(d).is_data());
    }
    auto syn = lat.syndrome_nodes();
    CHECK(std::is_sorted(syn.begin(), syn.end(), [&](NodeId a, NodeId b) {
        return lat.node(a).coord < lat.node(b).coord;
    }));
}

TEST_CASE("adjacency is symmetric and edges join data to syndromes") {
    Lattice lat(5);
    std::set<std::pair<NodeId, NodeId>> seen;
    for (EdgeId e = 0; e < lat.num_edges(); ++e) {
        const Edge &edge = lat.edge(e);
        CHECK(lat.node(edge.data).is_data());
        CHECK(lat.node(edge.syndrome).is_syndrome());
        CHECK(seen.insert({edge.data, edge.syndrome}).second);
        CHECK(lat.find_edge(edge.data, edge.syndrome) == e);
        CHECK(lat.find_edge(edge.syndrome, edge.data) == e);
    }
    for (NodeId id = 0; id < lat.num_nodes(); ++id) {
        auto nb = lat.neighbors(id);
        auto inc = lat.incident_edges(id);
        REQUIRE(nb.size() == inc.size());
        for (size_t k = 0; k < nb.size(); ++k) {
            auto back = lat.neighbors(nb[k]);
            CHECK(std::find(back.begin(), back.end(), id) != back.end());
        }
    }
}

TEST_CASE("initial sides mark the four original boundaries") {
    Lattice lat(5);
    CHECK(lat.initial_sides(lat.at({1, 1})) == (kSideTop | kSideLeft));
    CHECK(lat.initial_sides(lat.at({9, 9})) == (kSideBottom | kSideRight));
    CHECK(lat.initial_sides(lat.at({5, 1})) == kSideTop);
    CHECK(lat.initial_sides(lat.at({1, 5})) == kSideLeft);
    CHECK(lat.initial_sides(lat.at({5, 5})) == 0);
    CHECK(class_from_sides(kSideTop) == BoundaryClass::BX);
    CHECK(class_from_sides(kSideLeft) == BoundaryClass::BZ);
    CHECK(class_from_sides(kSideTop | kSideLeft) == BoundaryClass::BC);
    CHECK(class_from_sides(0) == BoundaryClass::Interior);
}

TEST_CASE("diagonal lookup and invalid sizes") {
    Lattice lat(3);
    NodeId s = lat.at({2, 2});
    CHECK(lat.diagonal(s, -1, -1) == lat.at({1, 1}));
    CHECK(lat.diagonal(s, 1, 1) == lat.at({3, 3}));
    CHECK(lat.diagonal(lat.at({2, 0}), -1, -1) == kNoNode);
    CHECK_THROWS_AS(lat.at({0, 0}), std::out_of_range);
    CHECK_THROWS_AS(Lattice(4), std::invalid_argument);
    CHECK_THROWS_AS(Lattice(0), std::invalid_argument);
    CHECK_THROWS_AS(Lattice(-3), std::invalid_argument);
}
