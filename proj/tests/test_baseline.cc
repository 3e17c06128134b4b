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
#include "doctest.h"
#include "fixtures.h"

using namespace bandage;

namespace {

Coord coord_of(const Lattice &lat, NodeId id) {
    return lat.node(id).coord;
}

}  // namespace

TEST_CASE("diagonal pairs") {
    Lattice lat(5);
    NodeId s = lat.at({4, 4});
    CHECK(is_diagonal_pair(lat, s, lat.at({3, 3}), lat.at({5, 5})));
    CHECK(is_diagonal_pair(lat, s, lat.at({5, 3}), lat.at({3, 5})));
    CHECK(!is_diagonal_pair(lat, s, lat.at({3, 3}), lat.at({5, 3})));
}

TEST_CASE("weight-1 and bridge detection around a single internal defect") {
    Lattice lat(7);
    DefectMap defects(lat);
    defects.mark_qubit(lat.at({7, 7}));
    NodeStatus st = adapt_bandage(lat, defects);
    // Every syndrome next to one missing data qubit keeps weight 3.
    CHECK(find_weight1_and_bridge(lat, st).empty());
    // Knocking out two more corners of (8, 8) leaves a bridge.
    st.disable(lat.at({9, 9}), DisableReason::Defective, true);
    auto off = find_weight1_and_bridge(lat, st);
    REQUIRE(off.size() == 1);
    CHECK(coord_of(lat, off[0].syndrome) == Coord{8, 8});
    CHECK(off[0].kind == OffenderKind::Bridge);
    CHECK(off[0].data.size() == 2);
}

TEST_CASE("the traditional method avalanches on the avalanche device") {
    Device d = fixture::load("avalanche.json");
    BaselineTrace trace;
    NodeStatus t = adapt_traditional(d.lattice, d.defects, &trace);
    CHECK(t.num_disabled() == 13);
    REQUIRE(trace.rounds.size() == 3);
    REQUIRE(trace.rounds[0].size() == 1);
    CHECK(coord_of(d.lattice, trace.rounds[0][0].syndrome) == Coord{4, 6});
    CHECK(trace.rounds[0][0].kind == OffenderKind::Bridge);
    REQUIRE(trace.rounds[1].size() == 1);
    CHECK(coord_of(d.lattice, trace.rounds[1][0].syndrome) == Coord{6, 8});
    CHECK(trace.rounds[1][0].kind == OffenderKind::Bridge);
    REQUIRE(trace.rounds[2].size() == 2);
    CHECK(coord_of(d.lattice, trace.rounds[2][0].syndrome) == Coord{4, 8});
    CHECK(trace.rounds[2][0].kind == OffenderKind::Weight1);
    CHECK(coord_of(d.lattice, trace.rounds[2][1].syndrome) == Coord{6, 6});
    CHECK(trace.rounds[2][1].kind == OffenderKind::Weight1);

    NodeStatus b = adapt(d.lattice, d.defects, Method::Bandage);
    CHECK(b.num_disabled() == 3);
}

TEST_CASE("traditional disables more on the regression corpus") {
    struct Case {
        const char *file;
        size_t bandage, traditional;
    };
    for (Case c : {Case{"diag_abc.json", 3, 13}, Case{"avalanche.json", 3, 13}}) {
        CAPTURE(c.file);
        auto b = fixture::adapt(c.file, Method::Bandage);
        auto t = fixture::adapt(c.file, Method::Traditional);
        CHECK(b.status.num_disabled() == c.bandage);
        CHECK(t.status.num_disabled() == c.traditional);
    }
    auto b = fixture::adapt("mixed_defects.json", Method::Bandage);
    auto t = fixture::adapt("mixed_defects.json", Method::Traditional);
    CHECK(t.status.num_disabled() == b.status.num_disabled() + 5);
}

TEST_CASE("baseline reasons are tagged") {
    auto t = fixture::adapt("avalanche.json", Method::Traditional);
    size_t rule = 0;
    for (NodeId id = 0; id < t.lattice.num_nodes(); ++id) {
        rule += t.status.disabled(id) && t.status.reason(id) == DisableReason::BaselineRule ? 1 : 0;
    }
    CHECK(rule == 10);
    CHECK(std::string(method_name(Method::Traditional)) == "traditional");
}
