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


#include <regex>

#include "bandage/report.h"
#include "doctest.h"
#include "fixtures.h"

using namespace bandage;

namespace {

size_t occurrences(const std::string &text, const std::string &needle) {
    size_t n = 0;
    for (size_t at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) {
        ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("adaptation report counts are consistent") {
    for (Method m : {Method::Bandage, Method::Traditional}) {
        auto a = fixture::adapt("diag_abc.json", m);
        nlohmann::json r = adaptation_report(a.lattice, a.defects, a.status, m);
        CHECK(r["method"] == method_name(m));
        CHECK(r["size"] == a.lattice.size());
        const auto &c = r["counts"];
        CHECK(c["disabled"] == a.status.num_disabled());
        CHECK(c["disabled"].get<size_t>() == c["disabled_data"].get<size_t>() + c["disabled_syndromes"].get<size_t>());
        CHECK(r["disabled"].size() == a.status.num_disabled());
        CHECK(c["boundary_data"] == r["boundary"].size());
        CHECK(c["total_qubits"] == a.lattice.num_nodes());
        for (const auto &e : r["disabled"]) {
            CHECK(e["coord"].size() == 2);
            std::string kind = e["kind"];
            CHECK((kind == "data" || kind == "x" || kind == "z"));
        }
    }
}

TEST_CASE("stabilizer dump mirrors the patch") {
    auto a = fixture::adapt("diag_ab.json", Method::Bandage);
    nlohmann::json d = stabilizer_dump(a.lattice, a.patch);
    CHECK(d["num_stabilizers"] == a.patch.stabilizers.size());
    CHECK(d["stabilizers"].size() == a.patch.stabilizers.size());
    CHECK(d["groups"].size() == a.patch.groups.size());
    CHECK(d["average_super_weight"].get<double>() == doctest::Approx(average_super_weight(a.patch)));
    size_t supers = 0;
    for (const auto &s : d["stabilizers"]) {
        supers += s["super"].get<bool>() ? 1 : 0;
        CHECK(s["weight"] == s["support"].size());
    }
    CHECK(d["num_super"] == supers);
}

TEST_CASE("logical dump") {
    auto a = fixture::defect_free(5);
    LogicalPair lp = place_logicals(a.lattice, a.status, a.patch);
    nlohmann::json d = logical_dump(a.lattice, a.status, a.patch, lp);
    CHECK(d["X"]["weight"] == 5);
    CHECK(d["Z"]["weight"] == 5);
    CHECK(d["X"]["blind_qubits"].empty());
}

TEST_CASE("svg embeds metadata that round-trips to the dumps") {
    auto a = fixture::adapt("mixed_defects.json", Method::Bandage);
    LogicalPair lp = place_logicals(a.lattice, a.status, a.patch);
    std::string svg = render_svg(a.lattice, a.defects, a.status, a.patch, &lp, Method::Bandage);
    nlohmann::json meta = svg_metadata(svg);
    CHECK(meta["method"] == "bandage");
    CHECK(meta["status"] == status_dump(a.lattice, a.status));
    CHECK(meta["stabilizers"] == stabilizer_dump(a.lattice, a.patch));
    CHECK(meta["logicals"] == logical_dump(a.lattice, a.status, a.patch, lp));

    std::regex disabled_node("class=\"node [a-z]+ disabled");
    size_t n = std::distance(std::sregex_iterator(svg.begin(), svg.end(), disabled_node), std::sregex_iterator());
    CHECK(n == a.status.num_disabled());
    CHECK(occurrences(svg, "class=\"node ") == a.lattice.num_nodes());
    CHECK(occurrences(svg, " defect\"") == a.defects.num_defective_qubits());
    CHECK(occurrences(svg, "class=\"logical-X\"") == 1);
    CHECK(occurrences(svg, "<g ") == occurrences(svg, "</g>"));
    CHECK(occurrences(svg, "<svg ") == 1);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);

    std::string bare = render_svg(a.lattice, a.defects, a.status, a.patch, nullptr, Method::Bandage);
    CHECK(svg_metadata(bare)["logicals"].is_null());
    CHECK(occurrences(bare, "logical-") == 0);
    CHECK_THROWS_AS(svg_metadata("<svg></svg>"), std::runtime_error);
}

TEST_CASE("summary chart") {
    EnsembleStats s = run_ensemble(EnsembleSpec{5, 0.01, 0.01, 4, 0, MethodChoice::Both});
    std::string svg = render_summary_svg(s);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("w_avg") != std::string::npos);
    CHECK(occurrences(svg, "<g") == occurrences(svg, "</g>"));
}
