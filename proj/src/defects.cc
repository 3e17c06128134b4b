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

#include "bandage/defects.h"

#include <algorithm>
#include <cstdio>
#include <random>

#include "json.hpp"

namespace bandage {

using nlohmann::json;

DefectMap::DefectMap(const Lattice &lattice) : qubits_(lattice.num_nodes(), 0), couplers_(lattice.num_edges(), 0) {
}

void DefectMap::mark_qubit(NodeId id) {
    qubits_.at(id) = 1;
}

void DefectMap::mark_coupler(EdgeId id) {
    couplers_.at(id) = 1;
}

std::vector<Coord> DefectMap::qubit_coords(const Lattice &lattice) const {
    std::vector<Coord> out;
    for (NodeId i = 0; i < qubits_.size(); ++i) {
        if (qubits_[i]) {
            out.push_back(lattice.node(i).coord);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<Coord, Coord>> DefectMap::coupler_coords(const Lattice &lattice) const {
    std::vector<std::pair<Coord, Coord>> out;
    for (EdgeId e = 0; e < couplers_.size(); ++e) {
        if (couplers_[e]) {
            const Edge &edge = lattice.edge(e);
            out.push_back(canonical_coupler(lattice.node(edge.data).coord, lattice.node(edge.syndrome).coord));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

size_t DefectMap::num_defective_qubits() const {
    return std::count(qubits_.begin(), qubits_.end(), 1);
}

size_t DefectMap::num_defective_couplers() const {
    return std::count(couplers_.begin(), couplers_.end(), 1);
}

std::pair<Coord, Coord> canonical_coupler(Coord a, Coord b) {
    return a < b ? std::pair{a, b} : std::pair{b, a};
}

DefectMap inject_defects(const Lattice &lattice, double qubit_rate, double coupler_rate, uint64_t seed) {
    if (!(qubit_rate >= 0 && qubit_rate <= 1) || !(coupler_rate >= 0 && coupler_rate <= 1)) {
        throw std::invalid_argument("defect rates must lie in [0, 1]");
    }
    DefectMap defects(lattice);
    defects.qubit_rate = qubit_rate;
    defects.coupler_rate = coupler_rate;
    defects.seed = seed;
    defects.has_meta = true;

    std::mt19937_64 rng(seed);
    auto draw = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };

    std::vector<NodeId> qubits(lattice.num_nodes());
    for (NodeId i = 0; i < qubits.size(); ++i) {
        qubits[i] = i;
    }
    std::sort(qubits.begin(), qubits.end(), [&](NodeId a, NodeId b) {
        Coord ca = lattice.node(a).coord, cb = lattice.node(b).coord;
        return std::pair{ca.y, ca.x} < std::pair{cb.y, cb.x};
    });
    for (NodeId q : qubits) {
        if (draw() < qubit_rate) {
            defects.mark_qubit(q);
        }
    }

    std::vector<std::pair<std::pair<Coord, Coord>, EdgeId>> edges;
    for (EdgeId e = 0; e < lattice.num_edges(); ++e) {
        const Edge &edge = lattice.edge(e);
        edges.push_back({canonical_coupler(lattice.node(edge.data).coord, lattice.node(edge.syndrome).coord), e});
    }
    std::sort(edges.begin(), edges.end());
    for (const auto &[key, e] : edges) {
        if (draw() < coupler_rate) {
            defects.mark_coupler(e);
        }
    }
    return defects;
}

namespace {

Coord parse_coord(const json &j, const std::string &where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
        throw ParseError(where + ": expected [x, y], got " + j.dump());
    }
    return {j[0].get<int>(), j[1].get<int>()};
}

json coord_json(Coord c) {
    return json::array({c.x, c.y});
}

}  // namespace

Device parse_device(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("malformed device file: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("device file must be a JSON object");
    }
    if (!doc.contains("size") || !doc["size"].is_number_integer()) {
        throw ParseError("field `size` missing or not an integer");
    }
    int size = doc["size"].get<int>();
    if (size < 1 || size % 2 == 0) {
        throw ParseError("field `size` must be a positive odd integer, got " + std::to_string(size));
    }
    Device dev{Lattice(size), DefectMap()};
    dev.defects = DefectMap(dev.lattice);
    const Lattice &lat = dev.lattice;

    json defects = doc.value("defects", json::object());
    if (!defects.is_object()) {
        throw ParseError("field `defects` must be an object");
    }
    json qubits = defects.value("qubits", json::array());
    json couplers = defects.value("couplers", json::array());
    if (!qubits.is_array() || !couplers.is_array()) {
        throw ParseError("`defects.qubits` and `defects.couplers` must be lists");
    }
    for (const auto &q : qubits) {
        Coord c = parse_coord(q, "defects.qubits");
        auto id = lat.find(c);
        if (!id) {
            throw ParseError("defects.qubits: unknown coordinate " + c.str());
        }
        if (dev.defects.qubit(*id)) {
            throw ParseError("defects.qubits: duplicate defect " + c.str());
        }
        dev.defects.mark_qubit(*id);
    }
    for (const auto &e : couplers) {
        if (!e.is_array() || e.size() != 2) {
            throw ParseError("defects.couplers: expected [[x1, y1], [x2, y2]], got " + e.dump());
        }
        Coord a = parse_coord(e[0], "defects.couplers");
        Coord b = parse_coord(e[1], "defects.couplers");
        auto ia = lat.find(a);
        auto ib = lat.find(b);
        if (!ia) {
            throw ParseError("defects.couplers: unknown coordinate " + a.str());
        }
        if (!ib) {
            throw ParseError("defects.couplers: unknown coordinate " + b.str());
        }
        auto edge = lat.find_edge(*ia, *ib);
        if (!edge) {
            throw ParseError("defects.couplers: no coupler between " + a.str() + " and " + b.str());
        }
        if (dev.defects.coupler(*edge)) {
            throw ParseError("defects.couplers: duplicate defect " + a.str() + "-" + b.str());
        }
        dev.defects.mark_coupler(*edge);
    }
    if (doc.contains("meta")) {
        const json &meta = doc["meta"];
        if (!meta.is_object()) {
            throw ParseError("field `meta` must be an object");
        }
        try {
            dev.defects.qubit_rate = meta.value("qubit_rate", 0.0);
            dev.defects.coupler_rate = meta.value("coupler_rate", 0.0);
            dev.defects.seed = meta.value("seed", uint64_t{0});
        } catch (const json::exception &e) {
            throw ParseError(std::string("malformed meta field: ") + e.what());
        }
        dev.defects.has_meta = true;
    }
    return dev;
}

std::string serialize_device(const Lattice &lattice, const DefectMap &defects) {
    json doc;
    doc["size"] = lattice.size();
    json qubits = json::array();
    for (Coord c : defects.qubit_coords(lattice)) {
        qubits.push_back(coord_json(c));
    }
    json couplers = json::array();
    for (const auto &[a, b] : defects.coupler_coords(lattice)) {
        couplers.push_back(json::array({coord_json(a), coord_json(b)}));
    }
    doc["defects"] = {{"couplers", couplers}, {"qubits", qubits}};
    if (defects.has_meta) {
        doc["meta"] = {
            {"coupler_rate", defects.coupler_rate},
            {"qubit_rate", defects.qubit_rate},
            {"seed", defects.seed},
        };
    }
    return doc.dump(1) + "\n";
}

uint64_t fnv1a64(const std::string &text) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace bandage
