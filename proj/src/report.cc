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

#include "bandage/report.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <stdexcept>

namespace bandage {

namespace {

using nlohmann::json;

constexpr const char *kGroupingRule =
    "stabilizers sharing internally disabled data, or holding anticommuting gauges, are grouped";
constexpr const char *kCornerRule = "corner ties compare undisabled data neighbors; ties prefer X";
constexpr const char *kMetadataOpen = "<metadata id=\"bandage-metadata\"><![CDATA[";
constexpr const char *kMetadataClose = "]]></metadata>";

json coord_json(const Lattice &lattice, NodeId id) {
    Coord c = lattice.node(id).coord;
    return json::array({c.x, c.y});
}

json coords_json(const Lattice &lattice, const std::vector<NodeId> &ids) {
    json out = json::array();
    for (NodeId id : ids) {
        out.push_back(coord_json(lattice, id));
    }
    return out;
}

const char *kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::Data:
            return "data";
        case NodeKind::SyndromeX:
            return "x";
        case NodeKind::SyndromeZ:
            return "z";
    }
    return "?";
}

std::string side_names(uint8_t sides) {
    std::string out;
    const std::array<std::pair<uint8_t, const char *>, 4> names{
        {{kSideTop, "top"}, {kSideBottom, "bottom"}, {kSideLeft, "left"}, {kSideRight, "right"}}};
    for (auto [bit, name] : names) {
        if (sides & bit) {
            out += out.empty() ? "" : "+";
            out += name;
        }
    }
    return out;
}

std::vector<NodeId> sorted_by_coord(const Lattice &lattice, std::vector<NodeId> ids) {
    std::sort(ids.begin(), ids.end(), [&](NodeId a, NodeId b) {
        return lattice.node(a).coord < lattice.node(b).coord;
    });
    return ids;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// Doubled-grid coordinate to pixels.
constexpr double kScale = 20;
constexpr double kMargin = 30;

double px(int v) {
    return kMargin + kScale * v;
}

constexpr std::array<const char *, 8> kPalette{
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#17becf"};

}  // namespace

json status_dump(const Lattice &lattice, const NodeStatus &status) {
    std::vector<NodeId> disabled;
    for (NodeId id = 0; id < lattice.num_nodes(); ++id) {
        if (status.disabled(id)) {
            disabled.push_back(id);
        }
    }
    disabled = sorted_by_coord(lattice, disabled);
    json out;
    out["size"] = lattice.size();
    out["num_nodes"] = lattice.num_nodes();
    out["num_disabled"] = status.num_disabled();
    out["disabled"] = coords_json(lattice, disabled);
    return out;
}

json adaptation_report(const Lattice &lattice, const DefectMap &defects, const NodeStatus &status, Method method) {
    json disabled = json::array();
    std::vector<NodeId> ids(lattice.num_nodes());
    for (NodeId id = 0; id < lattice.num_nodes(); ++id) {
        ids[id] = id;
    }
    ids = sorted_by_coord(lattice, ids);
    for (NodeId id : ids) {
        if (!status.disabled(id)) {
            continue;
        }
        json e;
        e["coord"] = coord_json(lattice, id);
        e["kind"] = kind_name(lattice.node(id).kind);
        e["reason"] = disable_reason_name(status.reason(id));
        if (status.clean_rule(id) != CleanRule::None) {
            e["clean_rule"] = clean_rule_name(status.clean_rule(id));
        }
        e["internal"] = status.internally_disabled(id);
        disabled.push_back(e);
    }
    json boundary = json::array();
    for (NodeId id : status.boundary_nodes(lattice)) {
        json e;
        e["coord"] = coord_json(lattice, id);
        e["class"] = boundary_class_name(status.boundary_class(id));
        e["sides"] = side_names(status.sides(id));
        boundary.push_back(e);
    }
    size_t disabled_data = status.num_disabled_data(lattice);
    json out;
    out["method"] = method_name(method);
    out["size"] = lattice.size();
    out["corner_rule"] = kCornerRule;
    out["counts"] = {
        {"defective_qubits", defects.num_defective_qubits()},
        {"defective_couplers", defects.num_defective_couplers()},
        {"disabled", status.num_disabled()},
        {"disabled_data", disabled_data},
        {"disabled_syndromes", status.num_disabled() - disabled_data},
        {"boundary_data", boundary.size()},
        {"total_qubits", lattice.num_nodes()},
    };
    out["disabled"] = disabled;
    out["boundary"] = boundary;
    return out;
}

json stabilizer_dump(const Lattice &lattice, const Patch &patch) {
    json stabs = json::array();
    for (size_t i = 0; i < patch.stabilizers.size(); ++i) {
        const Stabilizer &s = patch.stabilizers[i];
        json e;
        e["index"] = i;
        e["basis"] = std::string(1, basis_char(s.basis));
        e["members"] = coords_json(lattice, s.members);
        e["support"] = coords_json(lattice, s.support_mod2);
        e["weight"] = s.weight();
        e["super"] = s.is_super();
        e["group"] = patch.group_of[i];
        stabs.push_back(e);
    }
    json groups = json::array();
    for (size_t g = 0; g < patch.groups.size(); ++g) {
        const StabilizerGroup &grp = patch.groups[g];
        json e;
        e["id"] = g;
        e["stabilizers"] = grp.stabilizers;
        e["defect_region"] = coords_json(lattice, grp.defect_region);
        e["num_super_x"] = grp.num_super_x;
        e["num_super_z"] = grp.num_super_z;
        e["w_avg"] = grp.w_avg;
        e["w_max"] = grp.w_max;
        groups.push_back(e);
    }
    auto weights = super_weights(patch);
    json out;
    out["grouping_rule"] = kGroupingRule;
    out["num_stabilizers"] = patch.stabilizers.size();
    out["num_super"] = weights.size();
    out["average_super_weight"] = average_super_weight(patch);
    out["stabilizers"] = stabs;
    out["groups"] = groups;
    return out;
}

json logical_dump(const Lattice &lattice, const NodeStatus &status, const Patch &patch, const LogicalPair &logicals) {
    json out = json::object();
    for (Basis b : {Basis::X, Basis::Z}) {
        const LogicalOperator &op = logicals[b];
        json e;
        e["basis"] = std::string(1, basis_char(b));
        e["support"] = coords_json(lattice, op.data_support);
        e["weight"] = op.weight();
        e["blind_qubits"] = coords_json(lattice, sorted_by_coord(lattice, blind_qubits(lattice, status, patch, b)));
        out[std::string(1, basis_char(b))] = e;
    }
    return out;
}

std::string render_svg(
    const Lattice &lattice,
    const DefectMap &defects,
    const NodeStatus &status,
    const Patch &patch,
    const LogicalPair *logicals,
    Method method) {
    int span = 2 * lattice.size();
    double side = 2 * kMargin + kScale * span;
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(side) + "\" height=\"" + fmt(side + 20) +
           "\" viewBox=\"0 0 " + fmt(side) + " " + fmt(side + 20) + "\">\n";

    json meta;
    meta["method"] = method_name(method);
    meta["status"] = status_dump(lattice, status);
    meta["stabilizers"] = stabilizer_dump(lattice, patch);
    meta["logicals"] = logicals ? logical_dump(lattice, status, patch, *logicals) : json(nullptr);
    out += std::string(kMetadataOpen) + meta.dump() + kMetadataClose + "\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Couplers.
    out += "<g class=\"couplers\">\n";
    for (EdgeId e = 0; e < lattice.num_edges(); ++e) {
        Coord a = lattice.node(lattice.edge(e).data).coord;
        Coord b = lattice.node(lattice.edge(e).syndrome).coord;
        bool dead = status.disabled(lattice.edge(e).data) || status.disabled(lattice.edge(e).syndrome);
        std::string style = defects.coupler(e) ? "stroke=\"#d00\" stroke-width=\"2.5\" stroke-dasharray=\"4 2\""
                            : dead             ? "stroke=\"#e4e4e4\" stroke-width=\"1\""
                                               : "stroke=\"#999\" stroke-width=\"1\"";
        out += "<line x1=\"" + fmt(px(a.x)) + "\" y1=\"" + fmt(px(a.y)) + "\" x2=\"" + fmt(px(b.x)) + "\" y2=\"" +
               fmt(px(b.y)) + "\" " + style + "/>\n";
    }
    out += "</g>\n";

    // Super-stabilizer group halos.
    out += "<g class=\"groups\">\n";
    for (size_t i = 0; i < patch.stabilizers.size(); ++i) {
        int g = patch.group_of[i];
        if (g < 0) {
            continue;
        }
        const char *color = kPalette[static_cast<size_t>(g) % kPalette.size()];
        for (NodeId m : patch.stabilizers[i].members) {
            Coord c = lattice.node(m).coord;
            out += "<circle class=\"halo\" data-group=\"" + std::to_string(g) + "\" cx=\"" + fmt(px(c.x)) +
                   "\" cy=\"" + fmt(px(c.y)) + "\" r=\"15\" fill=\"" + color + "\" fill-opacity=\"0.3\"/>\n";
        }
    }
    out += "</g>\n";

    // Logical supports.
    if (logicals) {
        out += "<g class=\"logicals\">\n";
        for (Basis b : {Basis::X, Basis::Z}) {
            const LogicalOperator &op = (*logicals)[b];
            std::string pts;
            for (NodeId d : op.data_support) {
                Coord c = lattice.node(d).coord;
                pts += (pts.empty() ? "" : " ") + fmt(px(c.x)) + "," + fmt(px(c.y));
            }
            out += std::string("<polyline class=\"logical-") + basis_char(b) + "\" points=\"" + pts +
                   "\" fill=\"none\" stroke=\"" + (b == Basis::X ? "#6a3d9a" : "#1b9e77") +
                   "\" stroke-width=\"4\" stroke-opacity=\"0.7\"/>\n";
        }
        out += "</g>\n";
    }

    // Nodes.
    out += "<g class=\"nodes\">\n";
    for (NodeId id = 0; id < lattice.num_nodes(); ++id) {
        const Node &n = lattice.node(id);
        bool off = status.disabled(id);
        std::string cls = std::string("node ") + kind_name(n.kind) + (off ? " disabled" : "") +
                          (defects.qubit(id) ? " defect" : "");
        std::string fill = off ? "#cccccc" : n.is_data() ? "#222222" : n.kind == NodeKind::SyndromeX ? "#e69f00"
                                                                                                     : "#56b4e9";
        std::string stroke = defects.qubit(id) ? " stroke=\"#d00\" stroke-width=\"2.5\"" : "";
        std::string attrs = "class=\"" + cls + "\" data-coord=\"" + std::to_string(n.coord.x) + "," +
                            std::to_string(n.coord.y) + "\" fill=\"" + fill + "\"" + stroke;
        if (n.is_data()) {
            out += "<circle " + attrs + " cx=\"" + fmt(px(n.coord.x)) + "\" cy=\"" + fmt(px(n.coord.y)) +
                   "\" r=\"6\"/>\n";
        } else {
            out += "<rect " + attrs + " x=\"" + fmt(px(n.coord.x) - 6) + "\" y=\"" + fmt(px(n.coord.y) - 6) +
                   "\" width=\"12\" height=\"12\"/>\n";
        }
    }
    out += "</g>\n";

    std::string caption = std::string(method_name(method)) + " L=" + std::to_string(lattice.size()) +
                          " disabled=" + std::to_string(status.num_disabled()) +
                          " w_avg=" + fmt(average_super_weight(patch));
    out += "<text x=\"" + fmt(kMargin) + "\" y=\"" + fmt(side + 10) +
           "\" font-family=\"monospace\" font-size=\"12\">" + caption + "</text>\n";
    out += "</svg>\n";
    return out;
}

json svg_metadata(const std::string &svg) {
    size_t a = svg.find(kMetadataOpen);
    if (a == std::string::npos) {
        throw std::runtime_error("svg has no bandage metadata");
    }
    a += std::char_traits<char>::length(kMetadataOpen);
    size_t b = svg.find(kMetadataClose, a);
    if (b == std::string::npos) {
        throw std::runtime_error("svg metadata is not terminated");
    }
    return json::parse(svg.substr(a, b - a));
}

std::string render_summary_svg(const EnsembleStats &stats) {
    struct Metric {
        const char *name;
        double (*get)(const MethodStats &);
    };
    const std::array<Metric, 4> metrics{{
        {"avg dX", [](const MethodStats &s) { return s.avg_dx; }},
        {"avg dZ", [](const MethodStats &s) { return s.avg_dz; }},
        {"disabled %", [](const MethodStats &s) { return s.disabled_pct; }},
        {"w_avg", [](const MethodStats &s) { return s.w_avg; }},
    }};
    constexpr double kPanel = 160, kHeight = 200, kTop = 40, kBar = 40;
    double width = kPanel * metrics.size() + 20;
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" +
           fmt(kTop + kHeight + 60) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"10\" y=\"20\" font-family=\"monospace\" font-size=\"12\">" + stats.spec.canonical() +
           "</text>\n";
    for (size_t m = 0; m < metrics.size(); ++m) {
        double x0 = 10 + kPanel * static_cast<double>(m);
        double vmax = 0;
        for (const auto &s : stats.summary) {
            vmax = std::max(vmax, metrics[m].get(s));
        }
        vmax = vmax > 0 ? vmax * 1.15 : 1;
        for (size_t j = 0; j < stats.summary.size(); ++j) {
            const MethodStats &s = stats.summary[j];
            double v = metrics[m].get(s);
            double h = kHeight * v / vmax;
            double x = x0 + 20 + (kBar + 10) * static_cast<double>(j);
            const char *color = s.method == Method::Bandage ? "#1b9e77" : "#d95f02";
            out += "<rect class=\"bar\" data-method=\"" + std::string(method_name(s.method)) + "\" x=\"" + fmt(x) +
                   "\" y=\"" + fmt(kTop + kHeight - h) + "\" width=\"" + fmt(kBar) + "\" height=\"" + fmt(h) +
                   "\" fill=\"" + color + "\"/>\n";
            out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(kTop + kHeight - h - 4) +
                   "\" font-family=\"monospace\" font-size=\"10\">" + fmt(v) + "</text>\n";
            out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(kTop + kHeight + 14) +
                   "\" font-family=\"monospace\" font-size=\"9\">" + method_name(s.method) + "</text>\n";
        }
        out += "<text x=\"" + fmt(x0 + 20) + "\" y=\"" + fmt(kTop + kHeight + 34) +
               "\" font-family=\"monospace\" font-size=\"12\">" + metrics[m].name + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace bandage
