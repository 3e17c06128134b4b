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

#include "bandage/circuit.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include "json.hpp"

namespace bandage {

namespace {

constexpr GateType kAllGates[] = {
    GateType::QUBIT_COORDS, GateType::R,        GateType::H,           GateType::CZ,
    GateType::M,            GateType::X_ERROR,  GateType::DEPOLARIZE1, GateType::DEPOLARIZE2,
    GateType::TICK,         GateType::DETECTOR, GateType::OBSERVABLE_INCLUDE, GateType::X,
    GateType::Y,            GateType::Z,
};

bool uses_records(GateType g) {
    return g == GateType::DETECTOR || g == GateType::OBSERVABLE_INCLUDE;
}

bool fusable(GateType g) {
    return !uses_records(g) && g != GateType::TICK && g != GateType::QUBIT_COORDS;
}

size_t expected_args(GateType g) {
    switch (g) {
        case GateType::X_ERROR:
        case GateType::DEPOLARIZE1:
        case GateType::DEPOLARIZE2:
        case GateType::OBSERVABLE_INCLUDE:
            return 1;
        default:
            return 0;
    }
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

const char *gate_name(GateType g) {
    switch (g) {
        case GateType::QUBIT_COORDS:
            return "QUBIT_COORDS";
        case GateType::R:
            return "R";
        case GateType::H:
            return "H";
        case GateType::CZ:
            return "CZ";
        case GateType::M:
            return "M";
        case GateType::X_ERROR:
            return "X_ERROR";
        case GateType::DEPOLARIZE1:
            return "DEPOLARIZE1";
        case GateType::DEPOLARIZE2:
            return "DEPOLARIZE2";
        case GateType::TICK:
            return "TICK";
        case GateType::DETECTOR:
            return "DETECTOR";
        case GateType::OBSERVABLE_INCLUDE:
            return "OBSERVABLE_INCLUDE";
        case GateType::X:
            return "X";
        case GateType::Y:
            return "Y";
        case GateType::Z:
            return "Z";
    }
    return "?";
}

bool is_noise(GateType g) {
    return g == GateType::X_ERROR || g == GateType::DEPOLARIZE1 || g == GateType::DEPOLARIZE2;
}

std::string Instruction::str() const {
    std::string out = gate_name(gate);
    if (!args.empty()) {
        out += '(';
        for (size_t i = 0; i < args.size(); ++i) {
            if (i) {
                out += ", ";
            }
            out += format_number(args[i]);
        }
        out += ')';
    }
    for (uint32_t t : targets) {
        out += ' ';
        if (uses_records(gate)) {
            out += "rec[-" + std::to_string(t) + "]";
        } else {
            out += std::to_string(t);
        }
    }
    return out;
}

void Circuit::append(GateType gate, std::vector<uint32_t> targets, std::vector<double> args) {
    if (!instructions.empty() && fusable(gate)) {
        Instruction &last = instructions.back();
        if (last.gate == gate && last.args == args) {
            last.targets.insert(last.targets.end(), targets.begin(), targets.end());
            return;
        }
    }
    instructions.push_back({gate, std::move(args), std::move(targets)});
}

size_t Circuit::num_qubits() const {
    size_t n = 0;
    for (const auto &inst : instructions) {
        if (uses_records(inst.gate)) {
            continue;
        }
        for (uint32_t t : inst.targets) {
            n = std::max<size_t>(n, t + 1);
        }
    }
    return n;
}

size_t Circuit::num_measurements() const {
    size_t n = 0;
    for (const auto &inst : instructions) {
        if (inst.gate == GateType::M) {
            n += inst.targets.size();
        }
    }
    return n;
}

size_t Circuit::num_detectors() const {
    return count(GateType::DETECTOR);
}

size_t Circuit::num_observables() const {
    size_t n = 0;
    for (const auto &inst : instructions) {
        if (inst.gate == GateType::OBSERVABLE_INCLUDE) {
            n = std::max(n, static_cast<size_t>(inst.args[0]) + 1);
        }
    }
    return n;
}

size_t Circuit::count(GateType gate) const {
    return std::count_if(instructions.begin(), instructions.end(), [&](const Instruction &inst) {
        return inst.gate == gate;
    });
}

Circuit Circuit::without_noise() const {
    Circuit out;
    for (const auto &inst : instructions) {
        if (!is_noise(inst.gate)) {
            out.append(inst.gate, inst.targets, inst.args);
        }
    }
    return out;
}

std::string Circuit::str() const {
    std::string out;
    for (const auto &inst : instructions) {
        out += inst.str();
        out += '\n';
    }
    return out;
}

Circuit Circuit::parse(std::string_view text) {
    Circuit circuit;
    size_t line_no = 0;
    while (!text.empty()) {
        size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
        ++line_no;
        auto fail = [&](const std::string &why) {
            throw CircuitParseError("line " + std::to_string(line_no) + ": " + why);
        };
        if (size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }

        size_t name_end = 0;
        while (name_end < line.size() && (std::isalnum(static_cast<unsigned char>(line[name_end])) || line[name_end] == '_')) {
            ++name_end;
        }
        std::string_view name = line.substr(0, name_end);
        std::string_view rest = line.substr(name_end);
        const GateType *found = std::find_if(std::begin(kAllGates), std::end(kAllGates), [&](GateType g) {
            return name == gate_name(g);
        });
        if (found == std::end(kAllGates)) {
            fail("unknown instruction '" + std::string(name) + "'");
        }
        GateType gate = *found;

        std::vector<double> args;
        rest = trim(rest);
        if (!rest.empty() && rest.front() == '(') {
            size_t close = rest.find(')');
            if (close == std::string_view::npos) {
                fail("unterminated argument list");
            }
            std::string inner(rest.substr(1, close - 1));
            std::stringstream ss(inner);
            std::string item;
            while (std::getline(ss, item, ',')) {
                try {
                    size_t used = 0;
                    args.push_back(std::stod(item, &used));
                    if (!trim(std::string_view(item).substr(used)).empty()) {
                        throw std::invalid_argument(item);
                    }
                } catch (const std::exception &) {
                    fail("bad argument '" + item + "'");
                }
            }
            rest = rest.substr(close + 1);
        }
        if (gate != GateType::DETECTOR && gate != GateType::QUBIT_COORDS && args.size() != expected_args(gate)) {
            fail(std::string(gate_name(gate)) + " expects " + std::to_string(expected_args(gate)) + " argument(s)");
        }
        for (double a : args) {
            if (is_noise(gate) && (a < 0 || a > 1)) {
                fail("probability out of range");
            }
        }

        std::vector<uint32_t> targets;
        std::stringstream ts{std::string(rest)};
        std::string tok;
        while (ts >> tok) {
            if (uses_records(gate)) {
                if (tok.rfind("rec[-", 0) != 0 || tok.back() != ']') {
                    fail("expected rec[-k] target, got '" + tok + "'");
                }
                tok = tok.substr(5, tok.size() - 6);
            }
            if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) {
                    return std::isdigit(static_cast<unsigned char>(c));
                })) {
                fail("bad target '" + tok + "'");
            }
            uint32_t v = static_cast<uint32_t>(std::stoul(tok));
            if (uses_records(gate) && v == 0) {
                fail("record lookback must be positive");
            }
            targets.push_back(v);
        }
        if ((gate == GateType::CZ || gate == GateType::DEPOLARIZE2) && targets.size() % 2 != 0) {
            fail("two-qubit instruction needs an even number of targets");
        }
        if (gate == GateType::QUBIT_COORDS && targets.size() != 1) {
            fail("QUBIT_COORDS takes one target");
        }
        circuit.instructions.push_back({gate, std::move(args), std::move(targets)});
    }
    return circuit;
}

// ---------------------------------------------------------------------------
// Shells and schedules.
// ---------------------------------------------------------------------------

std::string ShellStrategy::label() const {
    switch (kind) {
        case ShellKind::Global:
            return "global-" + std::to_string(n_shell);
        case ShellKind::LocalAvg:
            return "localavg-" + format_number(r);
        case ShellKind::LocalMax:
            return "localmax-" + format_number(r);
    }
    return "?";
}

ShellStrategy ShellStrategy::parse(std::string_view text) {
    size_t dash = text.find('-');
    if (dash == std::string_view::npos) {
        throw std::invalid_argument("shell strategy must look like global-N, localavg-R or localmax-R");
    }
    std::string kind(text.substr(0, dash));
    std::string value(text.substr(dash + 1));
    try {
        size_t used = 0;
        if (kind == "global") {
            int n = std::stoi(value, &used);
            if (used == value.size()) {
                return global(n);
            }
        } else if (kind == "localavg" || kind == "localmax") {
            double r = std::stod(value, &used);
            if (used == value.size() && r > 0) {
                return kind == "localavg" ? local_avg(r) : local_max(r);
            }
        }
    } catch (const std::exception &) {
    }
    throw std::invalid_argument("bad shell strategy '" + std::string(text) + "'");
}

std::vector<int> shell_sizes(const std::vector<StabilizerGroup> &groups, const ShellStrategy &strategy, int L) {
    std::vector<int> out;
    if (strategy.kind == ShellKind::Global) {
        int hi = std::max(1, (L - 1) / 2);
        if (strategy.n_shell < 1 || strategy.n_shell > hi) {
            throw std::invalid_argument("global shell size " + std::to_string(strategy.n_shell) + " outside 1.." +
                                        std::to_string(hi) + " for L=" + std::to_string(L));
        }
        out.assign(groups.size(), strategy.n_shell);
        return out;
    }
    if (!(strategy.r > 0)) {
        throw std::invalid_argument("local shell ratio must be positive");
    }
    for (const auto &g : groups) {
        double w = strategy.kind == ShellKind::LocalAvg ? g.w_avg : g.w_max;
        // Guard against r * w landing a hair under an integer.
        out.push_back(std::max(1, static_cast<int>(std::floor(strategy.r * w + 1e-9))));
    }
    return out;
}

const char *state_name(PreparedState s) {
    return s == PreparedState::Zero ? "zero" : "plus";
}

Schedule build_schedule(const Patch &patch, const std::vector<int> &shell, PreparedState state, int cycles) {
    if (cycles < 1) {
        throw std::invalid_argument("a schedule needs at least one cycle");
    }
    if (shell.size() != patch.groups.size()) {
        throw ScheduleError("shell sizes do not match the stabilizer groups");
    }
    Schedule s;
    s.cycles = cycles;
    s.state = state;
    s.shell = shell;
    Basis first = opposite(memory_basis(state));
    s.group_basis.assign(cycles, std::vector<Basis>(shell.size(), first));
    for (size_t g = 0; g < shell.size(); ++g) {
        if (shell[g] < 1) {
            throw ScheduleError("shell size must be at least 1");
        }
        for (int c = 0; c < cycles; ++c) {
            s.group_basis[c][g] = (c / shell[g]) % 2 == 0 ? first : opposite(first);
        }
    }
    return s;
}

Schedule build_schedule(const Patch &patch, const ShellStrategy &strategy, PreparedState state, int cycles, int L) {
    return build_schedule(patch, shell_sizes(patch.groups, strategy, L), state, cycles);
}

// ---------------------------------------------------------------------------
// Emission.
// ---------------------------------------------------------------------------

namespace {

// The same staircase for every check: the two northern neighbors, then the two
// southern ones. X and Z checks sharing two data qubits touch them in the same
// relative order, so simultaneous measurement stays consistent.
constexpr int kLayerDx[4] = {-1, +1, -1, +1};
constexpr int kLayerDy[4] = {-1, -1, +1, +1};

class Emitter {
   public:
    Emitter(const AdaptedCode &code, const NoiseParams &noise) : code_(code), noise_(noise) {
        const Lattice &lat = code.lattice;
        index_.assign(lat.num_nodes(), UINT32_MAX);
        std::vector<NodeId> enabled;
        for (NodeId id = 0; id < lat.num_nodes(); ++id) {
            if (code.status.enabled(id)) {
                enabled.push_back(id);
            }
        }
        std::sort(enabled.begin(), enabled.end(), [&](NodeId a, NodeId b) {
            return lat.node(a).coord < lat.node(b).coord;
        });
        for (NodeId id : enabled) {
            index_[id] = static_cast<uint32_t>(qubits_.size());
            qubits_.push_back(id);
            if (lat.node(id).is_data()) {
                data_.push_back(index_[id]);
            }
        }
        last_.assign(lat.num_nodes(), SIZE_MAX);
    }

    Circuit run(const Schedule &schedule, const LogicalOperator &observable) {
        const Lattice &lat = code_.lattice;
        const Patch &patch = code_.patch;
        Basis memory = memory_basis(schedule.state);

        for (uint32_t q = 0; q < qubits_.size(); ++q) {
            Coord c = lat.node(qubits_[q]).coord;
            out_.append(GateType::QUBIT_COORDS, {q}, {static_cast<double>(c.x), static_cast<double>(c.y)});
        }
        out_.append(GateType::R, data_);
        noise(GateType::X_ERROR, data_, noise_.reset());
        if (memory == Basis::X) {
            out_.append(GateType::TICK, {});
            out_.append(GateType::H, data_);
            noise(GateType::DEPOLARIZE1, data_, noise_.gate1());
        }
        out_.append(GateType::TICK, {});

        std::vector<int> measured_at(patch.stabilizers.size(), -1);  // last cycle measured
        for (int c = 0; c < schedule.cycles; ++c) {
            std::vector<size_t> active;
            for (size_t i = 0; i < patch.stabilizers.size(); ++i) {
                int g = patch.group_of[i];
                if (g < 0 || schedule.basis_at(static_cast<size_t>(g), c) == patch.stabilizers[i].basis) {
                    active.push_back(i);
                }
            }
            cycle(active);
            for (size_t i : active) {
                const Stabilizer &s = patch.stabilizers[i];
                bool block_start = measured_at[i] != c - 1 || c == 0;
                if (block_start) {
                    std::vector<size_t> recs;
                    for (NodeId m : s.members) {
                        recs.push_back(current_[m]);
                    }
                    if (measured_at[i] >= 0) {
                        for (NodeId m : s.members) {
                            recs.push_back(last_[m]);
                        }
                        detector(recs, lat.node(s.key()).coord, c);
                    } else if (s.basis == memory) {
                        detector(recs, lat.node(s.key()).coord, c);
                    }
                } else {
                    for (NodeId m : s.members) {
                        detector({current_[m], last_[m]}, lat.node(m).coord, c);
                    }
                }
                for (NodeId m : s.members) {
                    last_[m] = current_[m];
                }
                measured_at[i] = c;
            }
        }

        // Data readout in the memory basis.
        if (memory == Basis::X) {
            out_.append(GateType::H, data_);
            noise(GateType::DEPOLARIZE1, data_, noise_.gate1());
            out_.append(GateType::TICK, {});
        }
        noise(GateType::X_ERROR, data_, noise_.measure());
        std::vector<size_t> data_rec(lat.num_nodes(), SIZE_MAX);
        for (uint32_t q : data_) {
            data_rec[qubits_[q]] = num_meas_++;
        }
        out_.append(GateType::M, data_);

        auto data_records = [&](const std::vector<NodeId> &ds) {
            std::vector<size_t> recs;
            for (NodeId d : ds) {
                recs.push_back(data_rec[d]);
            }
            return recs;
        };
        for (size_t i = 0; i < patch.stabilizers.size(); ++i) {
            const Stabilizer &s = patch.stabilizers[i];
            if (s.basis != memory) {
                continue;
            }
            if (measured_at[i] == schedule.cycles - 1) {
                for (NodeId m : s.members) {
                    auto recs = data_records(gauge_support(m));
                    recs.push_back(last_[m]);
                    detector(recs, lat.node(m).coord, schedule.cycles);
                }
            } else {
                auto recs = data_records(s.support_mod2);
                if (measured_at[i] >= 0) {
                    for (NodeId m : s.members) {
                        recs.push_back(last_[m]);
                    }
                }
                detector(recs, lat.node(s.key()).coord, schedule.cycles);
            }
        }
        std::vector<uint32_t> obs;
        for (NodeId d : observable.data_support) {
            if (data_rec[d] == SIZE_MAX) {
                throw ScheduleError("observable touches a disabled qubit " + lat.node(d).coord.str());
            }
            obs.push_back(static_cast<uint32_t>(num_meas_ - data_rec[d]));
        }
        out_.instructions.push_back({GateType::OBSERVABLE_INCLUDE, {0}, std::move(obs)});
        return std::move(out_);
    }

   private:
    std::vector<NodeId> gauge_support(NodeId syn) const {
        std::vector<NodeId> out;
        for (NodeId d : code_.lattice.neighbors(syn)) {
            if (code_.status.enabled(d)) {
                out.push_back(d);
            }
        }
        return out;
    }

    void noise(GateType g, const std::vector<uint32_t> &targets, double p) {
        if (p > 0 && !targets.empty()) {
            out_.append(g, targets, {p});
        }
    }

    // Qubits in `all` that are not in `busy` (both sorted).
    static std::vector<uint32_t> idle(const std::vector<uint32_t> &all, std::vector<uint32_t> busy) {
        std::sort(busy.begin(), busy.end());
        std::vector<uint32_t> out;
        std::set_difference(all.begin(), all.end(), busy.begin(), busy.end(), std::back_inserter(out));
        return out;
    }

    void single_layer(GateType g, const std::vector<uint32_t> &targets, const std::vector<uint32_t> &active) {
        out_.append(g, targets);
        noise(GateType::DEPOLARIZE1, targets, noise_.gate1());
        noise(GateType::DEPOLARIZE1, idle(active, targets), noise_.idle());
        out_.append(GateType::TICK, {});
    }

    void cycle(const std::vector<size_t> &stabs) {
        const Lattice &lat = code_.lattice;
        std::vector<NodeId> ancillas;
        for (size_t i : stabs) {
            for (NodeId m : code_.patch.stabilizers[i].members) {
                ancillas.push_back(m);
            }
        }
        std::sort(ancillas.begin(), ancillas.end(), [&](NodeId a, NodeId b) {
            return index_[a] < index_[b];
        });
        std::vector<uint32_t> anc;
        for (NodeId a : ancillas) {
            anc.push_back(index_[a]);
        }
        std::vector<uint32_t> active = data_;
        active.insert(active.end(), anc.begin(), anc.end());
        std::sort(active.begin(), active.end());

        out_.append(GateType::R, anc);
        noise(GateType::X_ERROR, anc, noise_.reset());
        noise(GateType::DEPOLARIZE1, data_, noise_.readout_idle());
        out_.append(GateType::TICK, {});
        single_layer(GateType::H, anc, active);

        for (int layer = 0; layer < 4; ++layer) {
            std::vector<uint32_t> pairs, conj;
            for (NodeId a : ancillas) {
                Coord c = lat.node(a).coord;
                auto d = lat.find({c.x + kLayerDx[layer], c.y + kLayerDy[layer]});
                if (!d || code_.status.disabled(*d)) {
                    continue;
                }
                pairs.push_back(index_[a]);
                pairs.push_back(index_[*d]);
                if (lat.node(a).kind == NodeKind::SyndromeX) {
                    conj.push_back(index_[*d]);
                }
            }
            std::sort(conj.begin(), conj.end());
            if (!conj.empty()) {
                single_layer(GateType::H, conj, active);
            }
            out_.append(GateType::CZ, pairs);
            noise(GateType::DEPOLARIZE2, pairs, noise_.cz());
            noise(GateType::DEPOLARIZE1, idle(active, pairs), noise_.idle());
            out_.append(GateType::TICK, {});
            if (!conj.empty()) {
                single_layer(GateType::H, conj, active);
            }
        }

        single_layer(GateType::H, anc, active);
        noise(GateType::X_ERROR, anc, noise_.measure());
        for (NodeId a : ancillas) {
            current_[a] = num_meas_++;
        }
        out_.append(GateType::M, anc);
        noise(GateType::DEPOLARIZE1, data_, noise_.readout_idle());
        out_.append(GateType::TICK, {});
    }

    void detector(const std::vector<size_t> &recs, Coord at, int t) {
        std::vector<uint32_t> targets;
        for (size_t r : recs) {
            targets.push_back(static_cast<uint32_t>(num_meas_ - r));
        }
        out_.instructions.push_back({GateType::DETECTOR,
                                     {static_cast<double>(at.x), static_cast<double>(at.y), static_cast<double>(t)},
                                     std::move(targets)});
    }

    const AdaptedCode &code_;
    NoiseParams noise_;
    std::vector<uint32_t> index_;   // node -> qubit
    std::vector<NodeId> qubits_;     // qubit -> node
    std::vector<uint32_t> data_;     // sorted data qubit ids
    std::vector<size_t> last_;       // node -> previous measurement record
    std::map<NodeId, size_t> current_;
    size_t num_meas_ = 0;
    Circuit out_;
};

}  // namespace

Circuit emit_circuit(const AdaptedCode &code, const Schedule &schedule, const NoiseParams &noise,
                     const LogicalOperator &observable) {
    if (!(noise.p >= 0 && noise.p < 0.5)) {
        throw std::invalid_argument("physical error rate must lie in [0, 0.5)");
    }
    if (schedule.cycles < 1 || static_cast<int>(schedule.group_basis.size()) != schedule.cycles) {
        throw ScheduleError("schedule cycle count is inconsistent");
    }
    for (const auto &row : schedule.group_basis) {
        if (row.size() != code.patch.groups.size()) {
            throw ScheduleError("schedule does not cover the patch's stabilizer groups");
        }
    }
    if (observable.basis != memory_basis(schedule.state)) {
        throw ScheduleError("observable basis does not match the prepared state");
    }
    return Emitter(code, noise).run(schedule, observable);
}

Circuit emit_memory_circuit(const AdaptedCode &code, const ShellStrategy &strategy, PreparedState state,
                            const NoiseParams &noise, int cycles) {
    auto schedule = build_schedule(code.patch, strategy, state, cycles, code.lattice.size());
    auto logicals = place_logicals(code.lattice, code.status, code.patch);
    return emit_circuit(code, schedule, noise, logicals[memory_basis(state)]);
}

std::string SweepManifest::to_json() const {
    nlohmann::ordered_json doc;
    doc["device_hash"] = device_hash;
    doc["circuits"] = nlohmann::ordered_json::array();
    for (const auto &e : entries) {
        nlohmann::ordered_json row;
        row["file"] = e.file;
        row["strategy"] = e.strategy;
        row["p"] = e.p;
        row["state"] = state_name(e.state);
        row["cycles"] = e.cycles;
        row["detectors"] = e.num_detectors;
        doc["circuits"].push_back(row);
    }
    return doc.dump(1) + "\n";
}

SweepManifest sweep_circuits(const AdaptedCode &code, const std::string &device_hash,
                             const std::vector<ShellStrategy> &strategies, const std::vector<double> &ps,
                             const std::string &out_dir, int cycles) {
    struct Point {
        ShellStrategy strategy;
        double p;
        PreparedState state;
    };
    std::vector<Point> grid;
    for (const auto &s : strategies) {
        for (double p : ps) {
            for (PreparedState st : {PreparedState::Zero, PreparedState::Plus}) {
                grid.push_back({s, p, st});
            }
        }
    }
    std::filesystem::create_directories(out_dir);
    SweepManifest manifest{device_hash, std::vector<SweepEntry>(grid.size())};
    std::vector<std::string> errors(grid.size());

#pragma omp parallel for schedule(dynamic)
    for (size_t k = 0; k < grid.size(); ++k) {
        const Point &pt = grid[k];
        try {
            Circuit c = emit_memory_circuit(code, pt.strategy, pt.state, NoiseParams{pt.p}, cycles);
            std::string name = pt.strategy.label() + "_p" + format_number(pt.p) + "_" + state_name(pt.state) + ".stim";
            std::ofstream f(std::filesystem::path(out_dir) / name, std::ios::binary);
            f << c.str();
            if (!f) {
                throw std::runtime_error("cannot write " + name);
            }
            manifest.entries[k] = {name, pt.strategy.label(), pt.p, pt.state, cycles, c.num_detectors()};
        } catch (const std::exception &e) {
            errors[k] = e.what();
        }
    }
    for (const auto &e : errors) {
        if (!e.empty()) {
            throw std::runtime_error(e);
        }
    }
    std::ofstream f(std::filesystem::path(out_dir) / "manifest.json", std::ios::binary);
    f << manifest.to_json();
    if (!f) {
        throw std::runtime_error("cannot write manifest in " + out_dir);
    }
    return manifest;
}

}  // namespace bandage
