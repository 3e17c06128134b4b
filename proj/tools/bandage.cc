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

// Command-line front end: gen, adapt, stats, distance, circuit, sweep,
// verify, ensemble, render.

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bandage/adapter.h"
#include "bandage/circuit.h"
#include "bandage/defects.h"
#include "bandage/ensemble.h"
#include "bandage/logical.h"
#include "bandage/patch.h"
#include "bandage/report.h"
#include "bandage/verify.h"

using namespace bandage;
using nlohmann::json;

namespace {

struct Shared {
    std::string method = "bandage";
    uint64_t seed = 0;
    std::string out = "-";
    std::string format = "json";
};

struct DeviceArgs {
    std::string device;
    int L = 0;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) {
        std::filesystem::create_directories(parent);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << text;
}

Method parse_method(const std::string &name) {
    if (name == "bandage") {
        return Method::Bandage;
    }
    if (name == "traditional") {
        return Method::Traditional;
    }
    throw std::invalid_argument("unknown method '" + name + "' (bandage|traditional)");
}

MethodChoice parse_choice(const std::string &name) {
    if (name == "both") {
        return MethodChoice::Both;
    }
    return parse_method(name) == Method::Bandage ? MethodChoice::Bandage : MethodChoice::Traditional;
}

PreparedState parse_state(const std::string &name) {
    if (name == "zero") {
        return PreparedState::Zero;
    }
    if (name == "plus") {
        return PreparedState::Plus;
    }
    throw std::invalid_argument("unknown state '" + name + "' (zero|plus)");
}

void require_format(const Shared &s, std::initializer_list<const char *> allowed) {
    for (const char *f : allowed) {
        if (s.format == f) {
            return;
        }
    }
    std::string list;
    for (const char *f : allowed) {
        list += (list.empty() ? "" : "|") + std::string(f);
    }
    throw std::invalid_argument("unsupported --format '" + s.format + "' (" + list + ")");
}

Device load_device(const DeviceArgs &args) {
    if (!args.device.empty()) {
        return parse_device(read_file(args.device));
    }
    if (args.L <= 0) {
        throw std::invalid_argument("pass --device FILE or --L N");
    }
    Lattice lattice(args.L);
    DefectMap defects(lattice);
    return Device{std::move(lattice), std::move(defects)};
}

void add_shared(CLI::App *cmd, Shared &s, bool with_method = true) {
    if (with_method) {
        cmd->add_option("--method", s.method, "bandage|traditional")->capture_default_str();
    }
    cmd->add_option("--seed", s.seed, "random seed")->capture_default_str();
    cmd->add_option("--out", s.out, "output path, '-' for stdout")->capture_default_str();
    cmd->add_option("--format", s.format, "output format")->capture_default_str();
}

void add_device(CLI::App *cmd, DeviceArgs &d) {
    cmd->add_option("--device", d.device, "device file (JSON)");
    cmd->add_option("--L", d.L, "defect-free code size when no device is given");
}

struct Adapted {
    Device device;
    Method method;
    NodeStatus status;
    Patch patch;
};

Adapted adapt_device(const DeviceArgs &args, const std::string &method) {
    Adapted a{load_device(args), parse_method(method), {}, {}};
    a.status = adapt(a.device.lattice, a.device.defects, a.method);
    a.patch = build_patch(a.device.lattice, a.status);
    return a;
}

std::string device_hash(const Device &d) {
    return hex64(fnv1a64(serialize_device(d.lattice, d.defects)));
}

// ---------------------------------------------------------------------------

int cmd_gen(const Shared &s, int L, double qr, double cr, int count) {
    require_format(s, {"json"});
    if (count < 1) {
        throw std::invalid_argument("--count must be at least 1");
    }
    Lattice lattice(L);
    if (count == 1) {
        write_output(s.out, serialize_device(lattice, inject_defects(lattice, qr, cr, s.seed)));
        return 0;
    }
    if (s.out == "-") {
        throw std::invalid_argument("--count > 1 needs --out DIR");
    }
    for (int k = 0; k < count; ++k) {
        uint64_t seed = s.seed + static_cast<uint64_t>(k);
        write_output(s.out + "/device_" + std::to_string(seed) + ".json",
                     serialize_device(lattice, inject_defects(lattice, qr, cr, seed)));
    }
    return 0;
}

std::string adapt_text(const json &report, const json &stabs) {
    std::string out = "method " + report["method"].get<std::string>() + " L=" + std::to_string(report["size"].get<int>()) + "\n";
    for (auto &[k, v] : report["counts"].items()) {
        out += k + " " + v.dump() + "\n";
    }
    out += "disabled:\n";
    for (const auto &d : report["disabled"]) {
        out += "  " + d["kind"].get<std::string>() + " " + d["coord"].dump() + " " + d["reason"].get<std::string>();
        if (d.contains("clean_rule")) {
            out += " (" + d["clean_rule"].get<std::string>() + ")";
        }
        out += "\n";
    }
    out += "super-stabilizers:\n";
    for (const auto &st : stabs["stabilizers"]) {
        if (st["super"].get<bool>()) {
            out += "  " + st["basis"].get<std::string>() + " group " + st["group"].dump() + " weight " +
                   st["weight"].dump() + " members " + st["members"].dump() + "\n";
        }
    }
    out += "average_super_weight " + stabs["average_super_weight"].dump() + "\n";
    return out;
}

int cmd_adapt(const Shared &s, const DeviceArgs &d) {
    require_format(s, {"json", "text"});
    Adapted a = adapt_device(d, s.method);
    json report = adaptation_report(a.device.lattice, a.device.defects, a.status, a.method);
    json stabs = stabilizer_dump(a.device.lattice, a.patch);
    if (s.format == "text") {
        write_output(s.out, adapt_text(report, stabs));
        return 0;
    }
    json out;
    out["device_hash"] = device_hash(a.device);
    out["report"] = report;
    out["stabilizers"] = stabs;
    try {
        LogicalPair lp = place_logicals(a.device.lattice, a.status, a.patch);
        out["logicals"] = logical_dump(a.device.lattice, a.status, a.patch, lp);
    } catch (const NoLogicalPath &e) {
        out["logicals"] = nullptr;
        out["logical_error"] = e.what();
    }
    write_output(s.out, out.dump(2) + "\n");
    return 0;
}

int cmd_stats(const Shared &s, const DeviceArgs &d) {
    require_format(s, {"json", "csv"});
    Device dev = load_device(d);
    MethodChoice choice = parse_choice(s.method);
    std::vector<DeviceRow> rows;
    for (Method m : methods_of(choice)) {
        rows.push_back(evaluate_device(dev.lattice, dev.defects, m));
    }
    std::string text;
    if (s.format == "csv") {
        text = "method,ok,defective_qubits,defective_couplers,dx,dz,disabled,disabled_data,disabled_pct,num_super,w_avg\n";
        for (const auto &r : rows) {
            double w = r.num_super ? static_cast<double>(r.super_weight_sum) / static_cast<double>(r.num_super) : 0;
            char buf[256];
            std::snprintf(buf, sizeof(buf), "%s,%d,%zu,%zu,%zu,%zu,%zu,%zu,%.6g,%zu,%.6g\n", method_name(r.method),
                          r.ok ? 1 : 0, r.defective_qubits, r.defective_couplers, r.dx, r.dz, r.disabled,
                          r.disabled_data, r.disabled_pct, r.num_super, w);
            text += buf;
        }
    } else {
        json out = json::array();
        for (const auto &r : rows) {
            out.push_back({{"method", method_name(r.method)},
                           {"ok", r.ok},
                           {"failure", r.failure},
                           {"defective_qubits", r.defective_qubits},
                           {"defective_couplers", r.defective_couplers},
                           {"dx", r.dx},
                           {"dz", r.dz},
                           {"disabled", r.disabled},
                           {"disabled_data", r.disabled_data},
                           {"disabled_pct", r.disabled_pct},
                           {"num_super", r.num_super},
                           {"super_weight_sum", r.super_weight_sum}});
        }
        text = out.dump(2) + "\n";
    }
    write_output(s.out, text);
    for (const auto &r : rows) {
        if (!r.ok) {
            std::cerr << "error: " << method_name(r.method) << ": " << r.failure << "\n";
            return 1;
        }
    }
    return 0;
}

int cmd_distance(const Shared &s, const DeviceArgs &d) {
    require_format(s, {"text", "json"});
    Adapted a = adapt_device(d, s.method);
    const Lattice &lat = a.device.lattice;
    Distances dist = code_distances(lat, a.status, a.patch);
    LogicalCount cx = count_min_weight_logicals(lat, a.status, Basis::X, a.patch);
    LogicalCount cz = count_min_weight_logicals(lat, a.status, Basis::Z, a.patch);
    std::string text;
    if (s.format == "json") {
        json out = {{"method", method_name(a.method)},
                    {"dX", dist.dx},
                    {"dZ", dist.dz},
                    {"countX", cx.count},
                    {"countZ", cz.count},
                    {"countX_lower_bound", cx.lower_bound},
                    {"countZ_lower_bound", cz.lower_bound}};
        text = out.dump(2) + "\n";
    } else {
        text = "dX=" + std::to_string(dist.dx) + " dZ=" + std::to_string(dist.dz) + "\n";
        text += "countX=" + std::to_string(cx.count) + (cx.lower_bound ? "+" : "") +
                " countZ=" + std::to_string(cz.count) + (cz.lower_bound ? "+" : "") + "\n";
    }
    write_output(s.out, text);
    return 0;
}

int cmd_circuit(const Shared &s, const DeviceArgs &d, const std::string &shell, const std::string &state, double p,
                int cycles) {
    require_format(s, {"stim"});
    Adapted a = adapt_device(d, s.method);
    AdaptedCode code{a.device.lattice, a.status, a.patch};
    Circuit c = emit_memory_circuit(code, ShellStrategy::parse(shell), parse_state(state), NoiseParams{p}, cycles);
    write_output(s.out, c.str());
    return 0;
}

int cmd_sweep(const Shared &s, const DeviceArgs &d, const std::vector<std::string> &shells,
              const std::vector<double> &ps, int cycles) {
    require_format(s, {"stim"});
    if (s.out == "-") {
        throw std::invalid_argument("sweep needs --out DIR");
    }
    Adapted a = adapt_device(d, s.method);
    AdaptedCode code{a.device.lattice, a.status, a.patch};
    std::vector<ShellStrategy> strategies;
    for (const auto &sh : shells) {
        strategies.push_back(ShellStrategy::parse(sh));
    }
    SweepManifest m = sweep_circuits(code, device_hash(a.device), strategies, ps, s.out, cycles);
    std::cout << "wrote " << m.entries.size() << " circuits to " << s.out << "\n";
    return 0;
}

int cmd_verify(const Shared &s, const std::string &circuit_path, size_t shots) {
    require_format(s, {"text", "json"});
    Circuit c = Circuit::parse(read_file(circuit_path));
    DeterminismReport r = check_determinism(c);
    std::string text;
    if (s.format == "json") {
        json out = {{"num_detectors", r.num_detectors},
                    {"num_deterministic", r.num_deterministic()},
                    {"nondeterministic", r.nondeterministic},
                    {"flipped", r.flipped},
                    {"bad_observables", r.bad_observables},
                    {"ok", r.ok()}};
        text = out.dump(2) + "\n";
    } else {
        text = r.summary() + "\n";
    }
    if (r.ok() && shots > 0) {
        SampleTable t = sample_frames(c, shots, s.seed);
        if (s.format == "json") {
            text.pop_back();
            json out = json::parse(text);
            out["samples"] = t.to_text();
            text = out.dump(2) + "\n";
        } else {
            text += t.to_text();
        }
    }
    write_output(s.out, text);
    return r.ok() ? 0 : 1;
}

int cmd_ensemble(const Shared &s, int L, double rate, double qr, double cr, int n) {
    require_format(s, {"csv"});
    EnsembleSpec spec;
    spec.L = L;
    spec.qubit_rate = qr >= 0 ? qr : rate;
    spec.coupler_rate = cr >= 0 ? cr : rate;
    spec.n_devices = n;
    spec.base_seed = s.seed;
    spec.method = parse_choice(s.method);
    EnsembleStats stats;
    std::string compare;
    if (spec.method == MethodChoice::Both) {
        Comparison c = compare_methods(spec);
        stats = c.stats;
        compare = c.csv();
    } else {
        stats = run_ensemble(spec);
    }
    std::cout << stats.summary_csv();
    if (s.out != "-") {
        write_output(s.out + "/rows.csv", stats.rows_csv());
        write_output(s.out + "/summary.csv", stats.summary_csv());
        write_output(s.out + "/summary.svg", render_summary_svg(stats));
        if (!compare.empty()) {
            write_output(s.out + "/compare.csv", compare);
        }
    }
    return 0;
}

int cmd_render(const Shared &s, const DeviceArgs &d) {
    require_format(s, {"svg"});
    Adapted a = adapt_device(d, s.method);
    std::optional<LogicalPair> lp;
    try {
        lp = place_logicals(a.device.lattice, a.status, a.patch);
    } catch (const NoLogicalPath &) {
    }
    write_output(s.out, render_svg(a.device.lattice, a.device.defects, a.status, a.patch, lp ? &*lp : nullptr, a.method));
    return 0;
}

void configure_threads(int threads) {
    if (threads <= 0) {
        if (const char *env = std::getenv("BANDAGE_THREADS")) {
            threads = std::atoi(env);
        }
    }
    if (threads > 0) {
        omp_set_num_threads(threads);
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Defect-adaptive rotated surface codes with bandage-like super-stabilizers"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (default: $BANDAGE_THREADS or all cores)");

    Shared s;
    DeviceArgs dev;

    auto *gen = app.add_subcommand("gen", "generate random device files");
    int gen_L = 7, gen_count = 1;
    double gen_rate = 0.0, gen_qr = -1, gen_cr = -1;
    gen->add_option("--L", gen_L, "code size")->capture_default_str();
    gen->add_option("--rate", gen_rate, "qubit and coupler defect rate")->capture_default_str();
    gen->add_option("--qubit-rate", gen_qr, "qubit defect rate (overrides --rate)");
    gen->add_option("--coupler-rate", gen_cr, "coupler defect rate (overrides --rate)");
    gen->add_option("--count", gen_count, "devices, seeds seed..seed+count-1")->capture_default_str();
    add_shared(gen, s, false);

    auto *adapt_cmd = app.add_subcommand("adapt", "adaptation report and stabilizer dump");
    add_device(adapt_cmd, dev);
    add_shared(adapt_cmd, s);

    auto *stats = app.add_subcommand("stats", "distances, disabled counts and super-stabilizer weights");
    add_device(stats, dev);
    add_shared(stats, s);

    auto *distance = app.add_subcommand("distance", "code distances and minimum-weight logical counts");
    add_device(distance, dev);
    add_shared(distance, s);

    auto *circuit = app.add_subcommand("circuit", "emit one memory-experiment circuit");
    std::string shell = "global-1", state = "zero";
    double p = 0.001;
    int cycles = 0;
    add_device(circuit, dev);
    add_shared(circuit, s);
    circuit->add_option("--shell", shell, "global-N, localavg-R or localmax-R")->capture_default_str();
    circuit->add_option("--state", state, "zero|plus")->capture_default_str();
    circuit->add_option("--p", p, "SI1000 noise strength")->capture_default_str();
    circuit->add_option("--cycles", cycles, "syndrome cycles (default: L)");

    auto *sweep = app.add_subcommand("sweep", "circuits over a shell-strategy and noise grid");
    std::vector<std::string> shells{"global-1", "localavg-0.5"};
    std::vector<double> ps{0.001};
    add_device(sweep, dev);
    add_shared(sweep, s);
    sweep->add_option("--shells", shells, "shell strategies")->delimiter(',')->capture_default_str();
    sweep->add_option("--ps", ps, "noise strengths")->delimiter(',')->capture_default_str();
    sweep->add_option("--cycles", cycles, "syndrome cycles (default: L)");

    auto *verify = app.add_subcommand("verify", "determinism check and optional frame sampling");
    std::string circuit_path;
    size_t shots = 0;
    verify->add_option("--circuit", circuit_path, "circuit file")->required();
    verify->add_option("--shots", shots, "frame-sampler shots to print")->capture_default_str();
    add_shared(verify, s, false);

    auto *ens = app.add_subcommand("ensemble", "random-device statistics for one or both methods");
    int ens_L = 27, ens_n = 100;
    double ens_rate = 0.02, ens_qr = -1, ens_cr = -1;
    ens->add_option("--L", ens_L, "code size")->capture_default_str();
    ens->add_option("--rate", ens_rate, "qubit and coupler defect rate")->capture_default_str();
    ens->add_option("--qubit-rate", ens_qr, "qubit defect rate (overrides --rate)");
    ens->add_option("--coupler-rate", ens_cr, "coupler defect rate (overrides --rate)");
    ens->add_option("--n", ens_n, "devices")->capture_default_str();
    add_shared(ens, s);

    auto *render = app.add_subcommand("render", "SVG of the adapted lattice");
    add_device(render, dev);
    add_shared(render, s);

    // Per-command default formats.
    for (auto [cmd, fmt] : std::initializer_list<std::pair<CLI::App *, const char *>>{
             {distance, "text"}, {circuit, "stim"}, {sweep, "stim"}, {verify, "text"}, {ens, "csv"}, {render, "svg"}}) {
        cmd->preparse_callback([&s, fmt = std::string(fmt)](size_t) { s.format = fmt; });
    }
    ens->preparse_callback([&s](size_t) {
        s.format = "csv";
        s.method = "both";
    });

    CLI11_PARSE(app, argc, argv);
    configure_threads(threads);

    try {
        auto resolved_cycles = [&](const DeviceArgs &d) {
            if (cycles > 0) {
                return cycles;
            }
            return load_device(d).lattice.size();
        };
        if (*gen) {
            return cmd_gen(s, gen_L, gen_qr >= 0 ? gen_qr : gen_rate, gen_cr >= 0 ? gen_cr : gen_rate, gen_count);
        }
        if (*adapt_cmd) {
            return cmd_adapt(s, dev);
        }
        if (*stats) {
            return cmd_stats(s, dev);
        }
        if (*distance) {
            return cmd_distance(s, dev);
        }
        if (*circuit) {
            return cmd_circuit(s, dev, shell, state, p, resolved_cycles(dev));
        }
        if (*sweep) {
            return cmd_sweep(s, dev, shells, ps, resolved_cycles(dev));
        }
        if (*verify) {
            return cmd_verify(s, circuit_path, shots);
        }
        if (*ens) {
            return cmd_ensemble(s, ens_L, ens_rate, ens_qr, ens_cr, ens_n);
        }
        if (*render) {
            return cmd_render(s, dev);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
