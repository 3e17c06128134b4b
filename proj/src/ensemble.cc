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

#include "bandage/ensemble.h"

#include <cstdio>
#include <stdexcept>

#include "bandage/defects.h"
#include "bandage/logical.h"

namespace bandage {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

const char *choice_name(MethodChoice c) {
    switch (c) {
        case MethodChoice::Bandage:
            return "bandage";
        case MethodChoice::Traditional:
            return "traditional";
        case MethodChoice::Both:
            return "both";
    }
    return "?";
}

std::string metadata_header(const EnsembleSpec &spec) {
    std::string out;
    out += "# spec: " + spec.canonical() + "\n";
    out += "# spec_hash: " + hex64(spec.hash()) + "\n";
    out += "# disabled_pct denominator: all 2L^2-1 qubits (data + syndrome)\n";
    out += "# w_avg: total super-stabilizer weight / total super-stabilizer count over successful devices\n";
    out += "# failed devices are excluded from that method's means\n";
    return out;
}

template <typename Body>
EnsembleStats run(const EnsembleSpec &spec, Body &&for_each_device) {
    spec.validate();
    auto methods = methods_of(spec.method);
    Lattice lattice(spec.L);
    EnsembleStats stats;
    stats.spec = spec;
    stats.rows.resize(static_cast<size_t>(spec.n_devices) * methods.size());
    for_each_device([&](int k) {
        uint64_t seed = spec.base_seed + static_cast<uint64_t>(k);
        DefectMap defects = inject_defects(lattice, spec.qubit_rate, spec.coupler_rate, seed);
        for (size_t j = 0; j < methods.size(); ++j) {
            DeviceRow row = evaluate_device(lattice, defects, methods[j]);
            row.device = k;
            row.seed = seed;
            stats.rows[static_cast<size_t>(k) * methods.size() + j] = std::move(row);
        }
    });
    for (Method m : methods) {
        stats.summary.push_back(aggregate(m, stats.rows));
    }
    return stats;
}

}  // namespace

std::vector<Method> methods_of(MethodChoice choice) {
    switch (choice) {
        case MethodChoice::Bandage:
            return {Method::Bandage};
        case MethodChoice::Traditional:
            return {Method::Traditional};
        case MethodChoice::Both:
            break;
    }
    return {Method::Bandage, Method::Traditional};
}

void EnsembleSpec::validate() const {
    if (L < 1 || L % 2 == 0) {
        throw std::invalid_argument("ensemble code size must be a positive odd integer");
    }
    if (!(qubit_rate >= 0 && qubit_rate <= 1 && coupler_rate >= 0 && coupler_rate <= 1)) {
        throw std::invalid_argument("defect rates must lie in [0, 1]");
    }
    if (n_devices < 1) {
        throw std::invalid_argument("an ensemble needs at least one device");
    }
}

std::string EnsembleSpec::canonical() const {
    return "L=" + std::to_string(L) + " qubit_rate=" + num(qubit_rate) + " coupler_rate=" + num(coupler_rate) +
           " n_devices=" + std::to_string(n_devices) + " base_seed=" + std::to_string(base_seed) +
           " method=" + choice_name(method);
}

uint64_t EnsembleSpec::hash() const {
    return fnv1a64(canonical());
}

DeviceRow evaluate_device(const Lattice &lattice, const DefectMap &defects, Method method) {
    DeviceRow row;
    row.method = method;
    row.defective_qubits = defects.num_defective_qubits();
    row.defective_couplers = defects.num_defective_couplers();
    try {
        NodeStatus status = adapt(lattice, defects, method);
        row.disabled = status.num_disabled();
        row.disabled_data = status.num_disabled_data(lattice);
        row.disabled_pct = 100.0 * static_cast<double>(row.disabled) / static_cast<double>(lattice.num_nodes());
        Patch patch = build_patch(lattice, status);
        for (size_t w : super_weights(patch)) {
            row.num_super++;
            row.super_weight_sum += w;
        }
        place_logicals(lattice, status, patch);
        Distances d = code_distances(lattice, status, patch);
        row.dx = d.dx;
        row.dz = d.dz;
        row.ok = true;
    } catch (const AdaptationExhausted &e) {
        row.failure = std::string("adaptation: ") + e.what();
    } catch (const NoLogicalPath &e) {
        row.failure = std::string("logical: ") + e.what();
    }
    return row;
}

MethodStats aggregate(Method method, const std::vector<DeviceRow> &rows) {
    MethodStats s;
    s.method = method;
    double sx = 0, sz = 0, sp = 0;
    size_t wsum = 0, wcount = 0;
    for (const auto &r : rows) {
        if (r.method != method) {
            continue;
        }
        if (!r.ok) {
            s.n_failed++;
            continue;
        }
        s.n_ok++;
        sx += static_cast<double>(r.dx);
        sz += static_cast<double>(r.dz);
        sp += r.disabled_pct;
        wsum += r.super_weight_sum;
        wcount += r.num_super;
    }
    if (s.n_ok > 0) {
        double n = static_cast<double>(s.n_ok);
        s.avg_dx = sx / n;
        s.avg_dz = sz / n;
        s.disabled_pct = sp / n;
    }
    s.w_avg = wcount > 0 ? static_cast<double>(wsum) / static_cast<double>(wcount) : 0;
    return s;
}

std::optional<MethodStats> EnsembleStats::stats(Method m) const {
    for (const auto &s : summary) {
        if (s.method == m) {
            return s;
        }
    }
    return std::nullopt;
}

std::string EnsembleStats::rows_csv() const {
    std::string out = metadata_header(spec);
    out += "device,seed,method,ok,defective_qubits,defective_couplers,dx,dz,disabled,disabled_data,disabled_pct,"
           "num_super,super_weight_sum,failure\n";
    for (const auto &r : rows) {
        out += std::to_string(r.device) + "," + std::to_string(r.seed) + "," + method_name(r.method) + "," +
               (r.ok ? "1" : "0") + "," + std::to_string(r.defective_qubits) + "," +
               std::to_string(r.defective_couplers) + "," + std::to_string(r.dx) + "," + std::to_string(r.dz) + "," +
               std::to_string(r.disabled) + "," + std::to_string(r.disabled_data) + "," + num(r.disabled_pct) + "," +
               std::to_string(r.num_super) + "," + std::to_string(r.super_weight_sum) + ",\"" + r.failure + "\"\n";
    }
    return out;
}

std::string EnsembleStats::summary_csv() const {
    std::string out = metadata_header(spec);
    out += "method,L,qubit_rate,coupler_rate,n_ok,n_failed,avg_dx,avg_dz,disabled_pct,w_avg\n";
    for (const auto &s : summary) {
        out += std::string(method_name(s.method)) + "," + std::to_string(spec.L) + "," + num(spec.qubit_rate) + "," +
               num(spec.coupler_rate) + "," + std::to_string(s.n_ok) + "," + std::to_string(s.n_failed) + "," +
               num(s.avg_dx) + "," + num(s.avg_dz) + "," + num(s.disabled_pct) + "," + num(s.w_avg) + "\n";
    }
    return out;
}

EnsembleStats run_ensemble(const EnsembleSpec &spec) {
    return run(spec, [&](auto &&device) {
#pragma omp parallel for schedule(dynamic)
        for (int k = 0; k < spec.n_devices; ++k) {
            device(k);
        }
    });
}

EnsembleStats run_ensemble_serial(const EnsembleSpec &spec) {
    return run(spec, [&](auto &&device) {
        for (int k = 0; k < spec.n_devices; ++k) {
            device(k);
        }
    });
}

Comparison compare_methods(EnsembleSpec spec) {
    spec.method = MethodChoice::Both;
    Comparison c;
    c.stats = run_ensemble(spec);
    for (int k = 0; k < spec.n_devices; ++k) {
        const DeviceRow &b = c.stats.rows[2 * static_cast<size_t>(k)];
        const DeviceRow &t = c.stats.rows[2 * static_cast<size_t>(k) + 1];
        PairedDelta d;
        d.device = k;
        d.both_ok = b.ok && t.ok;
        if (b.ok && !t.ok) {
            c.bandage_only_ok++;
        }
        if (d.both_ok) {
            c.paired++;
            d.d_dx = static_cast<long>(b.dx) - static_cast<long>(t.dx);
            d.d_dz = static_cast<long>(b.dz) - static_cast<long>(t.dz);
            d.d_disabled = static_cast<long>(b.disabled) - static_cast<long>(t.disabled);
            auto avg = [](const DeviceRow &r) {
                return r.num_super ? static_cast<double>(r.super_weight_sum) / static_cast<double>(r.num_super) : 0.0;
            };
            d.d_w_avg = avg(b) - avg(t);
            c.distance_dominant += (d.d_dx >= 0 && d.d_dz >= 0) ? 1 : 0;
            c.disabled_dominant += d.d_disabled <= 0 ? 1 : 0;
        }
        c.deltas.push_back(d);
    }
    auto sb = c.stats.stats(Method::Bandage), st = c.stats.stats(Method::Traditional);
    if (sb && st && st->avg_dx + st->avg_dz > 0) {
        c.distance_improvement = (sb->avg_dx + sb->avg_dz) / (st->avg_dx + st->avg_dz) - 1;
    }
    return c;
}

std::string Comparison::csv() const {
    std::string out = metadata_header(stats.spec);
    out += "# paired=" + std::to_string(paired) + " distance_dominant=" + std::to_string(distance_dominant) +
           " disabled_dominant=" + std::to_string(disabled_dominant) +
           " bandage_only_ok=" + std::to_string(bandage_only_ok) + " distance_improvement=" + num(distance_improvement) +
           "\n";
    out += "device,both_ok,d_dx,d_dz,d_disabled,d_w_avg\n";
    for (const auto &d : deltas) {
        out += std::to_string(d.device) + "," + (d.both_ok ? "1" : "0") + "," + std::to_string(d.d_dx) + "," +
               std::to_string(d.d_dz) + "," + std::to_string(d.d_disabled) + "," + num(d.d_w_avg) + "\n";
    }
    return out;
}

}  // namespace bandage
