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

#include "bandage/verify.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iterator>
#include <random>

namespace bandage {

SymbolicBit &SymbolicBit::operator^=(const SymbolicBit &other) {
    constant ^= other.constant;
    std::vector<uint32_t> out;
    std::set_symmetric_difference(vars.begin(), vars.end(), other.vars.begin(), other.vars.end(), std::back_inserter(out));
    vars = std::move(out);
    return *this;
}

bool SymbolicBit::eval(const std::vector<uint8_t> &assignment) const {
    bool v = constant;
    for (uint32_t k : vars) {
        v ^= assignment.at(k) != 0;
    }
    return v;
}

// ---------------------------------------------------------------------------
// Tableau.
// ---------------------------------------------------------------------------

Tableau::Tableau(size_t num_qubits) : n_(num_qubits), words_((num_qubits + 63) / 64), rows_(2 * num_qubits) {
    for (size_t i = 0; i < 2 * n_; ++i) {
        rows_[i].x.assign(words_, 0);
        rows_[i].z.assign(words_, 0);
    }
    for (size_t q = 0; q < n_; ++q) {
        rows_[q].x[q >> 6] |= uint64_t{1} << (q & 63);
        rows_[q + n_].z[q >> 6] |= uint64_t{1} << (q & 63);
    }
}

void Tableau::xor_vars(Row &dst, const Row &src) const {
    if (dst.vars.size() < src.vars.size()) {
        dst.vars.resize(src.vars.size(), 0);
    }
    for (size_t w = 0; w < src.vars.size(); ++w) {
        dst.vars[w] ^= src.vars[w];
    }
}

void Tableau::xor_symbol(Row &dst, const SymbolicBit &s) const {
    dst.sign ^= s.constant;
    for (uint32_t v : s.vars) {
        if (dst.vars.size() <= (v >> 6)) {
            dst.vars.resize((v >> 6) + 1, 0);
        }
        dst.vars[v >> 6] ^= uint64_t{1} << (v & 63);
    }
}

// h <- i * h, tracking the sign exactly.
void Tableau::rowsum(Row &h, const Row &i) const {
    int sum = 2 * h.sign + 2 * i.sign;
    for (size_t w = 0; w < words_; ++w) {
        uint64_t x1 = i.x[w], z1 = i.z[w], x2 = h.x[w], z2 = h.z[w];
        uint64_t plus = (x1 & z1 & ~x2 & z2) | (x1 & ~z1 & x2 & z2) | (~x1 & z1 & x2 & ~z2);
        uint64_t minus = (x1 & z1 & x2 & ~z2) | (x1 & ~z1 & ~x2 & z2) | (~x1 & z1 & x2 & z2);
        sum += std::popcount(plus) - std::popcount(minus);
        h.x[w] ^= x1;
        h.z[w] ^= z1;
    }
    h.sign = ((sum % 4) + 4) % 4 == 2;
    xor_vars(h, i);
}

SymbolicBit Tableau::symbol_of(const Row &r) const {
    SymbolicBit s;
    s.constant = r.sign;
    for (size_t w = 0; w < r.vars.size(); ++w) {
        uint64_t bits = r.vars[w];
        while (bits) {
            s.vars.push_back(static_cast<uint32_t>(w * 64 + std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return s;
}

void Tableau::h(size_t q) {
    size_t w = q >> 6;
    uint64_t m = uint64_t{1} << (q & 63);
    for (Row &r : rows_) {
        uint64_t xb = r.x[w] & m, zb = r.z[w] & m;
        r.sign ^= (xb && zb);
        r.x[w] = (r.x[w] & ~m) | zb;
        r.z[w] = (r.z[w] & ~m) | xb;
    }
}

void Tableau::cnot(size_t c, size_t t) {
    for (Row &r : rows_) {
        bool xc = xbit(r, c), zc = zbit(r, c), xt = xbit(r, t), zt = zbit(r, t);
        r.sign ^= xc && zt && (xt == zc);
        if (xc) {
            r.x[t >> 6] ^= uint64_t{1} << (t & 63);
        }
        if (zt) {
            r.z[c >> 6] ^= uint64_t{1} << (c & 63);
        }
    }
}

void Tableau::cz(size_t a, size_t b) {
    h(b);
    cnot(a, b);
    h(b);
}

void Tableau::x(size_t q) {
    for (Row &r : rows_) {
        r.sign ^= zbit(r, q);
    }
}

void Tableau::z(size_t q) {
    for (Row &r : rows_) {
        r.sign ^= xbit(r, q);
    }
}

void Tableau::y(size_t q) {
    for (Row &r : rows_) {
        r.sign ^= xbit(r, q) != zbit(r, q);
    }
}

SymbolicBit Tableau::measure(size_t q) {
    size_t p = 2 * n_;
    for (size_t i = n_; i < 2 * n_; ++i) {
        if (xbit(rows_[i], q)) {
            p = i;
            break;
        }
    }
    if (p < 2 * n_) {
        for (size_t i = 0; i < 2 * n_; ++i) {
            if (i != p && xbit(rows_[i], q)) {
                rowsum(rows_[i], rows_[p]);
            }
        }
        rows_[p - n_] = rows_[p];
        Row &r = rows_[p];
        std::fill(r.x.begin(), r.x.end(), 0);
        std::fill(r.z.begin(), r.z.end(), 0);
        r.z[q >> 6] |= uint64_t{1} << (q & 63);
        r.sign = false;
        r.vars.clear();
        SymbolicBit out{false, {num_vars_++}};
        xor_symbol(r, out);
        return out;
    }
    Row scratch{std::vector<uint64_t>(words_, 0), std::vector<uint64_t>(words_, 0), false, {}};
    for (size_t i = 0; i < n_; ++i) {
        if (xbit(rows_[i], q)) {
            rowsum(scratch, rows_[i + n_]);
        }
    }
    return symbol_of(scratch);
}

void Tableau::reset(size_t q) {
    SymbolicBit m = measure(q);
    if (!m.constant && m.vars.empty()) {
        return;
    }
    for (Row &r : rows_) {
        if (zbit(r, q)) {
            xor_symbol(r, m);
        }
    }
}

bool Tableau::is_consistent() const {
    auto anticommute = [&](const Row &a, const Row &b) {
        int parity = 0;
        for (size_t w = 0; w < words_; ++w) {
            parity ^= std::popcount((a.x[w] & b.z[w]) ^ (a.z[w] & b.x[w])) & 1;
        }
        return parity == 1;
    };
    for (size_t i = 0; i < 2 * n_; ++i) {
        for (size_t j = i + 1; j < 2 * n_; ++j) {
            bool expect = j == i + n_;
            if (anticommute(rows_[i], rows_[j]) != expect) {
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Symbolic execution.
// ---------------------------------------------------------------------------

namespace {

const SymbolicBit &lookback(const std::vector<SymbolicBit> &meas, uint32_t k) {
    if (k == 0 || k > meas.size()) {
        throw UnsupportedInstruction("measurement record lookback rec[-" + std::to_string(k) + "] out of range");
    }
    return meas[meas.size() - k];
}

}  // namespace

SymbolicRun run_symbolic(const Circuit &circuit) {
    Tableau t(circuit.num_qubits());
    SymbolicRun run;
    for (const auto &inst : circuit.instructions) {
        const auto &ts = inst.targets;
        switch (inst.gate) {
            case GateType::QUBIT_COORDS:
            case GateType::TICK:
            case GateType::X_ERROR:
            case GateType::DEPOLARIZE1:
            case GateType::DEPOLARIZE2:
                break;
            case GateType::R:
                for (uint32_t q : ts) {
                    t.reset(q);
                }
                break;
            case GateType::H:
                for (uint32_t q : ts) {
                    t.h(q);
                }
                break;
            case GateType::X:
                for (uint32_t q : ts) {
                    t.x(q);
                }
                break;
            case GateType::Y:
                for (uint32_t q : ts) {
                    t.y(q);
                }
                break;
            case GateType::Z:
                for (uint32_t q : ts) {
                    t.z(q);
                }
                break;
            case GateType::CZ:
                for (size_t k = 0; k + 1 < ts.size(); k += 2) {
                    t.cz(ts[k], ts[k + 1]);
                }
                break;
            case GateType::M:
                for (uint32_t q : ts) {
                    run.measurements.push_back(t.measure(q));
                }
                break;
            case GateType::DETECTOR: {
                SymbolicBit d;
                for (uint32_t k : ts) {
                    d ^= lookback(run.measurements, k);
                }
                run.detectors.push_back(std::move(d));
                break;
            }
            case GateType::OBSERVABLE_INCLUDE: {
                size_t idx = static_cast<size_t>(inst.args.at(0));
                if (run.observables.size() <= idx) {
                    run.observables.resize(idx + 1);
                }
                for (uint32_t k : ts) {
                    run.observables[idx] ^= lookback(run.measurements, k);
                }
                break;
            }
        }
    }
    return run;
}

std::string DeterminismReport::summary() const {
    std::string out = std::to_string(num_deterministic()) + "/" + std::to_string(num_detectors) +
                      " detectors deterministic";
    if (!flipped.empty()) {
        out += ", " + std::to_string(flipped.size()) + " with expected value 1";
    }
    if (!bad_observables.empty()) {
        out += ", " + std::to_string(bad_observables.size()) + " bad observable(s)";
    }
    return out;
}

DeterminismReport check_determinism(const Circuit &circuit) {
    SymbolicRun run = run_symbolic(circuit);
    DeterminismReport report;
    report.num_detectors = run.detectors.size();
    for (size_t k = 0; k < run.detectors.size(); ++k) {
        if (!run.detectors[k].deterministic()) {
            report.nondeterministic.push_back(k);
        } else if (run.detectors[k].constant) {
            report.flipped.push_back(k);
        }
    }
    for (size_t k = 0; k < run.observables.size(); ++k) {
        if (!run.observables[k].deterministic() || run.observables[k].constant) {
            report.bad_observables.push_back(k);
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Pauli-frame sampling.
// ---------------------------------------------------------------------------

std::string SampleTable::to_text() const {
    std::string out;
    out.reserve(shots * (num_detectors + num_observables + 2));
    for (size_t s = 0; s < shots; ++s) {
        for (size_t k = 0; k < num_detectors; ++k) {
            out += detectors[s * num_detectors + k] ? '1' : '0';
        }
        out += ' ';
        for (size_t k = 0; k < num_observables; ++k) {
            out += observables[s * num_observables + k] ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

namespace {

class FrameBatch {
   public:
    FrameBatch(size_t num_qubits, uint64_t seed, uint64_t batch)
        : x_(num_qubits, 0), z_(num_qubits, 0) {
        std::seed_seq seq{seed, batch};
        rng_.seed(seq);
    }

    // Each of the 64 lanes independently set with probability p; gaps between
    // hits are drawn geometrically.
    uint64_t bernoulli(double p) {
        if (p <= 0) {
            return 0;
        }
        if (p >= 1) {
            return ~uint64_t{0};
        }
        double log_q = std::log1p(-p);
        uint64_t mask = 0;
        int64_t pos = -1;
        while (true) {
            double u = 1.0 - static_cast<double>(rng_() >> 11) * 0x1.0p-53;  // (0, 1]
            double gap = std::floor(std::log(u) / log_q);
            if (gap >= 64) {
                break;
            }
            pos += static_cast<int64_t>(gap) + 1;
            if (pos >= 64) {
                break;
            }
            mask |= uint64_t{1} << pos;
        }
        return mask;
    }

    void run(const Circuit &circuit, std::vector<uint64_t> &meas, std::vector<uint64_t> &dets,
             std::vector<uint64_t> &obs) {
        for (const auto &inst : circuit.instructions) {
            const auto &ts = inst.targets;
            switch (inst.gate) {
                case GateType::R:
                    for (uint32_t q : ts) {
                        x_[q] = 0;
                        z_[q] = rng_();
                    }
                    break;
                case GateType::M:
                    for (uint32_t q : ts) {
                        meas.push_back(x_[q]);
                        z_[q] = rng_();
                    }
                    break;
                case GateType::H:
                    for (uint32_t q : ts) {
                        std::swap(x_[q], z_[q]);
                    }
                    break;
                case GateType::CZ:
                    for (size_t k = 0; k + 1 < ts.size(); k += 2) {
                        z_[ts[k]] ^= x_[ts[k + 1]];
                        z_[ts[k + 1]] ^= x_[ts[k]];
                    }
                    break;
                case GateType::X_ERROR:
                    for (uint32_t q : ts) {
                        x_[q] ^= bernoulli(inst.args[0]);
                    }
                    break;
                case GateType::DEPOLARIZE1:
                    for (uint32_t q : ts) {
                        uint64_t hits = bernoulli(inst.args[0]);
                        while (hits) {
                            uint64_t bit = hits & -hits;
                            hits ^= bit;
                            uint64_t k = 1 + (rng_() >> 32) % 3;  // X, Z or Y
                            x_[q] ^= (k & 1) ? bit : 0;
                            z_[q] ^= (k & 2) ? bit : 0;
                        }
                    }
                    break;
                case GateType::DEPOLARIZE2:
                    for (size_t k = 0; k + 1 < ts.size(); k += 2) {
                        uint64_t hits = bernoulli(inst.args[0]);
                        while (hits) {
                            uint64_t bit = hits & -hits;
                            hits ^= bit;
                            uint64_t p = 1 + (rng_() >> 32) % 15;  // any non-identity pair
                            x_[ts[k]] ^= (p & 1) ? bit : 0;
                            z_[ts[k]] ^= (p & 2) ? bit : 0;
                            x_[ts[k + 1]] ^= (p & 4) ? bit : 0;
                            z_[ts[k + 1]] ^= (p & 8) ? bit : 0;
                        }
                    }
                    break;
                case GateType::DETECTOR: {
                    uint64_t d = 0;
                    for (uint32_t k : ts) {
                        d ^= meas[meas.size() - k];
                    }
                    dets.push_back(d);
                    break;
                }
                case GateType::OBSERVABLE_INCLUDE: {
                    size_t idx = static_cast<size_t>(inst.args[0]);
                    if (obs.size() <= idx) {
                        obs.resize(idx + 1, 0);
                    }
                    for (uint32_t k : ts) {
                        obs[idx] ^= meas[meas.size() - k];
                    }
                    break;
                }
                default:
                    // Paulis and annotations do not move the frame.
                    break;
            }
        }
    }

   private:
    std::vector<uint64_t> x_, z_;
    std::mt19937_64 rng_;
};

SampleTable prepare_table(const Circuit &circuit, size_t shots) {
    DeterminismReport report = check_determinism(circuit);
    if (!report.ok()) {
        throw NondeterministicCircuit("refusing to sample: " + report.summary());
    }
    SampleTable table;
    table.shots = shots;
    table.num_detectors = circuit.num_detectors();
    table.num_observables = circuit.num_observables();
    table.detectors.assign(shots * table.num_detectors, 0);
    table.observables.assign(shots * table.num_observables, 0);
    return table;
}

void sample_batch(const Circuit &circuit, size_t num_qubits, uint64_t seed, size_t b, SampleTable &table) {
    std::vector<uint64_t> meas, dets, obs(table.num_observables, 0);
    meas.reserve(circuit.num_measurements());
    dets.reserve(table.num_detectors);
    FrameBatch(num_qubits, seed, b).run(circuit, meas, dets, obs);
    size_t first = b * 64;
    size_t lanes = std::min<size_t>(64, table.shots - first);
    for (size_t lane = 0; lane < lanes; ++lane) {
        uint8_t *drow = table.detectors.data() + (first + lane) * table.num_detectors;
        for (size_t k = 0; k < table.num_detectors; ++k) {
            drow[k] = (dets[k] >> lane) & 1;
        }
        uint8_t *orow = table.observables.data() + (first + lane) * table.num_observables;
        for (size_t k = 0; k < table.num_observables; ++k) {
            orow[k] = (obs[k] >> lane) & 1;
        }
    }
}

}  // namespace

SampleTable sample_frames_serial(const Circuit &circuit, size_t shots, uint64_t seed) {
    SampleTable table = prepare_table(circuit, shots);
    size_t n = circuit.num_qubits();
    size_t batches = (shots + 63) / 64;
    for (size_t b = 0; b < batches; ++b) {
        sample_batch(circuit, n, seed, b, table);
    }
    return table;
}

SampleTable sample_frames(const Circuit &circuit, size_t shots, uint64_t seed) {
    SampleTable table = prepare_table(circuit, shots);
    size_t n = circuit.num_qubits();
    auto batches = static_cast<int64_t>((shots + 63) / 64);
#pragma omp parallel for schedule(static)
    for (int64_t b = 0; b < batches; ++b) {
        sample_batch(circuit, n, seed, static_cast<size_t>(b), table);
    }
    return table;
}

}  // namespace bandage
