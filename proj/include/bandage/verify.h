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

#ifndef BANDAGE_VERIFY_H
#define BANDAGE_VERIFY_H

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bandage/circuit.h"

namespace bandage {

/// A measurement outcome as an affine function of independent fair coins:
/// constant XOR (sum of the listed random variables).
struct SymbolicBit {
    bool constant = false;
    std::vector<uint32_t> vars;  // sorted, unique

    bool deterministic() const {
        return vars.empty();
    }
    SymbolicBit &operator^=(const SymbolicBit &other);
    bool operator==(const SymbolicBit &other) const = default;

    /// Value under an assignment of the random variables.
    bool eval(const std::vector<uint8_t> &assignment) const;
};

/// Aaronson-Gottesman stabilizer tableau whose sign bits are symbolic, so one
/// pass over a circuit yields every outcome as a function of the coin flips
/// made by random measurements.
class Tableau {
   public:
    explicit Tableau(size_t num_qubits);

    size_t num_qubits() const {
        return n_;
    }
    size_t num_vars() const {
        return num_vars_;
    }

    void h(size_t q);
    void cnot(size_t c, size_t t);
    void cz(size_t a, size_t b);
    void x(size_t q);
    void y(size_t q);
    void z(size_t q);

    /// Z-basis measurement. A random outcome allocates a fresh variable.
    SymbolicBit measure(size_t q);
    /// Measure, then flip back to |0> conditioned on the outcome.
    void reset(size_t q);

    /// Destabilizer/stabilizer rows pairwise satisfy the symplectic relations.
    bool is_consistent() const;

   private:
    struct Row {
        std::vector<uint64_t> x, z;
        bool sign = false;
        std::vector<uint64_t> vars;  // bitset over variable ids
    };

    bool xbit(const Row &r, size_t q) const {
        return (r.x[q >> 6] >> (q & 63)) & 1;
    }
    bool zbit(const Row &r, size_t q) const {
        return (r.z[q >> 6] >> (q & 63)) & 1;
    }
    void xor_vars(Row &dst, const Row &src) const;
    void xor_symbol(Row &dst, const SymbolicBit &s) const;
    void rowsum(Row &h, const Row &i) const;
    SymbolicBit symbol_of(const Row &r) const;

    size_t n_;
    size_t words_;
    std::vector<Row> rows_;  // 0..n-1 destabilizers, n..2n-1 stabilizers
    uint32_t num_vars_ = 0;
};

class UnsupportedInstruction : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Noiseless symbolic execution of a circuit (noise channels are skipped).
struct SymbolicRun {
    std::vector<SymbolicBit> measurements;
    std::vector<SymbolicBit> detectors;
    std::vector<SymbolicBit> observables;
};

SymbolicRun run_symbolic(const Circuit &circuit);

struct DeterminismReport {
    size_t num_detectors = 0;
    std::vector<size_t> nondeterministic;  // detector ids with a random parity
    std::vector<size_t> flipped;           // deterministic but expected value 1
    std::vector<size_t> bad_observables;   // random or flipped

    size_t num_deterministic() const {
        return num_detectors - nondeterministic.size();
    }
    bool ok() const {
        return nondeterministic.empty() && flipped.empty() && bad_observables.empty();
    }
    std::string summary() const;
};

DeterminismReport check_determinism(const Circuit &circuit);

class NondeterministicCircuit : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Detector and observable flips per shot, row-major 0/1 bytes.
struct SampleTable {
    size_t shots = 0;
    size_t num_detectors = 0;
    size_t num_observables = 0;
    std::vector<uint8_t> detectors;
    std::vector<uint8_t> observables;

    bool detector(size_t shot, size_t k) const {
        return detectors[shot * num_detectors + k] != 0;
    }
    /// One line per shot: detector bits, a space, observable bits.
    std::string to_text() const;
    bool operator==(const SampleTable &other) const = default;
};

/// Pauli-frame sampling in 64-shot batches. Batch b draws from a generator
/// seeded by (seed, b), so results do not depend on the thread count.
/// Throws NondeterministicCircuit unless check_determinism passes.
SampleTable sample_frames(const Circuit &circuit, size_t shots, uint64_t seed);
/// Same output, one batch at a time on the calling thread.
SampleTable sample_frames_serial(const Circuit &circuit, size_t shots, uint64_t seed);

}  // namespace bandage

#endif
