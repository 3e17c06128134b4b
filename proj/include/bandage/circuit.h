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

#ifndef BANDAGE_CIRCUIT_H
#define BANDAGE_CIRCUIT_H

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bandage/logical.h"

namespace bandage {

// ---------------------------------------------------------------------------
// Circuit text model. A small subset of the Stim circuit language: enough to
// describe memory experiments and to be consumed by external decoders.
// ---------------------------------------------------------------------------

enum class GateType : uint8_t {
    QUBIT_COORDS,
    R,
    H,
    CZ,
    M,
    X_ERROR,
    DEPOLARIZE1,
    DEPOLARIZE2,
    TICK,
    DETECTOR,
    OBSERVABLE_INCLUDE,
    // Internal Paulis used for fault injection; never emitted by emit_circuit.
    X,
    Y,
    Z,
};

const char *gate_name(GateType g);
bool is_noise(GateType g);

class CircuitParseError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct Instruction {
    GateType gate;
    std::vector<double> args;
    /// Qubit ids, or measurement lookbacks k (meaning rec[-k]) for DETECTOR
    /// and OBSERVABLE_INCLUDE.
    std::vector<uint32_t> targets;

    bool operator==(const Instruction &other) const = default;
    std::string str() const;
};

struct Circuit {
    std::vector<Instruction> instructions;

    /// Appends, fusing with the previous instruction when gate and args match
    /// (DETECTOR, OBSERVABLE_INCLUDE and TICK never fuse).
    void append(GateType gate, std::vector<uint32_t> targets, std::vector<double> args = {});

    size_t num_qubits() const;
    size_t num_measurements() const;
    size_t num_detectors() const;
    size_t num_observables() const;
    size_t count(GateType gate) const;

    /// Copy with every noise channel removed.
    Circuit without_noise() const;

    std::string str() const;
    static Circuit parse(std::string_view text);

    bool operator==(const Circuit &other) const = default;
};

// ---------------------------------------------------------------------------
// Shell strategies and schedules.
// ---------------------------------------------------------------------------

enum class ShellKind : uint8_t { Global, LocalAvg, LocalMax };

struct ShellStrategy {
    ShellKind kind = ShellKind::Global;
    int n_shell = 1;  // GLOBAL
    double r = 0.5;   // LOCALAVG, LOCALMAX

    static ShellStrategy global(int n) {
        return {ShellKind::Global, n, 0};
    }
    static ShellStrategy local_avg(double r) {
        return {ShellKind::LocalAvg, 1, r};
    }
    static ShellStrategy local_max(double r) {
        return {ShellKind::LocalMax, 1, r};
    }

    /// "global-3", "localavg-0.5", ...
    std::string label() const;
    /// Inverse of label(); throws std::invalid_argument.
    static ShellStrategy parse(std::string_view text);
};

/// Per-group shell size. GLOBAL requires 1 <= n_shell <= max(1, (L-1)/2);
/// LOCAL* sizes are floor(r * w) clamped to at least 1.
std::vector<int> shell_sizes(const std::vector<StabilizerGroup> &groups, const ShellStrategy &strategy, int L);

enum class PreparedState : uint8_t { Zero, Plus };

inline Basis memory_basis(PreparedState s) {
    return s == PreparedState::Zero ? Basis::Z : Basis::X;
}
const char *state_name(PreparedState s);

struct Schedule {
    int cycles = 0;
    PreparedState state = PreparedState::Zero;
    std::vector<int> shell;                      // per group
    std::vector<std::vector<Basis>> group_basis;  // [cycle][group]

    Basis basis_at(size_t group, int cycle) const {
        return group_basis[cycle][group];
    }
};

/// Groups alternate bases in blocks of their shell size, starting opposite to
/// the prepared state. Throws std::invalid_argument if cycles < 1.
Schedule build_schedule(const Patch &patch, const std::vector<int> &shell, PreparedState state, int cycles);
Schedule build_schedule(const Patch &patch, const ShellStrategy &strategy, PreparedState state, int cycles, int L);

// ---------------------------------------------------------------------------
// Emission.
// ---------------------------------------------------------------------------

/// Single-parameter superconducting-inspired noise (SI1000 rates).
struct NoiseParams {
    double p = 0;

    double cz() const {
        return p;
    }
    double gate1() const {
        return p / 10;
    }
    double idle() const {
        return p / 10;
    }
    double reset() const {
        return 2 * p;
    }
    double measure() const {
        return 5 * p;
    }
    double readout_idle() const {
        return 2 * p;
    }
};

class ScheduleError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// Everything emit_circuit needs about an adapted device.
struct AdaptedCode {
    const Lattice &lattice;
    const NodeStatus &status;
    const Patch &patch;
};

/// Memory experiment: prepare, run the schedule, read out the data in the
/// memory basis. The observable is the prepared-basis logical operator.
Circuit emit_circuit(const AdaptedCode &code, const Schedule &schedule, const NoiseParams &noise,
                     const LogicalOperator &observable);

/// Convenience: logical placement and schedule from the code itself.
Circuit emit_memory_circuit(const AdaptedCode &code, const ShellStrategy &strategy, PreparedState state,
                            const NoiseParams &noise, int cycles);

struct SweepEntry {
    std::string file;
    std::string strategy;
    double p;
    PreparedState state;
    int cycles;
    size_t num_detectors;
};

struct SweepManifest {
    std::string device_hash;
    std::vector<SweepEntry> entries;

    std::string to_json() const;
};

/// One circuit file per (strategy, p, state), named deterministically, written
/// under out_dir together with manifest.json. Grid points run in parallel.
SweepManifest sweep_circuits(const AdaptedCode &code, const std::string &device_hash,
                             const std::vector<ShellStrategy> &strategies, const std::vector<double> &ps,
                             const std::string &out_dir, int cycles);

}  // namespace bandage

#endif
