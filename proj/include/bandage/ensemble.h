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

#ifndef BANDAGE_ENSEMBLE_H
#define BANDAGE_ENSEMBLE_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bandage/adapter.h"

namespace bandage {

enum class MethodChoice : uint8_t { Bandage, Traditional, Both };

std::vector<Method> methods_of(MethodChoice choice);

struct EnsembleSpec {
    int L = 27;
    double qubit_rate = 0.02;
    double coupler_rate = 0.02;
    int n_devices = 100;
    uint64_t base_seed = 0;
    MethodChoice method = MethodChoice::Both;

    /// Throws std::invalid_argument on a bad spec.
    void validate() const;
    /// Canonical one-line description, and its FNV-1a hash.
    std::string canonical() const;
    uint64_t hash() const;
};

/// Metrics of one adapted device.
struct DeviceRow {
    int device = 0;
    uint64_t seed = 0;
    Method method = Method::Bandage;
    bool ok = false;
    std::string failure;  // empty when ok
    size_t defective_qubits = 0;
    size_t defective_couplers = 0;
    size_t dx = 0;
    size_t dz = 0;
    size_t disabled = 0;       // data + syndrome
    size_t disabled_data = 0;
    double disabled_pct = 0;   // 100 * disabled / (2L^2 - 1)
    size_t num_super = 0;
    size_t super_weight_sum = 0;
};

/// Adapts one device and measures it; failures are recorded, not thrown.
DeviceRow evaluate_device(const Lattice &lattice, const DefectMap &defects, Method method);

struct MethodStats {
    Method method = Method::Bandage;
    size_t n_ok = 0;
    size_t n_failed = 0;
    double avg_dx = 0;
    double avg_dz = 0;
    double disabled_pct = 0;
    /// Total super-stabilizer weight over total super-stabilizer count,
    /// across all successful devices.
    double w_avg = 0;
};

struct EnsembleStats {
    EnsembleSpec spec;
    std::vector<DeviceRow> rows;  // device-major, methods in enum order
    std::vector<MethodStats> summary;

    std::optional<MethodStats> stats(Method m) const;
    std::string rows_csv() const;
    std::string summary_csv() const;
};

/// Device k uses seed base_seed + k. Devices run in parallel; aggregation is
/// serial and in device order, so the result does not depend on threading.
EnsembleStats run_ensemble(const EnsembleSpec &spec);
EnsembleStats run_ensemble_serial(const EnsembleSpec &spec);

MethodStats aggregate(Method method, const std::vector<DeviceRow> &rows);

struct PairedDelta {
    int device = 0;
    bool both_ok = false;
    long d_dx = 0;        // bandage - traditional
    long d_dz = 0;
    long d_disabled = 0;
    double d_w_avg = 0;   // per-device average super weight difference
};

struct Comparison {
    EnsembleStats stats;
    std::vector<PairedDelta> deltas;
    size_t paired = 0;               // devices where both methods succeeded
    size_t distance_dominant = 0;    // bandage dx and dz both >= traditional
    size_t disabled_dominant = 0;    // bandage disables no more qubits
    size_t bandage_only_ok = 0;      // traditional failed, bandage did not
    double distance_improvement = 0; // (sum of bandage means) / (sum of traditional means) - 1

    std::string csv() const;
};

/// Runs both methods on the same devices. spec.method is ignored.
Comparison compare_methods(EnsembleSpec spec);

}  // namespace bandage

#endif
