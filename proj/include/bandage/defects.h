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

#ifndef BANDAGE_DEFECTS_H
#define BANDAGE_DEFECTS_H

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bandage/lattice.h"

namespace bandage {

/// Fabrication defects of one device. Coupler defects stay on edges; turning
/// them into disabled qubits is the adapter's job.
class DefectMap {
   public:
    DefectMap() = default;
    explicit DefectMap(const Lattice &lattice);

    void mark_qubit(NodeId id);
    void mark_coupler(EdgeId id);

    bool qubit(NodeId id) const {
        return qubits_[id] != 0;
    }
    bool coupler(EdgeId id) const {
        return couplers_[id] != 0;
    }

    /// Defective qubits/couplers in canonical (lexicographic) order.
    std::vector<Coord> qubit_coords(const Lattice &lattice) const;
    std::vector<std::pair<Coord, Coord>> coupler_coords(const Lattice &lattice) const;

    size_t num_defective_qubits() const;
    size_t num_defective_couplers() const;

    double qubit_rate = 0.0;
    double coupler_rate = 0.0;
    uint64_t seed = 0;
    bool has_meta = false;

   private:
    std::vector<uint8_t> qubits_;
    std::vector<uint8_t> couplers_;
};

/// Canonical endpoint order for a coupler: lexicographically smaller first.
std::pair<Coord, Coord> canonical_coupler(Coord a, Coord b);

/// Marks each qubit (row-major by coordinate, i.e. by (y, x)) and then each
/// coupler (by canonical endpoint pair) defective independently. Draws come
/// from std::mt19937_64 seeded with `seed`; a draw u = (word >> 11) * 2^-53
/// marks the entity when u < rate.
DefectMap inject_defects(const Lattice &lattice, double qubit_rate, double coupler_rate, uint64_t seed);

class ParseError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct Device {
    Lattice lattice;
    DefectMap defects;
};

/// Device file: JSON object with `size`, `defects.qubits` ([[x, y], ...]),
/// `defects.couplers` ([[[x1, y1], [x2, y2]], ...]) and optional
/// `meta` {qubit_rate, coupler_rate, seed}.
Device parse_device(const std::string &text);
std::string serialize_device(const Lattice &lattice, const DefectMap &defects);

/// 64-bit FNV-1a, used for content hashes in manifests and CSV headers.
uint64_t fnv1a64(const std::string &text);
std::string hex64(uint64_t v);

}  // namespace bandage

#endif
