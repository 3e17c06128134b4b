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

#ifndef BANDAGE_REPORT_H
#define BANDAGE_REPORT_H

#include <string>

#include "bandage/adapter.h"
#include "bandage/ensemble.h"
#include "bandage/logical.h"
#include "bandage/patch.h"
#include "json.hpp"

namespace bandage {

/// Disabled nodes with reasons, final boundary membership and counts.
nlohmann::json adaptation_report(
    const Lattice &lattice, const DefectMap &defects, const NodeStatus &status, Method method);

/// Per stabilizer: basis, members, mod-2 support, weight and group id; plus
/// the groups themselves.
nlohmann::json stabilizer_dump(const Lattice &lattice, const Patch &patch);

/// Per basis: support, weight, and the blind qubits the operator avoids.
nlohmann::json logical_dump(
    const Lattice &lattice, const NodeStatus &status, const Patch &patch, const LogicalPair &logicals);

/// Disabled node coordinates in lexicographic order, and counts.
nlohmann::json status_dump(const Lattice &lattice, const NodeStatus &status);

/// SVG of an adapted lattice: disabled nodes grey, defects outlined red,
/// super-stabilizer groups as colored halos, logical supports as paths.
/// The status and stabilizer dumps are embedded in a <metadata> element.
/// `logicals` may be null when the device encodes no qubit.
std::string render_svg(
    const Lattice &lattice,
    const DefectMap &defects,
    const NodeStatus &status,
    const Patch &patch,
    const LogicalPair *logicals,
    Method method);

/// The JSON embedded by render_svg. Throws std::runtime_error if absent.
nlohmann::json svg_metadata(const std::string &svg);

/// Bar chart of the per-method means of an ensemble summary.
std::string render_summary_svg(const EnsembleStats &stats);

}  // namespace bandage

#endif
