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

#ifndef BANDAGE_TESTS_FIXTURES_H
#define BANDAGE_TESTS_FIXTURES_H

#include <fstream>
#include <sstream>
#include <string>

#include "bandage/adapter.h"
#include "bandage/defects.h"
#include "bandage/logical.h"
#include "bandage/patch.h"

namespace fixture {

inline std::string read(const std::string &name) {
    std::ifstream in(std::string(BANDAGE_FIXTURE_DIR) + "/" + name);
    if (!in) {
        throw std::runtime_error("missing fixture " + name);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline bandage::Device load(const std::string &name) {
    return bandage::parse_device(read(name));
}

/// A device adapted by one method, with its patch.
struct Adapted {
    bandage::Lattice lattice{3};
    bandage::DefectMap defects;
    bandage::NodeStatus status;
    bandage::Patch patch;
};

inline Adapted adapt(bandage::Lattice lattice, bandage::DefectMap defects, bandage::Method method) {
    bandage::NodeStatus status = bandage::adapt(lattice, defects, method);
    bandage::Patch patch = bandage::build_patch(lattice, status);
    return {std::move(lattice), std::move(defects), std::move(status), std::move(patch)};
}

inline Adapted adapt(const std::string &name, bandage::Method method) {
    bandage::Device d = load(name);
    return fixture::adapt(std::move(d.lattice), std::move(d.defects), method);
}

inline Adapted random_device(int L, double rate, uint64_t seed, bandage::Method method) {
    bandage::Lattice lattice(L);
    bandage::DefectMap defects = bandage::inject_defects(lattice, rate, rate, seed);
    return fixture::adapt(std::move(lattice), std::move(defects), method);
}

inline Adapted defect_free(int L, bandage::Method method = bandage::Method::Bandage) {
    bandage::Lattice lattice(L);
    bandage::DefectMap defects(lattice);
    return fixture::adapt(std::move(lattice), std::move(defects), method);
}

inline bandage::NodeId at(const bandage::Lattice &lattice, int x, int y) {
    return lattice.at({x, y});
}

}  // namespace fixture

#endif
