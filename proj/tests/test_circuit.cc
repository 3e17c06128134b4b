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

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "bandage/circuit.h"
#include "bandage/verify.h"
#include "doctest.h"
#include "fixtures.h"
#include "json.hpp"

using namespace bandage;

namespace {

Circuit memory(const fixture::Adapted &a, ShellStrategy s, PreparedState st, double p, int cycles) {
    return emit_memory_circuit({a.lattice, a.status, a.patch}, s, st, NoiseParams{p}, cycles);
}

std::set<double> args_of(const Circuit &c, GateType g) {
    std::set<double> out;
    for (const auto &ins : c.instructions) {
        if (ins.gate == g) {
            out.insert(ins.args.at(0));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("circuit text round-trips and rejects malformed input") {
    auto a = fixture::adapt("diag_ab.json", Method::Bandage);
    Circuit c = memory(a, ShellStrategy::global(2), PreparedState::Plus, 0.001, 4);
    CHECK(Circuit::parse(c.str()) == c);
    CHECK(Circuit::parse(c.str()).str() == c.str());
    CHECK_THROWS_AS(Circuit::parse("FOO 1 2"), CircuitParseError);
    CHECK_THROWS_AS(Circuit::parse("DETECTOR rec[1]"), CircuitParseError);
    CHECK_THROWS_AS(Circuit::parse("H x"), CircuitParseError);
    CHECK(Circuit::parse("").instructions.empty());
}

TEST_CASE("append fuses runs of the same gate") {
    Circuit c;
    c.append(GateType::H, {0});
    c.append(GateType::H, {1});
    c.append(GateType::X_ERROR, {0}, {0.1});
    c.append(GateType::X_ERROR, {1}, {0.2});
    c.append(GateType::TICK, {});
    c.append(GateType::TICK, {});
    CHECK(c.instructions.size() == 5);
    CHECK(c.instructions[0].targets == std::vector<uint32_t>{0, 1});
    CHECK(c.str() == "H 0 1\nX_ERROR(0.1) 0\nX_ERROR(0.2) 1\nTICK\nTICK\n");
}

TEST_CASE("noiseless circuits carry no noise channels") {
    auto a = fixture::adapt("diag_abc.json", Method::Bandage);
    Circuit c0 = memory(a, ShellStrategy::global(1), PreparedState::Zero, 0, 3);
    for (GateType g : {GateType::X_ERROR, GateType::DEPOLARIZE1, GateType::DEPOLARIZE2}) {
        CHECK(c0.count(g) == 0);
    }
    Circuit c1 = memory(a, ShellStrategy::global(1), PreparedState::Zero, 0.003, 3);
    CHECK(c1.without_noise() == c0);
}

TEST_CASE("SI1000 rates") {
    auto a = fixture::defect_free(3);
    double p = 0.001;
    Circuit c = memory(a, ShellStrategy::global(1), PreparedState::Zero, p, 2);
    CHECK(args_of(c, GateType::DEPOLARIZE2) == std::set<double>{p});
    CHECK(args_of(c, GateType::DEPOLARIZE1) == std::set<double>{p / 10, 2 * p});
    CHECK(args_of(c, GateType::X_ERROR) == std::set<double>{2 * p, 5 * p});
    // Every measurement is preceded by a 5p flip on the same qubits.
    for (size_t i = 0; i < c.instructions.size(); ++i) {
        if (c.instructions[i].gate != GateType::M) {
            continue;
        }
        REQUIRE(i > 0);
        const Instruction &prev = c.instructions[i - 1];
        CHECK(prev.gate == GateType::X_ERROR);
        CHECK(prev.args[0] == 5 * p);
        CHECK(prev.targets == c.instructions[i].targets);
    }
    CHECK_THROWS_AS(memory(a, ShellStrategy::global(1), PreparedState::Zero, 0.5, 2), std::invalid_argument);
    CHECK_THROWS_AS(memory(a, ShellStrategy::global(1), PreparedState::Zero, -0.1, 2), std::invalid_argument);
}

TEST_CASE("defect-free memory circuit counts") {
    for (int L : {3, 5}) {
        for (int cycles : {1, 3}) {
            auto a = fixture::defect_free(L);
            Circuit c = memory(a, ShellStrategy::global(1), PreparedState::Zero, 0, cycles);
            size_t half = static_cast<size_t>((L * L - 1) / 2);
            CHECK(c.num_qubits() == a.lattice.num_nodes());
            CHECK(c.num_measurements() == static_cast<size_t>(cycles) * (L * L - 1) + static_cast<size_t>(L * L));
            // Z checks in the first cycle, every check after it, Z checks at readout.
            CHECK(c.num_detectors() == half + static_cast<size_t>(cycles - 1) * 2 * half + half);
            CHECK(c.num_observables() == 1);
            CHECK(check_determinism(c).ok());
        }
    }
}

TEST_CASE("shell strategies") {
    CHECK(ShellStrategy::global(3).label() == "global-3");
    CHECK(ShellStrategy::local_avg(0.5).label() == "localavg-0.5");
    CHECK(ShellStrategy::parse("localmax-1").kind == ShellKind::LocalMax);
    CHECK(ShellStrategy::parse("global-2").n_shell == 2);
    CHECK_THROWS_AS(ShellStrategy::parse("global"), std::invalid_argument);
    CHECK_THROWS_AS(ShellStrategy::parse("sideways-2"), std::invalid_argument);

    auto a = fixture::adapt("diag_abc.json", Method::Bandage);
    const auto &groups = a.patch.groups;
    REQUIRE(!groups.empty());
    CHECK(shell_sizes(groups, ShellStrategy::global(3), 7) == std::vector<int>(groups.size(), 3));
    CHECK_THROWS_AS(shell_sizes(groups, ShellStrategy::global(4), 7), std::invalid_argument);
    CHECK_THROWS_AS(shell_sizes(groups, ShellStrategy::global(0), 7), std::invalid_argument);
    auto local = shell_sizes(groups, ShellStrategy::local_avg(0.5), 7);
    for (size_t g = 0; g < groups.size(); ++g) {
        CHECK(local[g] == std::max(1, static_cast<int>(std::floor(0.5 * groups[g].w_avg + 1e-9))));
    }
    auto tiny = shell_sizes(groups, ShellStrategy::local_max(0.01), 7);
    CHECK(tiny == std::vector<int>(groups.size(), 1));
}

TEST_CASE("schedules alternate in shell-sized blocks, starting opposite the prepared state") {
    auto a = fixture::adapt("diag_ab.json", Method::Bandage);
    REQUIRE(a.patch.groups.size() >= 1);
    std::vector<int> shell(a.patch.groups.size(), 2);
    Schedule s = build_schedule(a.patch, shell, PreparedState::Zero, 7);
    for (int t = 0; t < 7; ++t) {
        Basis expect = (t / 2) % 2 == 0 ? Basis::X : Basis::Z;
        CHECK(s.basis_at(0, t) == expect);
    }
    Schedule plus = build_schedule(a.patch, shell, PreparedState::Plus, 3);
    CHECK(plus.basis_at(0, 0) == Basis::Z);
    CHECK_THROWS_AS(build_schedule(a.patch, shell, PreparedState::Zero, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_schedule(a.patch, std::vector<int>{}, PreparedState::Zero, 3), ScheduleError);
}

TEST_CASE("observable must match the prepared basis") {
    auto a = fixture::adapt("diag_a.json", Method::Bandage);
    LogicalPair lp = place_logicals(a.lattice, a.status, a.patch);
    Schedule s = build_schedule(a.patch, ShellStrategy::global(1), PreparedState::Zero, 2, 7);
    CHECK_THROWS_AS(emit_circuit({a.lattice, a.status, a.patch}, s, NoiseParams{0}, lp.x), ScheduleError);
    CHECK_NOTHROW(emit_circuit({a.lattice, a.status, a.patch}, s, NoiseParams{0}, lp.z));
}

TEST_CASE("memory circuits are deterministic on random devices") {
    size_t circuits = 0;
    for (uint64_t seed = 0; seed < 12; ++seed) {
        for (Method m : {Method::Bandage, Method::Traditional}) {
            fixture::Adapted a;
            try {
                a = fixture::random_device(7, 0.03, seed, m);
                place_logicals(a.lattice, a.status, a.patch);
            } catch (const std::runtime_error &) {
                continue;
            }
            for (PreparedState st : {PreparedState::Zero, PreparedState::Plus}) {
                for (ShellStrategy s : {ShellStrategy::global(1), ShellStrategy::global(3), ShellStrategy::local_avg(1.0)}) {
                    CAPTURE(seed);
                    Circuit c = memory(a, s, st, 0, 5);
                    DeterminismReport r = check_determinism(c);
                    CHECK_MESSAGE(r.ok(), r.summary());
                    ++circuits;
                }
            }
        }
    }
    CHECK(circuits > 50);
}

TEST_CASE("sweep writes deterministic circuit files and a manifest") {
    auto a = fixture::adapt("diag_ab.json", Method::Bandage);
    auto dir = std::filesystem::temp_directory_path() / "bandage_sweep_test";
    std::filesystem::remove_all(dir);
    std::vector<ShellStrategy> strategies{ShellStrategy::global(1), ShellStrategy::local_avg(0.5)};
    std::vector<double> ps{0.001, 0.002};
    SweepManifest m = sweep_circuits({a.lattice, a.status, a.patch}, "abc", strategies, ps, dir.string(), 3);
    CHECK(m.entries.size() == 8);
    CHECK(std::filesystem::exists(dir / "global-1_p0.001_zero.stim"));
    CHECK(std::filesystem::exists(dir / "localavg-0.5_p0.002_plus.stim"));
    auto manifest = nlohmann::json::parse(std::ifstream(dir / "manifest.json"));
    CHECK(manifest["device_hash"] == "abc");
    CHECK(manifest["circuits"].size() == 8);

    std::ifstream in(dir / "global-1_p0.001_zero.stim");
    std::stringstream ss;
    ss << in.rdbuf();
    Circuit direct = memory(a, ShellStrategy::global(1), PreparedState::Zero, 0.001, 3);
    CHECK(ss.str() == direct.str());
    std::filesystem::remove_all(dir);
}
