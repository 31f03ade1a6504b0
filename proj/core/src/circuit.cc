// Copyright 2026 The ptdilate Authors
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

#include "ptdilate/circuit.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace ptdilate {

namespace {

struct KindName {
    GateKind kind;
    const char *name;
    size_t wires;
    size_t angles;
};

constexpr KindName kKinds[] = {
    {GateKind::kRy, "Ry", 1, 1},
    {GateKind::kRz, "Rz", 1, 1},
    {GateKind::kU3, "U3", 1, 3},
    {GateKind::kH, "H", 1, 0},
    {GateKind::kRxHalfPi, "RxHalfPi", 1, 0},
    {GateKind::kCnot, "CNOT", 2, 0},
    {GateKind::kPrep, "Prep", 1, 1},
};

const KindName &kind_info(GateKind kind) {
    for (const auto &k : kKinds) {
        if (k.kind == kind) {
            return k;
        }
    }
    throw std::invalid_argument("unknown gate kind");
}

void check_gate(const Gate &gate, size_t num_wires) {
    const auto &info = kind_info(gate.kind);
    if (gate.wires.size() != info.wires) {
        throw std::invalid_argument(std::string("gate ") + info.name + ": expected " + std::to_string(info.wires) +
                                    " wire(s)");
    }
    if (gate.angles.size() != info.angles) {
        throw std::invalid_argument(std::string("gate ") + info.name + ": expected " + std::to_string(info.angles) +
                                    " angle(s)");
    }
    for (size_t w : gate.wires) {
        if (w >= num_wires) {
            throw std::invalid_argument(std::string("gate ") + info.name + ": wire " + std::to_string(w) +
                                        " out of range");
        }
    }
    if (gate.wires.size() == 2 && gate.wires[0] == gate.wires[1]) {
        throw std::invalid_argument("CNOT: control and target coincide");
    }
}

}  // namespace

const char *gate_kind_name(GateKind kind) {
    return kind_info(kind).name;
}

GateKind gate_kind_from_name(const std::string &name) {
    for (const auto &k : kKinds) {
        if (name == k.name) {
            return k.kind;
        }
    }
    throw std::invalid_argument("unknown gate kind '" + name + "'");
}

size_t Circuit::count(GateKind kind) const {
    return static_cast<size_t>(std::count_if(gates.begin(), gates.end(), [&](const Gate &g) { return g.kind == kind; }));
}

Circuit &Circuit::ry(size_t wire, double angle) {
    gates.push_back({GateKind::kRy, {wire}, {angle}});
    return *this;
}

Circuit &Circuit::rz(size_t wire, double angle) {
    gates.push_back({GateKind::kRz, {wire}, {angle}});
    return *this;
}

Circuit &Circuit::u3(size_t wire, double alpha, double beta, double gamma) {
    gates.push_back({GateKind::kU3, {wire}, {alpha, beta, gamma}});
    return *this;
}

Circuit &Circuit::h(size_t wire) {
    gates.push_back({GateKind::kH, {wire}, {}});
    return *this;
}

Circuit &Circuit::rx_half_pi(size_t wire) {
    gates.push_back({GateKind::kRxHalfPi, {wire}, {}});
    return *this;
}

Circuit &Circuit::cnot(size_t control, size_t target) {
    gates.push_back({GateKind::kCnot, {control, target}, {}});
    return *this;
}

Circuit &Circuit::prep(size_t wire, double theta) {
    gates.push_back({GateKind::kPrep, {wire}, {theta}});
    return *this;
}

Circuit &Circuit::append(const Circuit &other, const std::vector<size_t> &wire_map) {
    if (wire_map.size() != other.num_wires()) {
        throw std::invalid_argument("Circuit::append: wire map size mismatch");
    }
    for (Gate g : other.gates) {
        for (auto &w : g.wires) {
            w = wire_map.at(w);
        }
        gates.push_back(std::move(g));
    }
    global_phase += other.global_phase;
    return *this;
}

ComplexMatrix gate_matrix(const Gate &gate) {
    check_gate(gate, gate.kind == GateKind::kCnot ? std::max(gate.wires[0], gate.wires[1]) + 1 : gate.wires[0] + 1);
    switch (gate.kind) {
        case GateKind::kRy:
        case GateKind::kPrep:
            return gates::ry(gate.angles[0]);
        case GateKind::kRz:
            return gates::rz(gate.angles[0]);
        case GateKind::kU3:
            return gates::u3(gate.angles[0], gate.angles[1], gate.angles[2]);
        case GateKind::kH:
            return gates::hadamard();
        case GateKind::kRxHalfPi:
            return gates::rx(std::numbers::pi / 2);
        case GateKind::kCnot:
            return gates::cnot();
    }
    throw std::invalid_argument("gate_matrix: unknown gate kind");
}

void apply_gate(const Gate &gate, size_t num_wires, std::span<cdouble> amplitudes) {
    check_gate(gate, num_wires);
    size_t dim = size_t{1} << num_wires;
    if (amplitudes.size() != dim) {
        throw std::invalid_argument("apply_gate: amplitude count does not match the wire count");
    }
    if (gate.kind == GateKind::kCnot) {
        size_t cbit = size_t{1} << (num_wires - 1 - gate.wires[0]);
        size_t tbit = size_t{1} << (num_wires - 1 - gate.wires[1]);
        for (size_t i = 0; i < dim; i++) {
            if ((i & cbit) != 0 && (i & tbit) == 0) {
                std::swap(amplitudes[i], amplitudes[i | tbit]);
            }
        }
        return;
    }
    auto m = gate_matrix(gate);
    size_t bit = size_t{1} << (num_wires - 1 - gate.wires[0]);
    for (size_t i = 0; i < dim; i++) {
        if ((i & bit) != 0) {
            continue;
        }
        cdouble a0 = amplitudes[i];
        cdouble a1 = amplitudes[i | bit];
        amplitudes[i] = m(0, 0) * a0 + m(0, 1) * a1;
        amplitudes[i | bit] = m(1, 0) * a0 + m(1, 1) * a1;
    }
}

ComplexMatrix circuit_unitary(const Circuit &circuit) {
    size_t n = circuit.num_wires();
    if (n == 0 || n > 3) {
        throw std::invalid_argument("circuit_unitary: supports one to three wires");
    }
    size_t dim = circuit.dim();
    ComplexMatrix u(dim);
    std::vector<cdouble> column(dim);
    cdouble phase = std::polar(1.0, circuit.global_phase);
    for (size_t c = 0; c < dim; c++) {
        std::fill(column.begin(), column.end(), cdouble(0));
        column[c] = 1;
        for (const auto &g : circuit.gates) {
            apply_gate(g, n, column);
        }
        for (size_t r = 0; r < dim; r++) {
            u(r, c) = phase * column[r];
        }
    }
    return u;
}

std::string circuit_to_json(const Circuit &circuit) {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto &g : circuit.gates) {
        gates.push_back({{"kind", gate_kind_name(g.kind)}, {"wires", g.wires}, {"angles", g.angles}});
    }
    nlohmann::json j{{"wires", circuit.wires}, {"gates", gates}, {"global_phase", circuit.global_phase}};
    return j.dump(2);
}

Circuit circuit_from_json(const std::string &text) {
    auto j = nlohmann::json::parse(text);
    Circuit c;
    c.wires = j.at("wires").get<std::vector<std::string>>();
    c.global_phase = j.value("global_phase", 0.0);
    for (const auto &g : j.at("gates")) {
        Gate gate{gate_kind_from_name(g.at("kind").get<std::string>()), g.at("wires").get<std::vector<size_t>>(),
                  g.value("angles", std::vector<double>{})};
        check_gate(gate, c.num_wires());
        c.gates.push_back(std::move(gate));
    }
    return c;
}

}  // namespace ptdilate
