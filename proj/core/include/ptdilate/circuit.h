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

#ifndef PTDILATE_CIRCUIT_H
#define PTDILATE_CIRCUIT_H

#include <string>
#include <vector>

#include "ptdilate/linalg.h"

namespace ptdilate {

/// Gate vocabulary. kPrep is an Ry rotation used to prepare a wire from |0>
/// (the ancilla preparation Ry(theta)); it is kept distinct so circuits read as
/// the experiment does.
enum class GateKind { kRy, kRz, kU3, kH, kRxHalfPi, kCnot, kPrep };

const char *gate_kind_name(GateKind kind);
/// Throws std::invalid_argument for unknown names.
GateKind gate_kind_from_name(const std::string &name);

struct Gate {
    GateKind kind;
    std::vector<size_t> wires;   // CNOT: {control, target}
    std::vector<double> angles;  // Ry/Rz/Prep: 1, U3: 3 (alpha, beta, gamma), others: 0
};

/// Gate list on named wires; wire 0 is the most significant bit.
struct Circuit {
    std::vector<std::string> wires;
    std::vector<Gate> gates;
    double global_phase = 0;

    size_t num_wires() const {
        return wires.size();
    }
    size_t dim() const {
        return size_t{1} << wires.size();
    }
    size_t count(GateKind kind) const;

    Circuit &ry(size_t wire, double angle);
    Circuit &rz(size_t wire, double angle);
    Circuit &u3(size_t wire, double alpha, double beta, double gamma);
    Circuit &h(size_t wire);
    Circuit &rx_half_pi(size_t wire);
    Circuit &cnot(size_t control, size_t target);
    Circuit &prep(size_t wire, double theta);
    /// Appends another circuit's gates with its wire i mapped to wire_map[i].
    Circuit &append(const Circuit &other, const std::vector<size_t> &wire_map);
};

/// 2x2 matrix of a single-wire gate or the 4x4 CNOT (first wire control).
ComplexMatrix gate_matrix(const Gate &gate);

/// Applies one gate in place. Throws std::invalid_argument for out-of-range wires
/// or malformed angle lists.
void apply_gate(const Gate &gate, size_t num_wires, std::span<cdouble> amplitudes);

/// Full unitary including the global phase.
ComplexMatrix circuit_unitary(const Circuit &circuit);

std::string circuit_to_json(const Circuit &circuit);
Circuit circuit_from_json(const std::string &text);

}  // namespace ptdilate

#endif
