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

#ifndef PTDILATE_SYNTHESIS_H
#define PTDILATE_SYNTHESIS_H

#include <array>
#include <cstdint>
#include <string>

#include "ptdilate/circuit.h"
#include "ptdilate/linalg.h"

namespace ptdilate {

/// Number of real parameters of the 3-CNOT template: 8 U3 slots and a global phase.
inline constexpr size_t kTemplateParams = 25;

using TemplateAngles = std::array<double, kTemplateParams>;

enum class Optimizer { kLevenbergMarquardt, kNelderMead };

const char *optimizer_name(Optimizer opt);
Optimizer optimizer_from_name(const std::string &name);

struct SynthesisOptions {
    Optimizer optimizer = Optimizer::kNelderMead;
    int restarts = 8;
    uint64_t seed = 1;
    /// Stop restarting once a run reaches this err_u.
    double target_err = 1e-9;
    /// err_u above which the report is flagged failed.
    double accept_err = 5e-4;
    /// Per-restart budget of cost evaluations (Nelder-Mead) or iterations (LM).
    int max_evaluations = 20000;
    int max_iterations = 400;
    /// Relative cost improvement below which a run is considered converged.
    double tolerance = 1e-12;
    /// Default: q (wire 1) controls, a (wire 0) is the target.
    bool control_on_ancilla = false;
};

struct SynthesisReport {
    Circuit circuit;
    double err_u = 0;
    double fidelity_fu = 0;
    int iterations = 0;
    int restarts_used = 0;
    bool failed = false;
};

/// ||target - candidate||_2 / ||target||_2.
double err_u(const ComplexMatrix &target, const ComplexMatrix &candidate);

/// Template circuit on wires (a, q): slot pairs (U3 on a, U3 on q) separated by
/// three CNOTs. Parameter layout: slot k uses [6k, 6k+3) on a and [6k+3, 6k+6) on
/// q; index 24 is the global phase.
Circuit template_circuit(const TemplateAngles &params, bool control_on_ancilla = false);

/// Unitary of a template-conformant circuit. Throws std::invalid_argument when the
/// gate list is not U3 U3 CNOT U3 U3 CNOT U3 U3 CNOT U3 U3 on two wires, with each
/// U3 pair covering both wires and all CNOTs sharing one orientation.
ComplexMatrix assemble(const Circuit &circuit);

/// Wraps into (-2 pi, 2 pi], the period of the half-angle exponentials.
double wrap_angle(double angle);

/// Fits the template to a 4x4 unitary. Deterministic for fixed options.seed.
SynthesisReport decompose(const ComplexMatrix &target, const SynthesisOptions &options = {});

}  // namespace ptdilate

#endif
