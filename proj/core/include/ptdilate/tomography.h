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

#ifndef PTDILATE_TOMOGRAPHY_H
#define PTDILATE_TOMOGRAPHY_H

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ptdilate/circuit.h"
#include "ptdilate/circuitsim.h"
#include "ptdilate/density_matrix.h"

namespace ptdilate {

/// Where T6/T7 put the rotation after the CNOT.
///
/// kSupplement: CNOT(q -> q') then H or Rx(pi/2) on q.
/// kMainText: CNOT(q' -> q) then H or Rx(pi/2) on q'. With the CNOT controlled by
/// q' this reads the same rho_14 / rho_23 elements.
enum class CoherenceConvention { kSupplement, kMainText };

const char *convention_name(CoherenceConvention c);
CoherenceConvention convention_from_name(const std::string &name);

/// One matrix element (0-based row, col) determined as sum_i coeff_i * p_i.
struct ElementRef {
    size_t row;
    size_t col;
    bool imaginary;
    std::vector<std::pair<size_t, double>> terms;
};

struct TomographySetting {
    std::string id;
    Circuit pre_rotation;  // on the system wires, applied before measuring
    std::vector<ElementRef> element_map;
};

/// Settings X, Y, Z.
std::vector<TomographySetting> single_qubit_settings();
/// Settings T1..T7 on wires (q, q').
std::vector<TomographySetting> two_qubit_settings(CoherenceConvention convention = CoherenceConvention::kSupplement);

/// Outcome distribution over the system wires, keyed by setting id.
using SettingProbabilities = std::map<std::string, std::vector<double>>;

/// Exact outcome distributions of rho under each setting.
SettingProbabilities forward_probabilities(const ComplexMatrix &rho, const std::vector<TomographySetting> &settings);

/// Hermitian matrix assembled from the element maps, before projection. Throws
/// std::invalid_argument when a setting is missing.
ComplexMatrix linear_reconstruct(const SettingProbabilities &probs, const std::vector<TomographySetting> &settings);

/// Nearest unit-trace positive semidefinite matrix in Frobenius norm: the
/// eigenvalues are projected onto the probability simplex.
DensityMatrix psd_project(const ComplexMatrix &hermitian);

DensityMatrix single_qubit_reconstruct(const SettingProbabilities &probs);
DensityMatrix two_qubit_reconstruct(const SettingProbabilities &probs,
                                    CoherenceConvention convention = CoherenceConvention::kSupplement);

/// Turns per-setting shot tables into system-wire distributions. When the tables
/// carry one more wire than the system, the frequencies are readout-corrected
/// (if a model is given) and post-selected on wire 0 == postselect_on. Throws on
/// inconsistent shot counts or a starved post-selection with zero survivors.
SettingProbabilities probabilities_from_tables(const std::vector<ShotTable> &tables, size_t system_wires,
                                               int postselect_on = 0, const ReadoutModel *correction = nullptr);

}  // namespace ptdilate

#endif
