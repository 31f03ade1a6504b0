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

#ifndef PTDILATE_CIRCUITSIM_H
#define PTDILATE_CIRCUITSIM_H

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ptdilate/circuit.h"
#include "ptdilate/linalg.h"

namespace ptdilate {

inline constexpr uint64_t kDefaultShots = 8192;
/// Post-selection success probability below which a result is flagged starved.
inline constexpr double kPostselectFloor = 1e-3;

/// Exact state-vector execution, all-to-all connectivity.
StateVector run_ideal(const Circuit &circuit, const StateVector &initial);

/// |amplitude|^2 in basis order.
std::vector<double> probabilities(const StateVector &state);

/// "010"-style label of a basis index, wire 0 first.
std::string basis_string(size_t index, size_t num_wires);

/// Measurement counts of one setting. Counts are dense in basis order (wire 0 is
/// the most significant bit).
struct ShotTable {
    std::string setting_id;
    size_t num_wires = 0;
    uint64_t shots = 0;
    uint64_t seed = 0;
    std::vector<uint64_t> counts;

    uint64_t total() const;
    std::vector<double> frequencies() const;
    std::map<std::string, uint64_t> count_map() const;
};

/// JSON {setting_id, shots, seed, counts: {basis: count}}.
std::string shot_table_to_json(const ShotTable &table);
ShotTable shot_table_from_json(const std::string &text);
/// CSV with header basis,count; one row per basis state.
std::string shot_table_to_csv(const ShotTable &table);

/// Multinomial draw: each shot looks up one uniform variate in the cumulative
/// distribution. Stream: CounterRng(seed, setting_id).
ShotTable sample(const StateVector &state, uint64_t shots, uint64_t seed, const std::string &setting_id = "");
ShotTable sample_probabilities(std::span<const double> probs, uint64_t shots, uint64_t seed,
                               const std::string &setting_id = "");

struct WireFidelity {
    double f0 = 1;  // P(read 0 | prepared 0)
    double f1 = 1;  // P(read 1 | prepared 1)
};

/// Independent per-wire assignment errors; F = F_0 (x) F_1 (x) ... with
/// F_i = [[f0, 1 - f1], [1 - f0, f1]].
struct ReadoutModel {
    std::vector<WireFidelity> wires;

    static ReadoutModel ideal(size_t num_wires);
    /// Ancilla (wire 0) f0 = 0.99, f1 = 0.89; system wires f0 = 0.99, f1 = 0.98.
    static ReadoutModel device_defaults(size_t num_wires);
    /// Dense F for checks and small problems.
    std::vector<std::vector<double>> matrix() const;
};

/// Flips each shot's bits independently. Stream: CounterRng(seed, setting_id + "/readout").
ShotTable apply_readout_noise(const ShotTable &table, const ReadoutModel &model, uint64_t seed);

/// F p, applied factor by factor.
std::vector<double> apply_confusion(std::span<const double> probs, const ReadoutModel &model);

/// F^{-1} p_m, then negative entries clipped to zero and the vector renormalized.
/// Throws std::domain_error when some F_i is singular (f0 + f1 = 1).
std::vector<double> correct_readout(std::span<const double> measured, const ReadoutModel &model);
/// F^{-1} p_m without clipping.
std::vector<double> invert_readout(std::span<const double> measured, const ReadoutModel &model);

struct PostselectResult {
    std::vector<double> probabilities;  // over the remaining wires, renormalized
    double success_prob = 0;
    bool starved = false;  // success_prob below the floor
};

/// Keeps outcomes whose wire 0 (the ancilla) equals ancilla_value. Throws
/// std::domain_error when nothing survives.
PostselectResult postselect(std::span<const double> probs, int ancilla_value, double floor = kPostselectFloor);
PostselectResult postselect(const ShotTable &table, int ancilla_value, double floor = kPostselectFloor);

}  // namespace ptdilate

#endif
