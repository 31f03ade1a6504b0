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

#include "ptdilate/circuitsim.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "ptdilate/random.h"

namespace ptdilate {

namespace {

size_t wires_of(size_t size) {
    if (size == 0 || (size & (size - 1)) != 0) {
        throw std::invalid_argument("probability vector length must be a power of two");
    }
    return static_cast<size_t>(std::countr_zero(size));
}

void check_model(const ReadoutModel &model, size_t num_wires) {
    if (model.wires.size() != num_wires) {
        throw std::invalid_argument("readout model covers " + std::to_string(model.wires.size()) + " wires, data has " +
                                    std::to_string(num_wires));
    }
    for (const auto &w : model.wires) {
        if (!(w.f0 >= 0 && w.f0 <= 1 && w.f1 >= 0 && w.f1 <= 1)) {
            throw std::invalid_argument("readout fidelities must lie in [0, 1]");
        }
    }
}

// Applies a 2x2 real matrix to one wire of a probability vector.
void apply_wire(std::vector<double> &p, size_t num_wires, size_t wire, const double m[2][2]) {
    size_t bit = size_t{1} << (num_wires - 1 - wire);
    for (size_t i = 0; i < p.size(); i++) {
        if ((i & bit) != 0) {
            continue;
        }
        double a = p[i];
        double b = p[i | bit];
        p[i] = m[0][0] * a + m[0][1] * b;
        p[i | bit] = m[1][0] * a + m[1][1] * b;
    }
}

}  // namespace

StateVector run_ideal(const Circuit &circuit, const StateVector &initial) {
    if (initial.dim() != circuit.dim()) {
        throw std::invalid_argument("run_ideal: state dimension does not match the circuit wires");
    }
    std::vector<cdouble> amps(initial.amplitudes().begin(), initial.amplitudes().end());
    for (const auto &g : circuit.gates) {
        apply_gate(g, circuit.num_wires(), amps);
    }
    cdouble phase = std::polar(1.0, circuit.global_phase);
    for (auto &a : amps) {
        a *= phase;
    }
    if (initial.labeled_normalized()) {
        return StateVector::normalized(amps);
    }
    return StateVector::unnormalized(amps);
}

std::vector<double> probabilities(const StateVector &state) {
    std::vector<double> p(state.dim());
    for (size_t i = 0; i < state.dim(); i++) {
        p[i] = std::norm(state[i]);
    }
    return p;
}

std::string basis_string(size_t index, size_t num_wires) {
    std::string s(num_wires, '0');
    for (size_t w = 0; w < num_wires; w++) {
        if ((index >> (num_wires - 1 - w)) & 1) {
            s[w] = '1';
        }
    }
    return s;
}

uint64_t ShotTable::total() const {
    return std::accumulate(counts.begin(), counts.end(), uint64_t{0});
}

std::vector<double> ShotTable::frequencies() const {
    uint64_t n = total();
    if (n == 0) {
        throw std::domain_error("ShotTable::frequencies: no shots");
    }
    std::vector<double> f(counts.size());
    for (size_t i = 0; i < counts.size(); i++) {
        f[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
    }
    return f;
}

std::map<std::string, uint64_t> ShotTable::count_map() const {
    std::map<std::string, uint64_t> m;
    for (size_t i = 0; i < counts.size(); i++) {
        m[basis_string(i, num_wires)] = counts[i];
    }
    return m;
}

std::string shot_table_to_json(const ShotTable &table) {
    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    for (size_t i = 0; i < table.counts.size(); i++) {
        counts[basis_string(i, table.num_wires)] = table.counts[i];
    }
    nlohmann::ordered_json j;
    j["setting_id"] = table.setting_id;
    j["shots"] = table.shots;
    j["seed"] = table.seed;
    j["counts"] = counts;
    return j.dump(2);
}

ShotTable shot_table_from_json(const std::string &text) {
    auto j = nlohmann::json::parse(text);
    ShotTable t;
    t.setting_id = j.at("setting_id").get<std::string>();
    t.shots = j.at("shots").get<uint64_t>();
    t.seed = j.value("seed", uint64_t{0});
    const auto &counts = j.at("counts");
    if (counts.empty()) {
        throw std::invalid_argument("shot_table_from_json: empty counts");
    }
    t.num_wires = counts.begin().key().size();
    t.counts.assign(size_t{1} << t.num_wires, 0);
    for (auto it = counts.begin(); it != counts.end(); ++it) {
        const auto &key = it.key();
        if (key.size() != t.num_wires || key.find_first_not_of("01") != std::string::npos) {
            throw std::invalid_argument("shot_table_from_json: bad basis label '" + key + "'");
        }
        t.counts[std::stoull(key, nullptr, 2)] = it.value().get<uint64_t>();
    }
    if (t.total() != t.shots) {
        throw std::invalid_argument("shot_table_from_json: counts do not sum to shots");
    }
    return t;
}

std::string shot_table_to_csv(const ShotTable &table) {
    std::ostringstream out;
    out << "basis,count\n";
    for (size_t i = 0; i < table.counts.size(); i++) {
        out << basis_string(i, table.num_wires) << ',' << table.counts[i] << '\n';
    }
    return out.str();
}

ShotTable sample_probabilities(std::span<const double> probs, uint64_t shots, uint64_t seed,
                               const std::string &setting_id) {
    if (shots == 0) {
        throw std::invalid_argument("sample: shots must be positive");
    }
    size_t n = wires_of(probs.size());
    std::vector<double> cdf(probs.size());
    double acc = 0;
    for (size_t i = 0; i < probs.size(); i++) {
        if (probs[i] < 0) {
            throw std::invalid_argument("sample: negative probability");
        }
        acc += probs[i];
        cdf[i] = acc;
    }
    if (!(acc > 0)) {
        throw std::invalid_argument("sample: probabilities sum to zero");
    }
    for (auto &c : cdf) {
        c /= acc;
    }
    // Rounding can leave the last entry just below 1; route the tail to the last
    // outcome with non-zero weight.
    size_t last = probs.size() - 1;
    while (last > 0 && probs[last] == 0) {
        last--;
    }
    ShotTable t{setting_id, n, shots, seed, std::vector<uint64_t>(probs.size(), 0)};
    CounterRng rng(seed, setting_id);
    for (uint64_t s = 0; s < shots; s++) {
        double u = rng.uniform();
        auto idx = static_cast<size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        t.counts[std::min(idx, last)]++;
    }
    return t;
}

ShotTable sample(const StateVector &state, uint64_t shots, uint64_t seed, const std::string &setting_id) {
    state.require_normalized("sample");
    auto p = probabilities(state);
    return sample_probabilities(p, shots, seed, setting_id);
}

ReadoutModel ReadoutModel::ideal(size_t num_wires) {
    return ReadoutModel{std::vector<WireFidelity>(num_wires)};
}

ReadoutModel ReadoutModel::device_defaults(size_t num_wires) {
    ReadoutModel m;
    for (size_t w = 0; w < num_wires; w++) {
        m.wires.push_back(w == 0 ? WireFidelity{0.99, 0.89} : WireFidelity{0.99, 0.98});
    }
    return m;
}

std::vector<std::vector<double>> ReadoutModel::matrix() const {
    size_t dim = size_t{1} << wires.size();
    std::vector<std::vector<double>> f(dim, std::vector<double>(dim, 1.0));
    for (size_t r = 0; r < dim; r++) {
        for (size_t c = 0; c < dim; c++) {
            for (size_t w = 0; w < wires.size(); w++) {
                size_t shift = wires.size() - 1 - w;
                int read = (r >> shift) & 1;
                int prepared = (c >> shift) & 1;
                double f0 = wires[w].f0;
                double f1 = wires[w].f1;
                double e = prepared == 0 ? (read == 0 ? f0 : 1 - f0) : (read == 1 ? f1 : 1 - f1);
                f[r][c] *= e;
            }
        }
    }
    return f;
}

ShotTable apply_readout_noise(const ShotTable &table, const ReadoutModel &model, uint64_t seed) {
    check_model(model, table.num_wires);
    ShotTable out = table;
    out.seed = seed;
    std::fill(out.counts.begin(), out.counts.end(), 0);
    CounterRng rng(seed, table.setting_id + "/readout");
    size_t n = table.num_wires;
    for (size_t idx = 0; idx < table.counts.size(); idx++) {
        for (uint64_t s = 0; s < table.counts[idx]; s++) {
            size_t read = idx;
            for (size_t w = 0; w < n; w++) {
                size_t bit = size_t{1} << (n - 1 - w);
                bool one = (idx & bit) != 0;
                double flip = one ? 1 - model.wires[w].f1 : 1 - model.wires[w].f0;
                // One draw per wire per shot keeps streams aligned across models.
                if (rng.uniform() < flip) {
                    read ^= bit;
                }
            }
            out.counts[read]++;
        }
    }
    return out;
}

std::vector<double> apply_confusion(std::span<const double> probs, const ReadoutModel &model) {
    size_t n = wires_of(probs.size());
    check_model(model, n);
    std::vector<double> p(probs.begin(), probs.end());
    for (size_t w = 0; w < n; w++) {
        double f0 = model.wires[w].f0;
        double f1 = model.wires[w].f1;
        const double m[2][2] = {{f0, 1 - f1}, {1 - f0, f1}};
        apply_wire(p, n, w, m);
    }
    return p;
}

std::vector<double> invert_readout(std::span<const double> measured, const ReadoutModel &model) {
    size_t n = wires_of(measured.size());
    check_model(model, n);
    std::vector<double> p(measured.begin(), measured.end());
    for (size_t w = 0; w < n; w++) {
        double f0 = model.wires[w].f0;
        double f1 = model.wires[w].f1;
        double det = f0 + f1 - 1;
        if (std::abs(det) < 1e-12) {
            throw std::domain_error("correct_readout: F is singular on wire " + std::to_string(w));
        }
        const double m[2][2] = {{f1 / det, -(1 - f1) / det}, {-(1 - f0) / det, f0 / det}};
        apply_wire(p, n, w, m);
    }
    return p;
}

std::vector<double> correct_readout(std::span<const double> measured, const ReadoutModel &model) {
    auto p = invert_readout(measured, model);
    double sum = 0;
    for (auto &x : p) {
        x = std::max(x, 0.0);
        sum += x;
    }
    if (!(sum > 0)) {
        throw std::domain_error("correct_readout: corrected distribution vanishes");
    }
    for (auto &x : p) {
        x /= sum;
    }
    return p;
}

PostselectResult postselect(std::span<const double> probs, int ancilla_value, double floor) {
    if (ancilla_value != 0 && ancilla_value != 1) {
        throw std::invalid_argument("postselect: ancilla_value must be 0 or 1");
    }
    size_t n = wires_of(probs.size());
    if (n < 2) {
        throw std::invalid_argument("postselect: need an ancilla and at least one system wire");
    }
    size_t half = probs.size() / 2;
    size_t offset = ancilla_value == 0 ? 0 : half;
    double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    PostselectResult r;
    r.probabilities.assign(probs.begin() + static_cast<ptrdiff_t>(offset),
                           probs.begin() + static_cast<ptrdiff_t>(offset + half));
    double kept = std::accumulate(r.probabilities.begin(), r.probabilities.end(), 0.0);
    if (!(kept > 0) || !(total > 0)) {
        throw std::domain_error("postselect: no weight on ancilla value " + std::to_string(ancilla_value));
    }
    for (auto &p : r.probabilities) {
        p /= kept;
    }
    r.success_prob = kept / total;
    r.starved = r.success_prob < floor;
    return r;
}

PostselectResult postselect(const ShotTable &table, int ancilla_value, double floor) {
    std::vector<double> counts(table.counts.begin(), table.counts.end());
    return postselect(counts, ancilla_value, floor);
}

}  // namespace ptdilate
