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

#include "ptdilate/tomography.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ptdilate {

namespace {

Circuit on_wires(std::vector<std::string> wires) {
    Circuit c;
    c.wires = std::move(wires);
    return c;
}

// Re or Im of rho(row, col) = (p[a] - p[b]) / 2.
ElementRef half_diff(size_t row, size_t col, bool imaginary, size_t a, size_t b) {
    return ElementRef{row, col, imaginary, {{a, 0.5}, {b, -0.5}}};
}

}  // namespace

const char *convention_name(CoherenceConvention c) {
    return c == CoherenceConvention::kSupplement ? "supplement" : "main_text";
}

CoherenceConvention convention_from_name(const std::string &name) {
    if (name == "supplement") {
        return CoherenceConvention::kSupplement;
    }
    if (name == "main_text") {
        return CoherenceConvention::kMainText;
    }
    throw std::invalid_argument("unknown coherence convention '" + name + "'");
}

std::vector<TomographySetting> single_qubit_settings() {
    std::vector<TomographySetting> s;
    auto x = on_wires({"q"});
    x.h(0);
    s.push_back({"X", x, {half_diff(0, 1, false, 0, 1)}});
    auto y = on_wires({"q"});
    y.rx_half_pi(0);
    s.push_back({"Y", y, {half_diff(0, 1, true, 1, 0)}});
    s.push_back({"Z", on_wires({"q"}), {{0, 0, false, {{0, 1.0}}}, {1, 1, false, {{1, 1.0}}}}});
    return s;
}

std::vector<TomographySetting> two_qubit_settings(CoherenceConvention convention) {
    const std::vector<std::string> wires = {"q", "q'"};
    std::vector<TomographySetting> s;
    {
        TomographySetting t{"T1", on_wires(wires), {}};
        for (size_t i = 0; i < 4; i++) {
            t.element_map.push_back({i, i, false, {{i, 1.0}}});
        }
        s.push_back(t);
    }
    {
        auto c = on_wires(wires);
        c.h(0);
        s.push_back({"T2", c, {half_diff(0, 2, false, 0, 2), half_diff(1, 3, false, 1, 3)}});
    }
    {
        auto c = on_wires(wires);
        c.rx_half_pi(0);
        s.push_back({"T3", c, {half_diff(0, 2, true, 2, 0), half_diff(1, 3, true, 3, 1)}});
    }
    {
        auto c = on_wires(wires);
        c.h(1);
        s.push_back({"T4", c, {half_diff(0, 1, false, 0, 1), half_diff(2, 3, false, 2, 3)}});
    }
    {
        auto c = on_wires(wires);
        c.rx_half_pi(1);
        s.push_back({"T5", c, {half_diff(0, 1, true, 1, 0), half_diff(2, 3, true, 3, 2)}});
    }
    if (convention == CoherenceConvention::kSupplement) {
        auto c6 = on_wires(wires);
        c6.cnot(0, 1).h(0);
        s.push_back({"T6", c6, {half_diff(0, 3, false, 0, 2), half_diff(1, 2, false, 1, 3)}});
        auto c7 = on_wires(wires);
        c7.cnot(0, 1).rx_half_pi(0);
        s.push_back({"T7", c7, {half_diff(0, 3, true, 2, 0), half_diff(1, 2, true, 3, 1)}});
    } else {
        auto c6 = on_wires(wires);
        c6.cnot(1, 0).h(1);
        s.push_back({"T6", c6, {half_diff(0, 3, false, 0, 1), half_diff(1, 2, false, 2, 3)}});
        auto c7 = on_wires(wires);
        c7.cnot(1, 0).rx_half_pi(1);
        s.push_back({"T7", c7, {half_diff(0, 3, true, 1, 0), half_diff(1, 2, true, 2, 3)}});
    }
    return s;
}

SettingProbabilities forward_probabilities(const ComplexMatrix &rho, const std::vector<TomographySetting> &settings) {
    SettingProbabilities out;
    for (const auto &s : settings) {
        auto u = circuit_unitary(s.pre_rotation);
        if (u.dim() != rho.dim()) {
            throw std::invalid_argument("forward_probabilities: setting and state dimensions differ");
        }
        auto rotated = u * rho * u.adjoint();
        std::vector<double> p(rho.dim());
        for (size_t i = 0; i < rho.dim(); i++) {
            p[i] = rotated(i, i).real();
        }
        out[s.id] = p;
    }
    return out;
}

ComplexMatrix linear_reconstruct(const SettingProbabilities &probs, const std::vector<TomographySetting> &settings) {
    if (settings.empty()) {
        throw std::invalid_argument("linear_reconstruct: no settings");
    }
    size_t dim = settings.front().pre_rotation.dim();
    ComplexMatrix rho(dim);
    for (const auto &s : settings) {
        auto it = probs.find(s.id);
        if (it == probs.end()) {
            throw std::invalid_argument("missing tomography setting " + s.id);
        }
        const auto &p = it->second;
        if (p.size() != dim) {
            throw std::invalid_argument("setting " + s.id + ": expected " + std::to_string(dim) + " outcomes");
        }
        for (const auto &e : s.element_map) {
            double v = 0;
            for (const auto &[idx, coeff] : e.terms) {
                v += coeff * p[idx];
            }
            if (e.row == e.col) {
                rho(e.row, e.col) = v;
                continue;
            }
            cdouble cur = rho(e.row, e.col);
            cur = e.imaginary ? cdouble(cur.real(), v) : cdouble(v, cur.imag());
            rho(e.row, e.col) = cur;
            rho(e.col, e.row) = std::conj(cur);
        }
    }
    return rho;
}

DensityMatrix psd_project(const ComplexMatrix &hermitian) {
    ComplexMatrix h = (hermitian + hermitian.adjoint()) * cdouble(0.5);
    auto eig = hermitian_eig(h);
    size_t n = eig.values.size();
    std::vector<double> sorted = eig.values;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    // Euclidean projection onto {x >= 0, sum x = 1}.
    double cumulative = 0;
    double shift = 0;
    for (size_t k = 0; k < n; k++) {
        cumulative += sorted[k];
        double candidate = (cumulative - 1) / static_cast<double>(k + 1);
        if (sorted[k] - candidate > 0) {
            shift = candidate;
        }
    }
    ComplexMatrix rho(n);
    for (size_t k = 0; k < n; k++) {
        double lam = std::max(eig.values[k] - shift, 0.0);
        if (lam == 0) {
            continue;
        }
        for (size_t i = 0; i < n; i++) {
            for (size_t j = 0; j < n; j++) {
                rho(i, j) += lam * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
            }
        }
    }
    return DensityMatrix(rho);
}

DensityMatrix single_qubit_reconstruct(const SettingProbabilities &probs) {
    return psd_project(linear_reconstruct(probs, single_qubit_settings()));
}

DensityMatrix two_qubit_reconstruct(const SettingProbabilities &probs, CoherenceConvention convention) {
    return psd_project(linear_reconstruct(probs, two_qubit_settings(convention)));
}

SettingProbabilities probabilities_from_tables(const std::vector<ShotTable> &tables, size_t system_wires,
                                               int postselect_on, const ReadoutModel *correction) {
    SettingProbabilities out;
    if (tables.empty()) {
        return out;
    }
    uint64_t shots = tables.front().shots;
    for (const auto &t : tables) {
        if (t.shots != shots || t.total() != t.shots) {
            throw std::invalid_argument("tomography: inconsistent shot counts across settings");
        }
        std::vector<double> p = t.frequencies();
        if (correction != nullptr) {
            p = correct_readout(p, *correction);
        }
        if (t.num_wires == system_wires + 1) {
            p = postselect(p, postselect_on).probabilities;
        } else if (t.num_wires != system_wires) {
            throw std::invalid_argument("tomography: table " + t.setting_id + " has an unexpected wire count");
        }
        // Ids may carry a path-like prefix ("r0.6/t1/T3"); the last segment names the setting.
        auto slash = t.setting_id.rfind('/');
        out[slash == std::string::npos ? t.setting_id : t.setting_id.substr(slash + 1)] = p;
    }
    return out;
}

}  // namespace ptdilate
