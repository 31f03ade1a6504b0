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

#include "ptdilate/density_matrix.h"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace ptdilate {

DensityMatrix::DensityMatrix(const ComplexMatrix &m) : m_(m) {
    if (m.max_abs_diff(m.adjoint()) > kTol) {
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    }
    if (std::abs(m.trace() - cdouble(1)) > kTol) {
        throw std::invalid_argument("DensityMatrix: trace is not 1");
    }
    auto eig = hermitian_eig(m);
    if (eig.values.front() < -kTol) {
        throw std::invalid_argument("DensityMatrix: negative eigenvalue " + std::to_string(eig.values.front()));
    }
}

DensityMatrix DensityMatrix::from_pure(const StateVector &psi) {
    return DensityMatrix(outer(psi.renormalized()));
}

DensityMatrix DensityMatrix::maximally_mixed(size_t dim) {
    return DensityMatrix(ComplexMatrix::identity(dim) * cdouble(1.0 / static_cast<double>(dim)));
}

double DensityMatrix::purity() const {
    return (m_ * m_).trace().real();
}

std::array<double, 3> bloch_vector(const ComplexMatrix &rho) {
    if (rho.dim() != 2) {
        throw std::invalid_argument("bloch_vector: expected a single-qubit matrix");
    }
    return {
        (rho * gates::pauli_x()).trace().real(),
        (rho * gates::pauli_y()).trace().real(),
        (rho * gates::pauli_z()).trace().real(),
    };
}

ComplexMatrix from_bloch(const std::array<double, 3> &bloch) {
    return (ComplexMatrix::identity(2) + gates::pauli_x() * bloch[0] + gates::pauli_y() * bloch[1] +
            gates::pauli_z() * bloch[2]) *
           cdouble(0.5);
}

std::string density_matrix_to_json(const ComplexMatrix &rho) {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (size_t i = 0; i < rho.dim(); i++) {
        nlohmann::json re_row = nlohmann::json::array();
        nlohmann::json im_row = nlohmann::json::array();
        for (size_t j = 0; j < rho.dim(); j++) {
            re_row.push_back(rho(i, j).real());
            im_row.push_back(rho(i, j).imag());
        }
        re.push_back(re_row);
        im.push_back(im_row);
    }
    return nlohmann::json{{"dim", rho.dim()}, {"re", re}, {"im", im}}.dump(2);
}

ComplexMatrix density_matrix_from_json(const std::string &text) {
    auto j = nlohmann::json::parse(text);
    size_t dim = j.at("dim").get<size_t>();
    ComplexMatrix m(dim);
    for (size_t r = 0; r < dim; r++) {
        for (size_t c = 0; c < dim; c++) {
            m(r, c) = cdouble(j.at("re").at(r).at(c).get<double>(), j.at("im").at(r).at(c).get<double>());
        }
    }
    return m;
}

std::string matrix_to_json(const ComplexMatrix &m) {
    nlohmann::json data = nlohmann::json::array();
    for (size_t i = 0; i < m.dim(); i++) {
        for (size_t j = 0; j < m.dim(); j++) {
            data.push_back({m(i, j).real(), m(i, j).imag()});
        }
    }
    return nlohmann::json{{"dim", m.dim()}, {"data", data}}.dump();
}

ComplexMatrix matrix_from_json(const std::string &text) {
    auto j = nlohmann::json::parse(text);
    size_t dim = j.at("dim").get<size_t>();
    const auto &data = j.at("data");
    if (data.size() != dim * dim) {
        throw std::invalid_argument("matrix_from_json: expected dim*dim entries");
    }
    ComplexMatrix m(dim);
    for (size_t k = 0; k < dim * dim; k++) {
        m(k / dim, k % dim) = cdouble(data[k].at(0).get<double>(), data[k].at(1).get<double>());
    }
    return m;
}

}  // namespace ptdilate
