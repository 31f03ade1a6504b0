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

#ifndef PTDILATE_DENSITY_MATRIX_H
#define PTDILATE_DENSITY_MATRIX_H

#include <array>
#include <string>

#include "ptdilate/linalg.h"

namespace ptdilate {

/// A Hermitian, unit-trace, positive semidefinite matrix (tolerance 1e-9).
class DensityMatrix {
   public:
    static constexpr double kTol = 1e-9;

    /// Validates the physical constraints; throws std::invalid_argument otherwise.
    explicit DensityMatrix(const ComplexMatrix &m);

    static DensityMatrix from_pure(const StateVector &psi);
    static DensityMatrix maximally_mixed(size_t dim);

    const ComplexMatrix &matrix() const {
        return m_;
    }
    size_t dim() const {
        return m_.dim();
    }
    double purity() const;

   private:
    ComplexMatrix m_;
};

/// Standard Bloch vector (<sigma_x>, <sigma_y>, <sigma_z>) of a single-qubit matrix.
std::array<double, 3> bloch_vector(const ComplexMatrix &rho);
/// (I + x sigma_x + y sigma_y + z sigma_z) / 2
ComplexMatrix from_bloch(const std::array<double, 3> &bloch);

/// JSON form {"dim": n, "re": [[...]], "im": [[...]]}.
std::string density_matrix_to_json(const ComplexMatrix &rho);
ComplexMatrix density_matrix_from_json(const std::string &text);

/// JSON form {"dim": n, "data": [[re, im], ...]} in row-major order.
std::string matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const std::string &text);

}  // namespace ptdilate

#endif
