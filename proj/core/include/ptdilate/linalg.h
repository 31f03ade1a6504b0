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

#ifndef PTDILATE_LINALG_H
#define PTDILATE_LINALG_H

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace ptdilate {

using cdouble = std::complex<double>;

inline constexpr double kTolHermitian = 1e-10;
inline constexpr double kTolUnitary = 1e-10;
inline constexpr double kTolEig = 1e-9;
inline constexpr double kTolPsd = 1e-9;
inline constexpr double kTolNorm = 1e-10;

/// Dense complex square matrix with dimension 1, 2, 4 or 8 (at most three qubits).
///
/// Storage is inline, so matrices are cheap values that never allocate. Wire 0 is
/// the most significant bit of a basis index, so kron(a, b) places `a` on wire 0.
class ComplexMatrix {
   public:
    static constexpr size_t kMaxDim = 8;

    ComplexMatrix() : ComplexMatrix(2) {
    }
    explicit ComplexMatrix(size_t dim);
    ComplexMatrix(size_t dim, std::initializer_list<cdouble> row_major);

    static ComplexMatrix identity(size_t dim);
    static ComplexMatrix diagonal(std::span<const cdouble> entries);
    static ComplexMatrix diagonal(std::span<const double> entries);

    size_t dim() const {
        return dim_;
    }
    cdouble &operator()(size_t row, size_t col) {
        return data_[row * dim_ + col];
    }
    const cdouble &operator()(size_t row, size_t col) const {
        return data_[row * dim_ + col];
    }

    ComplexMatrix adjoint() const;
    ComplexMatrix conj() const;
    ComplexMatrix transpose() const;
    cdouble trace() const;
    double frobenius_norm() const;
    /// Largest absolute entry-wise difference.
    double max_abs_diff(const ComplexMatrix &other) const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(cdouble scale);
    ComplexMatrix operator+(const ComplexMatrix &other) const;
    ComplexMatrix operator-(const ComplexMatrix &other) const;
    ComplexMatrix operator*(const ComplexMatrix &other) const;
    ComplexMatrix operator*(cdouble scale) const;
    ComplexMatrix operator-() const;
    bool operator==(const ComplexMatrix &other) const;

    std::string str() const;

   private:
    size_t dim_;
    std::array<cdouble, kMaxDim * kMaxDim> data_{};
};

inline ComplexMatrix operator*(cdouble scale, const ComplexMatrix &m) {
    return m * scale;
}

/// Amplitude vector on 1, 2 or 3 qubits.
///
/// Vectors built through `normalized` carry a label asserting unit norm; the
/// unnormalized label marks intermediates such as non-Hermitian evolutions.
class StateVector {
   public:
    StateVector() : StateVector(2) {
    }
    /// Zero vector, labeled unnormalized.
    explicit StateVector(size_t dim);

    /// Throws std::invalid_argument unless the norm is 1 within kTolNorm.
    static StateVector normalized(std::span<const cdouble> amplitudes);
    static StateVector normalized(std::initializer_list<cdouble> amplitudes);
    static StateVector unnormalized(std::span<const cdouble> amplitudes);
    static StateVector unnormalized(std::initializer_list<cdouble> amplitudes);
    static StateVector basis(size_t dim, size_t index);

    size_t dim() const {
        return dim_;
    }
    bool labeled_normalized() const {
        return normalized_;
    }
    cdouble &operator[](size_t k) {
        return amps_[k];
    }
    const cdouble &operator[](size_t k) const {
        return amps_[k];
    }
    std::span<const cdouble> amplitudes() const {
        return {amps_.data(), dim_};
    }

    double norm() const;
    /// Copy scaled to unit norm (and labeled as such). Throws on the zero vector.
    StateVector renormalized() const;
    cdouble inner(const StateVector &other) const;
    /// Throws std::invalid_argument unless labeled normalized with unit norm.
    void require_normalized(const char *context) const;

   private:
    size_t dim_;
    bool normalized_ = false;
    std::array<cdouble, ComplexMatrix::kMaxDim> amps_{};
};

StateVector operator*(const ComplexMatrix &m, const StateVector &v);
StateVector kron(const StateVector &a, const StateVector &b);
/// |v><v|
ComplexMatrix outer(const StateVector &v);

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b);
/// Kronecker product; the left factor acts on the most significant wire.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
/// Gauss-Jordan inverse with partial pivoting. Throws std::domain_error when singular.
ComplexMatrix inverse(const ComplexMatrix &m);
/// Determinant by LU elimination.
cdouble determinant(const ComplexMatrix &m);

bool is_hermitian(const ComplexMatrix &m, double tol = kTolHermitian);
bool is_unitary(const ComplexMatrix &u, double tol = kTolUnitary);

struct HermitianEig {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column k pairs with values[k]
};

/// Cyclic Jacobi eigensolver for Hermitian matrices.
HermitianEig hermitian_eig(const ComplexMatrix &m);
/// Principal square root of a positive semidefinite matrix. Eigenvalues in
/// [-kTolPsd, 0) are clamped to zero; anything lower throws std::domain_error.
ComplexMatrix psd_sqrt(const ComplexMatrix &m);
/// Eigenvalues of a general complex matrix of dimension <= 4.
std::vector<cdouble> general_eigvals(const ComplexMatrix &m);
/// Characteristic polynomial coefficients c[0..n] of det(xI - m), c[n] = 1,
/// via Faddeev-LeVerrier.
std::vector<cdouble> characteristic_polynomial(const ComplexMatrix &m);
/// Largest singular value.
double two_norm(const ComplexMatrix &m);
/// Reduced density matrix on the kept wires (wire 0 is most significant).
ComplexMatrix partial_trace(const ComplexMatrix &rho, std::span<const size_t> keep);
ComplexMatrix partial_trace(const ComplexMatrix &rho, std::initializer_list<size_t> keep);

/// Number of wires for a dimension in {1,2,4,8}; throws otherwise.
size_t wires_for_dim(size_t dim);

namespace gates {
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix hadamard();
/// exp(-i angle sigma_x / 2)
ComplexMatrix rx(double angle);
/// exp(-i angle sigma_y / 2)
ComplexMatrix ry(double angle);
/// exp(-i angle sigma_z / 2)
ComplexMatrix rz(double angle);
/// Rz(alpha) Ry(beta) Rz(gamma).
ComplexMatrix u3(double alpha, double beta, double gamma);
/// Two-wire CNOT with wire 0 as control.
ComplexMatrix cnot();
}  // namespace gates

}  // namespace ptdilate

#endif
