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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "ptdilate/density_matrix.h"
#include "ptdilate/linalg.h"
#include "ptdilate/random.h"

namespace ptdilate {
namespace {

using namespace gates;

const cdouble I(0, 1);

ComplexMatrix random_hermitian(size_t dim, CounterRng &rng) {
    ComplexMatrix m(dim);
    for (size_t i = 0; i < dim; i++) {
        for (size_t j = 0; j < dim; j++) {
            m(i, j) = cdouble(rng.normal(), rng.normal());
        }
    }
    return (m + m.adjoint()) * cdouble(0.5);
}

TEST(Matmul, PauliAlgebra) {
    EXPECT_LT((pauli_x() * pauli_x()).max_abs_diff(ComplexMatrix::identity(2)), 1e-15);
    EXPECT_LT((pauli_x() * pauli_z()).max_abs_diff(pauli_y() * -I), 1e-15);
    CounterRng rng(3, "matmul");
    auto a = random_hermitian(4, rng);
    EXPECT_EQ(ComplexMatrix::identity(4) * a, a);
    EXPECT_EQ(matmul(a, ComplexMatrix::identity(4)), a);
}

TEST(Matmul, DimensionMismatchThrows) {
    EXPECT_THROW(ComplexMatrix(2) * ComplexMatrix(4), std::invalid_argument);
}

TEST(Kron, Blocks) {
    EXPECT_EQ(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4));
    auto y = kron(pauli_y(), ComplexMatrix::identity(2));
    ComplexMatrix expected(4, {0, 0, -I, 0, 0, 0, 0, -I, I, 0, 0, 0, 0, I, 0, 0});
    EXPECT_LT(y.max_abs_diff(expected), 1e-15);
    EXPECT_EQ(kron(pauli_y(), ComplexMatrix(2)), ComplexMatrix(4));
}

TEST(Kron, TooLargeThrows) {
    EXPECT_THROW(kron(ComplexMatrix(4), ComplexMatrix(4)), std::invalid_argument);
}

TEST(HermitianEig, Paulis) {
    auto z = hermitian_eig(pauli_z());
    EXPECT_NEAR(z.values[0], -1, 1e-14);
    EXPECT_NEAR(z.values[1], 1, 1e-14);
    auto x = hermitian_eig(pauli_x());
    EXPECT_NEAR(x.values[0], -1, 1e-14);
    // (|0> - |1>)/sqrt(2) up to phase
    EXPECT_NEAR(std::abs(x.vectors(0, 0) + x.vectors(1, 0)), 0, 1e-14);
    EXPECT_NEAR(std::abs(x.vectors(0, 1) - x.vectors(1, 1)), 0, 1e-14);
}

TEST(HermitianEig, ReconstructsRandomFourByFour) {
    CounterRng rng(11, "eig");
    for (int trial = 0; trial < 20; trial++) {
        auto h = random_hermitian(4, rng);
        auto e = hermitian_eig(h);
        EXPECT_TRUE(std::is_sorted(e.values.begin(), e.values.end()));
        std::vector<cdouble> d(e.values.begin(), e.values.end());
        auto back = e.vectors * ComplexMatrix::diagonal(std::span<const cdouble>(d)) * e.vectors.adjoint();
        EXPECT_LT(back.max_abs_diff(h), 1e-10);
        EXPECT_TRUE(is_unitary(e.vectors));
    }
}

TEST(HermitianEig, RejectsNonHermitian) {
    EXPECT_THROW(hermitian_eig(ComplexMatrix(2, {0, 1, 0, 0})), std::invalid_argument);
}

TEST(PsdSqrt, Examples) {
    EXPECT_LT(psd_sqrt(ComplexMatrix::identity(2) * cdouble(4)).max_abs_diff(ComplexMatrix::identity(2) * cdouble(2)),
              1e-14);
    EXPECT_LT(psd_sqrt(ComplexMatrix(2, {0, 0, 0, 9})).max_abs_diff(ComplexMatrix(2, {0, 0, 0, 3})), 1e-14);
    double eta0 = 1.7436;
    auto m0 = ComplexMatrix::identity(2) * cdouble(eta0 * eta0 + 1);
    EXPECT_LT(psd_sqrt(m0 - ComplexMatrix::identity(2)).max_abs_diff(ComplexMatrix::identity(2) * cdouble(eta0)),
              1e-14);
}

TEST(PsdSqrt, NegativeEigenvalueThrows) {
    EXPECT_THROW(psd_sqrt(ComplexMatrix(2, {1, 0, 0, -0.5})), std::domain_error);
}

TEST(GeneralEigvals, NonHermitianHamiltonians) {
    auto h = [](double r) { return pauli_x() + pauli_z() * cdouble(0, r); };
    auto e = general_eigvals(h(0.6));
    std::sort(e.begin(), e.end(), [](cdouble a, cdouble b) { return a.real() < b.real(); });
    EXPECT_NEAR(e[0].real(), -0.8, 1e-12);
    EXPECT_NEAR(e[1].real(), 0.8, 1e-12);
    EXPECT_NEAR(std::abs(e[0].imag()) + std::abs(e[1].imag()), 0, 1e-12);
    auto b = general_eigvals(h(1.3));
    std::sort(b.begin(), b.end(), [](cdouble a, cdouble c) { return a.imag() < c.imag(); });
    EXPECT_NEAR(b[0].imag(), -std::sqrt(0.69), 1e-12);
    EXPECT_NEAR(b[1].imag(), std::sqrt(0.69), 1e-12);
}

TEST(GeneralEigvals, UpperTriangularGivesDiagonal) {
    ComplexMatrix u(4, {1, 5, 2, 4, 0, cdouble(2, 1), 7, -1, 0, 0, -3, 2, 0, 0, 0, cdouble(0, -2)});
    auto e = general_eigvals(u);
    std::vector<cdouble> want = {1, cdouble(2, 1), -3, cdouble(0, -2)};
    for (auto w : want) {
        double best = 1;
        for (auto v : e) {
            best = std::min(best, std::abs(v - w));
        }
        EXPECT_LT(best, 1e-10);
    }
}

TEST(TwoNorm, Examples) {
    EXPECT_NEAR(two_norm(ComplexMatrix::identity(4)), 1, 1e-14);
    EXPECT_NEAR(two_norm(pauli_x() * cdouble(3)), 3, 1e-14);
    std::vector<double> d = {1, 2, 0, 0.5};
    EXPECT_NEAR(two_norm(ComplexMatrix::diagonal(std::span<const double>(d))), 2, 1e-14);
}

TEST(PartialTrace, Examples) {
    auto rho = from_bloch({0.3, -0.2, 0.5});
    auto zero = outer(StateVector::basis(2, 0));
    EXPECT_LT(partial_trace(kron(zero, rho), {1}).max_abs_diff(rho), 1e-15);

    double s = std::sqrt(0.5);
    auto bell = outer(StateVector::normalized({s, 0, 0, s}));
    EXPECT_LT(partial_trace(bell, {0}).max_abs_diff(ComplexMatrix::identity(2) * cdouble(0.5)), 1e-15);

    auto sigma = from_bloch({0, 0.6, -0.1});
    EXPECT_LT(partial_trace(kron(rho, sigma), {0}).max_abs_diff(rho), 1e-15);
    EXPECT_LT(partial_trace(kron(rho, sigma), {1}).max_abs_diff(sigma), 1e-15);
}

TEST(PartialTrace, ThreeWires) {
    auto a = from_bloch({0.1, 0.2, 0.3});
    auto b = from_bloch({0, 0, 1});
    auto c = from_bloch({-0.5, 0, 0});
    auto abc = kron(kron(a, b), c);
    EXPECT_LT(partial_trace(abc, {0, 2}).max_abs_diff(kron(a, c)), 1e-15);
    EXPECT_LT(partial_trace(abc, {1}).max_abs_diff(b), 1e-15);
    EXPECT_LT(partial_trace(abc, {2, 0}).max_abs_diff(kron(a, c)), 1e-15);  // kept wires stay in wire order
    EXPECT_THROW(partial_trace(abc, {1, 1}), std::invalid_argument);
    EXPECT_THROW(partial_trace(abc, {3}), std::invalid_argument);
}

TEST(Predicates, AgreeWithNormDefinitions) {
    CounterRng rng(5, "pred");
    auto h = random_hermitian(4, rng);
    EXPECT_TRUE(is_hermitian(h));
    auto off = h;
    off(0, 1) += 1e-6;
    EXPECT_FALSE(is_hermitian(off));
    auto u = random_unitary(4, rng);
    EXPECT_TRUE(is_unitary(u));
    EXPECT_FALSE(is_unitary(u * cdouble(1 + 1e-6)));
}

TEST(StateVector, NormalizationLabel) {
    EXPECT_THROW(StateVector::normalized({1, 1}), std::invalid_argument);
    auto v = StateVector::unnormalized({1, 1});
    EXPECT_FALSE(v.labeled_normalized());
    auto n = v.renormalized();
    EXPECT_TRUE(n.labeled_normalized());
    EXPECT_NEAR(n.norm(), 1, 1e-15);
    EXPECT_THROW(StateVector::unnormalized({0, 0}).renormalized(), std::domain_error);
}

TEST(Gates, U3IsRzRyRz) {
    auto u = u3(0.3, 1.1, -0.7);
    EXPECT_LT(u.max_abs_diff(rz(0.3) * ry(1.1) * rz(-0.7)), 1e-15);
    EXPECT_LT(ry(std::acos(-1.0)).max_abs_diff(ComplexMatrix(2, {0, -1, 1, 0})), 1e-15);
}

TEST(DensityMatrix, ValidatesInput) {
    EXPECT_NO_THROW(DensityMatrix(ComplexMatrix::identity(2) * cdouble(0.5)));
    EXPECT_THROW(DensityMatrix(ComplexMatrix::identity(2)), std::invalid_argument);
    EXPECT_THROW(DensityMatrix(ComplexMatrix(2, {1.2, 0, 0, -0.2})), std::invalid_argument);
    auto rho = from_bloch({0.2, -0.4, 0.1});
    auto back = density_matrix_from_json(density_matrix_to_json(rho));
    EXPECT_LT(back.max_abs_diff(rho), 1e-15);
}

}  // namespace
}  // namespace ptdilate
