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
#include <numbers>

#include "oracles.h"
#include "ptdilate/density_matrix.h"
#include "ptdilate/metrics.h"
#include "ptdilate/random.h"

namespace ptdilate {
namespace {

// Wootters' route through the non-Hermitian product, for comparison.
double concurrence_oracle(const ComplexMatrix &rho) {
    auto yy = kron(gates::pauli_y(), gates::pauli_y());
    auto r = rho * yy * rho.conj() * yy;
    auto ev = general_eigvals(r);
    std::vector<double> s;
    for (auto v : ev) {
        s.push_back(std::sqrt(std::max(v.real(), 0.0)));
    }
    std::sort(s.begin(), s.end(), std::greater<>());
    return std::max(0.0, s[0] - s[1] - s[2] - s[3]);
}

ComplexMatrix werner(double p) {
    double h = std::sqrt(0.5);
    auto bell = outer(StateVector::normalized({h, 0, 0, h}));
    return bell * cdouble(p) + ComplexMatrix::identity(4) * cdouble((1 - p) / 4);
}

TEST(TraceDistance, Examples) {
    auto z0 = outer(StateVector::basis(2, 0));
    auto z1 = outer(StateVector::basis(2, 1));
    EXPECT_NEAR(trace_distance(z0, z1), 1, 1e-15);
    EXPECT_NEAR(trace_distance(z0, z0), 0, 1e-15);
    auto plus = from_bloch({1, 0, 0});
    EXPECT_NEAR(trace_distance(z0, plus), std::sqrt(0.5), 1e-14);
    EXPECT_THROW(trace_distance(z0, ComplexMatrix::identity(4)), std::invalid_argument);
}

TEST(Fidelity, Examples) {
    auto z0 = outer(StateVector::basis(2, 0));
    EXPECT_NEAR(state_fidelity(z0, z0), 1, 1e-14);
    EXPECT_NEAR(state_fidelity(z0, from_bloch({1, 0, 0})), 0.5, 1e-14);
    EXPECT_NEAR(state_fidelity(z0, ComplexMatrix::identity(2) * cdouble(0.5)), 0.5, 1e-14);
    CounterRng rng(8, "fid");
    auto a = random_state(4, rng);
    auto b = random_state(4, rng);
    EXPECT_NEAR(state_fidelity(outer(a), outer(b)), std::norm(a.inner(b)), 1e-7);  // sqrt of rank-one rho
}

TEST(LinearEntropy, Examples) {
    EXPECT_NEAR(linear_entropy(ComplexMatrix::identity(2) * cdouble(0.5)), 0.5, 1e-15);
    EXPECT_NEAR(linear_entropy(outer(StateVector::basis(4, 2))), 0, 1e-15);
}

TEST(Concurrence, KnownStates) {
    double h = std::sqrt(0.5);
    EXPECT_NEAR(concurrence(outer(StateVector::normalized({h, 0, 0, h}))), 1, 1e-14);
    EXPECT_NEAR(concurrence(outer(StateVector::normalized({0, h, cdouble(0, h), 0}))), 1, 1e-14);
    EXPECT_EQ(concurrence(outer(StateVector::basis(4, 1))), 0);
    EXPECT_EQ(concurrence(ComplexMatrix::identity(4) * cdouble(0.25)), 0);
    for (double p : {0.2, 1.0 / 3, 0.5, 0.8}) {
        EXPECT_NEAR(concurrence(werner(p)), std::max(0.0, (3 * p - 1) / 2), 1e-12);
    }
    double a = std::cos(0.3);
    double b = std::sin(0.3);
    EXPECT_NEAR(concurrence(outer(StateVector::normalized({a, 0, 0, b}))), 2 * a * b, 1e-14);
}

TEST(Concurrence, AgreesWithOracleOnMixedStates) {
    CounterRng rng(9, "conc");
    for (int k = 0; k < 40; k++) {
        ComplexMatrix g(4);
        for (size_t i = 0; i < 4; i++) {
            for (size_t j = 0; j < 4; j++) {
                g(i, j) = cdouble(rng.normal(), rng.normal());
            }
        }
        auto psi = random_state(4, rng);
        auto mixed = g * g.adjoint();
        mixed = mixed * cdouble(1 / mixed.trace().real());
        auto rho = outer(psi) * cdouble(0.8) + mixed * cdouble(0.2);
        EXPECT_NEAR(concurrence(rho), concurrence_oracle(rho), 1e-8) << k;
        // the product route loses ~eps^(1/6) on a triple zero eigenvalue; pure states use 2|ad - bc|
        EXPECT_NEAR(concurrence(outer(psi)), 2 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]), 1e-12) << k;
    }
}

TEST(Concurrence, Errors) {
    EXPECT_THROW(concurrence(ComplexMatrix::identity(2)), std::invalid_argument);
    ComplexMatrix neg(4, {1.2, 0, 0, 0, 0, -0.2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
    EXPECT_THROW(concurrence(neg), std::domain_error);
}

TEST(Concurrence, PermutationSymmetric) {
    CounterRng rng(10, "swap");
    ComplexMatrix swap(4, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1});
    for (int k = 0; k < 20; k++) {
        auto psi = random_state(4, rng);
        auto rho = outer(psi) * cdouble(0.7) + ComplexMatrix::identity(4) * cdouble(0.075);
        EXPECT_NEAR(concurrence(rho), concurrence(swap * rho * swap), 1e-10);
    }
}

TEST(Tangle, GhzAndW) {
    double h = std::sqrt(0.5);
    auto ghz = StateVector::normalized({h, 0, 0, 0, 0, 0, 0, h});
    double w = std::sqrt(1.0 / 3);
    auto wst = StateVector::normalized({0, w, w, 0, w, 0, 0, 0});
    for (size_t f : {0u, 1u, 2u}) {
        EXPECT_NEAR(three_tangle(ghz, f), 1, 1e-12);
        EXPECT_NEAR(three_tangle(wst, f), 0, 1e-12);
    }
    EXPECT_THROW(three_tangle(StateVector::basis(4, 0)), std::invalid_argument);
    EXPECT_THROW(three_tangle(ghz, 3), std::invalid_argument);
}

TEST(Tangle, FocusIndependentAndMonogamy) {
    CounterRng rng(12, "tangle");
    for (int k = 0; k < 20; k++) {
        auto psi = random_state(8, rng);
        double t0 = three_tangle(psi, 0);
        EXPECT_NEAR(three_tangle(psi, 1), t0, 1e-9);
        EXPECT_NEAR(three_tangle(psi, 2), t0, 1e-9);
        EXPECT_GE(t0, -1e-9);
        auto rec = full_correlations(psi);
        EXPECT_NEAR(rec.tangle, t0, 1e-9);
    }
}

TEST(FullCorrelations, ProductAncilla) {
    double h = std::sqrt(0.5);
    auto bell = StateVector::normalized({h, 0, 0, h});
    auto psi = kron(StateVector::normalized({0.6, 0.8}), bell);
    auto rec = full_correlations(psi);
    EXPECT_NEAR(rec.concurrence_qq, 1, 1e-12);
    EXPECT_NEAR(rec.concurrence_aq, 0, 1e-12);
    EXPECT_NEAR(rec.concurrence_aqp, 0, 1e-12);
    EXPECT_NEAR(rec.linear_entropy_q, 0.5, 1e-12);
    EXPECT_NEAR(rec.linear_entropy_a, 0, 1e-12);
    EXPECT_NEAR(rec.tangle, 0, 1e-12);
}

TEST(Exponent, PowerLaw) {
    std::vector<double> t;
    std::vector<double> v;
    for (double x = 0.5; x <= 4; x += 0.25) {
        t.push_back(x);
        v.push_back(3 * std::pow(x, -1.7));
    }
    auto fit = fit_critical_exponent(t, v, 1, 3);
    EXPECT_NEAR(fit.delta, 1.7, 1e-12);
    EXPECT_NEAR(fit.slope, -1.7, 1e-12);
    EXPECT_NEAR(fit.stderr, 0, 1e-10);
    EXPECT_EQ(fit.points, 9u);
}

TEST(Exponent, Errors) {
    std::vector<double> t = {1, 2, 3};
    std::vector<double> v = {1, 0, 1};
    std::vector<double> shorter = {1, 2};
    EXPECT_THROW(fit_critical_exponent(t, v, 1, 3), std::domain_error);
    EXPECT_THROW(fit_critical_exponent(t, shorter, 1, 3), std::invalid_argument);
    EXPECT_THROW(fit_critical_exponent(t, t, 1, 2), std::invalid_argument);
}

TEST(FormatNumber, RoundTrip) {
    EXPECT_EQ(format_number(0.5), "0.5");
    EXPECT_EQ(format_number(-0.0), "0");
    EXPECT_EQ(format_number(std::nan("")), "nan");
    double x = 0.1 + 0.2;
    EXPECT_EQ(std::stod(format_number(x)), x);
}

TEST(CorrelationCsv, HeaderAndRow) {
    CorrelationRecord rec;
    rec.t = 1;
    rec.r = 0.6;
    EXPECT_EQ(correlation_csv_header().substr(0, 13), "t,r,distance,");
    EXPECT_EQ(correlation_csv_row(rec), "1,0.6,0,0,0,0,0,0,0");
}

}  // namespace
}  // namespace ptdilate
