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

#include <cmath>

#include "oracles.h"
#include "ptdilate/circuitsim.h"
#include "ptdilate/dilation.h"
#include "ptdilate/nonhermitian.h"

namespace ptdilate {
namespace {

const cdouble I(0, 1);

double postselected_p0(const StateVector &psi) {
    double a = std::norm(psi[0]);
    double b = std::norm(psi[1]);
    return a / (a + b);
}

TEST(Calibrate, ReferenceConstants) {
    auto c06 = calibrate(0.6, 8, 0.01, 2, 1.01);
    EXPECT_NEAR(c06.eta0, 1.7436, 5e-4);
    EXPECT_NEAR(c06.theta, 2.1001, 5e-4);
    auto c10 = calibrate(1.0, 8, 0.01, 2, 1.01);
    EXPECT_NEAR(c10.eta0, 16.1112, 5e-3);
    EXPECT_NEAR(c10.theta, 3.0176, 5e-4);
}

TEST(Calibrate, HermitianLimit) {
    auto c = calibrate(0, 8);
    EXPECT_DOUBLE_EQ(c.mu_min, 2);
    EXPECT_NEAR(c.eta0, 0.1, 1e-12);
    EXPECT_NEAR(c.theta, 2 * std::atan(0.1), 1e-14);
}

TEST(Calibrate, Invariants) {
    for (double r : {0.3, 0.6, 0.9, 1.0}) {
        auto c = calibrate(r, 8);
        EXPECT_NEAR(c.eta0, std::sqrt(c.m0 / c.mu_min * c.f - 1), 1e-14);
        EXPECT_NEAR(c.theta, 2 * std::atan(c.eta0), 1e-14);
        for (double t = 0; t <= 8; t += 0.05) {
            auto m = evolve_M(c, t);
            EXPECT_TRUE(is_hermitian(m, 1e-9));
            EXPECT_GT(hermitian_eig(m - ComplexMatrix::identity(2)).values[0], -1e-9) << r << " " << t;
        }
    }
}

TEST(Calibrate, BadArgumentsThrow) {
    EXPECT_THROW(calibrate(0.6, 8, 0.01, 1.0, 1.01), std::invalid_argument);
    EXPECT_THROW(calibrate(0.6, 8, 0.01, 2, 1.0), std::invalid_argument);
    EXPECT_THROW(calibrate(0.6, 8, 0, 2, 1.01), std::invalid_argument);
    EXPECT_THROW(calibrate_for_time(1.3, 2, 0), std::invalid_argument);
}

TEST(Calibrate, PerInterval) {
    auto a = calibrate_for_time(1.3, 2.5, 1.0);
    EXPECT_DOUBLE_EQ(a.horizon, 3.0);
    EXPECT_DOUBLE_EQ(calibrate_for_time(1.3, 3.0, 1.0).horizon, 3.0);
    EXPECT_DOUBLE_EQ(calibrate_for_time(1.3, 0.0, 1.0).horizon, 1.0);
}

TEST(Metric, EvolveMatchesSeriesOracle) {
    auto c = calibrate(0.6, 8);
    auto h = hamiltonian(0.6);
    for (double t : {0.0, 0.7, 3.3, 8.0}) {
        auto m0 = ComplexMatrix::identity(2) * cdouble(c.metric_scale());
        auto ref = oracle::expm(h.adjoint() * cdouble(0, -t)) * m0 * oracle::expm(h * cdouble(0, t));
        EXPECT_LT(evolve_M(c, t).max_abs_diff(ref), 1e-9 * c.metric_scale());
    }
    auto c0 = calibrate(0, 8);
    EXPECT_LT(evolve_M(c0, 4.2).max_abs_diff(ComplexMatrix::identity(2) * cdouble(c0.metric_scale())), 1e-14);
}

TEST(Metric, ClosedFormAgreesWithPropagated) {
    for (double r : {0.2, 0.6, 0.9}) {
        auto c = calibrate(r, 8);
        for (double t = 0; t <= 8.0001; t += 0.1) {
            EXPECT_LT(closed_form_metric(r, t, c.metric_scale()).max_abs_diff(evolve_M(c, t)), 1e-8) << r << " " << t;
        }
    }
    EXPECT_LT(closed_form_metric(0, 3.1).max_abs_diff(ComplexMatrix::identity(2)), 1e-15);
    EXPECT_LT(closed_form_metric(0.6, 0).max_abs_diff(ComplexMatrix::identity(2)), 1e-15);
    EXPECT_THROW(closed_form_metric(1.0, 1.0), std::domain_error);
}

TEST(Metric, OdeResidualAndNormConservation) {
    EXPECT_LT(metric_ode_residual(0, 1.3).ode_residual, 1e-8);
    EXPECT_LT(metric_ode_residual(0.6, 1).ode_residual, 1e-6);
    for (double t = 0; t <= 8; t += 0.25) {
        EXPECT_LT(metric_ode_residual(0.6, t).norm_drift, 1e-7) << t;
    }
}

TEST(Frame, InitialAndHermitianLimits) {
    auto c = calibrate(0.6, 8);
    auto f0 = frame_at(c, 0);
    EXPECT_LT(f0.eta.max_abs_diff(ComplexMatrix::identity(2) * cdouble(c.eta0)), 1e-12);
    auto h = calibrate(0, 8);
    for (double t : {0.0, 1.0, 5.0}) {
        EXPECT_LT(oracle::max_abs(frame_at(h, t).gamma), 1e-14);
    }
}

TEST(Frame, DefiningEquations) {
    for (double r : {0.3, 0.6, 1.0}) {
        auto c = calibrate(r, 8);
        auto hq = hamiltonian(r);
        for (double t = 0; t <= 8; t += 0.5) {
            auto f = frame_at(c, t);
            double scale = std::max(1.0, two_norm(f.metric));
            EXPECT_LT((f.lambda - I * f.gamma * f.eta - hq).frobenius_norm() / scale, 1e-7) << r << " " << t;
            EXPECT_LT((f.lambda * f.eta + I * f.gamma - I * f.eta_dot - f.eta * hq).frobenius_norm() / scale, 1e-7);
            EXPECT_LT((f.eta * f.eta + ComplexMatrix::identity(2)).max_abs_diff(f.metric) / scale, 1e-9);
            EXPECT_TRUE(is_hermitian(f.hamiltonian, 1e-8 * scale));
            auto expect_h = kron(ComplexMatrix::identity(2), f.lambda) + kron(gates::pauli_y(), f.gamma);
            EXPECT_LT(f.hamiltonian.max_abs_diff(expect_h), 1e-12 * scale);
        }
    }
}

TEST(Frame, EtaDerivativeMatchesFiniteDifference) {
    auto c = calibrate(0.6, 8);
    for (double t : {0.5, 2.0, 6.3}) {
        double h = 1e-6;
        auto fd = (frame_at(c, t + h).eta - frame_at(c, t - h).eta) * cdouble(1 / (2 * h));
        EXPECT_LT(frame_at(c, t).eta_dot.max_abs_diff(fd), 1e-6);
    }
}

TEST(Frame, BeyondHorizonThrows) {
    auto c = calibrate(1.3, 1.0);
    EXPECT_THROW(frame_at(c, 3.0), std::domain_error);
}

TEST(Propagate, IdentityAtZero) {
    auto c = calibrate(0.6, 8);
    EXPECT_LT(propagate_U(c, 0).unitary.max_abs_diff(ComplexMatrix::identity(4)), 1e-15);
}

TEST(Propagate, HermitianLimitDecouplesAncilla) {
    auto c = calibrate(0, 8);
    auto psi0 = StateVector::normalized({0.6, cdouble(0, 0.8)});
    auto anc = StateVector::unnormalized({1, c.eta0}).renormalized();
    auto u = propagate_U(c, 2.0).unitary;
    auto out = u * kron(anc, psi0);
    auto expect = kron(anc, nh_propagator({0, 2.0}) * psi0);
    for (size_t i = 0; i < 4; i++) {
        EXPECT_NEAR(std::abs(out[i] - expect[i]), 0, 1e-9);
    }
}

TEST(Propagate, UnitaryAndStructured) {
    auto c = calibrate(0.6, 8);
    std::vector<double> ts;
    for (double t = 0.5; t <= 8.0001; t += 0.5) {
        ts.push_back(t);
    }
    auto props = propagate_series(c, ts);
    for (size_t k = 0; k < ts.size(); k++) {
        EXPECT_LT(props[k].unitarity_defect, 1e-7);
        EXPECT_LT(props[k].error_estimate, 1e-7);
        EXPECT_LT(verify_solution_structure(c, ts[k], props[k].unitary, StateVector::basis(2, 0)), 1e-6);
        EXPECT_LT(verify_solution_structure(c, ts[k], props[k].unitary, StateVector::basis(2, 1)), 1e-6);
    }
    EXPECT_LT(verify_solution_structure(c, 0, StateVector::basis(2, 0)), 1e-12);
}

TEST(Propagate, BrokenPhasePerInterval) {
    for (double t : {0.5, 1.5, 2.75, 4.0}) {
        auto c = calibrate_for_time(1.3, t, 1.0);
        auto p = propagate_U(c, t);
        EXPECT_LT(p.unitarity_defect, 1e-7);
        EXPECT_LT(verify_solution_structure(c, t, p.unitary, StateVector::basis(2, 0)), 1e-6) << t;
    }
}

TEST(Propagate, TwoQubitSystemStructure) {
    auto c = calibrate(0.6, 8);
    double s = std::sqrt(0.5);
    auto bell = StateVector::normalized({s, 0, 0, s});
    EXPECT_LT(verify_solution_structure(c, 2.5, bell), 1e-6);
}

TEST(Propagate, RejectsDescendingTimes) {
    auto c = calibrate(0.6, 8);
    std::vector<double> ts = {2, 1};
    EXPECT_THROW(propagate_series(c, ts), std::invalid_argument);
}

TEST(Propagate, ReferencePopulations) {
    const double table[16] = {0.8613, 0.6547, 0.4535, 0.2495, 0.0518, 0.0695, 0.7314, 0.9951,
                              0.8315, 0.6250, 0.4242, 0.2191, 0.0300, 0.1278, 0.8220, 0.9821};
    auto c = calibrate(0.6, 8);
    std::vector<double> ts;
    for (int k = 1; k <= 16; k++) {
        ts.push_back(0.5 * k);
    }
    auto props = propagate_series(c, ts);
    auto init = dilated_initial_state(c, StateVector::basis(2, 0));
    for (size_t k = 0; k < 16; k++) {
        EXPECT_NEAR(postselected_p0(props[k].unitary * init), table[k], 5e-4) << ts[k];
    }
}

TEST(InitialState, AncillaAmplitudes) {
    DilationContext c;
    c.eta0 = 0;
    auto psi = StateVector::normalized({0.6, 0.8});
    auto z = dilated_initial_state(c, psi);
    EXPECT_NEAR(std::abs(z[0] - 0.6), 0, 1e-15);
    EXPECT_NEAR(std::abs(z[2]), 0, 1e-15);
    c.eta0 = 1;
    auto h = dilated_initial_state(c, StateVector::basis(2, 0));
    EXPECT_NEAR(h[0].real(), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(h[2].real(), std::sqrt(0.5), 1e-15);
    auto c06 = calibrate(0.6, 8);
    auto a = dilated_initial_state(c06, StateVector::basis(2, 0));
    EXPECT_NEAR(a[0].real(), 0.4976, 1e-4);
    EXPECT_NEAR(a[2].real(), 0.8674, 1e-4);
    auto ry = gates::ry(c06.theta);
    EXPECT_NEAR(a[0].real(), ry(0, 0).real(), 1e-12);
    EXPECT_NEAR(a[2].real(), ry(1, 0).real(), 1e-12);
}

}  // namespace
}  // namespace ptdilate
