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

#ifndef PTDILATE_DILATION_H
#define PTDILATE_DILATION_H

#include <span>
#include <vector>

#include "ptdilate/linalg.h"

namespace ptdilate {

/// Calibrated constants of the ancilla embedding for one gain/loss value.
///
/// The embedding starts from M(0) = (1 + eta0^2) I with
/// eta0 = sqrt(m0 f / mu_min - 1), where mu_min is the smallest eigenvalue of the
/// preliminary metric m0 exp(-iH^dag t) exp(iHt) seen over [0, horizon]. This keeps
/// M(t) - I positive on the whole horizon.
struct DilationContext {
    double r = 0;
    double horizon = 8;
    double m0 = 2;
    double f = 1.01;
    double mu_min = 2;
    double eta0 = 0.1;
    double theta = 2 * 0.09966865249116204;  // 2 atan(eta0)

    /// (m0 / mu_min) f, the scalar of M(0).
    double metric_scale() const {
        return m0 / mu_min * f;
    }
};

struct CalibrationOptions {
    double grid_step = 0.01;
    double m0 = 2;
    double f = 1.01;
};

/// Operators of the dilated Hamiltonian at one instant.
struct DilatedFrame {
    double t;
    ComplexMatrix metric;      // M(t), 2x2 Hermitian
    ComplexMatrix eta;         // (M - I)^(1/2)
    ComplexMatrix eta_dot;     // d eta / dt
    ComplexMatrix lambda;      // Lambda(t)
    ComplexMatrix gamma;       // Gamma(t)
    ComplexMatrix hamiltonian; // I (x) Lambda + sigma_y (x) Gamma, 4x4 on (ancilla, qubit)
};

struct PropagationOptions {
    double dt = 1e-3;
    /// Unitarity defect above which the step is halved and the run repeated.
    double max_unitarity_defect = 1e-6;
    int max_refinements = 4;
};

struct Propagation {
    ComplexMatrix unitary;          // U(t) from the finer of the two Richardson runs
    double error_estimate = 0;      // ||U_h - U_{h/2}||_2 / 15
    double unitarity_defect = 0;    // ||U^dag U - I||_2
    double step = 0;                // step used by the returned run
    size_t steps = 0;
};

/// M(t) = exp(-iH^dag t) M(0) exp(iHt) for the calibrated M(0).
ComplexMatrix evolve_M(const DilationContext &ctx, double t);

/// Closed-form metric for |r| < 1 divided by the scalar of M(0).
///
/// Returned multiplied by `scale`. Throws std::domain_error for |r| >= 1.
ComplexMatrix closed_form_metric(double r, double t, double scale = 1);

DilationContext calibrate(double r, double horizon, const CalibrationOptions &options = {});
inline DilationContext calibrate(double r, double horizon, double grid_step, double m0, double f) {
    return calibrate(r, horizon, CalibrationOptions{grid_step, m0, f});
}

/// Context for evaluating time t when mu_min is calibrated per interval: the
/// horizon is t rounded up to a whole number of intervals (at least one).
DilationContext calibrate_for_time(double r, double t, double interval, const CalibrationOptions &options = {});

/// Throws std::domain_error if M(t) - I is not positive semidefinite.
DilatedFrame frame_at(const DilationContext &ctx, double t);

/// dM/dt = -i (H^dag M - M H).
ComplexMatrix metric_derivative(double r, const ComplexMatrix &metric);

/// Time-ordered propagator of the dilated Hamiltonian from 0 to t (RK4).
Propagation propagate_U(const DilationContext &ctx, double t, const PropagationOptions &options = {});
inline ComplexMatrix propagate_U(const DilationContext &ctx, double t, double dt) {
    PropagationOptions options;
    options.dt = dt;
    return propagate_U(ctx, t, options).unitary;
}

/// Propagators at several ascending times from one integration pass.
std::vector<Propagation> propagate_series(
    const DilationContext &ctx, std::span<const double> times, const PropagationOptions &options = {});

/// (|0> + eta0 |1>) / sqrt(1 + eta0^2) on the ancilla (most significant wire),
/// tensored with a one- or two-qubit system state.
StateVector dilated_initial_state(const DilationContext &ctx, const StateVector &system_state);

/// Norm of U(t)|Psi(0)> - (|0>psi(t) + |1>eta(t)psi(t)) / sqrt(1 + eta0^2).
double verify_solution_structure(const DilationContext &ctx, double t, const StateVector &system_state);
double verify_solution_structure(const DilationContext &ctx, double t, const ComplexMatrix &unitary,
                                 const StateVector &system_state);

struct MetricCheck {
    double ode_residual;  // ||i dM/dt - (H^dag M - M H)||_2, finite-difference dM/dt
    double norm_drift;    // |<psi(t)|M(t)|psi(t)> / <psi(0)|M(0)|psi(0)> - 1| with psi(0) = |0>
};

/// Checks the metric evolution equation for M(0) = I.
MetricCheck metric_ode_residual(double r, double t, double step = 1e-4);

}  // namespace ptdilate

#endif
