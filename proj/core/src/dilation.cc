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

#include "ptdilate/dilation.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ptdilate/nonhermitian.h"

namespace ptdilate {

namespace {

constexpr cdouble kI(0, 1);

// exp(-iH^dag t) exp(iHt): unit determinant, Hermitian positive definite.
ComplexMatrix gram_of_inverse(double r, double t) {
    auto k = nh_propagator({r, -t});
    return k.adjoint() * k;
}

// Eigen-decomposition of a 2x2 Hermitian positive matrix with known determinant.
// The small eigenvalue comes from det / large, which avoids the cancellation of
// the quadratic formula when the spectrum spans many orders of magnitude.
struct MetricEig {
    double lo;
    double hi;
    ComplexMatrix basis;  // columns: lo, hi
};

MetricEig metric_eig(const ComplexMatrix &m, double det) {
    double a = m(0, 0).real();
    double d = m(1, 1).real();
    cdouble b = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
    double hi = 0.5 * (a + d) + std::hypot(0.5 * (a - d), std::abs(b));
    double lo = det / hi;
    cdouble x1 = b;
    cdouble y1 = hi - a;
    cdouble x2 = hi - d;
    cdouble y2 = std::conj(b);
    double n1 = std::hypot(std::abs(x1), std::abs(y1));
    double n2 = std::hypot(std::abs(x2), std::abs(y2));
    cdouble x;
    cdouble y;
    if (std::max(n1, n2) <= 1e-300 || std::max(n1, n2) <= 1e-15 * std::abs(hi)) {
        x = a >= d ? 1 : 0;
        y = a >= d ? 0 : 1;
    } else if (n1 >= n2) {
        x = x1 / n1;
        y = y1 / n1;
    } else {
        x = x2 / n2;
        y = y2 / n2;
    }
    MetricEig out{lo, hi, ComplexMatrix(2)};
    out.basis(0, 1) = x;
    out.basis(1, 1) = y;
    out.basis(0, 0) = -std::conj(y);
    out.basis(1, 0) = std::conj(x);
    return out;
}

ComplexMatrix diag2(double a, double b) {
    return ComplexMatrix(2, {a, 0, 0, b});
}

struct FrameCore {
    ComplexMatrix metric;
    ComplexMatrix eta;
    ComplexMatrix eta_dot;
    ComplexMatrix lambda;
    ComplexMatrix gamma;
};

FrameCore frame_core(const DilationContext &ctx, double t) {
    double scale = ctx.metric_scale();
    ComplexMatrix metric = gram_of_inverse(ctx.r, t) * cdouble(scale);
    auto eig = metric_eig(metric, scale * scale);
    double mu[2] = {eig.lo, eig.hi};
    double e[2];
    for (int k = 0; k < 2; k++) {
        double x = mu[k] - 1;
        if (x < -kTolPsd * std::max(1.0, mu[k])) {
            throw std::domain_error("frame_at: M(t) - I is not positive semidefinite at t=" + std::to_string(t) +
                                    " (calibrated horizon exceeded)");
        }
        e[k] = std::sqrt(std::max(x, 0.0));
    }
    const auto &v = eig.basis;
    auto vh = v.adjoint();
    auto h = hamiltonian(ctx.r);
    auto hq = vh * h * v;
    auto hd = hq.adjoint();
    auto d = diag2(mu[0], mu[1]);
    auto dinv = diag2(1 / mu[0], 1 / mu[1]);
    auto ed = diag2(e[0], e[1]);
    // Everything below is expressed in the eigenbasis of M and rotated back.
    auto mdot = (hd * d - d * hq) * cdouble(0, -1);
    ComplexMatrix edot(2);
    for (size_t j = 0; j < 2; j++) {
        for (size_t k = 0; k < 2; k++) {
            double denom = e[j] + e[k];
            if (denom <= 0) {
                throw std::domain_error("frame_at: eta is singular; its derivative is undefined");
            }
            edot(j, k) = mdot(j, k) / denom;
        }
    }
    auto lambda_e = (hq + kI * edot * ed + ed * hq * ed) * dinv;
    auto gamma_e = (hq * ed - ed * hq - kI * edot) * dinv * kI;
    return FrameCore{
        metric,
        v * ed * vh,
        v * edot * vh,
        v * lambda_e * vh,
        v * gamma_e * vh,
    };
}

ComplexMatrix assemble_hamiltonian(const ComplexMatrix &lambda, const ComplexMatrix &gamma) {
    return kron(ComplexMatrix::identity(2), lambda) + kron(gates::pauli_y(), gamma);
}

ComplexMatrix dilated_hamiltonian(const DilationContext &ctx, double t) {
    auto core = frame_core(ctx, t);
    return assemble_hamiltonian(core.lambda, core.gamma);
}

// Integrates dU/dt = -i H(t) U with fixed-step RK4, landing exactly on each
// requested time (the last step before a target is shortened).
std::vector<ComplexMatrix> integrate(const DilationContext &ctx, std::span<const double> times, double h,
                                     size_t *step_count) {
    std::vector<ComplexMatrix> out;
    out.reserve(times.size());
    ComplexMatrix u = ComplexMatrix::identity(4);
    double tau = 0;
    size_t steps = 0;
    const cdouble mi(0, -1);
    ComplexMatrix h_start = dilated_hamiltonian(ctx, 0);
    for (double target : times) {
        if (target < tau - 1e-12) {
            throw std::invalid_argument("propagate_series: times must be ascending and non-negative");
        }
        double start = tau;
        auto full = static_cast<size_t>(std::floor((target - start) / h + 1e-9));
        for (size_t k = 0; target - tau > 1e-12; k++) {
            double next = k < full ? start + static_cast<double>(k + 1) * h : target;
            if (k + 1 == full && target - next < 1e-9 * h) {
                next = target;
            }
            double step = next - tau;
            ComplexMatrix h_mid = dilated_hamiltonian(ctx, tau + step / 2);
            ComplexMatrix h_end = dilated_hamiltonian(ctx, tau + step);
            ComplexMatrix k1 = h_start * u * mi;
            ComplexMatrix k2 = h_mid * (u + k1 * cdouble(step / 2)) * mi;
            ComplexMatrix k3 = h_mid * (u + k2 * cdouble(step / 2)) * mi;
            ComplexMatrix k4 = h_end * (u + k3 * cdouble(step)) * mi;
            u += (k1 + k2 * cdouble(2) + k3 * cdouble(2) + k4) * cdouble(step / 6);
            tau = next;
            h_start = h_end;
            steps++;
        }
        out.push_back(u);
    }
    if (step_count != nullptr) {
        *step_count = steps;
    }
    return out;
}

}  // namespace

ComplexMatrix evolve_M(const DilationContext &ctx, double t) {
    return gram_of_inverse(ctx.r, t) * cdouble(ctx.metric_scale());
}

ComplexMatrix closed_form_metric(double r, double t, double scale) {
    if (std::abs(r) >= 1) {
        throw std::domain_error("closed_form_metric: requires |r| < 1");
    }
    double w2 = 1 - r * r;
    double w = std::sqrt(w2);
    double c2 = std::cos(2 * w * t);
    double s2 = std::sin(2 * w * t);
    double id = (1 - r * r * c2) / w2;
    double z = -r / w * s2;
    double y = r / w2 * (1 - c2);
    auto m = ComplexMatrix::identity(2) * cdouble(id) + gates::pauli_z() * cdouble(z) + gates::pauli_y() * cdouble(y);
    return m * cdouble(scale);
}

DilationContext calibrate(double r, double horizon, const CalibrationOptions &options) {
    if (!(options.m0 > 1) || !(options.f > 1)) {
        throw std::invalid_argument("calibrate: requires m0 > 1 and f > 1");
    }
    if (!(horizon >= 0) || !(options.grid_step > 0)) {
        throw std::invalid_argument("calibrate: requires horizon >= 0 and grid_step > 0");
    }
    auto n = static_cast<size_t>(std::ceil(horizon / options.grid_step - 1e-9));
    double mu_min = options.m0;
    for (size_t k = 0; k <= n; k++) {
        double t = std::min(static_cast<double>(k) * options.grid_step, horizon);
        auto g = gram_of_inverse(r, t);
        double a = g(0, 0).real();
        double d = g(1, 1).real();
        double hi = 0.5 * (a + d) + std::hypot(0.5 * (a - d), std::abs(g(0, 1)));
        // det(g) = 1, so the small eigenvalue of m0 g is m0 / hi.
        mu_min = std::min(mu_min, options.m0 / hi);
    }
    if (!(mu_min > 0)) {
        throw std::runtime_error("calibrate: non-positive mu_min signals a numerical failure");
    }
    DilationContext ctx;
    ctx.r = r;
    ctx.horizon = horizon;
    ctx.m0 = options.m0;
    ctx.f = options.f;
    ctx.mu_min = mu_min;
    ctx.eta0 = std::sqrt(options.m0 / mu_min * options.f - 1);
    ctx.theta = 2 * std::atan(ctx.eta0);
    return ctx;
}

DilationContext calibrate_for_time(double r, double t, double interval, const CalibrationOptions &options) {
    if (!(interval > 0)) {
        throw std::invalid_argument("calibrate_for_time: interval must be positive");
    }
    double intervals = std::max(1.0, std::ceil(t / interval - 1e-9));
    return calibrate(r, intervals * interval, options);
}

DilatedFrame frame_at(const DilationContext &ctx, double t) {
    auto core = frame_core(ctx, t);
    return DilatedFrame{
        t, core.metric, core.eta, core.eta_dot, core.lambda, core.gamma, assemble_hamiltonian(core.lambda, core.gamma),
    };
}

ComplexMatrix metric_derivative(double r, const ComplexMatrix &metric) {
    auto h = hamiltonian(r);
    return (h.adjoint() * metric - metric * h) * cdouble(0, -1);
}

std::vector<Propagation> propagate_series(
    const DilationContext &ctx, std::span<const double> times, const PropagationOptions &options) {
    double h = options.dt;
    for (int attempt = 0;; attempt++) {
        size_t coarse_steps = 0;
        size_t fine_steps = 0;
        auto coarse = integrate(ctx, times, h, &coarse_steps);
        auto fine = integrate(ctx, times, h / 2, &fine_steps);
        std::vector<Propagation> out(times.size());
        double worst = 0;
        for (size_t k = 0; k < times.size(); k++) {
            out[k].unitary = fine[k];
            out[k].error_estimate = two_norm(coarse[k] - fine[k]) / 15;
            out[k].unitarity_defect = two_norm(fine[k].adjoint() * fine[k] - ComplexMatrix::identity(4));
            out[k].step = h / 2;
            out[k].steps = fine_steps;
            worst = std::max(worst, out[k].unitarity_defect);
        }
        if (worst <= options.max_unitarity_defect) {
            return out;
        }
        if (attempt >= options.max_refinements) {
            throw std::runtime_error("propagate_U: unitarity defect " + std::to_string(worst) +
                                     " persists after step refinement");
        }
        h /= 2;
    }
}

Propagation propagate_U(const DilationContext &ctx, double t, const PropagationOptions &options) {
    double times[] = {t};
    return propagate_series(ctx, times, options).front();
}

StateVector dilated_initial_state(const DilationContext &ctx, const StateVector &system_state) {
    system_state.require_normalized("dilated_initial_state");
    double norm = std::sqrt(1 + ctx.eta0 * ctx.eta0);
    auto ancilla = StateVector::normalized({1 / norm, ctx.eta0 / norm});
    return kron(ancilla, system_state);
}

double verify_solution_structure(const DilationContext &ctx, double t, const ComplexMatrix &unitary,
                                 const StateVector &system_state) {
    size_t sys_dim = system_state.dim();
    if (sys_dim != 2 && sys_dim != 4) {
        throw std::invalid_argument("verify_solution_structure: system must be one or two qubits");
    }
    auto psi0 = dilated_initial_state(ctx, system_state);
    ComplexMatrix u = unitary;
    ComplexMatrix k = nh_propagator({ctx.r, t});
    ComplexMatrix eta = frame_at(ctx, t).eta;
    if (sys_dim == 4) {
        u = kron(unitary, ComplexMatrix::identity(2));
        k = kron(k, ComplexMatrix::identity(2));
        eta = kron(eta, ComplexMatrix::identity(2));
    }
    auto evolved = u * psi0;
    auto psi_t = k * system_state;
    auto tilde = eta * psi_t;
    double norm = std::sqrt(1 + ctx.eta0 * ctx.eta0);
    double s = 0;
    for (size_t i = 0; i < sys_dim; i++) {
        s += std::norm(evolved[i] - psi_t[i] / norm);
        s += std::norm(evolved[sys_dim + i] - tilde[i] / norm);
    }
    return std::sqrt(s);
}

double verify_solution_structure(const DilationContext &ctx, double t, const StateVector &system_state) {
    return verify_solution_structure(ctx, t, propagate_U(ctx, t).unitary, system_state);
}

MetricCheck metric_ode_residual(double r, double t, double step) {
    auto m = gram_of_inverse(r, t);
    auto dm = (gram_of_inverse(r, t + step) - gram_of_inverse(r, t - step)) * cdouble(1 / (2 * step));
    auto h = hamiltonian(r);
    double ode = two_norm(dm * cdouble(0, 1) - (h.adjoint() * m - m * h));
    auto psi0 = StateVector::basis(2, 0);
    auto psi = nh_propagator({r, t}) * psi0;
    double initial = psi0.inner(psi0).real();
    double now = psi.inner(m * psi).real();
    return MetricCheck{ode, std::abs(now / initial - 1)};
}

}  // namespace ptdilate
