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

#include "ptdilate/nonhermitian.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ptdilate {

namespace {

constexpr cdouble kI(0, 1);

// cos(sqrt(x) t) and sin(sqrt(x) t) / sqrt(x), continued analytically to x <= 0.
struct Oscillation {
    double c;
    double s;
};

Oscillation oscillation(double x, double t) {
    if (std::abs(x) < kSeriesBand) {
        // Power series in (x t^2); summed until the terms stop contributing.
        double y = -x * t * t;
        double term_c = 1;
        double term_s = t;
        double c = term_c;
        double s = term_s;
        for (int k = 1; k < 60; k++) {
            term_c *= y / static_cast<double>((2 * k - 1) * (2 * k));
            term_s *= y / static_cast<double>((2 * k) * (2 * k + 1));
            c += term_c;
            s += term_s;
            if (std::abs(term_c) <= 1e-17 * std::abs(c) && std::abs(term_s) <= 1e-17 * std::abs(s)) {
                break;
            }
        }
        return {c, s};
    }
    if (x > 0) {
        double w = std::sqrt(x);
        return {std::cos(w * t), std::sin(w * t) / w};
    }
    double k = std::sqrt(-x);
    return {std::cosh(k * t), std::sinh(k * t) / k};
}

}  // namespace

const char *regime_name(PtRegime regime) {
    switch (regime) {
        case PtRegime::kSymmetric:
            return "symmetric";
        case PtRegime::kExceptional:
            return "exceptional";
        case PtRegime::kBroken:
            return "broken";
    }
    return "unknown";
}

ComplexMatrix hamiltonian(double r) {
    return ComplexMatrix(2, {cdouble(0, r), 1, 1, cdouble(0, -r)});
}

PtRegime pt_classify(double r) {
    double a = std::abs(r);
    if (std::abs(1 - a) < kExceptionalBand) {
        return PtRegime::kExceptional;
    }
    return a < 1 ? PtRegime::kSymmetric : PtRegime::kBroken;
}

Eigensystem eigensystem(double r) {
    Eigensystem out;
    out.regime = pt_classify(r);
    auto add = [&](cdouble value, cdouble top) {
        StateVector v = StateVector::unnormalized({top, 1}).renormalized();
        cdouble ab = v[0] * std::conj(v[1]);
        out.eigenvalues.push_back(value);
        out.eigenvectors.push_back(v);
        out.bloch.push_back({2 * ab.real(), 2 * ab.imag(), std::norm(v[0]) - std::norm(v[1])});
    };
    switch (out.regime) {
        case PtRegime::kSymmetric: {
            double w = std::sqrt(1 - r * r);
            add(w, cdouble(w, r));
            add(-w, cdouble(-w, r));
            break;
        }
        case PtRegime::kExceptional:
            add(0, cdouble(0, r > 0 ? 1 : -1));
            break;
        case PtRegime::kBroken: {
            double k = std::sqrt(r * r - 1);
            add(cdouble(0, k), cdouble(0, r + k));
            add(cdouble(0, -k), cdouble(0, r - k));
            break;
        }
    }
    return out;
}

PropagatorCoefficients propagator_coeffs_with_rate(double r, double t, double omega_sq) {
    auto [c, s] = oscillation(omega_sq, t);
    PropagatorCoefficients out;
    out.alpha0 = c + r * s;
    out.beta0 = -kI * s;
    out.alpha1 = out.beta0;
    out.beta1 = c - r * s;
    return out;
}

PropagatorCoefficients propagator_coeffs(const NonHermitianParams &p) {
    return propagator_coeffs_with_rate(p.r, p.t, 1 - p.r * p.r);
}

ComplexMatrix propagator_matrix(const PropagatorCoefficients &c) {
    return ComplexMatrix(2, {c.alpha0, c.alpha1, c.beta0, c.beta1});
}

ComplexMatrix nh_propagator(const NonHermitianParams &p) {
    return propagator_matrix(propagator_coeffs(p));
}

StateVector evolve_state(const NonHermitianParams &p, const StateVector &initial) {
    if (initial.dim() != 2) {
        throw std::invalid_argument("evolve_state: expected a single-qubit state");
    }
    return nh_propagator(p) * initial;
}

Populations populations(const NonHermitianParams &p, const StateVector &initial) {
    initial.require_normalized("populations");
    auto psi = evolve_state(p, initial);
    double n0 = std::norm(psi[0]);
    double n1 = std::norm(psi[1]);
    return {n0 / (n0 + n1), n1 / (n0 + n1)};
}

double recurrence_time(double r) {
    if (std::abs(r) >= 1) {
        throw std::domain_error("recurrence_time: requires |r| < 1");
    }
    return std::numbers::pi / std::sqrt(1 - r * r);
}

double decay_time(double r) {
    if (std::abs(r) <= 1) {
        throw std::domain_error("decay_time: requires |r| > 1");
    }
    return 1 / (2 * std::sqrt(r * r - 1));
}

double state_norm_inverse(const NonHermitianParams &p, const DensityMatrix &rho0) {
    auto k = nh_propagator(p);
    return 1 / (k * rho0.matrix() * k.adjoint()).trace().real();
}

ComplexMatrix evolve_density(const NonHermitianParams &p, const ComplexMatrix &rho0) {
    auto k = nh_propagator(p);
    auto rho = k * rho0 * k.adjoint();
    return rho * cdouble(1 / rho.trace().real());
}

}  // namespace ptdilate
