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

#ifndef PTDILATE_NONHERMITIAN_H
#define PTDILATE_NONHERMITIAN_H

#include <array>
#include <vector>

#include "ptdilate/density_matrix.h"
#include "ptdilate/linalg.h"

namespace ptdilate {

/// Width of the band around |r| = 1 classified as the exceptional point.
inline constexpr double kExceptionalBand = 1e-8;
/// |1 - r^2| below which the propagator switches to its power series.
inline constexpr double kSeriesBand = 1e-5;

/// Gain/loss strength r and evolution time t of H = sigma_x + i r sigma_z.
struct NonHermitianParams {
    double r = 0;
    double t = 0;
};

enum class PtRegime { kSymmetric, kExceptional, kBroken };

const char *regime_name(PtRegime regime);

/// Entries of exp(-i H t): |0> -> alpha0|0> + beta0|1>, |1> -> alpha1|0> + beta1|1>.
struct PropagatorCoefficients {
    cdouble alpha0;
    cdouble beta0;
    cdouble alpha1;
    cdouble beta1;
};

struct Eigensystem {
    PtRegime regime;
    std::vector<cdouble> eigenvalues;           // (+, -) order; one entry at the EP
    std::vector<StateVector> eigenvectors;      // normalized
    std::vector<std::array<double, 3>> bloch;   // plotted convention, see eigensystem()
};

ComplexMatrix hamiltonian(double r);

/// Closed-form eigensystem of H(r).
///
/// Bloch coordinates use x = 2Re(a b*), y = 2Im(a b*), z = |a|^2 - |b|^2 for the
/// eigenvector (a, b); this puts the exceptional-point eigenvector (i, 1)/sqrt(2)
/// at (0, 1, 0) as in the usual eigenvector-coalescence picture. The y axis is the
/// mirror image of <sigma_y>.
Eigensystem eigensystem(double r);

PtRegime pt_classify(double r);

PropagatorCoefficients propagator_coeffs(const NonHermitianParams &p);

/// Propagator coefficients with the oscillation frequency squared supplied
/// independently of r: omega_sq = 1 - r^2 reproduces propagator_coeffs. Positive
/// values give trigonometric dynamics, negative values hyperbolic ones.
PropagatorCoefficients propagator_coeffs_with_rate(double r, double t, double omega_sq);

ComplexMatrix propagator_matrix(const PropagatorCoefficients &c);
/// exp(-i H t); non-unitary with unit determinant.
ComplexMatrix nh_propagator(const NonHermitianParams &p);

/// exp(-i H t) applied to the initial state, without renormalization.
StateVector evolve_state(const NonHermitianParams &p, const StateVector &initial);

struct Populations {
    double p0;
    double p1;
};

Populations populations(const NonHermitianParams &p, const StateVector &initial);

/// pi / sqrt(1 - r^2); throws std::domain_error for |r| >= 1.
double recurrence_time(double r);
/// 1 / (2 sqrt(r^2 - 1)); throws std::domain_error for |r| <= 1.
double decay_time(double r);

/// 1 / Tr[exp(-iHt) rho0 exp(iH^dag t)].
double state_norm_inverse(const NonHermitianParams &p, const DensityMatrix &rho0);

/// Normalized evolution rho(t) = K rho0 K^dag / Tr[K rho0 K^dag].
ComplexMatrix evolve_density(const NonHermitianParams &p, const ComplexMatrix &rho0);

}  // namespace ptdilate

#endif
