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

#ifndef PTDILATE_METRICS_H
#define PTDILATE_METRICS_H

#include <array>
#include <span>
#include <string>
#include <vector>

#include "ptdilate/linalg.h"

namespace ptdilate {

/// Half the sum of absolute eigenvalues of rho1 - rho2.
double trace_distance(const ComplexMatrix &rho1, const ComplexMatrix &rho2);

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double state_fidelity(const ComplexMatrix &rho, const ComplexMatrix &sigma);

/// 1 - Tr rho^2.
double linear_entropy(const ComplexMatrix &rho);

/// Eigenvalues of rho (sy x sy) rho* (sy x sy), descending.
///
/// Computed as squared singular values of the matrix <w_j| sy x sy |w_k*> built
/// from the subnormalized eigenvectors w_k of rho, which keeps exact zeros exact
/// for rank-one and rank-two inputs. Throws std::domain_error if rho has an
/// eigenvalue below -1e-8.
std::array<double, 4> concurrence_eigenvalues(const ComplexMatrix &rho);

/// max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)).
double concurrence(const ComplexMatrix &rho);

/// Residual tangle of a pure three-qubit state with the given focus wire:
/// 2 s_focus - C^2(focus, other1) - C^2(focus, other2). The default focus is wire 1
/// (q for wire order a, q, q'); the value is independent of the focus.
double three_tangle(const StateVector &psi, size_t focus = 1);

struct ExponentFit {
    double delta;   // |slope| of ln(value) against ln(t)
    double slope;
    double stderr;  // standard error of the slope
    size_t points;
};

/// Unweighted least squares of ln(value) on ln(t) over t_lo <= t <= t_hi.
/// Throws std::invalid_argument with fewer than 3 points in the window and
/// std::domain_error for non-positive values or times inside it.
ExponentFit fit_critical_exponent(std::span<const double> t, std::span<const double> values, double t_lo,
                                  double t_hi);

/// Correlations of one (r, t) point of the three-qubit evolution.
struct CorrelationRecord {
    double t = 0;
    double r = 0;
    double distance = 0;
    double concurrence_qq = 0;
    double concurrence_aq = 0;
    double concurrence_aqp = 0;
    double linear_entropy_q = 0;
    double linear_entropy_a = 0;
    double tangle = 0;
};

/// Fills every field except t, r and distance from a pure (a, q, q') state.
CorrelationRecord full_correlations(const StateVector &psi);

std::string correlation_csv_header();
std::string correlation_csv_row(const CorrelationRecord &rec);

/// Shortest round-trip decimal form ("%.17g" trimmed to the fewest digits that
/// parse back to the same double), used by every CSV writer.
std::string format_number(double x);

}  // namespace ptdilate

#endif
