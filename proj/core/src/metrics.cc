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

#include "ptdilate/metrics.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace ptdilate {

namespace {

// Eigenvalues of rho below this are treated as zero weight.
constexpr double kRankCutoff = 1e-14;

void require_same_dim(const ComplexMatrix &a, const ComplexMatrix &b, const char *what) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
    }
}

}  // namespace

double trace_distance(const ComplexMatrix &rho1, const ComplexMatrix &rho2) {
    require_same_dim(rho1, rho2, "trace_distance");
    auto diff = rho1 - rho2;
    diff = (diff + diff.adjoint()) * cdouble(0.5);
    double s = 0;
    for (double v : hermitian_eig(diff).values) {
        s += std::abs(v);
    }
    return 0.5 * s;
}

double state_fidelity(const ComplexMatrix &rho, const ComplexMatrix &sigma) {
    require_same_dim(rho, sigma, "state_fidelity");
    auto root = psd_sqrt(rho);
    auto inner = root * sigma * root;
    inner = (inner + inner.adjoint()) * cdouble(0.5);
    double s = 0;
    for (double v : hermitian_eig(inner).values) {
        s += std::sqrt(std::max(v, 0.0));
    }
    return s * s;
}

double linear_entropy(const ComplexMatrix &rho) {
    return 1 - (rho * rho).trace().real();
}

std::array<double, 4> concurrence_eigenvalues(const ComplexMatrix &rho) {
    if (rho.dim() != 4) {
        throw std::invalid_argument("concurrence: expected a two-qubit density matrix");
    }
    auto eig = hermitian_eig((rho + rho.adjoint()) * cdouble(0.5));
    if (eig.values.front() < -1e-8) {
        throw std::domain_error("concurrence: input has eigenvalue " + std::to_string(eig.values.front()));
    }
    // Subnormalized eigenvectors carrying non-negligible weight.
    std::vector<std::array<cdouble, 4>> w;
    for (size_t k = 0; k < 4; k++) {
        double p = eig.values[k];
        if (p <= kRankCutoff) {
            continue;
        }
        std::array<cdouble, 4> v;
        for (size_t i = 0; i < 4; i++) {
            v[i] = std::sqrt(p) * eig.vectors(i, k);
        }
        w.push_back(v);
    }
    // (sy x sy) maps basis (0, 1, 2, 3) to (-3, 2, 1, -0).
    auto spin_flip = [](const std::array<cdouble, 4> &v) {
        return std::array<cdouble, 4>{-std::conj(v[3]), std::conj(v[2]), std::conj(v[1]), -std::conj(v[0])};
    };
    size_t n = w.size();
    ComplexMatrix tau(n == 3 ? 4 : std::max<size_t>(n, 1));
    for (size_t j = 0; j < n; j++) {
        for (size_t k = 0; k < n; k++) {
            auto f = spin_flip(w[k]);
            cdouble s = 0;
            for (size_t i = 0; i < 4; i++) {
                s += std::conj(w[j][i]) * f[i];
            }
            tau(j, k) = s;
        }
    }
    std::array<double, 4> sv{0, 0, 0, 0};
    if (n == 1) {
        sv[0] = std::abs(tau(0, 0));
    } else if (n == 2) {
        auto g = tau.adjoint() * tau;
        double a = g(0, 0).real();
        double d = g(1, 1).real();
        double hi = 0.5 * (a + d) + std::hypot(0.5 * (a - d), std::abs(g(0, 1)));
        sv[0] = std::sqrt(hi);
        sv[1] = sv[0] > 0 ? std::abs(tau(0, 0) * tau(1, 1) - tau(0, 1) * tau(1, 0)) / sv[0] : 0;
    } else if (n > 2) {
        auto g = tau.adjoint() * tau;
        auto e = hermitian_eig((g + g.adjoint()) * cdouble(0.5)).values;
        for (size_t i = 0; i < n; i++) {
            sv[i] = std::sqrt(std::max(e[e.size() - 1 - i], 0.0));
        }
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    std::array<double, 4> lambda;
    for (size_t i = 0; i < 4; i++) {
        lambda[i] = sv[i] * sv[i];
    }
    return lambda;
}

double concurrence(const ComplexMatrix &rho) {
    auto lambda = concurrence_eigenvalues(rho);
    double c = std::sqrt(lambda[0]) - std::sqrt(lambda[1]) - std::sqrt(lambda[2]) - std::sqrt(lambda[3]);
    return std::clamp(c, 0.0, 1.0);
}

double three_tangle(const StateVector &psi, size_t focus) {
    if (psi.dim() != 8) {
        throw std::invalid_argument("three_tangle: expected a three-qubit state");
    }
    if (std::abs(psi.norm() - 1) > kTolNorm) {
        throw std::invalid_argument("three_tangle: requires a normalized pure state");
    }
    if (focus > 2) {
        throw std::invalid_argument("three_tangle: focus wire out of range");
    }
    auto rho = outer(psi);
    std::vector<size_t> others;
    for (size_t w = 0; w < 3; w++) {
        if (w != focus) {
            others.push_back(w);
        }
    }
    auto pair = [&](size_t other) {
        size_t lo = std::min(focus, other);
        size_t hi = std::max(focus, other);
        return concurrence(partial_trace(rho, {lo, hi}));
    };
    double c1 = pair(others[0]);
    double c2 = pair(others[1]);
    double s = linear_entropy(partial_trace(rho, {focus}));
    return 2 * s - c1 * c1 - c2 * c2;
}

ExponentFit fit_critical_exponent(std::span<const double> t, std::span<const double> values, double t_lo,
                                  double t_hi) {
    if (t.size() != values.size()) {
        throw std::invalid_argument("fit_critical_exponent: t and values differ in length");
    }
    std::vector<double> x;
    std::vector<double> y;
    for (size_t i = 0; i < t.size(); i++) {
        if (t[i] < t_lo - 1e-12 || t[i] > t_hi + 1e-12) {
            continue;
        }
        if (!(t[i] > 0) || !(values[i] > 0)) {
            throw std::domain_error("fit_critical_exponent: non-positive time or value in window");
        }
        x.push_back(std::log(t[i]));
        y.push_back(std::log(values[i]));
    }
    size_t n = x.size();
    if (n < 3) {
        throw std::invalid_argument("fit_critical_exponent: fewer than 3 points in window");
    }
    double mx = 0;
    double my = 0;
    for (size_t i = 0; i < n; i++) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0;
    double sxy = 0;
    for (size_t i = 0; i < n; i++) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    double slope = sxy / sxx;
    double intercept = my - slope * mx;
    double rss = 0;
    for (size_t i = 0; i < n; i++) {
        double e = y[i] - intercept - slope * x[i];
        rss += e * e;
    }
    double se = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
    return {std::abs(slope), slope, se, n};
}

CorrelationRecord full_correlations(const StateVector &psi) {
    if (psi.dim() != 8) {
        throw std::invalid_argument("full_correlations: expected a three-qubit state");
    }
    auto rho = outer(psi);
    CorrelationRecord rec;
    rec.concurrence_qq = concurrence(partial_trace(rho, {1, 2}));
    rec.concurrence_aq = concurrence(partial_trace(rho, {0, 1}));
    rec.concurrence_aqp = concurrence(partial_trace(rho, {0, 2}));
    rec.linear_entropy_q = linear_entropy(partial_trace(rho, {1}));
    rec.linear_entropy_a = linear_entropy(partial_trace(rho, {0}));
    rec.tangle = three_tangle(psi, 1);
    return rec;
}

std::string correlation_csv_header() {
    return "t,r,distance,concurrence_qq,concurrence_aq,concurrence_aqp,linear_entropy_q,linear_entropy_a,tangle";
}

std::string correlation_csv_row(const CorrelationRecord &rec) {
    std::string s;
    for (double v : {rec.t, rec.r, rec.distance, rec.concurrence_qq, rec.concurrence_aq, rec.concurrence_aqp,
                     rec.linear_entropy_q, rec.linear_entropy_a, rec.tangle}) {
        if (!s.empty()) {
            s += ',';
        }
        s += format_number(v);
    }
    return s;
}

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (x == 0) {
        x = 0;  // no "-0"
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

}  // namespace ptdilate
