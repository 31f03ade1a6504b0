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

#include "ptdilate/synthesis.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ptdilate/random.h"

namespace ptdilate {

namespace {

constexpr size_t kSlots = 4;
constexpr double kTwoPi = 2 * std::numbers::pi;

using Params = TemplateAngles;

// Rz(a) Ry(b) Rz(g) in closed form.
ComplexMatrix u3_fast(double a, double b, double g) {
    double c = std::cos(b / 2);
    double s = std::sin(b / 2);
    cdouble pp = std::polar(1.0, -(a + g) / 2);
    cdouble pm = std::polar(1.0, -(a - g) / 2);
    return ComplexMatrix(2, {pp * c, -pm * s, std::conj(pm) * s, std::conj(pp) * c});
}

// Partial derivatives of u3_fast with respect to (a, b, g).
std::array<ComplexMatrix, 3> u3_grad(double a, double b, double g) {
    double c = std::cos(b / 2);
    double s = std::sin(b / 2);
    cdouble pp = std::polar(1.0, -(a + g) / 2);
    cdouble pm = std::polar(1.0, -(a - g) / 2);
    const cdouble h(0, 0.5);
    ComplexMatrix da(2, {-h * pp * c, h * pm * s, h * std::conj(pm) * s, h * std::conj(pp) * c});
    ComplexMatrix db(2, {-0.5 * pp * s, -0.5 * pm * c, 0.5 * std::conj(pm) * c, -0.5 * std::conj(pp) * s});
    ComplexMatrix dg(2, {-h * pp * c, -h * pm * s, -h * std::conj(pm) * s, h * std::conj(pp) * c});
    return {da, db, dg};
}

// Left multiplication by the template CNOT permutes rows.
ComplexMatrix apply_cnot_left(const ComplexMatrix &m, bool control_on_ancilla) {
    ComplexMatrix out = m;
    size_t r0 = control_on_ancilla ? 2 : 1;
    size_t r1 = 3;
    for (size_t c = 0; c < 4; c++) {
        std::swap(out(r0, c), out(r1, c));
    }
    return out;
}

ComplexMatrix cnot_matrix(bool control_on_ancilla) {
    return apply_cnot_left(ComplexMatrix::identity(4), control_on_ancilla);
}

ComplexMatrix layer(const Params &x, size_t slot) {
    const double *p = x.data() + 6 * slot;
    return kron(u3_fast(p[0], p[1], p[2]), u3_fast(p[3], p[4], p[5]));
}

ComplexMatrix template_unitary(const Params &x, bool control_on_ancilla) {
    ComplexMatrix v = layer(x, 0);
    for (size_t k = 1; k < kSlots; k++) {
        v = layer(x, k) * apply_cnot_left(v, control_on_ancilla);
    }
    return v * std::polar(1.0, x[24]);
}

double frobenius_cost(const Params &x, const ComplexMatrix &target, bool control_on_ancilla) {
    double n = (template_unitary(x, control_on_ancilla) - target).frobenius_norm();
    return n * n;
}

double optimal_phase(const Params &x, const ComplexMatrix &target, bool control_on_ancilla) {
    Params y = x;
    y[24] = 0;
    auto v = template_unitary(y, control_on_ancilla);
    return -std::arg((target.adjoint() * v).trace());
}

struct RunResult {
    Params x;
    double cost;
    int iterations;
};

// Cholesky solve of a small symmetric positive definite system; false if not SPD.
bool cholesky_solve(std::vector<double> a, std::vector<double> &b, size_t n) {
    for (size_t j = 0; j < n; j++) {
        double d = a[j * n + j];
        for (size_t k = 0; k < j; k++) {
            d -= a[j * n + k] * a[j * n + k];
        }
        if (!(d > 0)) {
            return false;
        }
        d = std::sqrt(d);
        a[j * n + j] = d;
        for (size_t i = j + 1; i < n; i++) {
            double s = a[i * n + j];
            for (size_t k = 0; k < j; k++) {
                s -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = s / d;
        }
    }
    for (size_t i = 0; i < n; i++) {
        double s = b[i];
        for (size_t k = 0; k < i; k++) {
            s -= a[i * n + k] * b[k];
        }
        b[i] = s / a[i * n + i];
    }
    for (size_t i = n; i-- > 0;) {
        double s = b[i];
        for (size_t k = i + 1; k < n; k++) {
            s -= a[k * n + i] * b[k];
        }
        b[i] = s / a[i * n + i];
    }
    return true;
}

// Residual (32 reals) and its analytic Jacobian (32 x 25, row-major).
void residual_and_jacobian(const Params &x, const ComplexMatrix &target, bool flip, std::vector<double> &res,
                           std::vector<double> &jac) {
    std::array<ComplexMatrix, kSlots> layers;
    for (size_t k = 0; k < kSlots; k++) {
        layers[k] = layer(x, k);
    }
    // right[k]: everything applied before slot k; left[k]: everything after it.
    std::array<ComplexMatrix, kSlots> right;
    std::array<ComplexMatrix, kSlots> left;
    right[0] = ComplexMatrix::identity(4);
    for (size_t k = 1; k < kSlots; k++) {
        right[k] = apply_cnot_left(layers[k - 1] * right[k - 1], flip);
    }
    auto c = cnot_matrix(flip);
    left[kSlots - 1] = ComplexMatrix::identity(4);
    for (size_t k = kSlots - 1; k-- > 0;) {
        left[k] = left[k + 1] * layers[k + 1] * c;
    }
    cdouble phase = std::polar(1.0, x[24]);
    ComplexMatrix v = left[0] * layers[0] * right[0] * phase;
    auto diff = v - target;
    res.assign(32, 0);
    jac.assign(32 * kTemplateParams, 0);
    for (size_t i = 0; i < 16; i++) {
        res[2 * i] = diff(i / 4, i % 4).real();
        res[2 * i + 1] = diff(i / 4, i % 4).imag();
    }
    auto put = [&](size_t col, const ComplexMatrix &d) {
        for (size_t i = 0; i < 16; i++) {
            jac[(2 * i) * kTemplateParams + col] = d(i / 4, i % 4).real();
            jac[(2 * i + 1) * kTemplateParams + col] = d(i / 4, i % 4).imag();
        }
    };
    for (size_t k = 0; k < kSlots; k++) {
        const double *p = x.data() + 6 * k;
        auto ua = u3_fast(p[0], p[1], p[2]);
        auto uq = u3_fast(p[3], p[4], p[5]);
        auto ga = u3_grad(p[0], p[1], p[2]);
        auto gq = u3_grad(p[3], p[4], p[5]);
        auto lp = left[k] * phase;
        for (size_t j = 0; j < 3; j++) {
            put(6 * k + j, lp * kron(ga[j], uq) * right[k]);
            put(6 * k + 3 + j, lp * kron(ua, gq[j]) * right[k]);
        }
    }
    put(24, v * cdouble(0, 1));
}

RunResult run_levenberg_marquardt(Params x, const ComplexMatrix &target, const SynthesisOptions &options) {
    const size_t n = kTemplateParams;
    std::vector<double> res;
    std::vector<double> jac;
    residual_and_jacobian(x, target, options.control_on_ancilla, res, jac);
    auto sq = [](const std::vector<double> &v) {
        double s = 0;
        for (double e : v) {
            s += e * e;
        }
        return s;
    };
    double cost = sq(res);
    double lambda = -1;
    int it = 0;
    std::vector<double> a(n * n);
    std::vector<double> g(n);
    std::vector<double> trial_res;
    std::vector<double> trial_jac;
    for (; it < options.max_iterations && cost > 1e-30; it++) {
        std::fill(a.begin(), a.end(), 0.0);
        std::fill(g.begin(), g.end(), 0.0);
        for (size_t row = 0; row < 32; row++) {
            const double *jr = jac.data() + row * n;
            for (size_t i = 0; i < n; i++) {
                g[i] += jr[i] * res[row];
                for (size_t j = 0; j <= i; j++) {
                    a[i * n + j] += jr[i] * jr[j];
                }
            }
        }
        double max_diag = 0;
        for (size_t i = 0; i < n; i++) {
            for (size_t j = 0; j < i; j++) {
                a[j * n + i] = a[i * n + j];
            }
            max_diag = std::max(max_diag, a[i * n + i]);
        }
        if (lambda < 0) {
            lambda = 1e-3 * max_diag;
        }
        bool accepted = false;
        double improvement = 0;
        while (!accepted && lambda < 1e12) {
            auto damped = a;
            for (size_t i = 0; i < n; i++) {
                damped[i * n + i] += lambda;
            }
            std::vector<double> step = g;
            if (!cholesky_solve(damped, step, n)) {
                lambda *= 4;
                continue;
            }
            Params trial = x;
            for (size_t i = 0; i < n; i++) {
                trial[i] -= step[i];
            }
            residual_and_jacobian(trial, target, options.control_on_ancilla, trial_res, trial_jac);
            double trial_cost = sq(trial_res);
            if (trial_cost < cost) {
                improvement = cost - trial_cost;
                x = trial;
                cost = trial_cost;
                res.swap(trial_res);
                jac.swap(trial_jac);
                lambda = std::max(lambda * 0.3, 1e-15);
                accepted = true;
            } else {
                lambda *= 4;
            }
        }
        if (!accepted || improvement <= options.tolerance * cost * 1e-3) {
            it++;
            break;
        }
    }
    return {x, cost, it};
}

RunResult run_nelder_mead(const Params &x0, const ComplexMatrix &target, const SynthesisOptions &options) {
    const size_t n = kTemplateParams;
    const double dn = static_cast<double>(n);
    // Dimension-adaptive coefficients (Gao and Han).
    const double alpha = 1;
    const double beta = 1 + 2 / dn;
    const double gamma = 0.75 - 1 / (2 * dn);
    const double delta = 1 - 1 / dn;
    bool flip = options.control_on_ancilla;
    int evals = 0;
    auto f = [&](const Params &x) {
        evals++;
        return frobenius_cost(x, target, flip);
    };
    std::vector<Params> simplex(n + 1, x0);
    std::vector<double> values(n + 1);
    for (size_t i = 0; i < n; i++) {
        simplex[i + 1][i] += 0.5;
    }
    for (size_t i = 0; i <= n; i++) {
        values[i] = f(simplex[i]);
    }
    std::vector<size_t> order(n + 1);
    int iterations = 0;
    while (evals < options.max_evaluations) {
        iterations++;
        for (size_t i = 0; i <= n; i++) {
            order[i] = i;
        }
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return values[a] < values[b]; });
        size_t best = order[0];
        size_t worst = order[n];
        size_t second = order[n - 1];
        if (values[worst] - values[best] <= options.tolerance * std::max(values[best], 1e-30) &&
            values[worst] - values[best] < 1e-24) {
            break;
        }
        if (values[best] < 1e-28) {
            break;
        }
        Params centroid{};
        for (size_t i = 0; i <= n; i++) {
            if (i == worst) {
                continue;
            }
            for (size_t k = 0; k < n; k++) {
                centroid[k] += simplex[i][k] / dn;
            }
        }
        auto along = [&](double coef) {
            Params p;
            for (size_t k = 0; k < n; k++) {
                p[k] = centroid[k] + coef * (simplex[worst][k] - centroid[k]);
            }
            return p;
        };
        Params xr = along(-alpha);
        double fr = f(xr);
        if (fr < values[best]) {
            Params xe = along(-alpha * beta);
            double fe = f(xe);
            if (fe < fr) {
                simplex[worst] = xe;
                values[worst] = fe;
            } else {
                simplex[worst] = xr;
                values[worst] = fr;
            }
        } else if (fr < values[second]) {
            simplex[worst] = xr;
            values[worst] = fr;
        } else {
            bool outside = fr < values[worst];
            Params xc = along(outside ? alpha * gamma : -gamma);
            double fc = f(xc);
            if (fc < std::min(fr, values[worst])) {
                simplex[worst] = xc;
                values[worst] = fc;
            } else {
                for (size_t i = 0; i <= n; i++) {
                    if (i == best) {
                        continue;
                    }
                    for (size_t k = 0; k < n; k++) {
                        simplex[i][k] = simplex[best][k] + delta * (simplex[i][k] - simplex[best][k]);
                    }
                    values[i] = f(simplex[i]);
                }
            }
        }
    }
    size_t best = static_cast<size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    Params x = simplex[best];
    double fx = values[best];
    // Coordinate-wise quadratic polishing.
    for (double h = 1e-2; h >= 1e-7; h /= 10) {
        for (int sweep = 0; sweep < 3; sweep++) {
            for (size_t k = 0; k < n; k++) {
                Params lo = x;
                Params hi = x;
                lo[k] -= h;
                hi[k] += h;
                double fl = f(lo);
                double fh = f(hi);
                double curv = fl - 2 * fx + fh;
                if (curv <= 0) {
                    continue;
                }
                Params p = x;
                p[k] += h * (fl - fh) / (2 * curv);
                double fp = f(p);
                if (fp < fx) {
                    x = p;
                    fx = fp;
                }
            }
        }
    }
    return {x, fx, iterations};
}

void validate_template(const Circuit &c) {
    if (c.num_wires() != 2) {
        throw std::invalid_argument("assemble: template circuits have two wires");
    }
    if (c.gates.size() != 11) {
        throw std::invalid_argument("assemble: expected 8 U3 slots and 3 CNOTs");
    }
    std::vector<size_t> cnot_wires;
    for (size_t slot = 0; slot < kSlots; slot++) {
        size_t base = slot * 3;
        const auto &g0 = c.gates[base];
        const auto &g1 = c.gates[base + 1];
        if (g0.kind != GateKind::kU3 || g1.kind != GateKind::kU3 || g0.wires.size() != 1 || g1.wires.size() != 1 ||
            g0.wires[0] == g1.wires[0] || g0.wires[0] > 1 || g1.wires[0] > 1 || g0.angles.size() != 3 ||
            g1.angles.size() != 3) {
            throw std::invalid_argument("assemble: slot " + std::to_string(slot + 1) +
                                        " must hold one U3 on each wire");
        }
        if (slot + 1 < kSlots) {
            const auto &cx = c.gates[base + 2];
            if (cx.kind != GateKind::kCnot || cx.wires.size() != 2) {
                throw std::invalid_argument("assemble: expected a CNOT after slot " + std::to_string(slot + 1));
            }
            if (!cnot_wires.empty() && cx.wires != cnot_wires) {
                throw std::invalid_argument("assemble: all CNOTs must share one orientation");
            }
            cnot_wires = cx.wires;
        }
    }
    if (cnot_wires[0] == cnot_wires[1] || cnot_wires[0] > 1 || cnot_wires[1] > 1) {
        throw std::invalid_argument("assemble: CNOT wires must be (0, 1) or (1, 0)");
    }
}

}  // namespace

const char *optimizer_name(Optimizer opt) {
    return opt == Optimizer::kLevenbergMarquardt ? "levenberg_marquardt" : "nelder_mead";
}

Optimizer optimizer_from_name(const std::string &name) {
    if (name == "levenberg_marquardt" || name == "lm") {
        return Optimizer::kLevenbergMarquardt;
    }
    if (name == "nelder_mead" || name == "nm") {
        return Optimizer::kNelderMead;
    }
    throw std::invalid_argument("unknown optimizer '" + name + "'");
}

double err_u(const ComplexMatrix &target, const ComplexMatrix &candidate) {
    if (target.dim() != candidate.dim()) {
        throw std::invalid_argument("err_u: dimension mismatch");
    }
    return two_norm(target - candidate) / two_norm(target);
}

double wrap_angle(double angle) {
    double x = std::fmod(angle, 2 * kTwoPi);
    if (x > kTwoPi) {
        x -= 2 * kTwoPi;
    } else if (x <= -kTwoPi) {
        x += 2 * kTwoPi;
    }
    return x;
}

Circuit template_circuit(const TemplateAngles &params, bool control_on_ancilla) {
    Circuit c;
    c.wires = {"a", "q"};
    for (size_t slot = 0; slot < kSlots; slot++) {
        const double *p = params.data() + 6 * slot;
        c.u3(0, p[0], p[1], p[2]);
        c.u3(1, p[3], p[4], p[5]);
        if (slot + 1 < kSlots) {
            if (control_on_ancilla) {
                c.cnot(0, 1);
            } else {
                c.cnot(1, 0);
            }
        }
    }
    c.global_phase = params[24];
    return c;
}

ComplexMatrix assemble(const Circuit &circuit) {
    validate_template(circuit);
    auto slot_matrix = [&](size_t slot) {
        const auto &g0 = circuit.gates[slot * 3];
        const auto &g1 = circuit.gates[slot * 3 + 1];
        const auto &ga = g0.wires[0] == 0 ? g0 : g1;
        const auto &gq = g0.wires[0] == 0 ? g1 : g0;
        return kron(gates::u3(ga.angles[0], ga.angles[1], ga.angles[2]),
                    gates::u3(gq.angles[0], gq.angles[1], gq.angles[2]));
    };
    bool flip = circuit.gates[2].wires[0] == 0;
    auto cx = cnot_matrix(flip);
    ComplexMatrix u = slot_matrix(0);
    for (size_t slot = 1; slot < kSlots; slot++) {
        u = slot_matrix(slot) * cx * u;
    }
    return u * std::polar(1.0, circuit.global_phase);
}

SynthesisReport decompose(const ComplexMatrix &target, const SynthesisOptions &options) {
    if (target.dim() != 4) {
        throw std::invalid_argument("decompose: expected a 4x4 target");
    }
    if (!is_unitary(target, 1e-8)) {
        throw std::invalid_argument("decompose: target is not unitary within 1e-8");
    }
    CounterRng rng(options.seed, "synthesis");
    SynthesisReport best;
    best.err_u = std::numeric_limits<double>::infinity();
    int restarts = std::max(options.restarts, 1);
    for (int k = 0; k < restarts; k++) {
        Params x;
        for (size_t i = 0; i < 24; i++) {
            x[i] = std::numbers::pi * (2 * rng.uniform() - 1);
        }
        x[24] = 0;
        x[24] = optimal_phase(x, target, options.control_on_ancilla);
        RunResult run = options.optimizer == Optimizer::kLevenbergMarquardt
                            ? run_levenberg_marquardt(x, target, options)
                            : run_nelder_mead(x, target, options);
        Params wrapped;
        for (size_t i = 0; i < 24; i++) {
            wrapped[i] = wrap_angle(run.x[i]);
        }
        wrapped[24] = std::remainder(run.x[24], kTwoPi);
        Circuit circuit = template_circuit(wrapped, options.control_on_ancilla);
        double e = err_u(target, assemble(circuit));
        if (e < best.err_u) {
            best.circuit = std::move(circuit);
            best.err_u = e;
            best.iterations = run.iterations;
        }
        best.restarts_used = k + 1;
        if (best.err_u <= options.target_err) {
            break;
        }
    }
    best.fidelity_fu = 1 - best.err_u;
    best.failed = !(best.err_u <= options.accept_err);
    return best;
}

}  // namespace ptdilate
