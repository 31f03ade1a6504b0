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

#include "ptdilate/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ptdilate {

namespace {

void check_dim(size_t dim) {
    if (dim != 1 && dim != 2 && dim != 4 && dim != 8) {
        throw std::invalid_argument("unsupported matrix dimension " + std::to_string(dim));
    }
}

void check_same_dim(const ComplexMatrix &a, const ComplexMatrix &b, const char *op) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument(
            std::string(op) + ": dimension mismatch " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
}

double off_diagonal_norm(const ComplexMatrix &m) {
    double s = 0;
    for (size_t i = 0; i < m.dim(); i++) {
        for (size_t j = 0; j < m.dim(); j++) {
            if (i != j) {
                s += std::norm(m(i, j));
            }
        }
    }
    return std::sqrt(s);
}

cdouble eval_poly(std::span<const cdouble> c, cdouble x) {
    cdouble acc = 0;
    for (size_t k = c.size(); k-- > 0;) {
        acc = acc * x + c[k];
    }
    return acc;
}

cdouble eval_poly_derivative(std::span<const cdouble> c, cdouble x) {
    cdouble acc = 0;
    for (size_t k = c.size(); k-- > 1;) {
        acc = acc * x + c[k] * static_cast<double>(k);
    }
    return acc;
}

// Weierstrass (Durand-Kerner) iteration on a monic polynomial, then Newton polishing.
std::vector<cdouble> monic_roots(std::span<const cdouble> c) {
    size_t n = c.size() - 1;
    double radius = 1;
    for (size_t k = 0; k < n; k++) {
        radius = std::max(radius, 1 + std::abs(c[k]));
    }
    std::vector<cdouble> z(n);
    cdouble seed(0.4, 0.9);
    for (size_t i = 0; i < n; i++) {
        z[i] = std::pow(seed, static_cast<double>(i)) * (0.5 * radius);
    }
    bool converged = false;
    for (int iter = 0; iter < 2000 && !converged; iter++) {
        double max_step = 0;
        for (size_t i = 0; i < n; i++) {
            cdouble denom = 1;
            for (size_t j = 0; j < n; j++) {
                if (j != i) {
                    denom *= z[i] - z[j];
                }
            }
            if (std::abs(denom) == 0) {
                denom = 1e-300;
            }
            cdouble step = eval_poly(c, z[i]) / denom;
            z[i] -= step;
            max_step = std::max(max_step, std::abs(step));
        }
        converged = max_step <= 1e-15 * radius;
    }
    for (auto &root : z) {
        for (int k = 0; k < 3; k++) {
            cdouble d = eval_poly_derivative(c, root);
            if (std::abs(d) < 1e-12 * radius) {
                break;
            }
            cdouble next = root - eval_poly(c, root) / d;
            if (std::abs(eval_poly(c, next)) >= std::abs(eval_poly(c, root))) {
                break;
            }
            root = next;
        }
        if (!std::isfinite(root.real()) || !std::isfinite(root.imag())) {
            throw std::runtime_error("general_eigvals: root iteration diverged");
        }
    }
    if (!converged) {
        double scale = 1;
        for (const auto &ck : c) {
            scale = std::max(scale, std::abs(ck));
        }
        for (const auto &root : z) {
            if (std::abs(eval_poly(c, root)) > 1e-6 * scale * std::pow(radius, static_cast<double>(n))) {
                throw std::runtime_error("general_eigvals: root iteration did not converge");
            }
        }
    }
    return z;
}

}  // namespace

ComplexMatrix::ComplexMatrix(size_t dim) : dim_(dim) {
    check_dim(dim);
}

ComplexMatrix::ComplexMatrix(size_t dim, std::initializer_list<cdouble> row_major) : dim_(dim) {
    check_dim(dim);
    if (row_major.size() != dim * dim) {
        throw std::invalid_argument("ComplexMatrix: expected dim*dim entries");
    }
    std::copy(row_major.begin(), row_major.end(), data_.begin());
}

ComplexMatrix ComplexMatrix::identity(size_t dim) {
    ComplexMatrix m(dim);
    for (size_t k = 0; k < dim; k++) {
        m(k, k) = 1;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cdouble> entries) {
    ComplexMatrix m(entries.size());
    for (size_t k = 0; k < entries.size(); k++) {
        m(k, k) = entries[k];
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> entries) {
    ComplexMatrix m(entries.size());
    for (size_t k = 0; k < entries.size(); k++) {
        m(k, k) = entries[k];
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(dim_);
    for (size_t i = 0; i < dim_; i++) {
        for (size_t j = 0; j < dim_; j++) {
            r(i, j) = std::conj((*this)(j, i));
        }
    }
    return r;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix r(dim_);
    for (size_t k = 0; k < dim_ * dim_; k++) {
        r.data_[k] = std::conj(data_[k]);
    }
    return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix r(dim_);
    for (size_t i = 0; i < dim_; i++) {
        for (size_t j = 0; j < dim_; j++) {
            r(i, j) = (*this)(j, i);
        }
    }
    return r;
}

cdouble ComplexMatrix::trace() const {
    cdouble t = 0;
    for (size_t k = 0; k < dim_; k++) {
        t += (*this)(k, k);
    }
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0;
    for (size_t k = 0; k < dim_ * dim_; k++) {
        s += std::norm(data_[k]);
    }
    return std::sqrt(s);
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix &other) const {
    check_same_dim(*this, other, "max_abs_diff");
    double m = 0;
    for (size_t k = 0; k < dim_ * dim_; k++) {
        m = std::max(m, std::abs(data_[k] - other.data_[k]));
    }
    return m;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    check_same_dim(*this, other, "operator+");
    for (size_t k = 0; k < dim_ * dim_; k++) {
        data_[k] += other.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    check_same_dim(*this, other, "operator-");
    for (size_t k = 0; k < dim_ * dim_; k++) {
        data_[k] -= other.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(cdouble scale) {
    for (size_t k = 0; k < dim_ * dim_; k++) {
        data_[k] *= scale;
    }
    return *this;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix &other) const {
    ComplexMatrix r = *this;
    r += other;
    return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix &other) const {
    ComplexMatrix r = *this;
    r -= other;
    return r;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix &other) const {
    return matmul(*this, other);
}

ComplexMatrix ComplexMatrix::operator*(cdouble scale) const {
    ComplexMatrix r = *this;
    r *= scale;
    return r;
}

ComplexMatrix ComplexMatrix::operator-() const {
    return *this * cdouble(-1);
}

bool ComplexMatrix::operator==(const ComplexMatrix &other) const {
    return dim_ == other.dim_ && std::equal(data_.begin(), data_.begin() + dim_ * dim_, other.data_.begin());
}

std::string ComplexMatrix::str() const {
    std::ostringstream out;
    out.precision(6);
    for (size_t i = 0; i < dim_; i++) {
        out << (i == 0 ? "[" : " ");
        for (size_t j = 0; j < dim_; j++) {
            const auto &v = (*this)(i, j);
            out << (j ? ", " : "") << v.real() << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
        }
        out << (i + 1 == dim_ ? "]" : "\n");
    }
    return out.str();
}

StateVector::StateVector(size_t dim) : dim_(dim) {
    check_dim(dim);
}

StateVector StateVector::unnormalized(std::span<const cdouble> amplitudes) {
    StateVector v(amplitudes.size());
    std::copy(amplitudes.begin(), amplitudes.end(), v.amps_.begin());
    return v;
}

StateVector StateVector::unnormalized(std::initializer_list<cdouble> amplitudes) {
    return unnormalized(std::span<const cdouble>(amplitudes.begin(), amplitudes.size()));
}

StateVector StateVector::normalized(std::span<const cdouble> amplitudes) {
    StateVector v = unnormalized(amplitudes);
    if (std::abs(v.norm() - 1) > kTolNorm) {
        throw std::invalid_argument("StateVector::normalized: norm is " + std::to_string(v.norm()));
    }
    v.normalized_ = true;
    return v;
}

StateVector StateVector::normalized(std::initializer_list<cdouble> amplitudes) {
    return normalized(std::span<const cdouble>(amplitudes.begin(), amplitudes.size()));
}

StateVector StateVector::basis(size_t dim, size_t index) {
    StateVector v(dim);
    if (index >= dim) {
        throw std::out_of_range("StateVector::basis: index out of range");
    }
    v.amps_[index] = 1;
    v.normalized_ = true;
    return v;
}

double StateVector::norm() const {
    double s = 0;
    for (size_t k = 0; k < dim_; k++) {
        s += std::norm(amps_[k]);
    }
    return std::sqrt(s);
}

StateVector StateVector::renormalized() const {
    double n = norm();
    if (n == 0) {
        throw std::domain_error("StateVector::renormalized: zero vector");
    }
    StateVector v = *this;
    for (size_t k = 0; k < dim_; k++) {
        v.amps_[k] /= n;
    }
    v.normalized_ = true;
    return v;
}

cdouble StateVector::inner(const StateVector &other) const {
    if (dim_ != other.dim_) {
        throw std::invalid_argument("StateVector::inner: dimension mismatch");
    }
    cdouble s = 0;
    for (size_t k = 0; k < dim_; k++) {
        s += std::conj(amps_[k]) * other.amps_[k];
    }
    return s;
}

void StateVector::require_normalized(const char *context) const {
    if (!normalized_ || std::abs(norm() - 1) > kTolNorm) {
        throw std::invalid_argument(std::string(context) + ": state must be normalized");
    }
}

StateVector operator*(const ComplexMatrix &m, const StateVector &v) {
    if (m.dim() != v.dim()) {
        throw std::invalid_argument("matrix-vector product: dimension mismatch");
    }
    std::array<cdouble, ComplexMatrix::kMaxDim> out{};
    for (size_t i = 0; i < m.dim(); i++) {
        for (size_t j = 0; j < m.dim(); j++) {
            out[i] += m(i, j) * v[j];
        }
    }
    return StateVector::unnormalized(std::span<const cdouble>(out.data(), m.dim()));
}

StateVector kron(const StateVector &a, const StateVector &b) {
    size_t n = a.dim() * b.dim();
    check_dim(n);
    std::array<cdouble, ComplexMatrix::kMaxDim> out{};
    for (size_t i = 0; i < a.dim(); i++) {
        for (size_t j = 0; j < b.dim(); j++) {
            out[i * b.dim() + j] = a[i] * b[j];
        }
    }
    auto v = StateVector::unnormalized(std::span<const cdouble>(out.data(), n));
    if (a.labeled_normalized() && b.labeled_normalized()) {
        return v.renormalized();
    }
    return v;
}

ComplexMatrix outer(const StateVector &v) {
    ComplexMatrix m(v.dim());
    for (size_t i = 0; i < v.dim(); i++) {
        for (size_t j = 0; j < v.dim(); j++) {
            m(i, j) = v[i] * std::conj(v[j]);
        }
    }
    return m;
}

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    check_same_dim(a, b, "matmul");
    size_t n = a.dim();
    ComplexMatrix r(n);
    for (size_t i = 0; i < n; i++) {
        for (size_t k = 0; k < n; k++) {
            cdouble aik = a(i, k);
            if (aik == cdouble(0)) {
                continue;
            }
            for (size_t j = 0; j < n; j++) {
                r(i, j) += aik * b(k, j);
            }
        }
    }
    return r;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    size_t n = a.dim() * b.dim();
    if (n > ComplexMatrix::kMaxDim) {
        throw std::invalid_argument("kron: resulting dimension " + std::to_string(n) + " unsupported");
    }
    ComplexMatrix r(n);
    for (size_t i = 0; i < a.dim(); i++) {
        for (size_t j = 0; j < a.dim(); j++) {
            for (size_t k = 0; k < b.dim(); k++) {
                for (size_t l = 0; l < b.dim(); l++) {
                    r(i * b.dim() + k, j * b.dim() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return r;
}

ComplexMatrix inverse(const ComplexMatrix &m) {
    size_t n = m.dim();
    ComplexMatrix a = m;
    ComplexMatrix inv = ComplexMatrix::identity(n);
    double scale = std::max(m.frobenius_norm(), 1e-300);
    for (size_t col = 0; col < n; col++) {
        size_t pivot = col;
        for (size_t r = col + 1; r < n; r++) {
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) {
                pivot = r;
            }
        }
        if (std::abs(a(pivot, col)) <= 1e-14 * scale) {
            throw std::domain_error("inverse: matrix is singular");
        }
        if (pivot != col) {
            for (size_t j = 0; j < n; j++) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        }
        cdouble p = a(col, col);
        for (size_t j = 0; j < n; j++) {
            a(col, j) /= p;
            inv(col, j) /= p;
        }
        for (size_t r = 0; r < n; r++) {
            if (r == col) {
                continue;
            }
            cdouble f = a(r, col);
            if (f == cdouble(0)) {
                continue;
            }
            for (size_t j = 0; j < n; j++) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

cdouble determinant(const ComplexMatrix &m) {
    size_t n = m.dim();
    ComplexMatrix a = m;
    cdouble det = 1;
    for (size_t col = 0; col < n; col++) {
        size_t pivot = col;
        for (size_t r = col + 1; r < n; r++) {
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) {
                pivot = r;
            }
        }
        if (a(pivot, col) == cdouble(0)) {
            return 0;
        }
        if (pivot != col) {
            for (size_t j = 0; j < n; j++) {
                std::swap(a(pivot, j), a(col, j));
            }
            det = -det;
        }
        det *= a(col, col);
        for (size_t r = col + 1; r < n; r++) {
            cdouble f = a(r, col) / a(col, col);
            for (size_t j = col; j < n; j++) {
                a(r, j) -= f * a(col, j);
            }
        }
    }
    return det;
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
    return two_norm(m - m.adjoint()) < tol;
}

bool is_unitary(const ComplexMatrix &u, double tol) {
    return two_norm(u.adjoint() * u - ComplexMatrix::identity(u.dim())) < tol;
}

HermitianEig hermitian_eig(const ComplexMatrix &m) {
    size_t n = m.dim();
    double scale = std::max(1.0, m.frobenius_norm());
    if (m.max_abs_diff(m.adjoint()) > kTolHermitian * scale) {
        throw std::invalid_argument("hermitian_eig: input is not Hermitian");
    }
    ComplexMatrix a = m;
    ComplexMatrix v = ComplexMatrix::identity(n);
    for (size_t k = 0; k < n; k++) {
        a(k, k) = a(k, k).real();
    }
    // Off-diagonal threshold is taken relative to the matrix scale so that large
    // metric operators converge the same way as unit-scale ones.
    for (int sweep = 0; sweep < 100 && off_diagonal_norm(a) >= 1e-13 * scale; sweep++) {
        for (size_t p = 0; p + 1 < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                double mag = std::abs(a(p, q));
                if (mag < 1e-300) {
                    continue;
                }
                cdouble phase = a(p, q) / mag;
                double theta = 0.5 * std::atan2(2 * mag, a(q, q).real() - a(p, p).real());
                double c = std::cos(theta);
                double s = std::sin(theta);
                // G = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
                cdouble gpp = c;
                cdouble gpq = s;
                cdouble gqp = -s * std::conj(phase);
                cdouble gqq = c * std::conj(phase);
                for (size_t k = 0; k < n; k++) {
                    cdouble akp = a(k, p);
                    cdouble akq = a(k, q);
                    a(k, p) = akp * gpp + akq * gqp;
                    a(k, q) = akp * gpq + akq * gqq;
                    cdouble vkp = v(k, p);
                    cdouble vkq = v(k, q);
                    v(k, p) = vkp * gpp + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * gqq;
                }
                for (size_t k = 0; k < n; k++) {
                    cdouble apk = a(p, k);
                    cdouble aqk = a(q, k);
                    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
                    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
                }
                a(p, q) = 0;
                a(q, p) = 0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
        return a(x, x).real() < a(y, y).real();
    });
    HermitianEig result{std::vector<double>(n), ComplexMatrix(n)};
    for (size_t k = 0; k < n; k++) {
        result.values[k] = a(order[k], order[k]).real();
        for (size_t i = 0; i < n; i++) {
            result.vectors(i, k) = v(i, order[k]);
        }
    }
    return result;
}

ComplexMatrix psd_sqrt(const ComplexMatrix &m) {
    auto eig = hermitian_eig(m);
    size_t n = m.dim();
    std::array<double, ComplexMatrix::kMaxDim> roots{};
    for (size_t k = 0; k < n; k++) {
        double lam = eig.values[k];
        if (lam < -kTolPsd) {
            throw std::domain_error("psd_sqrt: eigenvalue " + std::to_string(lam) + " is negative");
        }
        roots[k] = std::sqrt(std::max(lam, 0.0));
    }
    ComplexMatrix r(n);
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            cdouble s = 0;
            for (size_t k = 0; k < n; k++) {
                s += eig.vectors(i, k) * roots[k] * std::conj(eig.vectors(j, k));
            }
            r(i, j) = s;
        }
    }
    return r;
}

std::vector<cdouble> characteristic_polynomial(const ComplexMatrix &m) {
    size_t n = m.dim();
    std::vector<cdouble> c(n + 1);
    c[n] = 1;
    ComplexMatrix mk(n);
    auto id = ComplexMatrix::identity(n);
    for (size_t k = 1; k <= n; k++) {
        mk = m * mk + id * c[n - k + 1];
        c[n - k] = -(m * mk).trace() / static_cast<double>(k);
    }
    return c;
}

std::vector<cdouble> general_eigvals(const ComplexMatrix &m) {
    size_t n = m.dim();
    if (n > 4) {
        throw std::invalid_argument("general_eigvals: dimension must be <= 4");
    }
    if (n == 1) {
        return {m(0, 0)};
    }
    if (n == 2) {
        cdouble half_tr = 0.5 * (m(0, 0) + m(1, 1));
        cdouble det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        cdouble disc = std::sqrt(half_tr * half_tr - det);
        return {half_tr + disc, half_tr - disc};
    }
    auto c = characteristic_polynomial(m);
    return monic_roots(c);
}

double two_norm(const ComplexMatrix &m) {
    auto eig = hermitian_eig(m.adjoint() * m);
    return std::sqrt(std::max(eig.values.back(), 0.0));
}

size_t wires_for_dim(size_t dim) {
    switch (dim) {
        case 1:
            return 0;
        case 2:
            return 1;
        case 4:
            return 2;
        case 8:
            return 3;
        default:
            throw std::invalid_argument("unsupported dimension " + std::to_string(dim));
    }
}

ComplexMatrix partial_trace(const ComplexMatrix &rho, std::span<const size_t> keep) {
    size_t n = wires_for_dim(rho.dim());
    std::vector<size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end() || (!kept.empty() && kept.back() >= n)) {
        throw std::invalid_argument("partial_trace: invalid wire subset");
    }
    std::vector<size_t> traced;
    for (size_t w = 0; w < n; w++) {
        if (!std::binary_search(kept.begin(), kept.end(), w)) {
            traced.push_back(w);
        }
    }
    auto compose = [n](const std::vector<size_t> &wires, size_t bits) {
        size_t index = 0;
        for (size_t k = 0; k < wires.size(); k++) {
            size_t bit = (bits >> (wires.size() - 1 - k)) & 1;
            index |= bit << (n - 1 - wires[k]);
        }
        return index;
    };
    size_t out_dim = size_t{1} << kept.size();
    size_t traced_dim = size_t{1} << traced.size();
    ComplexMatrix out(out_dim);
    for (size_t i = 0; i < out_dim; i++) {
        for (size_t j = 0; j < out_dim; j++) {
            cdouble s = 0;
            for (size_t t = 0; t < traced_dim; t++) {
                size_t row = compose(kept, i) | compose(traced, t);
                size_t col = compose(kept, j) | compose(traced, t);
                s += rho(row, col);
            }
            out(i, j) = s;
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &rho, std::initializer_list<size_t> keep) {
    return partial_trace(rho, std::span<const size_t>(keep.begin(), keep.size()));
}

namespace gates {

ComplexMatrix pauli_x() {
    return ComplexMatrix(2, {0, 1, 1, 0});
}

ComplexMatrix pauli_y() {
    return ComplexMatrix(2, {0, cdouble(0, -1), cdouble(0, 1), 0});
}

ComplexMatrix pauli_z() {
    return ComplexMatrix(2, {1, 0, 0, -1});
}

ComplexMatrix hadamard() {
    double h = 1 / std::sqrt(2.0);
    return ComplexMatrix(2, {h, h, h, -h});
}

ComplexMatrix rx(double angle) {
    double c = std::cos(angle / 2);
    double s = std::sin(angle / 2);
    return ComplexMatrix(2, {c, cdouble(0, -s), cdouble(0, -s), c});
}

ComplexMatrix ry(double angle) {
    double c = std::cos(angle / 2);
    double s = std::sin(angle / 2);
    return ComplexMatrix(2, {c, -s, s, c});
}

ComplexMatrix rz(double angle) {
    return ComplexMatrix(2, {std::polar(1.0, -angle / 2), 0, 0, std::polar(1.0, angle / 2)});
}

ComplexMatrix u3(double alpha, double beta, double gamma) {
    return rz(alpha) * ry(beta) * rz(gamma);
}

ComplexMatrix cnot() {
    return ComplexMatrix(4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0});
}

}  // namespace gates

}  // namespace ptdilate
