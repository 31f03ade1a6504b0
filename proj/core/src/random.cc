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

#include "ptdilate/random.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <vector>

namespace ptdilate {

namespace {
constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

uint64_t splitmix64(uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

uint64_t fnv1a(std::string_view text) {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

uint64_t derive_key(uint64_t seed, std::initializer_list<double> values) {
    uint64_t h = splitmix64(seed);
    for (double v : values) {
        // +0.0 and -0.0 hash alike.
        h = splitmix64(h ^ std::bit_cast<uint64_t>(v == 0 ? 0.0 : v));
    }
    return h;
}

CounterRng::CounterRng(uint64_t seed, std::string_view stream) : key_(splitmix64(seed ^ fnv1a(stream))) {
}

uint64_t CounterRng::next() {
    return splitmix64(key_ + counter_++ * kGolden);
}

double CounterRng::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double CounterRng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = 1 - uniform();  // (0, 1]
    double u2 = uniform();
    double rad = std::sqrt(-2 * std::log(u1));
    spare_ = rad * std::sin(2 * std::numbers::pi * u2);
    has_spare_ = true;
    return rad * std::cos(2 * std::numbers::pi * u2);
}

ComplexMatrix random_unitary(size_t dim, CounterRng &rng) {
    std::vector<std::vector<cdouble>> cols(dim, std::vector<cdouble>(dim));
    for (auto &col : cols) {
        for (auto &x : col) {
            double re = rng.normal();
            double im = rng.normal();
            x = cdouble(re, im) / std::numbers::sqrt2;
        }
    }
    // Modified Gram-Schmidt; r_kk is real positive, so Q is already the Haar factor.
    ComplexMatrix q(dim);
    for (size_t k = 0; k < dim; k++) {
        auto &v = cols[k];
        for (size_t j = 0; j < k; j++) {
            cdouble proj = 0;
            for (size_t i = 0; i < dim; i++) {
                proj += std::conj(q(i, j)) * v[i];
            }
            for (size_t i = 0; i < dim; i++) {
                v[i] -= proj * q(i, j);
            }
        }
        double n = 0;
        for (auto x : v) {
            n += std::norm(x);
        }
        n = std::sqrt(n);
        for (size_t i = 0; i < dim; i++) {
            q(i, k) = v[i] / n;
        }
    }
    return q;
}

StateVector random_state(size_t dim, CounterRng &rng) {
    StateVector v(dim);
    for (size_t i = 0; i < dim; i++) {
        double re = rng.normal();
        double im = rng.normal();
        v[i] = cdouble(re, im);
    }
    return v.renormalized();
}

}  // namespace ptdilate
