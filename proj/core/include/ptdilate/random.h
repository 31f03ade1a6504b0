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

#ifndef PTDILATE_RANDOM_H
#define PTDILATE_RANDOM_H

#include <cstdint>
#include <string_view>

#include "ptdilate/linalg.h"

namespace ptdilate {

/// SplitMix64 finalizer.
uint64_t splitmix64(uint64_t x);
/// 64-bit FNV-1a hash of a byte string.
uint64_t fnv1a(std::string_view text);
/// Folds the bit patterns of doubles into a key, e.g. (seed, r, t) -> restart seed.
uint64_t derive_key(uint64_t seed, std::initializer_list<double> values);

/// Counter-based generator.
///
/// The stream key is splitmix64(seed ^ fnv1a(stream)); draw i returns
/// splitmix64(key + i * 0x9E3779B97F4A7C15). Uniform doubles take the top 53
/// bits. Every value is a pure function of (seed, stream, i), so results do not
/// depend on platform, thread count or scheduling.
class CounterRng {
   public:
    explicit CounterRng(uint64_t seed, std::string_view stream = "");

    uint64_t next();
    /// Uniform on [0, 1).
    double uniform();
    /// Standard normal via Box-Muller (both variates are used).
    double normal();

    uint64_t key() const {
        return key_;
    }
    uint64_t counter() const {
        return counter_;
    }

   private:
    uint64_t key_;
    uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0;
};

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases of
/// R's diagonal moved into Q.
ComplexMatrix random_unitary(size_t dim, CounterRng &rng);

/// Haar-random pure state.
StateVector random_state(size_t dim, CounterRng &rng);

}  // namespace ptdilate

#endif
