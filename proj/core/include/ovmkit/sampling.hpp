// Copyright 2026 The ovmkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

#include "ovmkit/hermitian.hpp"

namespace ovmkit {

/// Finite surrogate for "for every x in H". The canonical-polarized set --
/// all e_i, (e_i +/- e_j)/sqrt(2), (e_i +/- i e_j)/sqrt(2) -- determines the
/// sesquilinear data by polarization; random unit vectors can be added on
/// top of it, or used alone.
enum class SchemeKind { CanonicalPolarized, SeededRandom, Explicit };

struct SampleScheme {
    SchemeKind kind = SchemeKind::CanonicalPolarized;
    int count = 0; // random vectors: total for SeededRandom, extra otherwise
    std::uint64_t seed = 0;
    std::vector<Vector> vectors; // used by Explicit

    static SampleScheme canonical(int extra_random = 0, std::uint64_t seed = 0) {
        SampleScheme s;
        s.kind = SchemeKind::CanonicalPolarized;
        s.count = extra_random;
        s.seed = seed;
        return s;
    }
    static SampleScheme random(int count, std::uint64_t seed) {
        SampleScheme s;
        s.kind = SchemeKind::SeededRandom;
        s.count = count;
        s.seed = seed;
        return s;
    }
    static SampleScheme explicit_vectors(std::vector<Vector> vs) {
        SampleScheme s;
        s.kind = SchemeKind::Explicit;
        s.vectors = std::move(vs);
        return s;
    }
};

/// Deterministic given (kind, count, seed); all vectors unit norm.
std::vector<Vector> sample_vectors(const SampleScheme &scheme,
                                   Eigen::Index dim);

} // namespace ovmkit
