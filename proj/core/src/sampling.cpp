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

#include "ovmkit/sampling.hpp"

#include <cmath>
#include <random>

namespace ovmkit {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void append_canonical_polarized(std::vector<Vector> &out, Eigen::Index dim) {
    for (Eigen::Index i = 0; i < dim; ++i) {
        Vector e = Vector::Zero(dim);
        e(i) = 1.0;
        out.push_back(e);
    }
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = i + 1; j < dim; ++j) {
            for (Complex phase : {Complex(1, 0), Complex(-1, 0), Complex(0, 1),
                                  Complex(0, -1)}) {
                Vector v = Vector::Zero(dim);
                v(i) = kInvSqrt2;
                v(j) = phase * kInvSqrt2;
                out.push_back(v);
            }
        }
    }
}

void append_random(std::vector<Vector> &out, Eigen::Index dim, int count,
                   std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < count; ++k) {
        Vector v(dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            v(i) = Complex(gauss(rng), gauss(rng));
        }
        const double nrm = v.norm();
        if (nrm == 0.0) {
            v(0) = 1.0;
        } else {
            v /= nrm;
        }
        out.push_back(std::move(v));
    }
}

} // namespace

std::vector<Vector> sample_vectors(const SampleScheme &scheme,
                                   Eigen::Index dim) {
    std::vector<Vector> out;
    switch (scheme.kind) {
    case SchemeKind::CanonicalPolarized:
        append_canonical_polarized(out, dim);
        if (scheme.count > 0) {
            append_random(out, dim, scheme.count, scheme.seed);
        }
        break;
    case SchemeKind::SeededRandom:
        append_random(out, dim, scheme.count, scheme.seed);
        break;
    case SchemeKind::Explicit:
        for (const Vector &v : scheme.vectors) {
            const double nrm = v.norm();
            if (nrm > 0) {
                out.push_back(v / nrm);
            }
        }
        break;
    }
    return out;
}

} // namespace ovmkit
