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

#include "ovmkit/gallery.hpp"

#include <cmath>

#include "ovmkit/pair.hpp"

namespace ovmkit {

BisgaardFixture bisgaard() {
    Matrix t0(2, 2), t1(2, 2), t2(2, 2);
    t0 << 4, 0, 0, 1;
    t1 << 0, 2, 2, 0;
    t2 << 1, 0, 0, 4;
    std::vector<HermitianMatrix> terms;
    terms.push_back(HermitianMatrix::hermitize(t0));
    terms.push_back(HermitianMatrix::hermitize(t1));
    terms.push_back(HermitianMatrix::hermitize(t2));
    terms.push_back(HermitianMatrix::zero(2));
    terms.push_back(HermitianMatrix::identity(2).scaled(std::ldexp(1.0, 24)));
    terms.push_back(HermitianMatrix::zero(2));
    terms.push_back(HermitianMatrix::identity(2).scaled(std::ldexp(1.0, 120)));
    // the next even term would be 2^720: past the magnitude guard
    return BisgaardFixture{OperatorSequence(std::move(terms)), -1.0, 3};
}

KimseyFixture kimsey(int d, int moment_count) {
    if (d < 1) {
        throw SchemaError("kimsey: dimension must be >= 1");
    }
    const KimseySection section = kimsey_section(d);
    Eigen::VectorXd w(d);
    for (int n = 1; n <= d; ++n) {
        w(n - 1) = section.t0.matrix()(n - 1, n - 1).real();
    }
    std::vector<HermitianMatrix> terms;
    for (int k = 0; k <= moment_count; ++k) {
        Eigen::VectorXd diag(d);
        for (int n = 1; n <= d; ++n) {
            diag(n - 1) = std::pow(-static_cast<double>(n), k) * w(n - 1);
        }
        terms.push_back(HermitianMatrix::diagonal(diag));
    }
    return KimseyFixture{section.t0, section.t1,
                         OperatorSequence(std::move(terms)),
                         -static_cast<double>(d), -1.0};
}

BlockShiftFixture block_shift_example(double a, double b, double c,
                                      Eigen::Index dim, int count) {
    if ((a - c) * (a - c) + b * b == 0.0) {
        throw DegenerateBlockError(
            "block_shift_example: (a-c)^2 + b^2 must be nonzero");
    }
    const Eigen::Index d = dim;
    Matrix block(2 * d, 2 * d);
    block.topLeftCorner(d, d) = a * Matrix::Identity(d, d);
    block.topRightCorner(d, d) = b * Matrix::Identity(d, d);
    block.bottomLeftCorner(d, d) = b * Matrix::Identity(d, d);
    block.bottomRightCorner(d, d) = c * Matrix::Identity(d, d);
    Matrix embed = Matrix::Zero(2 * d, d); // W x = (x, x)
    embed.topRows(d) = Matrix::Identity(d, d);
    embed.bottomRows(d) = Matrix::Identity(d, d);

    std::vector<HermitianMatrix> terms;
    Matrix power = Matrix::Identity(2 * d, 2 * d);
    for (int n = 0; n <= count; ++n) {
        terms.push_back(
            HermitianMatrix::hermitize(embed.adjoint() * power * embed, 1e-10));
        power = power * block;
    }

    RealPolynomial characteristic{
        std::vector<double>{a * c - b * b, -(a + c), 1.0}};
    const double disc = (a + c) * (a + c) - 4.0 * (a * c - b * b);
    const double root = std::sqrt(disc); // = sqrt((a-c)^2 + 4 b^2) > 0
    std::vector<double> atoms{(a + c - root) / 2.0, (a + c + root) / 2.0};
    return BlockShiftFixture{OperatorSequence(std::move(terms)),
                             std::move(characteristic), std::move(atoms)};
}

} // namespace ovmkit
