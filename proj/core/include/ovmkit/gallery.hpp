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

/// @file Canned fixtures with known verdicts, used as regression anchors.

#pragma once

#include "ovmkit/hermitian.hpp"
#include "ovmkit/recursive.hpp"
#include "ovmkit/sequence.hpp"

namespace ovmkit {

/// The 2x2 sequence that is locally a moment sequence at every vector while
/// its order-1 block Hankel has a negative eigenvalue:
/// T_0 = diag(4,1), T_1 = [[0,2],[2,0]], T_2 = diag(1,4), odd terms zero,
/// T_4 = 2^24 I, T_6 = 2^120 I. Truncated at T_6: the next even term,
/// 2^720 I, is past the double-precision magnitude guard.
struct BisgaardFixture {
    OperatorSequence sequence;
    double expected_hamburger_min_eig; // -1 at order 1
    int max_local_order;               // local checks feasible through this
};

BisgaardFixture bisgaard();

/// d-dimensional diagonal section T_k = diag((-n)^k w_n), n = 1..d, with
/// w_n ~ e^{-n} stored so that n * w_n is exactly representable. The pencil
/// bounds are exactly (-d, -1).
struct KimseyFixture {
    HermitianMatrix t0;
    HermitianMatrix t1;
    OperatorSequence moment_list;
    double expected_alpha;
    double expected_beta;
};

KimseyFixture kimsey(int d, int moment_count = 6);

/// T_n = W* B^n W for the 2x2 operator block B = [[aI, bI], [bI, cI]] and
/// W x = (x, x): an exactly recursive sequence with characteristic
/// polynomial X^2 - (a+c) X + (ac - b^2). The recovered support is contained
/// in the root set (an atom drops out when its weight vanishes).
struct BlockShiftFixture {
    OperatorSequence sequence;
    RealPolynomial characteristic;
    std::vector<double> atom_superset; // roots of the characteristic, ascending
};

/// @throws DegenerateBlockError when (a-c)^2 + b^2 == 0.
BlockShiftFixture block_shift_example(double a, double b, double c,
                                      Eigen::Index dim = 2, int count = 6);

} // namespace ovmkit
