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

/**
 * @file
 * The truncated (T_0, T_1) problem: pencil bounds, the canonical two-atom
 * representing measure, the Smul'jan block factorization, and the diagonal
 * section family whose pencil minimum is unbounded in the dimension.
 */

#pragma once

#include <optional>

#include "ovmkit/atomic_ovm.hpp"
#include "ovmkit/hermitian.hpp"
#include "ovmkit/verdict.hpp"

namespace ovmkit {

/// Extreme eigenvalues of T_0^{-1/2} T_1 T_0^{-1/2}: the tightest constants
/// with alpha <T_0 x, x> <= <T_1 x, x> <= beta <T_0 x, x>.
struct PencilBounds {
    double alpha = 0.0;
    double beta = 0.0;
};

/// @throws SingularOperatorError when T_0 is not PSD invertible.
PencilBounds pencil_bounds(const HermitianMatrix &t0, const HermitianMatrix &t1,
                           double rank_tol = tol::kRankTol);

struct TwoAtomicResult {
    AtomicOVM measure;
    PencilBounds bounds;
    bool degenerate = false;     // pencil collapsed to a single atom
    double moment_residual = 0.0; // worst of the T_0, T_1 reproduction errors
};

/// E = P_1 delta_alpha + P_2 delta_beta with P_1 = (beta T_0 - T_1)/(beta-alpha)
/// and P_2 = (T_1 - alpha T_0)/(beta-alpha); both PSD by construction. A
/// degenerate pencil (beta - alpha below the gap threshold) yields the
/// single-atom measure T_0 delta_alpha.
TwoAtomicResult two_atomic(const HermitianMatrix &t0, const HermitianMatrix &t1,
                           double rank_tol = tol::kRankTol);

/// Smul'jan test of [[X, Y], [Y*, Z]] >= 0 by two routes that must agree:
///  (a) PSD check of the assembled block;
///  (b) solvability of X^{1/2} W = Y (range condition) plus Z - W*W >= 0.
struct SmuljanReport {
    Verdict verdict;               // pass iff the block is PSD
    std::optional<Matrix> factor;  // W, present when the block is PSD
    PsdReport assembled;           // route (a)
    bool range_condition_ok = false;
    double range_residual = 0.0;   // ||X^{1/2} W - Y|| / ||Y||
    PsdReport schur;               // psd_check(Z - W*W), valid when range ok
};

SmuljanReport smuljan_factor(const HermitianMatrix &x, const Matrix &y,
                             const HermitianMatrix &z,
                             double eps = tol::kPsdEps);

/// The d-dimensional diagonal section T_0 = diag(w_n), T_1 = diag(-n w_n)
/// with w_n ~ e^{-n}: pencil bounds are exactly (-d, -1), so the pencil
/// minimum is unbounded below in d even though every fixed section has a
/// two-atom representing measure.
struct KimseySection {
    HermitianMatrix t0;
    HermitianMatrix t1;
    PencilBounds bounds;
    Verdict verdict;
};

KimseySection kimsey_section(int d);

} // namespace ovmkit
