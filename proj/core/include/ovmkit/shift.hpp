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
 * Operator weighted shifts: Gram moment computation, truncated subnormality
 * testing through localized scalar shifts, and Stampfli-type propagation
 * verification along two independent routes.
 */

#pragma once

#include <vector>

#include "ovmkit/atomic_ovm.hpp"
#include "ovmkit/sampling.hpp"
#include "ovmkit/verdict.hpp"

namespace ovmkit {

/// Finite window A_0, ..., A_{m-1} of PSD invertible weights.
class WeightFamily {
  public:
    explicit WeightFamily(std::vector<HermitianMatrix> weights,
                          double eps = tol::kPsdEps,
                          double rank_tol = tol::kRankTol);

    Eigen::Index dim() const { return weights_.front().dim(); }
    int count() const { return static_cast<int>(weights_.size()); }
    const HermitianMatrix &weight(int k) const { return weights_.at(k); }
    const std::vector<HermitianMatrix> &weights() const { return weights_; }
    /// sup_k ||A_k|| over the window.
    double norm_bound() const { return norm_bound_; }

  private:
    std::vector<HermitianMatrix> weights_;
    double norm_bound_ = 0.0;
};

/// B_0 = I, B_n = A_{n-1} B_{n-1}, and the Gram sequence B_n* B_n.
struct ShiftMoments {
    std::vector<Matrix> products;       // B_0 ... B_m
    std::vector<HermitianMatrix> gram;  // B_n* B_n, Hermitized
};

/// @throws OverflowRiskError when some ||B_n|| exceeds 1e150.
ShiftMoments shift_moments(const WeightFamily &w);

/// Scalar weight sequence alpha_n(x) = ||B_n x|| / ||B_{n-1} x|| of the
/// localized shift; n = 1 .. m.
/// @throws NotUnitVectorError.
std::vector<double> local_weight_sequence(const ShiftMoments &sm,
                                          const Vector &x);

/// Truncated subnormality certificate at the given order: for every sampled
/// x the Hankel and the shifted (Stieltjes) Hankel of <B_k*B_k x, x> must be
/// PSD. The upper-support test (Hausdorff on the sequence rescaled by
/// norm_bound^2) is attached as a non-gating diagnostic, because the window
/// norm bound can strictly underestimate the shift norm and flag genuinely
/// subnormal inputs.
Verdict subnormality_check(const WeightFamily &w, int order,
                           const SampleScheme &scheme,
                           double eps = tol::kPsdEps);

/// Full-flatness prediction: once A_k = A_{k+1}, every weight in the window
/// must equal A_k. A violation is a certificate of non-subnormality. Also
/// attaches the Smul'jan cross-check on the order-2 block Hankel of the
/// Gram sequence when enough terms exist.
/// @throws NotFlatError when A_k != A_{k+1} within flat_tol.
Verdict propagation_check(const WeightFamily &w, int flat_index,
                          double flat_tol = tol::kFlat,
                          double report_tol = tol::kPropagation);

/// Moment-level flatness identities: relative residuals of
/// B_{n+p}* B_{n+p} = B_p* A_p^{2n} B_p for n = 1 .. n_max.
/// @throws NotFlatError when A_p != A_{p+1} within flat_tol.
Verdict flatness_identity_check(const ShiftMoments &sm, int p, int n_max,
                                double flat_tol = tol::kFlat,
                                double report_tol = tol::kPropagation);

struct LocalizedShiftMeasure {
    AtomicOVM measure;
    Verdict semispectral; // E_p(R) = I must hold
};

/// dE_p(t) = t^p (B_p*)^{-1} dE(t) B_p^{-1} for an E representing the Gram
/// sequence: same atoms, weights lambda_k^p (B_p*)^{-1} S_k B_p^{-1}.
/// @throws NotRepresentingError, SingularProductError.
LocalizedShiftMeasure localized_shift_measure(const AtomicOVM &e,
                                              const ShiftMoments &sm, int p,
                                              double residual_tol = 1e-8);

} // namespace ovmkit
