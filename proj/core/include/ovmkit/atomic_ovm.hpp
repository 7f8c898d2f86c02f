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
 * Finitely atomic operator-valued measures E = sum_k S_k delta_{lambda_k}:
 * the forward moment oracle, measure / semi-spectral / spectral verdicts,
 * and the finite-dimensional Naimark dilation.
 */

#pragma once

#include <vector>

#include "ovmkit/hermitian.hpp"
#include "ovmkit/sequence.hpp"
#include "ovmkit/verdict.hpp"

namespace ovmkit {

/// Atoms strictly increasing, weights Hermitian. Weights may fail PSD: the
/// object is then an operator-valued charge, and is_measure() is the
/// discriminator. Atoms closer than the merge tolerance are combined by
/// summing their weights.
class AtomicOVM {
  public:
    AtomicOVM(std::vector<double> atoms, std::vector<HermitianMatrix> weights);

    /// The zero measure (r = 0) on a d-dimensional space.
    static AtomicOVM zero_measure(Eigen::Index dim);

    Eigen::Index dim() const { return dim_; }
    int atom_count() const { return static_cast<int>(atoms_.size()); }
    const std::vector<double> &atoms() const { return atoms_; }
    const std::vector<HermitianMatrix> &weights() const { return weights_; }

    /// E(R) = sum of all weights (zero matrix when r = 0).
    HermitianMatrix total_mass() const;
    double atom_merge_tolerance() const { return merge_tol_; }

  private:
    Eigen::Index dim_;
    double merge_tol_ = 0.0;
    std::vector<double> atoms_;
    std::vector<HermitianMatrix> weights_;
};

/// T_n = sum_k lambda_k^n S_k by direct summation, with 0^0 = 1.
/// This is the brute-force oracle every recovery path is tested against.
/// @throws OverflowRiskError when |lambda_k|^n ||S_k|| would exceed 1e300.
OperatorSequence moments(const AtomicOVM &e, int count);

/// Pass iff every weight is PSD; margins carry per-atom min eigenvalues.
Verdict is_measure(const AtomicOVM &e, double eps = tol::kPsdEps);

/// Pass iff is_measure and ||sum S_k - I||_F <= 1e-10 sqrt(d).
Verdict is_semispectral(const AtomicOVM &e, double eps = tol::kPsdEps);

/// Two characterizations of spectrality for a semi-spectral measure, both
/// evaluated and required to agree:
///  (a) M_1^2 = M_2 with M_k = sum lambda^k S_k;
///  (b) every weight idempotent and the weights mutually annihilating.
/// @throws NotSemiSpectralError when the input is not semi-spectral.
Verdict is_spectral(const AtomicOVM &e, double tolerance = tol::kSpectral);

/// Naimark dilation data: E(.) = V* F(.) V with F the spectral measure of a
/// block-diagonal operator with blocks lambda_k I_d and V stacked from the
/// weight square roots.
struct DilationData {
    Matrix embedding;                 // (r d) x d, block k = S_k^{1/2}
    std::vector<double> dilated_atoms;
    double max_relative_residual = 0.0; // vs moments(E, 2r)
};

/// @throws NotMeasureError when some weight fails PSD.
DilationData naimark_dilate(const AtomicOVM &e, double eps = tol::kPsdEps);

/// Atoms whose weight is nonzero within tolerance.
std::vector<double> support(const AtomicOVM &e);

} // namespace ovmkit
