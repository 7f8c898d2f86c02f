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
 * Operator sequences and their positivity tests: block Hankel forms, the
 * Hamburger / Hausdorff / Stieltjes conditions, localized scalar sequences,
 * support-radius estimation and the Carleman diagnostic.
 */

#pragma once

#include <span>
#include <vector>

#include "ovmkit/hermitian.hpp"
#include "ovmkit/sampling.hpp"
#include "ovmkit/verdict.hpp"

namespace ovmkit {

/// Finite prefix (T_0, ..., T_N) of Hermitian matrices of shared dimension.
class OperatorSequence {
  public:
    explicit OperatorSequence(std::vector<HermitianMatrix> terms);

    Eigen::Index dim() const { return terms_.front().dim(); }
    /// Largest available moment index N.
    int max_index() const { return static_cast<int>(terms_.size()) - 1; }
    const HermitianMatrix &term(int n) const { return terms_.at(n); }
    const std::vector<HermitianMatrix> &terms() const { return terms_; }

    /// Index of the first term with norm above the 1e300 magnitude guard,
    /// or max_index()+1 when none. Tail analyses stop just before it.
    int overflow_guard_index() const;

  private:
    std::vector<HermitianMatrix> terms_;
};

/// (n+1) x (n+1) grid of blocks T_{i+j}, flattened to a Hermitian matrix of
/// dimension d(n+1).
struct BlockHankel {
    int order = 0;
    HermitianMatrix flattened;
};

/// @throws InsufficientMomentsError when 2*order > N.
BlockHankel block_hankel(const OperatorSequence &seq, int order);

/// PSD test of the flattened block Hankel (Hamburger condition).
PsdReport hamburger_check(const OperatorSequence &seq, int order,
                          double eps = tol::kPsdEps);

/// Hamburger plus PSD of the blocks T_{i+j} - T_{i+j+2} (support in [-1,1]).
/// Reports the worse of the two tests; needs 2*order + 2 <= N.
PsdReport hausdorff_check(const OperatorSequence &seq, int order,
                          double eps = tol::kPsdEps);

/// Hamburger plus PSD of the shifted blocks T_{i+j+1} (support in [0,inf)).
/// Reports the worse of the two tests; needs 2*order + 1 <= N.
PsdReport stieltjes_check(const OperatorSequence &seq, int order,
                          double eps = tol::kPsdEps);

/// Scalar sequence s_n = <T_n x, x> at a unit vector x.
struct LocalizedSequence {
    Vector vector;
    std::vector<double> values;
};

/// @throws NotUnitVectorError, NonRealQuadraticFormError.
LocalizedSequence localize(const OperatorSequence &seq, const Vector &x);

struct ScalarHankel {
    int order = 0;
    Eigen::MatrixXd matrix;
};

/// (n+1) x (n+1) Hankel of the localized values; needs 2n < values.size().
ScalarHankel scalar_hankel(const LocalizedSequence &ls, int order);

/// Hankel of raw scalar values with entry (i,j) = values[i+j+shift].
Eigen::MatrixXd hankel_from_values(std::span<const double> values, int order,
                                   int shift = 0);

/// PSD report of a real symmetric matrix under the relative-eps model.
PsdReport psd_check_real(const Eigen::MatrixXd &sym, double eps = tol::kPsdEps);

/// For every sampled x, tests PSD of the order-n Hankel of <T_k x, x>.
/// The verdict carries the worst (sample index, min eigenvalue) pair.
Verdict local_moment_check(const OperatorSequence &seq,
                           const SampleScheme &scheme, int order,
                           double eps = tol::kPsdEps);

/// Estimated support radius: min of ||T_{2n}||^(1/2n) over the upper half of
/// available even indices (finite surrogate for the lim inf).
/// Needs terms through T_4.
double support_radius(const OperatorSequence &seq);

/// Carleman-condition diagnostic. Divergence of the series is not decidable
/// from a prefix, so only partial sums and a growth classification are
/// reported, never a definitive verdict.
struct CarlemanDiagnostic {
    enum class Growth { Linear, Sublinear, Stalled };
    std::vector<double> partial_sums; // cumulative sums of ||T_{2n}||^(-1/2n)
    double tail_rate = 0.0;           // mean term over the upper half
    Growth classification = Growth::Stalled;
    bool skipped_zero_terms = false;
    bool truncated_by_overflow_guard = false;
};

CarlemanDiagnostic carleman_partial_sums(const OperatorSequence &seq);

/// (T_0^{-1/2} T_n T_0^{-1/2})_n; term 0 becomes the identity.
/// @throws SingularOperatorError when T_0 is not PSD invertible.
OperatorSequence normalize(const OperatorSequence &seq,
                           double rank_tol = tol::kRankTol);

} // namespace ovmkit
