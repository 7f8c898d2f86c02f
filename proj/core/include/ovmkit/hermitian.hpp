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
 * Dense Hermitian matrix arithmetic: construction with enforced
 * self-adjointness, eigendecomposition, PSD testing, and the square-root /
 * inverse-square-root matrix functions everything else is built on.
 */

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "ovmkit/errors.hpp"

namespace ovmkit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Default tolerances. Every operation that uses one also accepts it as a
/// parameter, so the CLI can override them.
namespace tol {
inline constexpr double kHermitize = 1e-9;
inline constexpr double kPsdEps = 1e-9;
inline constexpr double kRecon = 1e-10;
inline constexpr double kRankTol = 1e-12;
inline constexpr double kUnitVector = 1e-12;
inline constexpr double kAtomMergeBase = 1e-8;
inline constexpr double kFitResidual = 1e-8;
inline constexpr double kChargeResidual = 1e-7;
inline constexpr double kRootRealTol = 1e-8;
inline constexpr double kSemiSpectral = 1e-10;
inline constexpr double kSpectral = 1e-9;
inline constexpr double kFlat = 1e-10;
inline constexpr double kPropagation = 1e-8;
inline constexpr double kMomentGuard = 1e300;
inline constexpr double kShiftGuard = 1e150;
} // namespace tol

/// A d x d complex matrix with entries(i,j) == conj(entries(j,i)) exactly.
/// Construction goes through hermitize(), which symmetrizes inputs whose
/// asymmetry is within tolerance and rejects the rest.
class HermitianMatrix {
  public:
    /// Returns (raw + raw*)/2 when ||raw - raw*||_F <= tol * max(1, ||raw||_F).
    /// @throws NotHermitianError otherwise, and on non-square input.
    static HermitianMatrix hermitize(const Matrix &raw,
                                     double tol = tol::kHermitize);

    static HermitianMatrix identity(Eigen::Index dim);
    static HermitianMatrix zero(Eigen::Index dim);
    static HermitianMatrix diagonal(const Eigen::VectorXd &entries);

    Eigen::Index dim() const { return entries_.rows(); }
    const Matrix &matrix() const { return entries_; }

    double frobenius_norm() const { return entries_.norm(); }
    /// Spectral norm, computed as max |eigenvalue| (exact for Hermitian).
    double operator_norm() const;
    /// True when every off-diagonal entry is exactly zero.
    bool is_diagonal() const;

    HermitianMatrix operator+(const HermitianMatrix &other) const;
    HermitianMatrix operator-(const HermitianMatrix &other) const;
    HermitianMatrix scaled(double factor) const;

    /// <A x, x>, real up to roundoff for unit-length or any x.
    Complex quadratic_form(const Vector &x) const;

  private:
    explicit HermitianMatrix(Matrix entries) : entries_(std::move(entries)) {}
    Matrix entries_;
};

struct Eigendecomposition {
    Eigen::VectorXd eigenvalues; // ascending
    Matrix eigenvectors;         // unitary, columns match eigenvalues
};

/// Spectral decomposition with a reconstruction-residual guarantee:
/// ||U diag(w) U* - A||_F <= kRecon * ||A||_F.
/// @throws ConvergenceError if the iteration fails or the residual is out of
/// bounds.
Eigendecomposition eig(const HermitianMatrix &a);

struct PsdReport {
    bool is_psd = false;
    double min_eigenvalue = 0.0;
    double tolerance_used = 0.0; // absolute tolerance actually applied
};

/// is_psd iff lambda_min(A) >= -eps * max(1, max |lambda|).
PsdReport psd_check(const HermitianMatrix &a, double eps = tol::kPsdEps);

/// Hermitian PSD B with ||B^2 - A||_F <= kRecon * max(1, ||A||_F).
/// Eigenvalues in [-eps_abs, 0] are clamped to zero.
/// @throws NotPsdError when A has an eigenvalue below -eps_abs.
HermitianMatrix sqrt_psd(const HermitianMatrix &a, double eps = tol::kPsdEps);

/// B with ||B A B - I||_F <= kRecon for PSD invertible A.
/// @throws SingularOperatorError when lambda_min <= rank_tol * lambda_max.
HermitianMatrix inv_sqrt_psd(const HermitianMatrix &a,
                             double rank_tol = tol::kRankTol);

} // namespace ovmkit
