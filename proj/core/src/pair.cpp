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

#include "ovmkit/pair.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ovmkit {

PencilBounds pencil_bounds(const HermitianMatrix &t0, const HermitianMatrix &t1,
                           double rank_tol) {
    if (t0.dim() != t1.dim()) {
        throw SchemaError("pencil_bounds: dimension mismatch");
    }
    // Diagonal pair: the normalized pencil is the entrywise quotient, which
    // keeps exactly representable ratios exact. Invertibility of a diagonal
    // T_0 is per-entry positivity, so no relative rank cutoff applies.
    if (t0.is_diagonal() && t1.is_diagonal()) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (Eigen::Index i = 0; i < t0.dim(); ++i) {
            const double w = t0.matrix()(i, i).real();
            if (!(w > 0.0)) {
                throw SingularOperatorError(
                    "pencil_bounds: diagonal T_0 has a nonpositive entry");
            }
            const double q = t1.matrix()(i, i).real() / w;
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
        return PencilBounds{lo, hi};
    }
    const HermitianMatrix root_inv = inv_sqrt_psd(t0, rank_tol);
    const Matrix pencil =
        root_inv.matrix() * t1.matrix() * root_inv.matrix();
    const HermitianMatrix c = HermitianMatrix::hermitize(pencil, 1e-10);
    const Eigendecomposition ed = eig(c);
    return PencilBounds{ed.eigenvalues(0), ed.eigenvalues(ed.eigenvalues.size() - 1)};
}

TwoAtomicResult two_atomic(const HermitianMatrix &t0, const HermitianMatrix &t1,
                           double rank_tol) {
    const PencilBounds bounds = pencil_bounds(t0, t1, rank_tol);
    const double gap_floor =
        1e-10 * (1.0 + std::abs(bounds.alpha) + std::abs(bounds.beta));
    const double gap = bounds.beta - bounds.alpha;

    if (gap <= gap_floor) {
        // scalar pencil: the order-1 solution T_0 delta_alpha
        AtomicOVM single({bounds.alpha}, {t0});
        const OperatorSequence mom = moments(single, 1);
        const double resid = std::max(
            (mom.term(0).matrix() - t0.matrix()).norm(),
            (mom.term(1).matrix() - t1.matrix()).norm());
        return TwoAtomicResult{std::move(single), bounds, true, resid};
    }

    const HermitianMatrix p1 =
        (t0.scaled(bounds.beta) - t1).scaled(1.0 / gap);
    const HermitianMatrix p2 =
        (t1 - t0.scaled(bounds.alpha)).scaled(1.0 / gap);
    AtomicOVM measure({bounds.alpha, bounds.beta}, {p1, p2});
    const OperatorSequence mom = moments(measure, 1);
    const double scale0 = std::max(1.0, t0.frobenius_norm());
    const double scale1 = std::max(1.0, t1.frobenius_norm());
    const double resid = std::max(
        (mom.term(0).matrix() - t0.matrix()).norm() / scale0,
        (mom.term(1).matrix() - t1.matrix()).norm() / scale1);
    return TwoAtomicResult{std::move(measure), bounds, false, resid};
}

SmuljanReport smuljan_factor(const HermitianMatrix &x, const Matrix &y,
                             const HermitianMatrix &z, double eps) {
    const Eigen::Index dx = x.dim();
    const Eigen::Index dz = z.dim();
    if (y.rows() != dx || y.cols() != dz) {
        throw SchemaError("smuljan_factor: off-diagonal block has wrong shape");
    }

    SmuljanReport report;

    // route (a): assemble and test the block matrix directly
    Matrix big(dx + dz, dx + dz);
    big.topLeftCorner(dx, dx) = x.matrix();
    big.topRightCorner(dx, dz) = y;
    big.bottomLeftCorner(dz, dx) = y.adjoint();
    big.bottomRightCorner(dz, dz) = z.matrix();
    report.assembled = psd_check(HermitianMatrix::hermitize(big, 1e-12), eps);

    // route (b): solve X^{1/2} W = Y through the eigen-pseudo-inverse
    const Eigendecomposition ed = eig(x);
    const double lam_max = std::max(ed.eigenvalues(dx - 1), 0.0);
    // X is PSD by precondition; sqrt of clamped eigenvalues
    const double sigma_cut = 1e-10 * std::sqrt(std::max(lam_max, 0.0));
    Matrix w = Matrix::Zero(dx, dz);
    for (Eigen::Index i = 0; i < dx; ++i) {
        const double root = std::sqrt(std::max(ed.eigenvalues(i), 0.0));
        if (root > sigma_cut && root > 0.0) {
            const Vector u = ed.eigenvectors.col(i);
            w += (1.0 / root) * u * (u.adjoint() * y);
        }
    }
    // range condition: the projected solve must actually reach Y
    Matrix xroot = Matrix::Zero(dx, dx);
    for (Eigen::Index i = 0; i < dx; ++i) {
        const double root = std::sqrt(std::max(ed.eigenvalues(i), 0.0));
        xroot += root * ed.eigenvectors.col(i) *
                 ed.eigenvectors.col(i).adjoint();
    }
    const double ynorm = y.norm();
    report.range_residual =
        ynorm > 0.0 ? (xroot * w - y).norm() / ynorm : 0.0;
    report.range_condition_ok = report.range_residual <= 1e-8;

    bool factor_route_psd = false;
    if (report.range_condition_ok) {
        const HermitianMatrix schur_complement =
            HermitianMatrix::hermitize(z.matrix() - w.adjoint() * w, 1e-10);
        report.schur = psd_check(schur_complement, eps);
        factor_route_psd = report.schur.is_psd;
    }

    Verdict v("smuljan_block_psd");
    v.pass = report.assembled.is_psd;
    v.margin("assembled_min_eigenvalue", report.assembled.min_eigenvalue);
    v.margin("range_residual", report.range_residual);
    if (report.range_condition_ok) {
        v.margin("schur_min_eigenvalue", report.schur.min_eigenvalue);
    } else {
        v.note("range condition failed: Y is not in the range of X^{1/2}");
    }
    if (report.assembled.is_psd != factor_route_psd) {
        v.note("smuljan routes disagree");
    }
    if (report.assembled.is_psd && factor_route_psd) {
        report.factor = w;
    }
    report.verdict = std::move(v);
    return report;
}

KimseySection kimsey_section(int d) {
    if (d < 1) {
        throw SchemaError("kimsey_section: dimension must be >= 1");
    }
    Eigen::VectorXd w(d);
    Eigen::VectorXd t1(d);
    for (int n = 1; n <= d; ++n) {
        // e^{-n} with the low mantissa bits cleared so that n * w is exact
        // and the diagonal pencil quotient reproduces -n in double arithmetic
        int exp2 = 0;
        const double frac = std::frexp(std::exp(static_cast<double>(-n)), &exp2);
        const double mant = std::floor(std::ldexp(frac, 53) / 64.0) * 64.0;
        const double wn = std::ldexp(mant, exp2 - 53);
        w(n - 1) = wn;
        t1(n - 1) = -static_cast<double>(n) * wn;
    }
    KimseySection section{HermitianMatrix::diagonal(w),
                          HermitianMatrix::diagonal(t1),
                          PencilBounds{},
                          Verdict("kimsey_section")};
    section.bounds = pencil_bounds(section.t0, section.t1);
    section.verdict.pass =
        section.bounds.alpha == -static_cast<double>(d) &&
        section.bounds.beta == -1.0;
    section.verdict.margin("alpha", section.bounds.alpha);
    section.verdict.margin("beta", section.bounds.beta);
    section.verdict.note(
        "pencil minimum equals -dim: unbounded below as the dimension grows, "
        "so no dimension-uniform compactly supported measure exists");
    return section;
}

} // namespace ovmkit
