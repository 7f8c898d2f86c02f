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

#include "ovmkit/hermitian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace ovmkit {

HermitianMatrix HermitianMatrix::hermitize(const Matrix &raw, double tol) {
    if (raw.rows() != raw.cols() || raw.rows() < 1) {
        std::ostringstream msg;
        msg << "hermitize: expected a square matrix, got " << raw.rows() << "x"
            << raw.cols();
        throw NotHermitianError(msg.str());
    }
    const double asym = (raw - raw.adjoint()).norm();
    const double scale = std::max(1.0, raw.norm());
    if (!(asym <= tol * scale)) {
        std::ostringstream msg;
        msg << "hermitize: asymmetry " << asym << " exceeds tolerance "
            << tol * scale;
        throw NotHermitianError(msg.str());
    }
    Matrix sym = 0.5 * (raw + raw.adjoint());
    // force exact conjugate symmetry, including real diagonal
    for (Eigen::Index i = 0; i < sym.rows(); ++i) {
        sym(i, i) = Complex(sym(i, i).real(), 0.0);
        for (Eigen::Index j = i + 1; j < sym.cols(); ++j) {
            sym(j, i) = std::conj(sym(i, j));
        }
    }
    return HermitianMatrix(std::move(sym));
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) {
    return HermitianMatrix(Matrix::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index dim) {
    return HermitianMatrix(Matrix::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::diagonal(const Eigen::VectorXd &entries) {
    Matrix m = Matrix::Zero(entries.size(), entries.size());
    for (Eigen::Index i = 0; i < entries.size(); ++i) {
        m(i, i) = entries[i];
    }
    return HermitianMatrix(std::move(m));
}

double HermitianMatrix::operator_norm() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_,
                                                 Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("operator_norm: eigensolver failed");
    }
    const auto &w = solver.eigenvalues();
    return std::max(std::abs(w(0)), std::abs(w(w.size() - 1)));
}

bool HermitianMatrix::is_diagonal() const {
    for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
        for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
            if (i != j && entries_(i, j) != Complex(0.0, 0.0)) {
                return false;
            }
        }
    }
    return true;
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix &other) const {
    return HermitianMatrix(entries_ + other.entries_);
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix &other) const {
    return HermitianMatrix(entries_ - other.entries_);
}

HermitianMatrix HermitianMatrix::scaled(double factor) const {
    return HermitianMatrix(factor * entries_);
}

Complex HermitianMatrix::quadratic_form(const Vector &x) const {
    return x.dot(entries_ * x);
}

Eigendecomposition eig(const HermitianMatrix &a) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("eig: iteration did not converge");
    }
    Eigendecomposition out;
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
    const Matrix recon = out.eigenvectors *
                         out.eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>() *
                         out.eigenvectors.adjoint();
    const double resid = (recon - a.matrix()).norm();
    if (!(resid <= tol::kRecon * std::max(1.0, a.frobenius_norm()))) {
        std::ostringstream msg;
        msg << "eig: reconstruction residual " << resid << " out of bounds";
        throw ConvergenceError(msg.str());
    }
    return out;
}

namespace {

PsdReport report_from_extremes(double min_eig, double max_abs_eig, double eps) {
    PsdReport r;
    r.min_eigenvalue = min_eig;
    r.tolerance_used = eps * std::max(1.0, max_abs_eig);
    r.is_psd = min_eig >= -r.tolerance_used;
    return r;
}

} // namespace

PsdReport psd_check(const HermitianMatrix &a, double eps) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix(),
                                                 Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("psd_check: eigensolver failed");
    }
    const auto &w = solver.eigenvalues();
    const double max_abs = std::max(std::abs(w(0)), std::abs(w(w.size() - 1)));
    return report_from_extremes(w(0), max_abs, eps);
}

PsdReport psd_check_real(const Eigen::MatrixXd &sym, double eps) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("psd_check_real: eigensolver failed");
    }
    const auto &w = solver.eigenvalues();
    const double max_abs = std::max(std::abs(w(0)), std::abs(w(w.size() - 1)));
    return report_from_extremes(w(0), max_abs, eps);
}

HermitianMatrix sqrt_psd(const HermitianMatrix &a, double eps) {
    const Eigendecomposition ed = eig(a);
    const auto &w = ed.eigenvalues;
    const double max_abs = std::max(std::abs(w(0)), std::abs(w(w.size() - 1)));
    const double eps_abs = eps * std::max(1.0, max_abs);
    Eigen::VectorXd clamped(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (w(i) < -eps_abs) {
            std::ostringstream msg;
            msg << "sqrt_psd: eigenvalue " << w(i) << " below -" << eps_abs;
            throw NotPsdError(msg.str());
        }
        clamped(i) = std::sqrt(std::max(w(i), 0.0));
    }
    Matrix b = ed.eigenvectors *
               clamped.asDiagonal().toDenseMatrix().cast<Complex>() *
               ed.eigenvectors.adjoint();
    return HermitianMatrix::hermitize(b, 1e-12);
}

HermitianMatrix inv_sqrt_psd(const HermitianMatrix &a, double rank_tol) {
    const Eigendecomposition ed = eig(a);
    const auto &w = ed.eigenvalues;
    const double max_eig = w(w.size() - 1);
    if (!(w(0) > rank_tol * max_eig) || !(w(0) > 0.0)) {
        std::ostringstream msg;
        msg << "inv_sqrt_psd: min eigenvalue " << w(0)
            << " under rank cutoff " << rank_tol * max_eig;
        throw SingularOperatorError(msg.str());
    }
    Eigen::VectorXd inv_roots(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        inv_roots(i) = 1.0 / std::sqrt(w(i));
    }
    Matrix b = ed.eigenvectors *
               inv_roots.asDiagonal().toDenseMatrix().cast<Complex>() *
               ed.eigenvectors.adjoint();
    return HermitianMatrix::hermitize(b, 1e-12);
}

} // namespace ovmkit
