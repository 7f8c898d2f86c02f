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

#include "ovmkit/shift.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ovmkit/pair.hpp"

namespace ovmkit {

WeightFamily::WeightFamily(std::vector<HermitianMatrix> weights, double eps,
                           double rank_tol)
    : weights_(std::move(weights)) {
    if (weights_.empty()) {
        throw SchemaError("weight family: at least one weight is required");
    }
    const Eigen::Index d = weights_.front().dim();
    for (std::size_t k = 0; k < weights_.size(); ++k) {
        const auto &a = weights_[k];
        if (a.dim() != d) {
            throw SchemaError("weight family: weights have mixed dimensions");
        }
        const Eigendecomposition ed = eig(a);
        const double lam_min = ed.eigenvalues(0);
        const double lam_max = ed.eigenvalues(ed.eigenvalues.size() - 1);
        if (lam_min < -eps * std::max(1.0, std::abs(lam_max)) ||
            !(lam_min > rank_tol * lam_max)) {
            std::ostringstream msg;
            msg << "weight family: A_" << k
                << " is not PSD invertible (min eigenvalue " << lam_min << ")";
            throw NotPsdError(msg.str());
        }
        norm_bound_ = std::max(norm_bound_, std::abs(lam_max));
    }
}

ShiftMoments shift_moments(const WeightFamily &w) {
    ShiftMoments sm;
    const Eigen::Index d = w.dim();
    sm.products.push_back(Matrix::Identity(d, d));
    sm.gram.push_back(HermitianMatrix::identity(d));
    for (int n = 1; n <= w.count(); ++n) {
        Matrix b = w.weight(n - 1).matrix() * sm.products.back();
        if (b.norm() > tol::kShiftGuard) {
            std::ostringstream msg;
            msg << "shift_moments: ||B_" << n << "|| exceeds the magnitude guard";
            throw OverflowRiskError(msg.str());
        }
        sm.gram.push_back(HermitianMatrix::hermitize(b.adjoint() * b, 1e-10));
        sm.products.push_back(std::move(b));
    }
    return sm;
}

std::vector<double> local_weight_sequence(const ShiftMoments &sm,
                                          const Vector &x) {
    if (std::abs(x.norm() - 1.0) > tol::kUnitVector) {
        throw NotUnitVectorError("local_weight_sequence: not a unit vector");
    }
    std::vector<double> alphas;
    double prev = (sm.products.front() * x).norm();
    for (std::size_t n = 1; n < sm.products.size(); ++n) {
        const double cur = (sm.products[n] * x).norm();
        alphas.push_back(cur / prev);
        prev = cur;
    }
    return alphas;
}

Verdict subnormality_check(const WeightFamily &w, int order,
                           const SampleScheme &scheme, double eps) {
    if (w.count() < 2 * order + 2) {
        std::ostringstream msg;
        msg << "subnormality_check: order " << order << " needs "
            << 2 * order + 2 << " weights, got " << w.count();
        throw InsufficientMomentsError(msg.str());
    }
    const ShiftMoments sm = shift_moments(w);
    const int terms = 2 * order + 3; // gram indices 0 .. 2*order+2
    const double nb2 = w.norm_bound() * w.norm_bound();

    const auto xs = sample_vectors(scheme, w.dim());
    bool hankel_ok = true;
    bool stieltjes_ok = true;
    bool support_ok = true;
    double worst_hankel = std::numeric_limits<double>::infinity();
    double worst_stieltjes = worst_hankel;
    double worst_support = worst_hankel;
    for (const Vector &x : xs) {
        std::vector<double> s(terms);
        std::vector<double> rescaled(terms);
        double scale = 1.0;
        for (int k = 0; k < terms; ++k) {
            s[k] = sm.gram[k].quadratic_form(x).real();
            rescaled[k] = s[k] / scale;
            scale *= nb2;
        }
        const auto hk = psd_check_real(hankel_from_values(s, order, 0), eps);
        const auto st = psd_check_real(hankel_from_values(s, order, 1), eps);
        hankel_ok = hankel_ok && hk.is_psd;
        stieltjes_ok = stieltjes_ok && st.is_psd;
        worst_hankel = std::min(worst_hankel, hk.min_eigenvalue);
        worst_stieltjes = std::min(worst_stieltjes, st.min_eigenvalue);

        // Hausdorff difference test on the rescaled sequence. The window
        // norm bound can undershoot the true shift norm, so this is a
        // diagnostic, not a gate.
        Eigen::MatrixXd diff(order + 1, order + 1);
        for (int i = 0; i <= order; ++i) {
            for (int j = 0; j <= order; ++j) {
                diff(i, j) = rescaled[i + j] - rescaled[i + j + 2];
            }
        }
        const auto hd = psd_check_real(diff, eps);
        support_ok = support_ok && hd.is_psd;
        worst_support = std::min(worst_support, hd.min_eigenvalue);
    }

    Verdict v("subnormality_check");
    v.pass = hankel_ok && stieltjes_ok;
    v.margin("order", order);
    v.margin("sample_count", static_cast<double>(xs.size()));
    v.margin("worst_hankel_min_eigenvalue", worst_hankel);
    v.margin("worst_stieltjes_min_eigenvalue", worst_stieltjes);
    v.margin("worst_upper_support_min_eigenvalue", worst_support);
    v.part(Verdict("sampled_hankel_psd", hankel_ok));
    v.part(Verdict("sampled_stieltjes_hankel_psd", stieltjes_ok));
    Verdict upper("upper_support_window_diagnostic", support_ok);
    if (!support_ok) {
        upper.note("support appears to exceed the window norm bound; the "
                   "bound is only a lower estimate of the shift norm");
    }
    v.part(std::move(upper));
    return v;
}

namespace {

double relative_gap(const HermitianMatrix &a, const HermitianMatrix &b) {
    const double denom = std::max(a.frobenius_norm(), 1e-300);
    return (a - b).frobenius_norm() / denom;
}

} // namespace

Verdict propagation_check(const WeightFamily &w, int flat_index,
                          double flat_tol, double report_tol) {
    if (flat_index < 0 || flat_index + 1 >= w.count()) {
        throw NotFlatError("propagation_check: flat index out of range");
    }
    const double seed_gap =
        relative_gap(w.weight(flat_index), w.weight(flat_index + 1));
    if (seed_gap > flat_tol) {
        std::ostringstream msg;
        msg << "propagation_check: A_" << flat_index << " and A_"
            << flat_index + 1 << " differ by " << seed_gap;
        throw NotFlatError(msg.str());
    }

    Verdict v("propagation_check", true);
    double max_dev = 0.0;
    int first_violation = -1;
    for (int n = 0; n < w.count(); ++n) {
        const double dev = relative_gap(w.weight(flat_index), w.weight(n));
        max_dev = std::max(max_dev, dev);
        if (dev > report_tol && first_violation < 0) {
            first_violation = n;
        }
    }
    v.margin("flat_index", flat_index);
    v.margin("max_deviation", max_dev);
    v.margin("first_violation_index", first_violation);
    if (first_violation >= 0) {
        v.pass = false;
        std::ostringstream note;
        note << "weight A_" << first_violation
             << " deviates from the flat value: the shift is not subnormal";
        v.note(note.str());
    }

    // Smul'jan route on the order-2 block Hankel of the Gram sequence,
    // as a second, factorization-based route to the same prediction.
    if (w.count() >= 4) {
        const ShiftMoments sm = shift_moments(w);
        const Eigen::Index d = w.dim();
        Matrix xblock(2 * d, 2 * d);
        xblock.topLeftCorner(d, d) = sm.gram[0].matrix();
        xblock.topRightCorner(d, d) = sm.gram[1].matrix();
        xblock.bottomLeftCorner(d, d) = sm.gram[1].matrix();
        xblock.bottomRightCorner(d, d) = sm.gram[2].matrix();
        const HermitianMatrix x = HermitianMatrix::hermitize(xblock, 1e-12);
        if (psd_check(x).is_psd) {
            Matrix y(2 * d, d);
            y.topRows(d) = sm.gram[2].matrix();
            y.bottomRows(d) = sm.gram[3].matrix();
            const SmuljanReport cross = smuljan_factor(x, y, sm.gram[4]);
            Verdict part = cross.verdict;
            part.check = "smuljan_cross_check";
            v.part(std::move(part));
        } else {
            v.note("smuljan cross-check skipped: order-1 Gram block Hankel "
                   "is not PSD");
        }
    } else {
        v.note("smuljan cross-check skipped: needs 4 weights");
    }
    return v;
}

Verdict flatness_identity_check(const ShiftMoments &sm, int p, int n_max,
                                double flat_tol, double report_tol) {
    const int grams = static_cast<int>(sm.gram.size());
    if (p < 0 || p + 2 >= static_cast<int>(sm.products.size())) {
        throw NotFlatError("flatness_identity_check: p out of range");
    }
    if (p + n_max >= grams) {
        throw InsufficientMomentsError(
            "flatness_identity_check: not enough Gram terms");
    }
    const Eigen::Index d = sm.products.front().rows();

    // recover A_p and A_{p+1} from the products
    const Matrix bp = sm.products[p];
    Eigen::FullPivLU<Matrix> lu(bp);
    if (!lu.isInvertible()) {
        throw SingularProductError("flatness_identity_check: B_p is singular");
    }
    const Matrix ap_raw = sm.products[p + 1] * lu.inverse();
    const Matrix ap1_raw =
        sm.products[p + 2] * Eigen::FullPivLU<Matrix>(sm.products[p + 1]).inverse();
    const HermitianMatrix ap = HermitianMatrix::hermitize(ap_raw, 1e-8);
    const double seed_gap =
        (ap_raw - ap1_raw).norm() / std::max(ap_raw.norm(), 1e-300);
    if (seed_gap > flat_tol) {
        std::ostringstream msg;
        msg << "flatness_identity_check: A_" << p << " and A_" << p + 1
            << " differ by " << seed_gap;
        throw NotFlatError(msg.str());
    }

    Verdict v("flatness_identity_check", true);
    const Matrix ap2 = ap.matrix() * ap.matrix();
    Matrix ap_pow = Matrix::Identity(d, d); // A_p^{2n}
    double worst = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        ap_pow = ap_pow * ap2;
        const Matrix predicted = bp.adjoint() * ap_pow * bp;
        const Matrix &actual = sm.gram[p + n].matrix();
        const double resid =
            (actual - predicted).norm() / std::max(actual.norm(), 1e-300);
        worst = std::max(worst, resid);
        std::ostringstream key;
        key << "residual_n_" << n;
        v.margin(key.str(), resid);
        if (resid > report_tol) {
            v.pass = false;
        }
    }
    v.margin("max_residual", worst);
    if (!v.pass) {
        v.note("moment-level flatness identities violated: the shift is not "
               "subnormal with the claimed flat pair");
    }
    return v;
}

LocalizedShiftMeasure localized_shift_measure(const AtomicOVM &e,
                                              const ShiftMoments &sm, int p,
                                              double residual_tol) {
    const int grams = static_cast<int>(sm.gram.size());
    if (p < 0 || p >= static_cast<int>(sm.products.size())) {
        throw SchemaError("localized_shift_measure: p out of range");
    }
    const OperatorSequence oracle = moments(e, grams - 1);
    for (int n = 0; n < grams; ++n) {
        const double resid =
            (oracle.term(n).matrix() - sm.gram[n].matrix()).norm() /
            std::max(1.0, sm.gram[n].frobenius_norm());
        if (resid > residual_tol) {
            std::ostringstream msg;
            msg << "localized_shift_measure: measure does not represent the "
                   "Gram sequence at n = "
                << n << " (residual " << resid << ")";
            throw NotRepresentingError(msg.str());
        }
    }
    const Matrix bp = sm.products[p];
    Eigen::FullPivLU<Matrix> lu(bp);
    if (!lu.isInvertible()) {
        throw SingularProductError("localized_shift_measure: B_p is singular");
    }
    const Matrix bp_inv = lu.inverse();
    std::vector<double> atoms = e.atoms();
    std::vector<HermitianMatrix> weights;
    weights.reserve(e.atom_count());
    for (int k = 0; k < e.atom_count(); ++k) {
        const double factor =
            p == 0 ? 1.0 : std::pow(e.atoms()[k], p);
        Matrix wk = factor * (bp_inv.adjoint() *
                              e.weights()[k].matrix() * bp_inv);
        weights.push_back(HermitianMatrix::hermitize(wk, 1e-8));
    }
    LocalizedShiftMeasure out{AtomicOVM(std::move(atoms), std::move(weights)),
                              Verdict()};
    out.semispectral = is_semispectral(out.measure);
    return out;
}

} // namespace ovmkit
