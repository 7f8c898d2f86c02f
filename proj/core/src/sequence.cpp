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

#include "ovmkit/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ovmkit {

OperatorSequence::OperatorSequence(std::vector<HermitianMatrix> terms)
    : terms_(std::move(terms)) {
    if (terms_.empty()) {
        throw InsufficientMomentsError("sequence: at least T_0 is required");
    }
    const Eigen::Index d = terms_.front().dim();
    for (const auto &t : terms_) {
        if (t.dim() != d) {
            throw SchemaError("sequence: terms have mixed dimensions");
        }
    }
}

int OperatorSequence::overflow_guard_index() const {
    for (int n = 0; n <= max_index(); ++n) {
        const double nrm = terms_[n].frobenius_norm();
        if (!std::isfinite(nrm) || nrm > tol::kMomentGuard) {
            return n;
        }
    }
    return max_index() + 1;
}

namespace {

void require_terms(const OperatorSequence &seq, int needed,
                   const char *what) {
    if (needed > seq.max_index()) {
        std::ostringstream msg;
        msg << what << ": needs terms through T_" << needed
            << " but the sequence ends at T_" << seq.max_index();
        throw InsufficientMomentsError(msg.str());
    }
}

// Flattened block matrix with block (i,j) = T_{i+j+shift} - optional
// difference term T_{i+j+shift+2}.
HermitianMatrix assemble_block(const OperatorSequence &seq, int order,
                               int shift, bool difference) {
    const Eigen::Index d = seq.dim();
    const Eigen::Index n1 = order + 1;
    Matrix big(d * n1, d * n1);
    for (Eigen::Index i = 0; i < n1; ++i) {
        for (Eigen::Index j = 0; j < n1; ++j) {
            const int idx = static_cast<int>(i + j) + shift;
            Matrix blockij = seq.term(idx).matrix();
            if (difference) {
                blockij -= seq.term(idx + 2).matrix();
            }
            big.block(i * d, j * d, d, d) = blockij;
        }
    }
    return HermitianMatrix::hermitize(big, 1e-12);
}

PsdReport worse_of(const PsdReport &a, const PsdReport &b) {
    const double margin_a = a.min_eigenvalue + a.tolerance_used;
    const double margin_b = b.min_eigenvalue + b.tolerance_used;
    return margin_a <= margin_b ? a : b;
}

} // namespace

BlockHankel block_hankel(const OperatorSequence &seq, int order) {
    if (order < 0) {
        throw InsufficientMomentsError("block_hankel: order must be >= 0");
    }
    require_terms(seq, 2 * order, "block_hankel");
    return BlockHankel{order, assemble_block(seq, order, 0, false)};
}

PsdReport hamburger_check(const OperatorSequence &seq, int order, double eps) {
    return psd_check(block_hankel(seq, order).flattened, eps);
}

PsdReport hausdorff_check(const OperatorSequence &seq, int order, double eps) {
    require_terms(seq, 2 * order + 2, "hausdorff_check");
    const PsdReport hamburger = hamburger_check(seq, order, eps);
    const PsdReport diff =
        psd_check(assemble_block(seq, order, 0, true), eps);
    return worse_of(hamburger, diff);
}

PsdReport stieltjes_check(const OperatorSequence &seq, int order, double eps) {
    require_terms(seq, 2 * order + 1, "stieltjes_check");
    const PsdReport hamburger = hamburger_check(seq, order, eps);
    const PsdReport shifted =
        psd_check(assemble_block(seq, order, 1, false), eps);
    return worse_of(hamburger, shifted);
}

LocalizedSequence localize(const OperatorSequence &seq, const Vector &x) {
    if (x.size() != seq.dim()) {
        throw NotUnitVectorError("localize: vector dimension mismatch");
    }
    if (std::abs(x.norm() - 1.0) > tol::kUnitVector) {
        throw NotUnitVectorError("localize: vector is not unit length");
    }
    LocalizedSequence ls;
    ls.vector = x;
    ls.values.reserve(seq.max_index() + 1);
    for (const auto &t : seq.terms()) {
        const Complex q = t.quadratic_form(x);
        const double scale = std::max(1.0, t.frobenius_norm());
        if (std::abs(q.imag()) > 1e-12 * scale) {
            throw NonRealQuadraticFormError(
                "localize: quadratic form has a nonreal value");
        }
        ls.values.push_back(q.real());
    }
    return ls;
}

Eigen::MatrixXd hankel_from_values(std::span<const double> values, int order,
                                   int shift) {
    const int n1 = order + 1;
    if (2 * order + shift >= static_cast<int>(values.size())) {
        throw InsufficientMomentsError("hankel_from_values: not enough values");
    }
    Eigen::MatrixXd h(n1, n1);
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n1; ++j) {
            h(i, j) = values[i + j + shift];
        }
    }
    return h;
}

ScalarHankel scalar_hankel(const LocalizedSequence &ls, int order) {
    return ScalarHankel{order, hankel_from_values(ls.values, order, 0)};
}

Verdict local_moment_check(const OperatorSequence &seq,
                           const SampleScheme &scheme, int order, double eps) {
    require_terms(seq, 2 * order, "local_moment_check");
    const auto xs = sample_vectors(scheme, seq.dim());
    Verdict v("local_moment_check");
    if (xs.empty()) {
        return v.note("no sample vectors").margin("sample_count", 0);
    }
    bool all_psd = true;
    double worst = std::numeric_limits<double>::infinity();
    std::size_t worst_idx = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const auto ls = localize(seq, xs[k]);
        const auto report = psd_check_real(scalar_hankel(ls, order).matrix, eps);
        all_psd = all_psd && report.is_psd;
        const double margin = report.min_eigenvalue + report.tolerance_used;
        if (margin < worst) {
            worst = margin;
            worst_idx = k;
        }
    }
    v.pass = all_psd;
    const auto worst_report =
        psd_check_real(scalar_hankel(localize(seq, xs[worst_idx]), order).matrix, eps);
    v.margin("sample_count", static_cast<double>(xs.size()));
    v.margin("worst_sample_index", static_cast<double>(worst_idx));
    v.margin("worst_min_eigenvalue", worst_report.min_eigenvalue);
    v.margin("worst_tolerance", worst_report.tolerance_used);
    return v;
}

double support_radius(const OperatorSequence &seq) {
    const int guard = seq.overflow_guard_index();
    if (guard - 1 < 4) {
        throw InsufficientMomentsError(
            "support_radius: needs terms through T_4");
    }
    const int last_even_n = (guard - 1) / 2; // T_{2n} available for n <= this
    const int start = last_even_n / 2 + 1;   // upper half of even indices
    double radius = std::numeric_limits<double>::infinity();
    for (int n = start; n <= last_even_n; ++n) {
        const double nrm = seq.term(2 * n).operator_norm();
        radius = std::min(radius, std::pow(nrm, 1.0 / (2.0 * n)));
    }
    return radius;
}

CarlemanDiagnostic carleman_partial_sums(const OperatorSequence &seq) {
    CarlemanDiagnostic diag;
    const int guard = seq.overflow_guard_index();
    diag.truncated_by_overflow_guard = guard <= seq.max_index();
    const int last_even_n = (guard - 1) / 2;
    if (last_even_n < 1) {
        throw InsufficientMomentsError(
            "carleman_partial_sums: needs an even term beyond T_0");
    }
    std::vector<double> terms;
    double running = 0.0;
    for (int n = 1; n <= last_even_n; ++n) {
        const double nrm = seq.term(2 * n).operator_norm();
        if (nrm == 0.0) {
            diag.skipped_zero_terms = true;
            continue;
        }
        const double term = std::pow(nrm, -1.0 / (2.0 * n));
        terms.push_back(term);
        running += term;
        diag.partial_sums.push_back(running);
    }
    if (terms.empty()) {
        diag.classification = CarlemanDiagnostic::Growth::Stalled;
        return diag;
    }
    const std::size_t half = terms.size() / 2;
    double tail_sum = 0.0;
    for (std::size_t i = half; i < terms.size(); ++i) {
        tail_sum += terms[i];
    }
    diag.tail_rate = tail_sum / static_cast<double>(terms.size() - half);
    const double head = terms.front();
    const double tail = terms.back();
    if (head <= 0.0 || tail >= 0.5 * head) {
        diag.classification = CarlemanDiagnostic::Growth::Linear;
    } else if (tail > 1e-6 * head) {
        diag.classification = CarlemanDiagnostic::Growth::Sublinear;
    } else {
        diag.classification = CarlemanDiagnostic::Growth::Stalled;
    }
    return diag;
}

OperatorSequence normalize(const OperatorSequence &seq, double rank_tol) {
    const HermitianMatrix root_inv = inv_sqrt_psd(seq.term(0), rank_tol);
    std::vector<HermitianMatrix> out;
    out.reserve(seq.max_index() + 1);
    for (const auto &t : seq.terms()) {
        Matrix m = root_inv.matrix() * t.matrix() * root_inv.matrix();
        out.push_back(HermitianMatrix::hermitize(m, 1e-10));
    }
    return OperatorSequence(std::move(out));
}

} // namespace ovmkit
