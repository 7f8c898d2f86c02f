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

#include "ovmkit/atomic_ovm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace ovmkit {

AtomicOVM::AtomicOVM(std::vector<double> atoms,
                     std::vector<HermitianMatrix> weights) {
    if (atoms.size() != weights.size()) {
        throw SchemaError("atomic ovm: atom and weight counts differ");
    }
    if (weights.empty()) {
        throw SchemaError(
            "atomic ovm: empty measure needs zero_measure(dim)");
    }
    dim_ = weights.front().dim();
    for (const auto &s : weights) {
        if (s.dim() != dim_) {
            throw SchemaError("atomic ovm: weights have mixed dimensions");
        }
    }
    double max_abs = 0.0;
    for (double a : atoms) {
        max_abs = std::max(max_abs, std::abs(a));
    }
    merge_tol_ = tol::kAtomMergeBase * (1.0 + max_abs);

    std::vector<std::size_t> idx(atoms.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return atoms[a] < atoms[b]; });

    for (std::size_t k : idx) {
        if (!atoms_.empty() && atoms[k] - atoms_.back() <= merge_tol_) {
            weights_.back() = weights_.back() + weights[k];
        } else {
            atoms_.push_back(atoms[k]);
            weights_.push_back(weights[k]);
        }
    }
}

AtomicOVM AtomicOVM::zero_measure(Eigen::Index dim) {
    AtomicOVM e({0.0}, {HermitianMatrix::zero(dim)});
    e.atoms_.clear();
    e.weights_.clear();
    return e;
}

HermitianMatrix AtomicOVM::total_mass() const {
    HermitianMatrix sum = HermitianMatrix::zero(dim_);
    for (const auto &s : weights_) {
        sum = sum + s;
    }
    return sum;
}

OperatorSequence moments(const AtomicOVM &e, int count) {
    if (count < 0) {
        throw SchemaError("moments: count must be >= 0");
    }
    const double log_guard = std::log(tol::kMomentGuard);
    for (int k = 0; k < e.atom_count(); ++k) {
        const double lam = std::abs(e.atoms()[k]);
        const double wnorm = e.weights()[k].frobenius_norm();
        if (lam > 1.0 && wnorm > 0.0 &&
            count * std::log(lam) + std::log(wnorm) > log_guard) {
            std::ostringstream msg;
            msg << "moments: |" << e.atoms()[k] << "|^" << count
                << " * ||S|| exceeds the magnitude guard";
            throw OverflowRiskError(msg.str());
        }
    }
    std::vector<HermitianMatrix> terms;
    terms.reserve(count + 1);
    for (int n = 0; n <= count; ++n) {
        HermitianMatrix t = HermitianMatrix::zero(e.dim());
        for (int k = 0; k < e.atom_count(); ++k) {
            // 0^0 = 1 so that T_0 = E(R) when 0 is an atom
            const double factor =
                n == 0 ? 1.0 : std::pow(e.atoms()[k], n);
            t = t + e.weights()[k].scaled(factor);
        }
        terms.push_back(t);
    }
    return OperatorSequence(std::move(terms));
}

Verdict is_measure(const AtomicOVM &e, double eps) {
    Verdict v("is_measure", true);
    double worst = std::numeric_limits<double>::infinity();
    for (int k = 0; k < e.atom_count(); ++k) {
        const PsdReport r = psd_check(e.weights()[k], eps);
        std::ostringstream key;
        key << "min_eig_atom_" << k;
        v.margin(key.str(), r.min_eigenvalue);
        worst = std::min(worst, r.min_eigenvalue + r.tolerance_used);
        if (!r.is_psd) {
            v.pass = false;
            std::ostringstream note;
            note << "weight at atom " << e.atoms()[k]
                 << " has min eigenvalue " << r.min_eigenvalue;
            v.note(note.str());
        }
    }
    if (e.atom_count() > 0) {
        v.margin("worst_margin", worst);
    }
    return v;
}

Verdict is_semispectral(const AtomicOVM &e, double eps) {
    Verdict v("is_semispectral");
    Verdict measure = is_measure(e, eps);
    const double defect =
        (e.total_mass().matrix() -
         Matrix::Identity(e.dim(), e.dim()))
            .norm();
    const double bound = tol::kSemiSpectral * std::sqrt(
        static_cast<double>(e.dim()));
    v.pass = measure.pass && defect <= bound;
    v.margin("total_mass_defect", defect);
    v.margin("total_mass_bound", bound);
    v.part(std::move(measure));
    return v;
}

Verdict is_spectral(const AtomicOVM &e, double tolerance) {
    Verdict semi = is_semispectral(e);
    if (!semi.pass) {
        throw NotSemiSpectralError("is_spectral: input is not semi-spectral");
    }
    const Eigen::Index d = e.dim();

    // route (a): first-moment square equals second moment
    Matrix m1 = Matrix::Zero(d, d);
    Matrix m2 = Matrix::Zero(d, d);
    for (int k = 0; k < e.atom_count(); ++k) {
        m1 += e.atoms()[k] * e.weights()[k].matrix();
        m2 += e.atoms()[k] * e.atoms()[k] * e.weights()[k].matrix();
    }
    const double moment_defect =
        (m1 * m1 - m2).norm() / std::max(1.0, m2.norm());
    const bool route_moment = moment_defect <= tolerance;

    // route (b): weights are mutually annihilating projections
    double idem_defect = 0.0;
    double cross_defect = 0.0;
    for (int i = 0; i < e.atom_count(); ++i) {
        const Matrix &si = e.weights()[i].matrix();
        idem_defect = std::max(idem_defect,
                               (si * si - si).norm() / std::max(1.0, si.norm()));
        for (int j = i + 1; j < e.atom_count(); ++j) {
            const Matrix &sj = e.weights()[j].matrix();
            cross_defect = std::max(cross_defect, (si * sj).norm());
        }
    }
    const bool route_projection =
        idem_defect <= tolerance && cross_defect <= tolerance;

    Verdict v("is_spectral", route_moment && route_projection);
    v.margin("moment_defect", moment_defect);
    v.margin("idempotency_defect", idem_defect);
    v.margin("cross_product_defect", cross_defect);
    v.part(Verdict("first_moment_square", route_moment));
    v.part(Verdict("orthogonal_projections", route_projection));
    if (route_moment != route_projection) {
        v.note("spectrality characterizations disagree");
    }
    v.part(std::move(semi));
    return v;
}

DilationData naimark_dilate(const AtomicOVM &e, double eps) {
    const Verdict measure = is_measure(e, eps);
    if (!measure.pass) {
        throw NotMeasureError("naimark_dilate: weights are not all PSD");
    }
    const Eigen::Index d = e.dim();
    const int r = e.atom_count();
    DilationData data;
    data.embedding = Matrix::Zero(std::max(r, 1) * d, d);
    data.dilated_atoms = e.atoms();
    for (int k = 0; k < r; ++k) {
        data.embedding.block(k * d, 0, d, d) =
            sqrt_psd(e.weights()[k], eps).matrix();
    }
    // verify compressions of the dilation against the moment oracle
    const int depth = 2 * std::max(r, 1);
    const OperatorSequence oracle = moments(e, depth);
    Eigen::VectorXd powers = Eigen::VectorXd::Ones(std::max(r, 1));
    double worst = 0.0;
    for (int n = 0; n <= depth; ++n) {
        Matrix compressed = Matrix::Zero(d, d);
        for (int k = 0; k < r; ++k) {
            const Matrix vk = data.embedding.block(k * d, 0, d, d);
            compressed += powers(k) * (vk.adjoint() * vk);
        }
        const double denom = std::max(1.0, oracle.term(n).frobenius_norm());
        worst = std::max(worst,
                         (compressed - oracle.term(n).matrix()).norm() / denom);
        for (int k = 0; k < r; ++k) {
            powers(k) *= e.atoms()[k];
        }
    }
    data.max_relative_residual = worst;
    return data;
}

std::vector<double> support(const AtomicOVM &e) {
    double max_norm = 0.0;
    for (const auto &s : e.weights()) {
        max_norm = std::max(max_norm, s.frobenius_norm());
    }
    const double cutoff = 1e-12 * std::max(1.0, max_norm);
    std::vector<double> atoms;
    for (int k = 0; k < e.atom_count(); ++k) {
        if (e.weights()[k].frobenius_norm() > cutoff) {
            atoms.push_back(e.atoms()[k]);
        }
    }
    return atoms;
}

} // namespace ovmkit
