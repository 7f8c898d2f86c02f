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

#include "ovmkit/recursive.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ovmkit {

double RealPolynomial::evaluate(double x) const {
    double acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

RealPolynomial RealPolynomial::from_roots(std::span<const double> roots) {
    std::vector<double> coeffs{1.0};
    for (double r : roots) {
        // multiply by (X - r)
        std::vector<double> next(coeffs.size() + 1, 0.0);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            next[i + 1] += coeffs[i];
            next[i] -= r * coeffs[i];
        }
        coeffs = std::move(next);
    }
    return RealPolynomial{std::move(coeffs)};
}

RealPolynomial RealPolynomial::from_recurrence(std::span<const double> a) {
    std::vector<double> coeffs(a.size() + 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        coeffs[i] = -a[i];
    }
    coeffs.back() = 1.0;
    return RealPolynomial{std::move(coeffs)};
}

namespace {

// Newton polish against the polynomial itself; the companion eigenvalues of
// an unbalanced matrix can be several digits short for clustered roots.
// The polish is kept only when Newton contracts to roundoff. At multiple
// roots the iteration stagnates near sqrt(eps); the raw eigenvalue is then
// returned so that the cluster structure stays visible to the simplicity
// classification.
double polish_real_root(const std::vector<double> &coeffs, double x0) {
    double x = x0;
    double last_step = std::numeric_limits<double>::infinity();
    for (int iteration = 0; iteration < 8; ++iteration) {
        double value = coeffs.back();
        double derivative = 0.0;
        for (int j = static_cast<int>(coeffs.size()) - 2; j >= 0; --j) {
            derivative = derivative * x + value;
            value = value * x + coeffs[j];
        }
        if (derivative == 0.0 || !std::isfinite(value)) {
            break;
        }
        const double step = value / derivative;
        if (!std::isfinite(step) ||
            std::abs(step) > 0.5 * (1.0 + std::abs(x0))) {
            return x0;
        }
        x -= step;
        last_step = std::abs(step);
        if (last_step <= 1e-15 * (1.0 + std::abs(x))) {
            break;
        }
    }
    const bool converged = last_step <= 1e-12 * (1.0 + std::abs(x));
    return converged ? x : x0;
}

} // namespace

RootReport poly_roots(const RealPolynomial &p) {
    const int deg = p.degree();
    if (deg < 1) {
        throw SchemaError("poly_roots: degree must be >= 1");
    }
    const double lead = p.coefficients.back();
    if (lead == 0.0) {
        throw SchemaError("poly_roots: leading coefficient is zero");
    }
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) {
        companion(i, i - 1) = 1.0;
    }
    for (int i = 0; i < deg; ++i) {
        companion(i, deg - 1) = -p.coefficients[i] / lead;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("poly_roots: eigensolver failed");
    }

    RootReport report;
    report.roots.resize(deg);
    for (int i = 0; i < deg; ++i) {
        Complex z = solver.eigenvalues()(i);
        if (std::abs(z.imag()) <= tol::kRootRealTol * (1.0 + std::abs(z))) {
            z.real(polish_real_root(p.coefficients, z.real()));
        }
        report.roots[i] = z;
    }
    std::sort(report.roots.begin(), report.roots.end(),
              [](const Complex &a, const Complex &b) {
                  return a.real() != b.real() ? a.real() < b.real()
                                              : a.imag() < b.imag();
              });

    report.all_real = true;
    double max_abs = 0.0;
    for (const Complex &z : report.roots) {
        max_abs = std::max(max_abs, std::abs(z));
        if (std::abs(z.imag()) > tol::kRootRealTol * (1.0 + std::abs(z))) {
            report.all_real = false;
        }
    }
    const double merge_tol = tol::kAtomMergeBase * (1.0 + max_abs);
    report.all_simple = true;
    for (std::size_t i = 0; i + 1 < report.roots.size(); ++i) {
        if (std::abs(report.roots[i + 1] - report.roots[i]) <= merge_tol) {
            report.all_simple = false;
        }
    }
    if (report.all_real) {
        for (const Complex &z : report.roots) {
            report.real_roots.push_back(z.real());
        }
        std::sort(report.real_roots.begin(), report.real_roots.end());
    }
    return report;
}

RealPolynomial min_poly_lcm(std::span<const RealPolynomial> locals) {
    std::vector<double> pool;
    double max_abs = 0.0;
    for (const RealPolynomial &p : locals) {
        const RootReport rr = poly_roots(p);
        if (!rr.all_real) {
            throw NonRealRootsError("min_poly_lcm: input has nonreal roots");
        }
        if (!rr.all_simple) {
            throw NonSimpleRootsError("min_poly_lcm: input has repeated roots");
        }
        for (double r : rr.real_roots) {
            pool.push_back(r);
            max_abs = std::max(max_abs, std::abs(r));
        }
    }
    std::sort(pool.begin(), pool.end());
    const double merge_tol = tol::kAtomMergeBase * (1.0 + max_abs);
    std::vector<double> merged;
    std::size_t i = 0;
    while (i < pool.size()) {
        std::size_t j = i + 1;
        double sum = pool[i];
        while (j < pool.size() && pool[j] - pool[j - 1] <= merge_tol) {
            sum += pool[j];
            ++j;
        }
        merged.push_back(sum / static_cast<double>(j - i));
        i = j;
    }
    return RealPolynomial::from_roots(merged);
}

namespace {

struct WindowSystem {
    Eigen::MatrixXd design;
    Eigen::VectorXd target;
};

// Stacked linear system sum_k a_k T_{n+k} = T_{n+r} over all windows,
// real and imaginary parts as separate rows. Optional per-window weights
// equalize the windows of fast-growing sequences, which improves the
// accuracy of the fitted coefficients; the exact solution is unchanged.
WindowSystem stack_windows(const OperatorSequence &seq, int r,
                           bool equalize_windows = false) {
    const Eigen::Index d = seq.dim();
    const int windows = seq.max_index() - r + 1;
    const Eigen::Index rows = static_cast<Eigen::Index>(windows) * 2 * d * d;
    WindowSystem sys;
    sys.design.resize(rows, r);
    sys.target.resize(rows);

    double norm_floor = 1e-300;
    if (equalize_windows) {
        double max_norm = 0.0;
        for (int n = 0; n <= seq.max_index(); ++n) {
            max_norm = std::max(max_norm, seq.term(n).frobenius_norm());
        }
        norm_floor = std::max(norm_floor, 1e-12 * max_norm);
    }

    Eigen::Index row0 = 0;
    for (int n = 0; n < windows; ++n) {
        const double scale =
            equalize_windows
                ? 1.0 / std::max(seq.term(n + r).frobenius_norm(), norm_floor)
                : 1.0;
        for (int k = 0; k < r; ++k) {
            const Matrix &t = seq.term(n + k).matrix();
            Eigen::Index row = row0;
            for (Eigen::Index c = 0; c < d; ++c) {
                for (Eigen::Index rr = 0; rr < d; ++rr) {
                    sys.design(row, k) = scale * t(rr, c).real();
                    sys.design(row + d * d, k) = scale * t(rr, c).imag();
                    ++row;
                }
            }
        }
        const Matrix &rhs = seq.term(n + r).matrix();
        Eigen::Index row = row0;
        for (Eigen::Index c = 0; c < d; ++c) {
            for (Eigen::Index rr = 0; rr < d; ++rr) {
                sys.target(row) = scale * rhs(rr, c).real();
                sys.target(row + d * d) = scale * rhs(rr, c).imag();
                ++row;
            }
        }
        row0 += 2 * d * d;
    }
    return sys;
}

} // namespace

RecurrenceFit fit_recurrence(const OperatorSequence &seq, int r_max,
                             double residual_tol, int r_min) {
    if (r_max < 1 || r_min > r_max) {
        throw NoRecurrenceError("fit_recurrence: empty order range");
    }
    if (seq.max_index() < 2 * r_max) {
        std::ostringstream msg;
        msg << "fit_recurrence: needs N >= " << 2 * r_max
            << " terms beyond T_0, got N = " << seq.max_index();
        throw InsufficientMomentsError(msg.str());
    }
    for (int r = std::max(r_min, 1); r <= r_max; ++r) {
        const WindowSystem weighted = stack_windows(seq, r, true);
        const Eigen::VectorXd a =
            weighted.design.colPivHouseholderQr().solve(weighted.target);
        // the reported misfit is over the raw windows
        const WindowSystem sys = stack_windows(seq, r);
        const double misfit = (sys.design * a - sys.target).norm();
        const double denom = sys.target.norm();
        const double residual = denom > 0.0 ? misfit / denom
                                            : (misfit > 0.0 ? 1.0 : 0.0);
        if (residual <= residual_tol) {
            RecurrenceFit fit;
            fit.order = r;
            fit.recurrence.assign(a.data(), a.data() + r);
            fit.polynomial = RealPolynomial::from_recurrence(fit.recurrence);
            fit.residual = residual;
            return fit;
        }
    }
    std::ostringstream msg;
    msg << "fit_recurrence: no recurrence of order <= " << r_max
        << " within residual tolerance " << residual_tol;
    throw NoRecurrenceError(msg.str());
}

namespace {

// Coefficients (ascending) of the i-th Lagrange basis polynomial on nodes.
std::vector<double> lagrange_coefficients(const std::vector<double> &nodes,
                                          std::size_t i) {
    std::vector<double> coeffs{1.0};
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (j == i) {
            continue;
        }
        const double scale = nodes[i] - nodes[j];
        std::vector<double> next(coeffs.size() + 1, 0.0);
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            next[k + 1] += coeffs[k] / scale;
            next[k] -= nodes[j] * coeffs[k] / scale;
        }
        coeffs = std::move(next);
    }
    return coeffs;
}

} // namespace

AtomicOVM recover_charge(const OperatorSequence &seq, const RecurrenceFit &fit,
                         double residual_tol) {
    const RootReport rr = poly_roots(fit.polynomial);
    if (!rr.all_real) {
        throw NonRealRootsError(
            "recover_charge: fitted polynomial has nonreal roots");
    }
    if (!rr.all_simple) {
        throw NonSimpleRootsError(
            "recover_charge: fitted polynomial has repeated roots");
    }
    const std::vector<double> &lambda = rr.real_roots;
    const int r = static_cast<int>(lambda.size());
    std::vector<HermitianMatrix> weights;
    weights.reserve(r);
    for (int i = 0; i < r; ++i) {
        const std::vector<double> c =
            lagrange_coefficients(lambda, static_cast<std::size_t>(i));
        Matrix s = Matrix::Zero(seq.dim(), seq.dim());
        for (std::size_t j = 0; j < c.size(); ++j) {
            s += c[j] * seq.term(static_cast<int>(j)).matrix();
        }
        weights.push_back(HermitianMatrix::hermitize(s, 1e-10));
    }
    AtomicOVM charge(lambda, std::move(weights));

    // the charge must reproduce every input term, not just the fitted window
    const OperatorSequence check = moments(charge, seq.max_index());
    double num = 0.0;
    double den = 0.0;
    for (int n = 0; n <= seq.max_index(); ++n) {
        num += std::pow(
            (check.term(n).matrix() - seq.term(n).matrix()).norm(), 2);
        den += std::pow(seq.term(n).frobenius_norm(), 2);
    }
    const double resid =
        den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    if (resid > residual_tol) {
        std::ostringstream msg;
        msg << "recover_charge: reconstruction residual " << resid
            << " exceeds " << residual_tol;
        throw ReconstructionMismatchError(msg.str());
    }
    return charge;
}

namespace {

// Smallest order whose recurrence also yields a consistent charge. An order
// can pass the window residual yet fail to reproduce the sequence (small
// weights hiding behind the fit tolerance); such orders are skipped in
// favor of the next one that recovers cleanly.
std::pair<RecurrenceFit, AtomicOVM>
fit_and_recover(const OperatorSequence &seq, int r_max, double residual_tol) {
    int r_min = 1;
    std::exception_ptr first_recovery_error;
    while (r_min <= r_max) {
        RecurrenceFit fit;
        try {
            fit = fit_recurrence(seq, r_max, residual_tol, r_min);
        } catch (const NoRecurrenceError &) {
            if (first_recovery_error) {
                std::rethrow_exception(first_recovery_error);
            }
            throw;
        }
        try {
            AtomicOVM charge = recover_charge(seq, fit);
            return {std::move(fit), std::move(charge)};
        } catch (const ReconstructionMismatchError &) {
            if (!first_recovery_error) {
                first_recovery_error = std::current_exception();
            }
        } catch (const NonRealRootsError &) {
            if (!first_recovery_error) {
                first_recovery_error = std::current_exception();
            }
        } catch (const NonSimpleRootsError &) {
            if (!first_recovery_error) {
                first_recovery_error = std::current_exception();
            }
        }
        r_min = fit.order + 1;
    }
    if (first_recovery_error) {
        std::rethrow_exception(first_recovery_error);
    }
    throw NoRecurrenceError("solve_recursive: no consistent order found");
}

} // namespace

RecursiveSolution solve_recursive(const OperatorSequence &seq, int r_max,
                                  const SampleScheme &scheme,
                                  double residual_tol, double eps) {
    auto [fit, charge] = fit_and_recover(seq, r_max, residual_tol);

    // restate the fit on the refined atoms so that polynomial, recurrence
    // coefficients and roots stay mutually consistent
    if (charge.atom_count() == fit.order) {
        const RealPolynomial refined =
            RealPolynomial::from_roots(charge.atoms());
        std::vector<double> recurrence(fit.order);
        for (int k = 0; k < fit.order; ++k) {
            recurrence[k] = -refined.coefficients[k];
        }
        const WindowSystem sys = stack_windows(seq, fit.order);
        Eigen::VectorXd a(fit.order);
        for (int k = 0; k < fit.order; ++k) {
            a(k) = recurrence[k];
        }
        const double misfit = (sys.design * a - sys.target).norm();
        const double denom = sys.target.norm();
        const double residual = denom > 0.0 ? misfit / denom
                                            : (misfit > 0.0 ? 1.0 : 0.0);
        if (residual <= fit.residual || residual <= residual_tol) {
            fit.polynomial = refined;
            fit.recurrence = std::move(recurrence);
            fit.residual = residual;
        }
    }

    Verdict weight_route = is_measure(charge, eps);

    // decision criterion evaluated directly: H_{r-1}(x) >= 0 at samples
    Verdict hankel_route =
        local_moment_check(seq, scheme, fit.order - 1, eps);
    hankel_route.check = "sampled_hankel_order_r_minus_1";

    Verdict verdict("recursive_moment_sequence");
    verdict.pass = weight_route.pass && hankel_route.pass;
    if (weight_route.pass != hankel_route.pass) {
        verdict.note("criteria disagreement: recovered-weight positivity and "
                     "sampled Hankel positivity do not match");
    }
    verdict.margin("fit_residual", fit.residual);
    verdict.part(std::move(weight_route));
    verdict.part(std::move(hankel_route));

    std::vector<double> roots = charge.atoms();
    RecursiveSolution sol{std::move(fit), std::move(roots), std::move(charge),
                          std::move(verdict)};
    return sol;
}

namespace {

double order2_scale(double s0, double s1, double s2) {
    return std::max(1.0, s0 * s0 + s1 * s1 + s2 * s2);
}

} // namespace

Order2Result check_order2_closed_form(const HermitianMatrix &t0,
                                      const HermitianMatrix &t1,
                                      double lambda1, double lambda2,
                                      const SampleScheme &scheme, double eps) {
    if (!(lambda1 < lambda2)) {
        throw SchemaError("check_order2_closed_form: needs lambda1 < lambda2");
    }
    const double sum = lambda1 + lambda2;
    const double prod = lambda1 * lambda2;
    const HermitianMatrix t2 = t1.scaled(sum) - t0.scaled(prod);

    // (1) the closed-form charge has PSD weights
    const double gap = lambda2 - lambda1;
    const HermitianMatrix w1 = (t0.scaled(lambda2) - t1).scaled(1.0 / gap);
    const HermitianMatrix w2 = (t1 - t0.scaled(lambda1)).scaled(1.0 / gap);
    AtomicOVM measure({lambda1, lambda2}, {w1, w2});
    Verdict cond1 = is_measure(measure, eps);
    cond1.check = "closed_form_weights_psd";

    // sampled conditions (2), (3), (4)
    const auto xs = sample_vectors(scheme, t0.dim());
    bool quad_ok = true;
    bool hankel_ok = true;
    bool cauchy_ok = true;
    double worst_quad = std::numeric_limits<double>::infinity();
    double worst_hankel = std::numeric_limits<double>::infinity();
    double worst_cauchy = std::numeric_limits<double>::infinity();
    for (const Vector &x : xs) {
        const double s0 = t0.quadratic_form(x).real();
        const double s1 = t1.quadratic_form(x).real();
        const double s2 = t2.quadratic_form(x).real();
        const double scale = order2_scale(s0, s1, s2);
        const double linear_scale =
            std::max(1.0, std::abs(s0) + std::abs(s1) + std::abs(s2));

        const double quad = -(s1 - lambda1 * s0) * (s1 - lambda2 * s0) / scale;
        quad_ok = quad_ok && quad >= -eps && s0 >= -eps * linear_scale;
        worst_quad = std::min(worst_quad, quad);

        Eigen::MatrixXd h(2, 2);
        h << s0, s1, s1, s2;
        const PsdReport hr = psd_check_real(h, eps);
        hankel_ok = hankel_ok && hr.is_psd;
        worst_hankel =
            std::min(worst_hankel, hr.min_eigenvalue + hr.tolerance_used);

        const double cs = (s2 * s0 - s1 * s1) / scale;
        cauchy_ok = cauchy_ok && cs >= -eps;
        worst_cauchy = std::min(worst_cauchy, cs);
    }
    const PsdReport t0_psd = psd_check(t0, eps);
    const PsdReport t2_psd = psd_check(t2, eps);
    const bool cond4 = t0_psd.is_psd && t2_psd.is_psd && cauchy_ok;

    Verdict verdict("order2_closed_form");
    verdict.margin("worst_quadratic_margin", worst_quad);
    verdict.margin("worst_hankel_margin", worst_hankel);
    verdict.margin("worst_cauchy_schwarz_margin", worst_cauchy);
    verdict.margin("t0_min_eigenvalue", t0_psd.min_eigenvalue);
    verdict.margin("t2_min_eigenvalue", t2_psd.min_eigenvalue);
    verdict.part(cond1);
    verdict.part(Verdict("sampled_quadratic_inequality", quad_ok));
    verdict.part(Verdict("sampled_2x2_hankels", hankel_ok));
    verdict.part(Verdict("endpoint_psd_and_cauchy_schwarz", cond4));

    const bool all = cond1.pass && quad_ok && hankel_ok && cond4;
    const bool any = cond1.pass || quad_ok || hankel_ok || cond4;
    verdict.pass = all;
    if (all != any) {
        verdict.note("condition disagreement among the four order-2 criteria");
    }
    Order2Result result;
    if (all) {
        result.measure = std::move(measure);
    }
    result.verdict = std::move(verdict);
    return result;
}

AtomicOVM algebraic_operator_measure(const HermitianMatrix &t) {
    const Eigendecomposition ed = eig(t);
    const double span = std::max(std::abs(ed.eigenvalues(0)),
                                 std::abs(ed.eigenvalues(ed.eigenvalues.size() - 1)));
    const double gap_tol = tol::kAtomMergeBase * (1.0 + span);

    std::vector<double> atoms;
    std::vector<HermitianMatrix> projections;
    Eigen::Index i = 0;
    const Eigen::Index d = t.dim();
    while (i < d) {
        Eigen::Index j = i + 1;
        double sum = ed.eigenvalues(i);
        while (j < d && ed.eigenvalues(j) - ed.eigenvalues(j - 1) <= gap_tol) {
            sum += ed.eigenvalues(j);
            ++j;
        }
        Matrix p = Matrix::Zero(d, d);
        for (Eigen::Index k = i; k < j; ++k) {
            p += ed.eigenvectors.col(k) * ed.eigenvectors.col(k).adjoint();
        }
        atoms.push_back(sum / static_cast<double>(j - i));
        projections.push_back(HermitianMatrix::hermitize(p, 1e-10));
        i = j;
    }
    return AtomicOVM(std::move(atoms), std::move(projections));
}

} // namespace ovmkit
