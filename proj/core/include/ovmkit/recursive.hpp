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
 * Linear recursive operator sequences: recurrence detection, minimal
 * polynomial machinery, atomic charge recovery through Lagrange
 * interpolation, and the decision procedure for the recursive operator
 * moment problem, with a dedicated order-2 closed form.
 */

#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "ovmkit/atomic_ovm.hpp"
#include "ovmkit/sampling.hpp"
#include "ovmkit/sequence.hpp"
#include "ovmkit/verdict.hpp"

namespace ovmkit {

/// Real polynomial, coefficients in ascending degree order.
struct RealPolynomial {
    std::vector<double> coefficients;

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
    bool is_monic() const {
        return !coefficients.empty() && coefficients.back() == 1.0;
    }
    double evaluate(double x) const;

    /// Monic product of (X - r) over the given roots.
    static RealPolynomial from_roots(std::span<const double> roots);
    /// X^r - a_{r-1} X^{r-1} - ... - a_0 from recurrence coefficients.
    static RealPolynomial from_recurrence(std::span<const double> a);
};

struct RootReport {
    std::vector<Complex> roots;     // companion-matrix eigenvalues
    bool all_real = false;
    bool all_simple = false;
    std::vector<double> real_roots; // ascending; filled when all_real
};

/// Roots via the companion matrix; classification flags are carried in the
/// report instead of being errors.
RootReport poly_roots(const RealPolynomial &p);

/// Monic l.c.m. of polynomials with simple real roots, computed as the
/// product over the union of root sets (roots merged within tolerance).
/// @throws NonSimpleRootsError / NonRealRootsError on invalid inputs.
RealPolynomial min_poly_lcm(std::span<const RealPolynomial> locals);

struct RecurrenceFit {
    int order = 0;
    RealPolynomial polynomial;       // monic, degree = order
    std::vector<double> recurrence;  // a_0 ... a_{r-1}
    double residual = 0.0;           // relative misfit over all windows
};

/// Smallest order r <= r_max whose least-squares monic recurrence over all
/// windows has relative residual <= residual_tol. r_min restarts the search
/// above an order already found inconsistent.
/// @throws InsufficientMomentsError when N < 2 r_max,
///         NoRecurrenceError when nothing fits.
RecurrenceFit fit_recurrence(const OperatorSequence &seq, int r_max,
                             double residual_tol = tol::kFitResidual,
                             int r_min = 1);

/// Weights from the Lagrange linear formula S_i = sum_j c_{ij} T_j, where
/// c_{ij} are the coefficients of the i-th Lagrange basis polynomial on the
/// fitted roots. Verifies that the charge reproduces the whole input.
/// @throws NonRealRootsError, NonSimpleRootsError, ReconstructionMismatchError.
AtomicOVM recover_charge(const OperatorSequence &seq, const RecurrenceFit &fit,
                         double residual_tol = tol::kChargeResidual);

struct RecursiveSolution {
    RecurrenceFit fit;
    std::vector<double> roots;
    AtomicOVM charge;
    Verdict is_moment_sequence;
};

/// Full pipeline: fit -> roots -> charge -> positivity, cross-checked
/// against the sampled scalar-Hankel criterion at order r-1. Disagreement
/// between the two routes is reported in the verdict, never silent.
RecursiveSolution solve_recursive(const OperatorSequence &seq, int r_max,
                                  const SampleScheme &scheme,
                                  double residual_tol = tol::kFitResidual,
                                  double eps = tol::kPsdEps);

struct Order2Result {
    Verdict verdict;
    std::optional<AtomicOVM> measure; // present when all conditions pass
};

/// The four equivalent order-2 conditions, each evaluated independently:
///  (1) the closed-form two-atom charge has PSD weights;
///  (2) sampled quadratic inequality
///      (<T1 x,x> - l1 <T0 x,x>)(<T1 x,x> - l2 <T0 x,x>) <= 0;
///  (3) sampled 2x2 scalar Hankels PSD;
///  (4) T0 >= 0, T2 >= 0 and sampled <T1>^2 <= <T2><T0>,
/// with T2 = (l1+l2) T1 - l1 l2 T0. Mutual agreement is asserted.
Order2Result check_order2_closed_form(const HermitianMatrix &t0,
                                      const HermitianMatrix &t1,
                                      double lambda1, double lambda2,
                                      const SampleScheme &scheme,
                                      double eps = tol::kPsdEps);

/// Spectral measure of an algebraic self-adjoint operator: eigenvalues
/// clustered into atoms, weights the orthogonal eigenprojections.
AtomicOVM algebraic_operator_measure(const HermitianMatrix &t);

} // namespace ovmkit
