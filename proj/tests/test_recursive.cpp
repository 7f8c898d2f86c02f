#include <doctest.h>

#include <cmath>

#include "ovmkit/gallery.hpp"
#include "ovmkit/recursive.hpp"
#include "support.hpp"

using namespace ovmkit;
using testing::Rng;

namespace {

RealPolynomial poly(std::vector<double> ascending) {
    return RealPolynomial{std::move(ascending)};
}

} // namespace

TEST_CASE("polynomial helpers") {
    const auto p = RealPolynomial::from_roots(std::vector<double>{1.0, 2.0});
    CHECK(p.coefficients == std::vector<double>{2.0, -3.0, 1.0});
    CHECK(p.is_monic());
    CHECK(p.evaluate(1.0) == 0.0);
    CHECK(p.evaluate(3.0) == 2.0);

    const auto q =
        RealPolynomial::from_recurrence(std::vector<double>{3.0, 2.0});
    // X^2 - 2X - 3
    CHECK(q.coefficients == std::vector<double>{-3.0, -2.0, 1.0});
}

TEST_CASE("poly_roots classification") {
    const auto two = poly_roots(poly({2.0, -3.0, 1.0}));
    CHECK(two.all_real);
    CHECK(two.all_simple);
    CHECK(two.real_roots[0] == doctest::Approx(1.0));
    CHECK(two.real_roots[1] == doctest::Approx(2.0));

    const auto imag = poly_roots(poly({1.0, 0.0, 1.0}));
    CHECK_FALSE(imag.all_real);
    CHECK(std::abs(imag.roots[0].imag()) == doctest::Approx(1.0));

    const auto dbl = poly_roots(poly({1.0, -2.0, 1.0}));
    CHECK_FALSE(dbl.all_simple);
    CHECK(dbl.roots[0].real() == doctest::Approx(1.0));
}

TEST_CASE("min_poly_lcm merges root sets") {
    const auto x1 = poly({-1.0, 1.0});
    const auto x2 = poly({-2.0, 1.0});
    const auto both = poly({2.0, -3.0, 1.0});

    CHECK(min_poly_lcm(std::vector<RealPolynomial>{x1, x2}).coefficients ==
          std::vector<double>{2.0, -3.0, 1.0});
    const auto lcm2 =
        min_poly_lcm(std::vector<RealPolynomial>{both, x2});
    CHECK(lcm2.degree() == 2);
    CHECK(lcm2.evaluate(1.0) == doctest::Approx(0.0));
    CHECK(lcm2.evaluate(2.0) == doctest::Approx(0.0));
    CHECK(min_poly_lcm(std::vector<RealPolynomial>{x1, x1}).coefficients ==
          std::vector<double>{-1.0, 1.0});

    CHECK_THROWS_AS(
        min_poly_lcm(std::vector<RealPolynomial>{poly({1.0, -2.0, 1.0})}),
        NonSimpleRootsError);
    CHECK_THROWS_AS(
        min_poly_lcm(std::vector<RealPolynomial>{poly({1.0, 0.0, 1.0})}),
        NonRealRootsError);
}

TEST_CASE("fit_recurrence finds the minimal order") {
    // T_n = 2^n diag(1, 3): order 1, polynomial X - 2
    std::vector<HermitianMatrix> geo;
    for (int n = 0; n <= 4; ++n) {
        geo.push_back(HermitianMatrix::diagonal(
            Eigen::Vector2d(std::pow(2.0, n), 3.0 * std::pow(2.0, n))));
    }
    const auto fit1 = fit_recurrence(OperatorSequence(geo), 2);
    CHECK(fit1.order == 1);
    CHECK(fit1.polynomial.coefficients[0] == doctest::Approx(-2.0));
    CHECK(fit1.residual <= 1e-12);

    Rng rng(83);
    const auto e = testing::random_measure(rng, 3, 2, 0.3);
    const auto fit2 = fit_recurrence(moments(e, 6), 3);
    CHECK(fit2.order == 2);
    const auto expected = RealPolynomial::from_roots(e.atoms());
    for (int i = 0; i <= 2; ++i) {
        CHECK(fit2.polynomial.coefficients[i] ==
              doctest::Approx(expected.coefficients[i]).epsilon(1e-9));
    }

    // a zero-weight atom is invisible to the minimal recurrence
    const AtomicOVM padded(
        {e.atoms()[0], e.atoms()[1], e.atoms()[1] + 1.0},
        {e.weights()[0], e.weights()[1], HermitianMatrix::zero(3)});
    CHECK(fit_recurrence(moments(padded, 8), 4).order == 2);
}

TEST_CASE("fit_recurrence error paths") {
    const auto fixture = bisgaard();
    std::vector<HermitianMatrix> prefix{fixture.sequence.term(0),
                                        fixture.sequence.term(1),
                                        fixture.sequence.term(2)};
    // precondition holds for r_max = 1 but nothing of order 1 fits
    CHECK_THROWS_AS(fit_recurrence(OperatorSequence(prefix), 1),
                    NoRecurrenceError);
    // precondition violated
    CHECK_THROWS_AS(fit_recurrence(OperatorSequence(prefix), 2),
                    InsufficientMomentsError);
}

TEST_CASE("recover_charge on closed forms") {
    // order 1: charge = T_0 delta_lambda
    Rng rng(89);
    const auto t0 = testing::random_psd(rng, 3);
    const AtomicOVM single({1.7}, {t0});
    const auto seq = moments(single, 4);
    const auto fit = fit_recurrence(seq, 2);
    REQUIRE(fit.order == 1);
    const auto charge = recover_charge(seq, fit);
    REQUIRE(charge.atom_count() == 1);
    CHECK(charge.atoms()[0] == doctest::Approx(1.7));
    CHECK((charge.weights()[0].matrix() - t0.matrix()).norm() < 1e-10);

    // order 2 equals the two-atom closed formula
    const auto e = testing::random_measure(rng, 2, 2, 0.5);
    const auto seq2 = moments(e, 6);
    const auto charge2 = recover_charge(seq2, fit_recurrence(seq2, 2));
    const double l1 = e.atoms()[0];
    const double l2 = e.atoms()[1];
    const Matrix s1 =
        (seq2.term(1).matrix() - l2 * seq2.term(0).matrix()) / (l1 - l2);
    const Matrix s2 =
        (seq2.term(1).matrix() - l1 * seq2.term(0).matrix()) / (l2 - l1);
    CHECK((charge2.weights()[0].matrix() - s1).norm() < 1e-9);
    CHECK((charge2.weights()[1].matrix() - s2).norm() < 1e-9);

    // 4 atoms in dimension 5, weights recovered to 1e-6
    const auto big = testing::random_measure(rng, 5, 4, 0.2);
    const auto seq3 = moments(big, 10);
    const auto charge3 = recover_charge(seq3, fit_recurrence(seq3, 4));
    REQUIRE(charge3.atom_count() == 4);
    for (int k = 0; k < 4; ++k) {
        CHECK((charge3.weights()[k].matrix() - big.weights()[k].matrix())
                  .norm() < 1e-6);
    }
}

TEST_CASE("recover_charge rejects bad fits") {
    Rng rng(97);
    const auto e = testing::random_measure(rng, 2, 2, 0.5);
    const auto seq = moments(e, 6);
    RecurrenceFit fit = fit_recurrence(seq, 2);

    RecurrenceFit nonreal = fit;
    nonreal.polynomial = RealPolynomial{{1.0, 0.0, 1.0}}; // X^2 + 1
    CHECK_THROWS_AS(recover_charge(seq, nonreal), NonRealRootsError);

    RecurrenceFit repeated = fit;
    repeated.polynomial = RealPolynomial{{1.0, -2.0, 1.0}}; // (X-1)^2
    CHECK_THROWS_AS(recover_charge(seq, repeated), NonSimpleRootsError);

    // a loose recurrence that does not reproduce the data
    RecurrenceFit wrong = fit;
    wrong.polynomial = RealPolynomial::from_roots(
        std::vector<double>{e.atoms()[0] + 0.3, e.atoms()[1] + 0.4});
    CHECK_THROWS_AS(recover_charge(seq, wrong), ReconstructionMismatchError);
}

TEST_CASE("solve_recursive end to end") {
    // projection-valued measure at atoms 0 and 1
    const HermitianMatrix p =
        HermitianMatrix::diagonal(Eigen::Vector2d(1.0, 0.0));
    const HermitianMatrix q =
        HermitianMatrix::diagonal(Eigen::Vector2d(0.0, 1.0));
    const AtomicOVM e({0.0, 1.0}, {p, q});
    const auto sol =
        solve_recursive(moments(e, 6), 3, SampleScheme::canonical(20, 1));
    CHECK(sol.fit.order == 2);
    CHECK(sol.is_moment_sequence.pass);
    REQUIRE(sol.charge.atom_count() == 2);
    CHECK((sol.charge.weights()[0].matrix() - p.matrix()).norm() < 1e-9);
    CHECK((sol.charge.weights()[1].matrix() - q.matrix()).norm() < 1e-9);

    // order-2 charge with one non-PSD weight fails both routes
    Matrix bad(2, 2);
    bad << 1, 2, 2, 1;
    const AtomicOVM charge({0.0, 1.0}, {HermitianMatrix::hermitize(bad),
                                        HermitianMatrix::identity(2)});
    const auto fail =
        solve_recursive(moments(charge, 6), 3, SampleScheme::canonical(20, 1));
    CHECK_FALSE(fail.is_moment_sequence.pass);
    CHECK_FALSE(fail.is_moment_sequence.parts[0].pass); // weights
    CHECK_FALSE(fail.is_moment_sequence.parts[1].pass); // sampled Hankels
    CHECK(fail.is_moment_sequence.diagnostics.empty()); // routes agree
}

TEST_CASE("solve verdict implies real simple roots") {
    Rng rng(101);
    for (int trial = 0; trial < 10; ++trial) {
        const auto e =
            testing::random_measure(rng, rng.integer(1, 4), rng.integer(1, 4));
        const auto sol = solve_recursive(moments(e, 2 * e.atom_count() + 2),
                                         e.atom_count() + 1,
                                         SampleScheme::canonical(10, trial));
        REQUIRE(sol.is_moment_sequence.pass);
        const auto rr = poly_roots(sol.fit.polynomial);
        CHECK(rr.all_real);
        CHECK(rr.all_simple);
    }
}

TEST_CASE("weight formulas agree with the sampled Hankel quadratic form") {
    Rng rng(103);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::Index d = rng.integer(2, 4);
        const int r = rng.integer(2, 4);
        const auto e = testing::random_measure(rng, d, r, 0.3);
        const auto seq = moments(e, 2 * r + 2);
        const auto sol =
            solve_recursive(seq, r + 1, SampleScheme::canonical(5, trial));
        REQUIRE(sol.fit.order == r);

        // <S_i x, x> must equal Lhat_i^t H_{r-1}(x) Lhat_i
        for (int i = 0; i < r; ++i) {
            RealPolynomial li{{1.0}};
            for (int j = 0; j < r; ++j) {
                if (j == i) {
                    continue;
                }
                const double scale = sol.roots[i] - sol.roots[j];
                std::vector<double> next(li.coefficients.size() + 1, 0.0);
                for (std::size_t k = 0; k < li.coefficients.size(); ++k) {
                    next[k + 1] += li.coefficients[k] / scale;
                    next[k] -= sol.roots[j] * li.coefficients[k] / scale;
                }
                li.coefficients = std::move(next);
            }
            for (const Vector &x :
                 sample_vectors(SampleScheme::canonical(), d)) {
                const auto h = scalar_hankel(localize(seq, x), r - 1);
                Eigen::VectorXd lhat(r);
                for (int k = 0; k < r; ++k) {
                    lhat(k) = li.coefficients[k];
                }
                const double via_hankel = lhat.dot(h.matrix * lhat);
                const double via_weight =
                    sol.charge.weights()[i].quadratic_form(x).real();
                CHECK(std::abs(via_hankel - via_weight) <=
                      1e-8 * std::max(1.0, std::abs(via_weight)));
            }
        }
    }
}

TEST_CASE("sampled Hankel positivity extends to larger orders") {
    Rng rng(107);
    const int r = 3;
    const auto e = testing::random_measure(rng, 3, r, 0.3);
    const auto seq = moments(e, 2 * r + 4);
    for (const Vector &x : sample_vectors(SampleScheme::canonical(), 3)) {
        const auto base = psd_check_real(
            scalar_hankel(localize(seq, x), r - 1).matrix);
        REQUIRE(base.is_psd);
        for (int m = r - 1; 2 * m <= seq.max_index(); ++m) {
            CHECK(psd_check_real(scalar_hankel(localize(seq, x), m).matrix)
                      .is_psd);
        }
    }
}

TEST_CASE("order-2 closed form matches the fixtures") {
    const HermitianMatrix id = HermitianMatrix::identity(2);
    const HermitianMatrix p =
        HermitianMatrix::diagonal(Eigen::Vector2d(1.0, 0.0));
    const auto pass =
        check_order2_closed_form(id, p, 0.0, 1.0, SampleScheme::canonical(10, 2));
    CHECK(pass.verdict.pass);
    REQUIRE(pass.measure.has_value());
    CHECK((pass.measure->weights()[0].matrix() -
           (Matrix::Identity(2, 2) - p.matrix()))
              .norm() < 1e-12);
    CHECK((pass.measure->weights()[1].matrix() - p.matrix()).norm() < 1e-12);

    const auto fail = check_order2_closed_form(
        id, id.scaled(3.0), 0.0, 1.0, SampleScheme::canonical(10, 2));
    CHECK_FALSE(fail.verdict.pass);
    CHECK_FALSE(fail.measure.has_value());
    CHECK(fail.verdict.diagnostics.empty()); // all four conditions fail or...
}

TEST_CASE("order-2 closed form agrees with the block shift example") {
    const auto fixture = block_shift_example(1.0, 1.0, 1.0, 2, 6);
    const auto result = check_order2_closed_form(
        fixture.sequence.term(0), fixture.sequence.term(1),
        fixture.atom_superset[0], fixture.atom_superset[1],
        SampleScheme::canonical(10, 3));
    CHECK(result.verdict.pass);
    CHECK(fixture.atom_superset[0] == doctest::Approx(0.0));
    CHECK(fixture.atom_superset[1] == doctest::Approx(2.0));
}

TEST_CASE("order-2 closed form equals the generic recovery") {
    Rng rng(109);
    for (int trial = 0; trial < 10; ++trial) {
        const auto e = testing::random_measure(rng, rng.integer(1, 4), 2, 0.3);
        const auto seq = moments(e, 6);
        const auto sol =
            solve_recursive(seq, 2, SampleScheme::canonical(10, trial));
        const auto closed = check_order2_closed_form(
            seq.term(0), seq.term(1), e.atoms()[0], e.atoms()[1],
            SampleScheme::canonical(10, trial));
        REQUIRE(closed.measure.has_value());
        REQUIRE(sol.charge.atom_count() == 2);
        for (int k = 0; k < 2; ++k) {
            CHECK(std::abs(sol.charge.atoms()[k] - closed.measure->atoms()[k]) <
                  1e-10);
            CHECK((sol.charge.weights()[k].matrix() -
                   closed.measure->weights()[k].matrix())
                      .norm() < 1e-10);
        }
    }
}

TEST_CASE("algebraic operators get their spectral measures") {
    const auto e = algebraic_operator_measure(
        HermitianMatrix::diagonal(Eigen::Vector3d(1.0, 1.0, 2.0)));
    REQUIRE(e.atom_count() == 2);
    CHECK(e.atoms()[0] == doctest::Approx(1.0));
    CHECK(e.atoms()[1] == doctest::Approx(2.0));
    CHECK(e.weights()[0].matrix().trace().real() == doctest::Approx(2.0));
    CHECK(e.weights()[1].matrix().trace().real() == doctest::Approx(1.0));

    const auto single = algebraic_operator_measure(HermitianMatrix::identity(4));
    CHECK(single.atom_count() == 1);
    CHECK((single.weights()[0].matrix() - Matrix::Identity(4, 4)).norm() <
          1e-12);

    Rng rng(113);
    const auto t = testing::random_hermitian(rng, 4);
    const auto spectral = algebraic_operator_measure(t);
    const auto mom = moments(spectral, 3);
    const Matrix cube = t.matrix() * t.matrix() * t.matrix();
    CHECK((mom.term(3).matrix() - cube).norm() <=
          1e-9 * std::max(1.0, cube.norm()));
}

TEST_CASE("round trip recovery on random measures") {
    Rng rng(127);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index d = rng.integer(1, 6);
        const int r = rng.integer(1, 5);
        const auto e = testing::random_measure(rng, d, r);
        const auto sol = solve_recursive(moments(e, 2 * r + 2), r + 1,
                                         SampleScheme::canonical(5, trial));
        CHECK(sol.fit.order == r);
        CHECK(sol.is_moment_sequence.pass);
        REQUIRE(sol.charge.atom_count() == r);
        for (int k = 0; k < r; ++k) {
            CHECK(std::abs(sol.charge.atoms()[k] - e.atoms()[k]) <=
                  1e-8 * std::max(1.0, std::abs(e.atoms()[k])));
            CHECK((sol.charge.weights()[k].matrix() -
                   e.weights()[k].matrix())
                      .norm() <= 1e-6);
        }
    }
}
