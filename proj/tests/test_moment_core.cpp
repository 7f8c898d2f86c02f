#include <doctest.h>

#include <cmath>

#include "ovmkit/atomic_ovm.hpp"
#include "ovmkit/gallery.hpp"
#include "ovmkit/sequence.hpp"
#include "support.hpp"

using namespace ovmkit;
using testing::Rng;

namespace {

OperatorSequence scalar_sequence(std::vector<double> values) {
    std::vector<HermitianMatrix> terms;
    for (double v : values) {
        terms.push_back(HermitianMatrix::diagonal(
            Eigen::Matrix<double, 1, 1>::Constant(v)));
    }
    return OperatorSequence(std::move(terms));
}

} // namespace

TEST_CASE("block_hankel of the bisgaard prefix matches the explicit matrix") {
    const auto seq = bisgaard().sequence;
    const auto bh = block_hankel(seq, 1);
    Eigen::MatrixXd expected(4, 4);
    expected << 4, 0, 0, 2, 0, 1, 2, 0, 0, 2, 1, 0, 2, 0, 0, 4;
    CHECK((bh.flattened.matrix() - expected.cast<Complex>()).norm() == 0.0);
}

TEST_CASE("block_hankel of a constant scalar sequence is the all-ones matrix") {
    const auto seq = scalar_sequence({1, 1, 1, 1, 1});
    const auto bh = block_hankel(seq, 2);
    CHECK((bh.flattened.matrix() - Matrix::Ones(3, 3)).norm() == 0.0);
}

TEST_CASE("block_hankel wants enough moments") {
    const auto seq = scalar_sequence({1, 1, 1});
    CHECK_THROWS_AS(block_hankel(seq, 2), InsufficientMomentsError);
}

TEST_CASE("hamburger_check on fixtures") {
    const auto rb = hamburger_check(bisgaard().sequence, 1);
    CHECK_FALSE(rb.is_psd);
    CHECK(rb.min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-12));

    // moments of I delta_2 in dimension 2
    std::vector<HermitianMatrix> terms;
    for (int n = 0; n <= 4; ++n) {
        terms.push_back(HermitianMatrix::identity(2).scaled(std::pow(2.0, n)));
    }
    CHECK(hamburger_check(OperatorSequence(terms), 2).is_psd);

    const auto zero = scalar_sequence({0, 0, 0, 0, 0});
    const auto rz = hamburger_check(zero, 2);
    CHECK(rz.is_psd);
    CHECK(rz.min_eigenvalue == 0.0);
}

TEST_CASE("hausdorff_check on scalar fixtures") {
    // moments of (delta_{-1} + delta_{1})/2: 1, 0, 1, 0, 1
    CHECK(hausdorff_check(scalar_sequence({1, 0, 1, 0, 1}), 1).is_psd);
    // delta_2 has support outside [-1, 1]
    CHECK_FALSE(hausdorff_check(scalar_sequence({1, 2, 4, 8, 16}), 1).is_psd);
    CHECK(hausdorff_check(scalar_sequence({0, 0, 0, 0, 0}), 1).is_psd);
    CHECK_THROWS_AS(hausdorff_check(scalar_sequence({1, 0, 1}), 1),
                    InsufficientMomentsError);
}

TEST_CASE("stieltjes_check on scalar fixtures") {
    CHECK(stieltjes_check(scalar_sequence({1, 2, 4, 8}), 1).is_psd);
    // alternating moments of delta_{-1}: shifted block is -1
    const auto r = stieltjes_check(scalar_sequence({1, -1}), 0);
    CHECK_FALSE(r.is_psd);
    CHECK(r.min_eigenvalue == doctest::Approx(-1.0));
    CHECK(stieltjes_check(scalar_sequence({0, 0}), 0).is_psd);
}

TEST_CASE("localize at canonical and polarized vectors") {
    const auto seq = bisgaard().sequence;
    Vector e1 = Vector::Zero(2);
    e1(0) = 1.0;
    const auto ls = localize(seq, e1);
    CHECK(ls.values[0] == 4.0);
    CHECK(ls.values[1] == 0.0);
    CHECK(ls.values[2] == 1.0);
    CHECK(ls.values[3] == 0.0);
    CHECK(ls.values[4] == std::ldexp(1.0, 24));

    Vector mix(2);
    mix << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const auto lm = localize(seq, mix);
    CHECK(lm.values[0] == doctest::Approx(2.5));
    CHECK(lm.values[1] == doctest::Approx(2.0));
    CHECK(lm.values[2] == doctest::Approx(2.5));
    CHECK(lm.values[3] == doctest::Approx(0.0));

    Vector bad(2);
    bad << 1.0, 1.0;
    CHECK_THROWS_AS(localize(seq, bad), NotUnitVectorError);
}

TEST_CASE("scalar_hankel layouts") {
    LocalizedSequence ones{Vector::Ones(1), {1, 1, 1}};
    CHECK((scalar_hankel(ones, 1).matrix - Eigen::MatrixXd::Ones(2, 2)).norm() ==
          0.0);

    const auto seq = bisgaard().sequence;
    Vector e1 = Vector::Zero(2);
    e1(0) = 1.0;
    const auto h = scalar_hankel(localize(seq, e1), 1);
    Eigen::MatrixXd expected(2, 2);
    expected << 4, 0, 0, 1;
    CHECK((h.matrix - expected).norm() == 0.0);

    LocalizedSequence alt{Vector::Ones(1), {1, 0, 1}};
    CHECK((scalar_hankel(alt, 1).matrix - Eigen::MatrixXd::Identity(2, 2))
              .norm() == 0.0);
}

TEST_CASE("local_moment_check passes on bisgaard and flags bad T_0") {
    const auto fixture = bisgaard();
    const auto pass =
        local_moment_check(fixture.sequence, SampleScheme::canonical(50, 3), 2);
    CHECK(pass.pass);

    std::vector<HermitianMatrix> terms{
        HermitianMatrix::diagonal(Eigen::Vector2d(1.0, -1.0))};
    const auto fail = local_moment_check(OperatorSequence(terms),
                                         SampleScheme::canonical(), 0);
    CHECK_FALSE(fail.pass);
    CHECK(fail.margins.at("worst_sample_index") == 1.0); // e_2

    const auto zero = scalar_sequence({0, 0, 0});
    CHECK(local_moment_check(zero, SampleScheme::canonical(), 1).pass);
}

TEST_CASE("support_radius on geometric, atomic and truncated-zero input") {
    std::vector<HermitianMatrix> geo;
    for (int n = 0; n <= 8; ++n) {
        geo.push_back(HermitianMatrix::identity(2).scaled(std::pow(3.0, n)));
    }
    CHECK(support_radius(OperatorSequence(geo)) == doctest::Approx(3.0));

    const AtomicOVM e({-3.0, 2.0},
                      {HermitianMatrix::identity(1).scaled(0.5),
                       HermitianMatrix::identity(1).scaled(0.5)});
    const double radius = support_radius(moments(e, 40));
    CHECK(radius > 0.95 * 3.0);
    CHECK(radius < 1.05 * 3.0);

    CHECK(support_radius(scalar_sequence({1, 0, 0, 0, 0})) == 0.0);
    CHECK_THROWS_AS(support_radius(scalar_sequence({1, 1, 1})),
                    InsufficientMomentsError);
}

TEST_CASE("carleman partial sums and growth classes") {
    std::vector<HermitianMatrix> quads;
    for (int n = 0; n <= 8; ++n) {
        const double v = n % 2 == 0 ? std::pow(4.0, n / 2) : 0.0;
        quads.push_back(HermitianMatrix::identity(1).scaled(v));
    }
    const auto diag = carleman_partial_sums(OperatorSequence(quads));
    REQUIRE(diag.partial_sums.size() == 4);
    for (std::size_t i = 0; i < diag.partial_sums.size(); ++i) {
        CHECK(diag.partial_sums[i] == doctest::Approx(0.5 * (i + 1)));
    }
    CHECK(diag.classification == CarlemanDiagnostic::Growth::Linear);
    CHECK_FALSE(diag.skipped_zero_terms); // only even indices are read

    // an even zero term is skipped with the flag set
    const auto gap =
        carleman_partial_sums(scalar_sequence({1, 0, 4, 0, 0, 0, 16}));
    CHECK(gap.skipped_zero_terms);
    REQUIRE(gap.partial_sums.size() == 2);
    CHECK(gap.partial_sums[0] == doctest::Approx(0.5));

    std::vector<HermitianMatrix> flat(9, HermitianMatrix::identity(1));
    const auto df = carleman_partial_sums(OperatorSequence(flat));
    CHECK(df.partial_sums.back() == doctest::Approx(4.0));
    CHECK(df.classification == CarlemanDiagnostic::Growth::Linear);

    // s_{2n} = ((2n)!)^2: indeterminate-type growth, slow partial sums.
    // Oracle: ((2n)!^2)^{-1/(2n)} = exp(-lgamma(2n+1)/n).
    std::vector<HermitianMatrix> fact;
    for (int k = 0; k <= 40; ++k) {
        double v = 0.0;
        if (k % 2 == 0) {
            v = k == 0 ? 1.0 : std::exp(2.0 * std::lgamma(k + 1.0));
        }
        fact.push_back(HermitianMatrix::identity(1).scaled(v));
    }
    const auto ds = carleman_partial_sums(OperatorSequence(fact));
    REQUIRE(ds.partial_sums.size() == 20);
    double expected_sum = 0.0;
    for (int n = 1; n <= 20; ++n) {
        expected_sum += std::exp(-std::lgamma(2.0 * n + 1.0) / n);
        if (n == 20) {
            CHECK(ds.partial_sums.back() ==
                  doctest::Approx(expected_sum).epsilon(1e-10));
        }
    }
    CHECK(ds.classification == CarlemanDiagnostic::Growth::Sublinear);
}

TEST_CASE("magnitude guard truncates tail analyses") {
    // T_8 is past the guard: carleman and support_radius stop at T_6
    std::vector<HermitianMatrix> terms;
    for (int n = 0; n <= 8; ++n) {
        double v = std::pow(2.0, n);
        if (n == 8) {
            v = 1e305;
        }
        terms.push_back(HermitianMatrix::identity(1).scaled(v));
    }
    const OperatorSequence seq(std::move(terms));
    CHECK(seq.overflow_guard_index() == 8);
    const auto diag = carleman_partial_sums(seq);
    CHECK(diag.truncated_by_overflow_guard);
    CHECK(diag.partial_sums.size() == 3); // n = 1, 2, 3 only
    CHECK(support_radius(seq) == doctest::Approx(2.0));
}

TEST_CASE("normalize rescales by the zeroth moment") {
    Rng rng(23);
    const auto a = testing::random_hermitian(rng, 3);
    std::vector<HermitianMatrix> terms{HermitianMatrix::identity(3).scaled(4.0),
                                       a};
    const auto normalized = normalize(OperatorSequence(terms));
    CHECK((normalized.term(0).matrix() - Matrix::Identity(3, 3)).norm() <
          1e-12);
    CHECK((normalized.term(1).matrix() - a.matrix() / 4.0).norm() < 1e-12);

    const auto fixture = bisgaard();
    const auto nb = normalize(fixture.sequence);
    Matrix expected(2, 2);
    expected << 0, 1, 1, 0;
    CHECK((nb.term(1).matrix() - expected).norm() < 1e-12);

    // idempotence
    const auto twice = normalize(nb);
    for (int n = 0; n <= nb.max_index(); ++n) {
        CHECK((twice.term(n).matrix() - nb.term(n).matrix()).norm() <=
              1e-10 * std::max(1.0, nb.term(n).frobenius_norm()));
    }

    std::vector<HermitianMatrix> singular{
        HermitianMatrix::diagonal(Eigen::Vector2d(1.0, 0.0)),
        HermitianMatrix::identity(2)};
    CHECK_THROWS_AS(normalize(OperatorSequence(singular)),
                    SingularOperatorError);
}

TEST_CASE("block form agrees with the stacked quadratic form") {
    Rng rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index d = rng.integer(1, 4);
        const int r = rng.integer(1, 3);
        const auto e = testing::random_measure(rng, d, r);
        const int order = rng.integer(0, 2);
        const auto seq = moments(e, 2 * order);
        const auto bh = block_hankel(seq, order);

        Vector stacked(d * (order + 1));
        std::vector<Vector> xs;
        for (int i = 0; i <= order; ++i) {
            Vector xi(d);
            for (Eigen::Index k = 0; k < d; ++k) {
                xi(k) = Complex(rng.normal(), rng.normal());
            }
            xs.push_back(xi);
            stacked.segment(i * d, d) = xi;
        }
        Complex direct(0, 0);
        for (int i = 0; i <= order; ++i) {
            for (int j = 0; j <= order; ++j) {
                direct += xs[j].dot(seq.term(i + j).matrix() * xs[i]);
            }
        }
        const Complex via_block = bh.flattened.quadratic_form(stacked);
        CHECK(std::abs(direct - via_block) <=
              1e-10 * std::max(1.0, std::abs(via_block)));
    }
}

TEST_CASE("hamburger positivity implies sampled local positivity") {
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::Index d = rng.integer(1, 4);
        const auto e = testing::random_measure(rng, d, rng.integer(1, 3));
        const int order = 2;
        const auto seq = moments(e, 2 * order);
        REQUIRE(hamburger_check(seq, order).is_psd);
        CHECK(local_moment_check(seq, SampleScheme::canonical(25, trial), order)
                  .pass);
        CHECK(local_moment_check(seq, SampleScheme::random(50, trial), order)
                  .pass);
    }
}

TEST_CASE("interval-supported measures pass the matching interval tests") {
    Rng rng(37);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::Index d = rng.integer(1, 3);
        const int r = rng.integer(1, 3);

        std::vector<double> inside;
        for (int k = 0; k < r; ++k) {
            inside.push_back(rng.uniform(-1.0, 1.0));
        }
        std::vector<HermitianMatrix> weights;
        for (int k = 0; k < r; ++k) {
            weights.push_back(testing::random_psd(rng, d));
        }
        const AtomicOVM hausdorff_e(inside, weights);
        const auto seq = moments(hausdorff_e, 8);
        for (int order = 0; 2 * order + 2 <= seq.max_index(); ++order) {
            CHECK(hausdorff_check(seq, order).is_psd);
        }

        std::vector<double> nonneg;
        for (int k = 0; k < r; ++k) {
            nonneg.push_back(rng.uniform(0.0, 2.0));
        }
        const AtomicOVM stieltjes_e(nonneg, weights);
        const auto seq2 = moments(stieltjes_e, 8);
        for (int order = 0; 2 * order + 1 <= seq2.max_index(); ++order) {
            CHECK(stieltjes_check(seq2, order).is_psd);
        }
    }
}

TEST_CASE("support radius brackets the largest atom") {
    Rng rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::Index d = rng.integer(1, 3);
        const int r = rng.integer(1, 4);
        const auto atoms = testing::random_atoms(rng, r, 0.5, 3.0);
        std::vector<HermitianMatrix> weights;
        for (int k = 0; k < r; ++k) {
            weights.push_back(testing::random_psd_normalized(rng, d, 0.5, 2.0));
        }
        const AtomicOVM e(atoms, weights);
        double max_abs = 0.0;
        for (double a : support(e)) {
            max_abs = std::max(max_abs, std::abs(a));
        }
        const double radius = support_radius(moments(e, 40));
        CHECK(radius <= 1.05 * max_abs);
        CHECK(radius >= 0.95 * max_abs);
    }
}
