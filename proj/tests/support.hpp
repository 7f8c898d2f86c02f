// Shared deterministic generators for the test suites.
#pragma once

#include <random>
#include <vector>

#include "ovmkit/atomic_ovm.hpp"
#include "ovmkit/hermitian.hpp"

namespace ovmkit::testing {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }
    double normal() {
        return std::normal_distribution<double>(0.0, 1.0)(gen_);
    }
    int integer(int lo, int hi) { // inclusive
        return std::uniform_int_distribution<int>(lo, hi)(gen_);
    }

  private:
    std::mt19937_64 gen_;
};

inline Matrix random_matrix(Rng &rng, Eigen::Index d) {
    Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            m(i, j) = Complex(rng.normal(), rng.normal());
        }
    }
    return m;
}

inline HermitianMatrix random_hermitian(Rng &rng, Eigen::Index d,
                                        double scale = 1.0) {
    const Matrix g = random_matrix(rng, d);
    return HermitianMatrix::hermitize(scale * 0.5 * (g + g.adjoint()), 1e-6);
}

/// Full-rank PSD with operator norm O(1).
inline HermitianMatrix random_psd(Rng &rng, Eigen::Index d,
                                  double ridge = 0.05) {
    const Matrix g = random_matrix(rng, d);
    Matrix s = g * g.adjoint() / static_cast<double>(d) +
               ridge * Matrix::Identity(d, d);
    return HermitianMatrix::hermitize(s, 1e-6);
}

/// PSD with operator norm drawn uniformly from [lo, hi].
inline HermitianMatrix random_psd_normalized(Rng &rng, Eigen::Index d,
                                             double lo, double hi) {
    const HermitianMatrix s = random_psd(rng, d);
    const double target = rng.uniform(lo, hi);
    return s.scaled(target / s.operator_norm());
}

inline Matrix random_unitary(Rng &rng, Eigen::Index d) {
    const Matrix g = random_matrix(rng, d);
    Eigen::HouseholderQR<Matrix> qr(g);
    return qr.householderQ() * Matrix::Identity(d, d);
}

inline Vector random_unit_vector(Rng &rng, Eigen::Index d) {
    Vector v(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        v(i) = Complex(rng.normal(), rng.normal());
    }
    return v / v.norm();
}

inline std::vector<double> random_atoms(Rng &rng, int r, double gap,
                                        double max_abs) {
    while (true) {
        std::vector<double> atoms;
        for (int i = 0; i < r; ++i) {
            atoms.push_back(rng.uniform(-max_abs, max_abs));
        }
        std::sort(atoms.begin(), atoms.end());
        bool ok = true;
        for (int i = 0; i + 1 < r; ++i) {
            ok = ok && atoms[i + 1] - atoms[i] >= gap;
        }
        if (ok) {
            return atoms;
        }
    }
}

inline AtomicOVM random_measure(Rng &rng, Eigen::Index d, int r,
                                double gap = 0.1, double max_abs = 3.0) {
    std::vector<double> atoms = random_atoms(rng, r, gap, max_abs);
    std::vector<HermitianMatrix> weights;
    for (int i = 0; i < r; ++i) {
        weights.push_back(random_psd(rng, d));
    }
    return AtomicOVM(std::move(atoms), std::move(weights));
}

/// Semi-spectral: projection-valued (needs r <= d) or smeared.
inline AtomicOVM random_semispectral(Rng &rng, Eigen::Index d, int r,
                                     bool projection_valued) {
    std::vector<double> atoms = random_atoms(rng, r, 0.2, 3.0);
    std::vector<HermitianMatrix> weights;
    if (projection_valued) {
        const Matrix u = random_unitary(rng, d);
        std::vector<int> sizes(r, 1);
        for (Eigen::Index extra = d - r; extra > 0; --extra) {
            sizes[rng.integer(0, r - 1)] += 1;
        }
        Eigen::Index col = 0;
        for (int k = 0; k < r; ++k) {
            Matrix p = Matrix::Zero(d, d);
            for (int c = 0; c < sizes[k]; ++c, ++col) {
                p += u.col(col) * u.col(col).adjoint();
            }
            weights.push_back(HermitianMatrix::hermitize(p, 1e-10));
        }
    } else {
        std::vector<HermitianMatrix> raw;
        HermitianMatrix mass = HermitianMatrix::zero(d);
        for (int k = 0; k < r; ++k) {
            raw.push_back(random_psd(rng, d));
            mass = mass + raw.back();
        }
        const HermitianMatrix whiten = inv_sqrt_psd(mass);
        for (int k = 0; k < r; ++k) {
            Matrix w = whiten.matrix() * raw[k].matrix() * whiten.matrix();
            weights.push_back(HermitianMatrix::hermitize(w, 1e-8));
        }
    }
    return AtomicOVM(std::move(atoms), std::move(weights));
}

} // namespace ovmkit::testing
