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

#include <benchmark/benchmark.h>

#include <random>

#include "ovmkit/atomic_ovm.hpp"
#include "ovmkit/pair.hpp"
#include "ovmkit/recursive.hpp"
#include "ovmkit/sequence.hpp"

namespace {

using namespace ovmkit;

AtomicOVM make_measure(Eigen::Index d, int r, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> gauss;
    std::vector<double> atoms;
    for (int k = 0; k < r; ++k) {
        atoms.push_back(-2.0 + 4.0 * k / std::max(1, r - 1) +
                        0.01 * gauss(gen));
    }
    std::vector<HermitianMatrix> weights;
    for (int k = 0; k < r; ++k) {
        Matrix g(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            for (Eigen::Index j = 0; j < d; ++j) {
                g(i, j) = Complex(gauss(gen), gauss(gen));
            }
        }
        weights.push_back(HermitianMatrix::hermitize(
            g * g.adjoint() / static_cast<double>(d) +
                0.05 * Matrix::Identity(d, d),
            1e-6));
    }
    return AtomicOVM(std::move(atoms), std::move(weights));
}

void BM_SolveRecursive(benchmark::State &state) {
    const Eigen::Index d = state.range(0);
    const int r = static_cast<int>(state.range(1));
    const auto e = make_measure(d, r, 7);
    const auto seq = moments(e, 2 * r + 2);
    const auto scheme = SampleScheme::canonical();
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_recursive(seq, r + 1, scheme));
    }
}
BENCHMARK(BM_SolveRecursive)->Args({4, 3})->Args({6, 5})->Args({12, 4});

void BM_HamburgerCheck(benchmark::State &state) {
    const Eigen::Index d = state.range(0);
    const int order = static_cast<int>(state.range(1));
    const auto e = make_measure(d, 3, 11);
    const auto seq = moments(e, 2 * order);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hamburger_check(seq, order));
    }
}
BENCHMARK(BM_HamburgerCheck)->Args({4, 4})->Args({8, 6})->Args({16, 4});

void BM_NaimarkDilate(benchmark::State &state) {
    const auto e = make_measure(state.range(0), static_cast<int>(state.range(1)),
                                13);
    for (auto _ : state) {
        benchmark::DoNotOptimize(naimark_dilate(e));
    }
}
BENCHMARK(BM_NaimarkDilate)->Args({4, 3})->Args({8, 5});

void BM_TwoAtomic(benchmark::State &state) {
    const Eigen::Index d = state.range(0);
    std::mt19937_64 gen(17);
    std::normal_distribution<double> gauss;
    Matrix g(d, d);
    Matrix h(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            g(i, j) = Complex(gauss(gen), gauss(gen));
            h(i, j) = Complex(gauss(gen), gauss(gen));
        }
    }
    const auto t0 = HermitianMatrix::hermitize(
        g * g.adjoint() / static_cast<double>(d) +
            0.1 * Matrix::Identity(d, d),
        1e-6);
    const auto t1 = HermitianMatrix::hermitize(0.5 * (h + h.adjoint()), 1e-6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(two_atomic(t0, t1));
    }
}
BENCHMARK(BM_TwoAtomic)->Arg(4)->Arg(16)->Arg(64);

} // namespace

BENCHMARK_MAIN();
