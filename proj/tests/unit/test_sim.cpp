// Copyright 2026 The HQA Lab Authors
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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "hqa/common/error.hpp"
#include "hqa/sim/state_vector.hpp"

using namespace hqa;
using namespace hqa::sim;
using Catch::Matchers::WithinAbs;

namespace {

StateVector random_state(std::size_t n, Rng &rng) {
    std::normal_distribution<double> g;
    std::vector<Amplitude> a(std::size_t{1} << n);
    for (auto &x : a) {
        x = {g(rng), g(rng)};
    }
    return StateVector::normalized(std::move(a));
}

// Dense 2^n x 2^n matrix of a single-qubit gate on `q`, built by Kronecker products.
std::vector<std::vector<Amplitude>> embed(const Amplitude m[2][2], std::size_t q,
                                          std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    std::vector<std::vector<Amplitude>> out(dim, std::vector<Amplitude>(dim));
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            Amplitude v = 1.0;
            for (std::size_t k = 0; k < n; ++k) {
                const std::size_t br = (r >> (n - 1 - k)) & 1U;
                const std::size_t bc = (c >> (n - 1 - k)) & 1U;
                v *= k == q ? m[br][bc] : Amplitude(br == bc ? 1.0 : 0.0);
            }
            out[r][c] = v;
        }
    }
    return out;
}

} // namespace

TEST_CASE("RotY matches the matrix exponential of -i Y theta", "[sim]") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const double theta = uniform(rng, -4.0, 4.0);
        // exp(-i Y t) = cos t I - i sin t Y, and -i Y = [[0, -1], [1, 0]].
        const Amplitude m[2][2] = {{std::cos(theta), -std::sin(theta)},
                                   {std::sin(theta), std::cos(theta)}};
        const std::size_t n = 3;
        const std::size_t q = static_cast<std::size_t>(trial % 3);
        const auto psi = random_state(n, rng);
        const auto out = apply_roty(psi, q, theta);
        const auto u = embed(m, q, n);
        for (std::size_t r = 0; r < psi.dimension(); ++r) {
            Amplitude expect = 0.0;
            for (std::size_t c = 0; c < psi.dimension(); ++c) {
                expect += u[r][c] * psi[c];
            }
            CHECK(std::abs(out[r] - expect) < 1e-12);
        }
    }
}

TEST_CASE("RotY(pi/2) on |0> gives |1>", "[sim]") {
    const auto out = apply_roty(zero_state(1), 0, std::numbers::pi / 2);
    CHECK(std::abs(out[0]) < 1e-12);
    CHECK_THAT(std::abs(out[1]), WithinAbs(1.0, 1e-12));
}

TEST_CASE("qubit 0 is the most significant bit", "[sim]") {
    // X-like rotation on qubit 0 of |00> lands on index 2 = |10>.
    const auto out = apply_roty(zero_state(2), 0, std::numbers::pi / 2);
    CHECK_THAT(std::abs(out[2]), WithinAbs(1.0, 1e-12));
    CHECK_THAT(expectation_z(out, 0), WithinAbs(-1.0, 1e-12));
    CHECK_THAT(expectation_z(out, 1), WithinAbs(1.0, 1e-12));
}

TEST_CASE("CNOT permutes basis states", "[sim]") {
    CHECK_THAT(std::abs(apply_entangler(basis_state(2, 2), 0, 1)[3]), WithinAbs(1.0, 1e-15));
    CHECK_THAT(std::abs(apply_entangler(basis_state(2, 3), 0, 1)[2]), WithinAbs(1.0, 1e-15));
    CHECK_THAT(std::abs(apply_entangler(basis_state(2, 1), 0, 1)[1]), WithinAbs(1.0, 1e-15));
    // Control below the target.
    CHECK_THAT(std::abs(apply_entangler(basis_state(3, 1), 2, 0)[5]), WithinAbs(1.0, 1e-15));
}

TEST_CASE("gates preserve the norm", "[sim][property]") {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 5);
        auto psi = random_state(n, rng);
        std::vector<GateOp> ops;
        for (int k = 0; k < 20; ++k) {
            const std::size_t q = static_cast<std::size_t>(rng() % n);
            if (n > 1 && k % 3 == 0) {
                ops.push_back(GateOp::cnot(q, (q + 1) % n));
            } else {
                ops.push_back(GateOp::roty(q, uniform(rng, -5.0, 5.0)));
            }
        }
        const auto out = apply_gates(psi, ops);
        CHECK_THAT(out.norm_squared(), WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("real and complex kernels agree", "[sim]") {
    Rng rng(8);
    const std::size_t n = 4;
    std::vector<double> re(16);
    for (auto &x : re) {
        x = uniform(rng, -1.0, 1.0);
    }
    const auto psi = StateVector::normalized(std::span<const double>(re));
    std::vector<Amplitude> c(psi.amplitudes().begin(), psi.amplitudes().end());
    std::vector<double> r(16);
    for (std::size_t i = 0; i < 16; ++i) {
        r[i] = c[i].real();
    }
    for (std::size_t q = 0; q < n; ++q) {
        kernels::roty(std::span<Amplitude>(c), n, q, 0.3 + static_cast<double>(q));
        kernels::roty(std::span<double>(r), n, q, 0.3 + static_cast<double>(q));
        kernels::cnot(std::span<Amplitude>(c), n, q, (q + 2) % n);
        kernels::cnot(std::span<double>(r), n, q, (q + 2) % n);
    }
    for (std::size_t i = 0; i < 16; ++i) {
        CHECK(c[i].imag() == 0.0);
        CHECK_THAT(c[i].real(), WithinAbs(r[i], 1e-15));
    }
}

TEST_CASE("expectations of every qubit agree with the single-qubit readout", "[sim]") {
    Rng rng(5);
    const auto psi = random_state(5, rng);
    const auto all = expectation_z_all(psi);
    for (std::size_t q = 0; q < 5; ++q) {
        CHECK_THAT(all[q], WithinAbs(expectation_z(psi, q), 1e-14));
        CHECK(std::abs(all[q]) <= 1.0);
    }
}

TEST_CASE("fidelity is symmetric, bounded, and phase invariant", "[sim][property]") {
    Rng rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_state(3, rng);
        const auto b = random_state(3, rng);
        const double f = fidelity(a, b);
        CHECK(f >= 0.0);
        CHECK(f <= 1.0 + 1e-12);
        CHECK_THAT(f, WithinAbs(fidelity(b, a), 1e-14));
        CHECK_THAT(fidelity(a, a), WithinAbs(1.0, 1e-12));
        CHECK_THAT(fidelity(with_global_phase(a, uniform(rng, 0.0, 6.0)), b),
                   WithinAbs(f, 1e-12));
    }
}

TEST_CASE("orthogonal basis states have zero fidelity", "[sim]") {
    CHECK(fidelity(basis_state(3, 1), basis_state(3, 6)) == 0.0);
}

TEST_CASE("fidelity rejects mismatched dimensions", "[sim]") {
    CHECK_THROWS_AS(fidelity(zero_state(2), zero_state(3)), std::invalid_argument);
}

TEST_CASE("unnormalized amplitudes are rejected", "[sim]") {
    CHECK_THROWS_AS(StateVector::from_amplitudes({1.0, 1.0}), ConsistencyError);
    CHECK_THROWS(StateVector::from_amplitudes({1.0, 0.0, 0.0}));
    CHECK_NOTHROW(StateVector::from_amplitudes({std::sqrt(0.5), std::sqrt(0.5)}));
}

TEST_CASE("appending ancillas shifts the basis index left", "[sim]") {
    const auto psi = basis_state(2, 3);
    const auto ext = tensor_with_zero_ancillas(psi, 2);
    CHECK(ext.num_qubits() == 4);
    CHECK_THAT(std::abs(ext[12]), WithinAbs(1.0, 1e-15));
    CHECK_THAT(expectation_z(ext, 3), WithinAbs(1.0, 1e-15));
}

TEST_CASE("sampled Z means follow binomial statistics", "[sim][property]") {
    Rng rng(17);
    const double p_expect = 0.3;
    const std::size_t shots = 400;
    const int reps = 2000;
    double sum = 0.0;
    double sum2 = 0.0;
    for (int r = 0; r < reps; ++r) {
        const double m = sample_pm1_mean(p_expect, shots, rng);
        sum += m;
        sum2 += m * m;
    }
    const double mean = sum / reps;
    const double var = sum2 / reps - mean * mean;
    // Var of a +-1 mean is (1 - <Z>^2) / M.
    const double expect_var = (1.0 - p_expect * p_expect) / static_cast<double>(shots);
    CHECK_THAT(mean, WithinAbs(p_expect, 5.0 * std::sqrt(expect_var / reps)));
    CHECK_THAT(var / expect_var, WithinAbs(1.0, 0.1));
    CHECK_THROWS(sample_pm1_mean(0.0, 0, rng));
}

TEST_CASE("sample_z of a basis state is deterministic", "[sim]") {
    Rng rng(2);
    CHECK(sample_z(basis_state(2, 1), 1, 50, rng) == -1.0);
    CHECK(sample_z(basis_state(2, 1), 0, 50, rng) == 1.0);
}
