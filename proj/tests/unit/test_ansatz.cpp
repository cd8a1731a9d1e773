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
#include <numbers>

#include "hqa/ansatz/ansatz.hpp"

using namespace hqa;
using namespace hqa::ansatz;
using Catch::Matchers::WithinAbs;

namespace {

ParamVector random_params(std::size_t count, Rng &rng) {
    std::vector<double> p(count);
    for (auto &x : p) {
        x = uniform(rng, -std::numbers::pi, std::numbers::pi);
    }
    return ParamVector(std::move(p));
}

sim::StateVector random_real_state(std::size_t n, Rng &rng) {
    std::vector<double> a(std::size_t{1} << n);
    for (auto &x : a) {
        x = uniform(rng, -1.0, 1.0);
    }
    return sim::StateVector::normalized(std::span<const double>(a));
}

} // namespace

TEST_CASE("parameter count is layers times qubits", "[ansatz]") {
    CHECK(AnsatzSpec{5, 4, Topology::Chain}.param_count() == 20);
    CHECK(AnsatzSpec{12, 4, Topology::Ring}.param_count() == 48);
}

TEST_CASE("gate layout per layer", "[ansatz]") {
    const AnsatzSpec spec{3, 2, Topology::Chain};
    const auto gates = build_gates(spec, ParamVector(std::vector<double>{1, 2, 3, 4, 5, 6}));
    REQUIRE(gates.size() == 10);
    CHECK(gates[0].kind == sim::GateKind::RotY);
    CHECK(gates[2].angle == 3.0);
    CHECK(gates[3].kind == sim::GateKind::Entangler);
    CHECK(*gates[3].control == 0);
    CHECK(gates[4].target == 2);
    CHECK(gates[5].angle == 4.0);

    const auto ring = build_gates(AnsatzSpec{3, 1, Topology::Ring},
                                  ParamVector(std::vector<double>{0, 0, 0}));
    REQUIRE(ring.size() == 6);
    CHECK(*ring[5].control == 2);
    CHECK(ring[5].target == 0);
}

TEST_CASE("invalid ansatz shapes are rejected", "[ansatz]") {
    CHECK_THROWS(AnsatzSpec{2, 4, Topology::Ring}.validate());
    CHECK_THROWS(AnsatzSpec{0, 4, Topology::Chain}.validate());
    CHECK_THROWS(AnsatzSpec{3, 0, Topology::Chain}.validate());
    Rng rng(1);
    CHECK_THROWS(build_gates(AnsatzSpec{3, 2, Topology::Chain}, random_params(5, rng)));
}

TEST_CASE("single-qubit shift rule reproduces -2 sin 2 theta", "[ansatz]") {
    const AnsatzSpec spec{1, 1, Topology::Chain};
    const ScalarEval f = [&](const ParamVector &p) {
        return sim::expectation_z(apply_ansatz(sim::zero_state(1), spec, p), 0);
    };
    for (double theta : {-2.0, -0.3, 0.0, 0.7, 1.9}) {
        const ParamVector p(std::vector<double>{theta});
        CHECK_THAT(f(p), WithinAbs(std::cos(2 * theta), 1e-14));
        CHECK_THAT(shift_gradient(f, p, 0), WithinAbs(-2.0 * std::sin(2 * theta), 1e-12));
    }
}

TEST_CASE("shift Jacobian matches central finite differences", "[ansatz][property]") {
    Rng rng(31);
    for (std::size_t n : {2U, 3U, 4U}) {
        const AnsatzSpec spec{n, 2, Topology::Chain};
        const auto input = random_real_state(n, rng);
        const auto p = random_params(spec.param_count(), rng);
        const VectorEval f = [&](const ParamVector &q) {
            return sim::expectation_z_all(apply_ansatz(input, spec, q));
        };
        const Matrix jac = shift_jacobian(f, p);
        const double h = 1e-5;
        for (std::size_t k = 0; k < p.size(); ++k) {
            const auto up = f(p.shifted(k, h));
            const auto dn = f(p.shifted(k, -h));
            for (std::size_t q = 0; q < n; ++q) {
                CHECK_THAT(jac(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(k)),
                           WithinAbs((up[q] - dn[q]) / (2 * h), 1e-7));
            }
        }
    }
}

TEST_CASE("prefix-cached Jacobian equals the plain shift Jacobian", "[ansatz]") {
    Rng rng(44);
    const AnsatzSpec spec{4, 3, Topology::Ring};
    const auto input = random_real_state(4, rng);
    const auto p = random_params(spec.param_count(), rng);
    const VectorEval f = [&](const ParamVector &q) {
        return sim::expectation_z_all(apply_ansatz(input, spec, q));
    };
    const Matrix plain = shift_jacobian(f, p);
    const auto cached = z_expectations_with_jacobian(input, spec, p);
    CHECK((plain - cached.jacobian).cwiseAbs().maxCoeff() < 1e-13);
    const auto direct = f(p);
    for (std::size_t q = 0; q < 4; ++q) {
        CHECK_THAT(cached.expectations[q], WithinAbs(direct[q], 1e-14));
    }

    // Complex input takes the general path and must agree as well.
    const auto phased = sim::with_global_phase(input, 0.4);
    const auto c = z_expectations_with_jacobian(phased, spec, p);
    CHECK((plain - c.jacobian).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("sampled readout is unbiased", "[ansatz]") {
    Rng rng(9);
    const AnsatzSpec spec{2, 1, Topology::Chain};
    const auto input = sim::zero_state(2);
    const auto p = random_params(2, rng);
    const auto exact = z_expectations_with_jacobian(input, spec, p);
    double acc = 0.0;
    const int reps = 200;
    for (int r = 0; r < reps; ++r) {
        acc += z_expectations_with_jacobian(input, spec, p, Readout{1000, &rng}).expectations[0];
    }
    CHECK_THAT(acc / reps, WithinAbs(exact.expectations[0], 0.01));
}
