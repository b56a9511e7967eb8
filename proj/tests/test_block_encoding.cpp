// Copyright 2026 The qblock authors
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

#include "qblock/block_encoding.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace qblock;
using namespace qblock::testing;

TEST_CASE("trivial encodings expose the unitary itself") {
    const BlockEncoding be_i = trivial(CMatrix::identity(2));
    REQUIRE(max_abs_diff(encoded_block(be_i), CMatrix::identity(2)) == 0.0);
    REQUIRE(be_i.alpha() == 1.0);
    REQUIRE(be_i.epsilon() == 0.0);
    REQUIRE(be_i.ancilla_qubits() == 0);

    const BlockEncoding be_x = trivial(pauli_x());
    REQUIRE(max_abs_diff(encoded_block(be_x), pauli_x()) == 0.0);

    Rng rng(41);
    const CMatrix u = random_unitary(rng, 4);
    REQUIRE(verify(trivial(u), u) <= 1e-12);

    REQUIRE_THROWS_AS(trivial(0.5 * CMatrix::identity(2)), std::invalid_argument);
}

TEST_CASE("encoded_block extracts the dilation block") {
    const CMatrix half = 0.5 * CMatrix::identity(2);
    const BlockEncoding be(1, 1, 1.0, 0.0, dilate_to_unitary(half));
    REQUIRE(max_abs_diff(encoded_block(be), half) < 1e-12);
}

TEST_CASE("verify measures the spectral-norm defect") {
    REQUIRE(verify(trivial(CMatrix::identity(2)), CMatrix::identity(2)) == 0.0);

    // ||sigma_x - sigma_z|| computed by the independent power-iteration
    // oracle: sqrt(2).
    const double defect = verify(trivial(pauli_x()), pauli_z());
    REQUIRE(std::abs(defect - power_iteration_norm(pauli_x() - pauli_z())) < 1e-10);
    REQUIRE(std::abs(defect - std::sqrt(2.0)) < 1e-12);

    REQUIRE_THROWS_AS(verify(trivial(pauli_x()), CMatrix::identity(4)),
                      std::invalid_argument);
}

TEST_CASE("verify scales linearly with the target") {
    Rng rng(42);
    const CMatrix a = random_contraction(rng, 2, 0.8);
    const CMatrix perturbed = a + random_contraction(rng, 2, 0.01);
    const BlockEncoding be = dilation_encoding(perturbed, 1.0, 0.02);
    const double base = verify(be, a);
    const double scaled = verify(rescale(be, 2.0), 2.0 * a);
    REQUIRE(std::abs(scaled - 2.0 * base) < 1e-12);
}

TEST_CASE("rescale adjusts the contract") {
    const BlockEncoding be2 = rescale(trivial(CMatrix::identity(2)), 2.0);
    REQUIRE(be2.alpha() == 2.0);
    REQUIRE(verify(be2, 2.0 * CMatrix::identity(2)) <= 1e-12);

    const BlockEncoding twice = rescale(rescale(trivial(pauli_x()), 2.0), 2.0);
    const BlockEncoding once = rescale(trivial(pauli_x()), 4.0);
    REQUIRE(twice.alpha() == once.alpha());
    REQUIRE(max_abs_diff(twice.unitary(), once.unitary()) == 0.0);

    Rng rng(43);
    const CMatrix a = random_contraction(rng, 2, 0.7);
    const CMatrix perturbed = a + random_contraction(rng, 2, 0.005);
    const BlockEncoding be = dilation_encoding(perturbed, 1.0, 0.01);
    REQUIRE(std::abs(verify(rescale(be, 3.0), 3.0 * a) - 3.0 * verify(be, a)) < 1e-12);

    REQUIRE_THROWS_AS(rescale(be, 0.0), std::invalid_argument);
}

TEST_CASE("embed leaves the contract untouched") {
    const BlockEncoding be = embed(trivial(pauli_x()), 1);
    REQUIRE(be.ancilla_qubits() == 1);
    REQUIRE(verify(be, pauli_x()) == 0.0);

    const BlockEncoding same = embed(trivial(pauli_x()), 0);
    REQUIRE(same.ancilla_qubits() == 0);

    Rng rng(44);
    const CMatrix a = random_contraction(rng, 4, 0.9);
    const BlockEncoding base = dilation_encoding(a, 1.0);
    REQUIRE(std::abs(verify(embed(base, 2), a) - verify(base, a)) < 1e-12);

    REQUIRE_THROWS_AS(embed(base, 20), std::invalid_argument);
}

TEST_CASE("embed and rescale commute as contracts") {
    Rng rng(45);
    const CMatrix a = random_contraction(rng, 2, 0.6);
    const BlockEncoding base = dilation_encoding(a, 1.0);
    const BlockEncoding er = rescale(embed(base, 2), 3.0);
    const BlockEncoding re = embed(rescale(base, 3.0), 2);
    REQUIRE(er.alpha() == re.alpha());
    REQUIRE(er.epsilon() == re.epsilon());
    REQUIRE(er.ancilla_qubits() == re.ancilla_qubits());
    REQUIRE(max_abs_diff(er.unitary(), re.unitary()) == 0.0);
}

TEST_CASE("constructor rejects bad contracts") {
    REQUIRE_THROWS_AS(BlockEncoding(1, 0, -1.0, 0.0, CMatrix::identity(2)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(BlockEncoding(1, 0, 1.0, -0.1, CMatrix::identity(2)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(BlockEncoding(1, 0, 1.0, 0.0, CMatrix::identity(4)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(BlockEncoding(1, 0, 1.0, 0.0, 0.9 * CMatrix::identity(2)),
                      std::invalid_argument);
}
