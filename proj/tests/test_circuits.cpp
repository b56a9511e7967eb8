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

#include "qblock/circuits.hpp"
#include "test_util.hpp"

using namespace qblock;
using namespace qblock::testing;

TEST_CASE("projector basics") {
    const CMatrix p0 = projector(0, 1);
    REQUIRE(max_abs_diff(p0, CMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}})) == 0.0);

    CMatrix sum(4, 4);
    for (std::size_t j = 0; j < 4; ++j) {
        sum = sum + projector(j, 2);
    }
    REQUIRE(max_abs_diff(sum, CMatrix::identity(4)) == 0.0);

    Rng rng(31);
    const std::size_t j = rng.integer(8);
    const CMatrix p = projector(j, 3);
    REQUIRE(max_abs_diff(mul(p, p), p) == 0.0);

    REQUIRE_THROWS_AS(projector(4, 2), std::invalid_argument);
}

TEST_CASE("swap_pair moves basis states") {
    // Qubit 1 is the most significant: |01> is index 1, |10> is index 2.
    const CMatrix s = swap_pair(1, 2, 2);
    REQUIRE(s(2, 1) == cplx{1.0, 0.0});
    REQUIRE(s(1, 2) == cplx{1.0, 0.0});
    REQUIRE(s(0, 0) == cplx{1.0, 0.0});
    REQUIRE(s(3, 3) == cplx{1.0, 0.0});

    REQUIRE(max_abs_diff(swap_pair(2, 2, 3), CMatrix::identity(8)) == 0.0);

    Rng rng(32);
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t i = 1 + rng.integer(3);
        const std::size_t j = 1 + rng.integer(3);
        const CMatrix sp = swap_pair(i, j, 3);
        REQUIRE(max_abs_diff(mul(sp, sp), CMatrix::identity(8)) == 0.0);
        REQUIRE(is_unitary(sp, 1e-12));
    }
}

TEST_CASE("swap_block small cases") {
    REQUIRE(max_abs_diff(swap_block(1, 1, 2), swap_pair(1, 2, 2)) == 0.0);

    // a = b = 1 register identity, entrywise: S (|0> kron x) = x kron |0>.
    const CMatrix s11 = swap_block(1, 1, 2);
    for (std::size_t x = 0; x < 2; ++x) {
        // |0,x> has index x; |x,0> has index 2x.
        REQUIRE(s11(2 * x, x) == cplx{1.0, 0.0});
    }

    // a=2, b=1 against the brute-force index permutation (u, v) -> (v, u).
    const CMatrix s21 = swap_block(2, 1, 3);
    for (std::size_t u = 0; u < 4; ++u) {
        for (std::size_t v = 0; v < 2; ++v) {
            const std::size_t in = u * 2 + v;
            const std::size_t out = v * 4 + u;
            REQUIRE(s21(out, in) == cplx{1.0, 0.0});
        }
    }
}

TEST_CASE("swap_block register identity on random states") {
    Rng rng(33);
    for (std::size_t a = 1; a <= 3; ++a) {
        for (std::size_t b = 1; b <= 3; ++b) {
            const CMatrix s = swap_block(a, b, a + b);
            REQUIRE(is_unitary(s, 1e-12));
            const CVector x = random_state(rng, pow2(b));
            // |0^a> kron x occupies the first 2^b entries; x kron |0^a> is
            // strided by 2^a.
            for (std::size_t i = 0; i < pow2(b); ++i) {
                cplx moved{0.0, 0.0};
                for (std::size_t j = 0; j < pow2(b); ++j) {
                    moved += s(i * pow2(a), j) * x[j];
                }
                REQUIRE(std::abs(moved - x[i]) < 1e-12);
            }
            // Nothing leaks outside the x kron |0^a> support.
            for (std::size_t row = 0; row < pow2(a + b); ++row) {
                if (row % pow2(a) == 0) {
                    continue;
                }
                cplx leak{0.0, 0.0};
                for (std::size_t j = 0; j < pow2(b); ++j) {
                    leak += s(row, j) * x[j];
                }
                REQUIRE(std::abs(leak) < 1e-12);
            }
        }
    }
}

TEST_CASE("rotation gates follow the +i exponent convention") {
    REQUIRE(max_abs_diff(rotation_y(0.0), CMatrix::identity(2)) == 0.0);

    const double phi = std::numbers::pi / 3.0;
    REQUIRE(std::abs(rotation_y(phi)(0, 0) - std::cos(phi / 2.0)) < 1e-15);

    const double phz = std::numbers::pi / 2.0;
    REQUIRE(std::abs(rotation_z(phz)(0, 0) - std::polar(1.0, phz / 2.0)) < 1e-15);

    Rng rng(34);
    for (int trial = 0; trial < 5; ++trial) {
        const double ang = 6.0 * rng.uniform() - 3.0;
        REQUIRE(is_unitary(rotation_y(ang), 1e-12));
        REQUIRE(is_unitary(rotation_z(ang), 1e-12));
    }
}

TEST_CASE("phase ladder matches the explicit diagonal") {
    const CMatrix r1 = phase_R_gates(1);
    REQUIRE(std::abs(r1(0, 0) - 1.0) < 1e-15);
    REQUIRE(std::abs(r1(1, 1) + 1.0) < 1e-15);

    const CMatrix r2 = phase_R_gates(2);
    REQUIRE(std::abs(r2(1, 1) - cplx{0.0, 1.0}) < 1e-14);
    REQUIRE(std::abs(r2(2, 2) + 1.0) < 1e-14);
    REQUIRE(std::abs(r2(3, 3) - cplx{0.0, -1.0}) < 1e-14);

    for (std::size_t m : {1, 2, 3}) {
        const CMatrix r = phase_R_gates(m);
        REQUIRE(is_unitary(r, 1e-10));
        for (std::size_t k = 0; k < pow2(m); ++k) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) /
                                 static_cast<double>(pow2(m));
            REQUIRE(std::abs(r(k, k) - std::polar(1.0, theta)) < 1e-12);
            for (std::size_t l = 0; l < pow2(m); ++l) {
                if (l != k) {
                    REQUIRE(std::abs(r(k, l)) == 0.0);
                }
            }
        }
    }
}

TEST_CASE("controlled gates") {
    const RegisterLayout layout({{"selector", 1}, {"target", 1}});
    const CMatrix cnot = controlled("1", pauli_x(), layout);
    const CMatrix expected = CMatrix::from_rows({{1.0, 0.0, 0.0, 0.0},
                                                 {0.0, 1.0, 0.0, 0.0},
                                                 {0.0, 0.0, 0.0, 1.0},
                                                 {0.0, 0.0, 1.0, 0.0}});
    REQUIRE(max_abs_diff(cnot, expected) == 0.0);

    // Anti-control: |00> -> |01>.
    const CMatrix anti = controlled("0", pauli_x(), layout);
    REQUIRE(anti(1, 0) == cplx{1.0, 0.0});
    REQUIRE(anti(0, 1) == cplx{1.0, 0.0});
    REQUIRE(anti(2, 2) == cplx{1.0, 0.0});

    REQUIRE_THROWS_AS(controlled("11", pauli_x(), layout), std::invalid_argument);
}

TEST_CASE("multiplexer assembled from controlled factors") {
    Rng rng(35);
    const RegisterLayout layout({{"selector", 2}, {"target", 1}});
    std::vector<CMatrix> us;
    CMatrix mux = CMatrix::identity(8);
    for (std::size_t j = 0; j < 4; ++j) {
        us.push_back(random_unitary(rng, 2));
        const std::string pattern = {j & 2 ? '1' : '0', j & 1 ? '1' : '0'};
        mux = mul(mux, controlled(pattern, us.back(), layout));
    }
    REQUIRE(is_unitary(mux, 1e-10));
    // Equals the block-diagonal assembly sum_j |j><j| kron U_j.
    for (std::size_t j = 0; j < 4; ++j) {
        for (std::size_t r = 0; r < 2; ++r) {
            for (std::size_t c = 0; c < 2; ++c) {
                REQUIRE(std::abs(mux(2 * j + r, 2 * j + c) - us[j](r, c)) < 1e-13);
            }
        }
    }
}

TEST_CASE("register layout validation") {
    REQUIRE_THROWS_AS(RegisterLayout({{"a", 8}, {"b", 8}}), std::invalid_argument);
    REQUIRE_THROWS_AS(RegisterLayout({{"a", 2}, {"a", 2}}), std::invalid_argument);
    const RegisterLayout ok({{"sel", 2}, {"anc", 3}, {"sys", 4}});
    REQUIRE(ok.total() == 9);
}
