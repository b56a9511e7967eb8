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

#include "qblock/matfunc.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace qblock;
using namespace qblock::testing;

namespace {

const ScalarFunction one = ScalarFunction::taylor_series({cplx{1.0, 0.0}}, 0.0);

CMatrix dense_block_diag(const CMatrix& a, const CircleContour& c) {
    const std::size_t dim = a.rows();
    const CMatrix id = CMatrix::identity(dim);
    CMatrix bd(c.M * dim, c.M * dim);
    for (std::size_t k = 0; k < c.M; ++k) {
        const double theta =
            2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(c.M);
        const CMatrix ak = (c.z0 + std::polar(c.r, theta)) * id - a;
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                bd(k * dim + i, k * dim + j) = ak(i, j);
            }
        }
    }
    return bd;
}

}  // namespace

TEST_CASE("f_M_dense collapses when A is the contour center") {
    const CMatrix a = 0.3 * CMatrix::identity(2);
    const CircleContour c{cplx{0.3, 0.0}, 1.0, 2.0, 8, 8};
    REQUIRE(max_abs_diff(f_M_dense(a, one, c), CMatrix::identity(2)) < 1e-14);
}

TEST_CASE("f_M_dense approximates exp within the printed bound") {
    const CMatrix a = CMatrix::from_rows({{0.1, 0.0}, {0.0, 0.2}});
    const CircleContour c{cplx{0.0, 0.0}, 1.0, 2.0, 16, 16};
    const ScalarFunction f = ScalarFunction::exponential();
    const CMatrix fm = f_M_dense(a, f, c);
    const CMatrix exact = expm_taylor(a);
    const double shift_norm = spectral_norm(a);
    const double bound = trapezoid_error_bound(c, f, shift_norm);
    REQUIRE(spectral_norm(fm - exact) <= bound);
}

TEST_CASE("doubling M shrinks the quadrature error geometrically") {
    const CMatrix a = CMatrix::from_rows({{0.1, 0.05}, {0.0, 0.2}});
    const ScalarFunction f = ScalarFunction::exponential();
    const CMatrix exact = expm_taylor(a);
    const CircleContour c8{cplx{0.0, 0.0}, 1.0, 2.0, 8, 16};
    const CircleContour c16{cplx{0.0, 0.0}, 1.0, 2.0, 16, 16};
    const double e8 = spectral_norm(f_M_dense(a, f, c8) - exact);
    const double e16 = spectral_norm(f_M_dense(a, f, c16) - exact);
    const double q = std::max(spectral_norm(a) / c8.r, c8.r / c8.R);
    const double expected_factor = std::pow(q, 8.0);
    REQUIRE(e16 < e8);
    REQUIRE(e16 / e8 <= 3.0 * expected_factor);
}

TEST_CASE("f_M_dense rejects unenclosed spectra") {
    const CMatrix a = 2.0 * CMatrix::identity(2);
    const CircleContour c{cplx{0.0, 0.0}, 1.0, 2.0, 8, 8};
    REQUIRE_THROWS_AS(f_M_dense(a, one, c), precondition_error);
}

TEST_CASE("trapezoid weights: truncation is exact for polynomials") {
    const CircleContour c{cplx{0.0, 0.0}, 0.5, 1.0, 8, 4};
    const TrapezoidWeights tw = trapezoid_weights(one, c);
    for (std::size_t k = 0; k < c.M; ++k) {
        REQUIRE(std::abs(tw.w[k] - tw.w_tilde[k]) < 1e-16);
    }
}

TEST_CASE("trapezoid weights: delta_L closed form") {
    const CircleContour c{cplx{0.0, 0.0}, 0.5, 1.0, 8, 10};
    const TrapezoidWeights tw = trapezoid_weights(ScalarFunction::exponential(), c);
    REQUIRE(std::abs(tw.delta_L - 2.0 * std::pow(0.5, 10.0)) < 1e-15);
}

TEST_CASE("trapezoid weights: 1-norm gap obeys the Cauchy-estimate bound") {
    const ScalarFunction f = ScalarFunction::exponential();
    struct Case {
        double r, R;
        std::size_t L;
    };
    for (const Case& tc : {Case{0.5, 1.0, 6}, Case{0.5, 1.0, 12}, Case{1.0, 2.0, 8},
                           Case{1.5, 2.0, 20}}) {
        const CircleContour c{cplx{0.0, 0.0}, tc.r, tc.R, 8, tc.L};
        const TrapezoidWeights tw = trapezoid_weights(f, c);
        double gap = 0.0;
        for (std::size_t k = 0; k < c.M; ++k) {
            gap += std::abs(tw.w[k] - tw.w_tilde[k]);
        }
        REQUIRE(gap <= f.sup_norm(c.z0, c.R) * tw.delta_L * (1.0 + 1e-12));
    }
}

TEST_CASE("block_diag_circle on the zero matrix") {
    const BlockEncoding beA = dilation_encoding(CMatrix(2, 2), 1.0);
    const CircleContour c{cplx{0.0, 0.0}, 1.0, 2.0, 2, 4};
    const BlockEncoding bd = block_diag_circle(beA, c);
    // blockdiag = diag(I, -I), alpha' = r + |z0| + alpha = 2.
    REQUIRE(bd.alpha() == 2.0);
    REQUIRE(bd.ancilla_qubits() == beA.ancilla_qubits() + 2);
    CMatrix target(4, 4);
    target(0, 0) = 1.0;
    target(1, 1) = 1.0;
    target(2, 2) = -1.0;
    target(3, 3) = -1.0;
    REQUIRE(verify(bd, target) <= 1e-10);
}

TEST_CASE("block_diag_circle matches the dense assembly oracle") {
    Rng rng(81);
    for (int trial = 0; trial < 5; ++trial) {
        const CMatrix a = random_contraction(rng, 2, 0.4);
        const BlockEncoding beA = dilation_encoding(a, 0.5);
        const CircleContour c{cplx{0.1, -0.05}, 1.0, 2.0, 4, 8};
        const BlockEncoding bd = block_diag_circle(beA, c);
        REQUIRE(verify(bd, dense_block_diag(a, c)) <= beA.epsilon() + 1e-9);
    }
}

TEST_CASE("block_diag_circle scale for an off-center contour") {
    const BlockEncoding beA = dilation_encoding(CMatrix(2, 2), 1.0);
    const CircleContour c{cplx{1.0, 0.0}, 1.0, 3.0, 2, 4};
    const BlockEncoding bd = block_diag_circle(beA, c);
    REQUIRE(std::abs(bd.alpha() - (2.0 + 1.0)) < 1e-14);
    REQUIRE(verify(bd, dense_block_diag(CMatrix(2, 2), c)) <= 1e-10);
}

TEST_CASE("circle norm bounds") {
    const CircleContour c{cplx{0.0, 0.0}, 1.0, 2.0, 8, 8};
    const auto [ap0, bp0] = circle_norm_bounds(c, 0.0, 0.0);
    REQUIRE(ap0 == 1.0);
    REQUIRE(bp0 == 1.0);

    const auto [ap1, bp1] = circle_norm_bounds(c, 0.2, 0.2);
    REQUIRE(std::abs(bp1 - 1.25) < 1e-14);

    REQUIRE_THROWS_AS(circle_norm_bounds(c, 1.5, 1.5), precondition_error);
}

TEST_CASE("circle norm bounds dominate the dense extremes") {
    Rng rng(82);
    for (int trial = 0; trial < 5; ++trial) {
        const CMatrix a = random_contraction(rng, 2, 0.5);
        const CircleContour c{cplx{0.2, 0.1}, 1.0, 2.0, 4, 8};
        const CMatrix bd = dense_block_diag(a, c);
        const double shift_norm =
            spectral_norm(a - c.z0 * CMatrix::identity(2));
        const auto [ap, bp] = circle_norm_bounds(c, spectral_norm(a), shift_norm);
        REQUIRE(spectral_norm(bd) <= ap + 1e-10);
        REQUIRE(spectral_norm(inverse(bd)) <= bp + 1e-10);
    }
}

TEST_CASE("truncated state prep is exact for polynomial functions") {
    const CircleContour c{cplx{0.0, 0.0}, 0.5, 1.0, 4, 4};
    const StatePreparationPair pair = stateprep_truncated(one, c);
    const TrapezoidWeights tw = trapezoid_weights(one, c);
    REQUIRE(verify_pair(pair, tw.w) <= 1e-13);
}

TEST_CASE("truncated state prep meets its claimed delta") {
    const ScalarFunction f = ScalarFunction::exponential();
    const CircleContour c{cplx{0.0, 0.0}, 0.5, 1.0, 8, 20};
    const StatePreparationPair pair = stateprep_truncated(f, c);
    const TrapezoidWeights tw = trapezoid_weights(f, c);
    const double measured = verify_pair(pair, tw.w);
    REQUIRE(measured <= 2.0 * f.sup_norm(c.z0, c.R) * std::pow(0.5, 19.0));
    REQUIRE(measured <= pair.delta());
    REQUIRE(std::abs(pair.mu() - tw.w.norm1()) < 1e-15);
}

TEST_CASE("trapezoid error bound edge cases and monotonicity") {
    const ScalarFunction f = ScalarFunction::exponential();
    const CircleContour c{cplx{0.0, 0.0}, 1.0, 2.0, 8, 8};
    // A = z0 I: only the (r/R)^M term survives.
    const double q = std::pow(0.5, 8.0);
    const double expected = f.sup_norm(c.z0, c.R) * (q / (1.0 - q));
    REQUIRE(std::abs(trapezoid_error_bound(c, f, 0.0) - expected) < 1e-12);

    double prev = 1e300;
    for (std::size_t m : {4, 8, 16, 32}) {
        const CircleContour cm{cplx{0.0, 0.0}, 1.0, 2.0, m, 8};
        const double val = trapezoid_error_bound(cm, f, 0.2);
        REQUIRE(val < prev);
        prev = val;
    }
}

TEST_CASE("build_fM_encoding: collapse case") {
    const BlockEncoding beA = dilation_encoding(CMatrix(2, 2), 1.0);
    const CircleContour c{cplx{0.0, 0.0}, 1.0, 2.0, 2, 4};
    auto [be, report] = build_fM_encoding(beA, one, c, 1e-3);
    // f == 1 and A = 0 give f_M(A) = I.
    REQUIRE(verify(be, CMatrix::identity(2)) <= report.eta);
    REQUIRE(report.measured_error <= report.eta);
}

TEST_CASE("build_fM_encoding: exp of a Hermitian matrix") {
    const CMatrix a = CMatrix::from_rows({{0.1, 0.0}, {0.0, 0.2}});
    const BlockEncoding beA = dilation_encoding(a, 1.0);
    const ScalarFunction f = ScalarFunction::exponential();
    const CircleContour c{cplx{0.0, 0.0}, 1.0, 2.0, 8, 16};
    auto [be, report] = build_fM_encoding(beA, f, c, 1e-3);

    REQUIRE(be.ancilla_qubits() == beA.ancilla_qubits() + c.m() + 5);
    REQUIRE(report.measured_error <= report.eta);
    REQUIRE(verify(be, f_M_dense(a, f, c)) <= report.eta);
    // Against exact f(A), with the quadrature bound added.
    REQUIRE(verify(be, expm_taylor(a)) <= report.eta + report.eps_M);
    REQUIRE(report.measured_error_vs_f.has_value());
    REQUIRE(*report.measured_error_vs_f <= report.eta + report.eps_M);
}

TEST_CASE("build_fM_encoding: exp of a non-normal matrix") {
    const CMatrix a = CMatrix::from_rows({{0.1, 0.3}, {0.0, 0.2}});
    const BlockEncoding beA = dilation_encoding(a, 1.0);
    const ScalarFunction f = ScalarFunction::exponential();
    const CircleContour c{cplx{0.0, 0.0}, 1.0, 2.0, 8, 16};
    auto [be, report] = build_fM_encoding(beA, f, c, 1e-3);
    REQUIRE(report.measured_error <= report.eta);
    const CMatrix exact = f_2x2_spectral(a, [](cplx z) { return std::exp(z); });
    REQUIRE(verify(be, exact) <= report.eta + report.eps_M);
}

TEST_CASE("log rejects contours crossing the branch cut") {
    const ScalarFunction f = ScalarFunction::logarithm();
    REQUIRE_THROWS_AS(f.check_disk(cplx{0.0, 0.0}, 1.0), precondition_error);
    REQUIRE_THROWS_AS(f.check_disk(cplx{-2.0, 0.5}, 1.0), precondition_error);
    f.check_disk(cplx{3.0, 0.0}, 1.0);  // fine

    // Usable contour: log of a matrix near 3 I.
    const CMatrix a = CMatrix::from_rows({{3.0, 0.1}, {0.0, 2.8}});
    const BlockEncoding beA = dilation_encoding(a, spectral_norm(a) * 1.001);
    const CircleContour c{cplx{3.0, 0.0}, 1.0, 2.5, 16, 24};
    auto [be, report] = build_fM_encoding(beA, f, c, 1e-3);
    REQUIRE(report.measured_error <= report.eta);
    const CMatrix exact = f_2x2_spectral(a, [](cplx z) { return std::log(z); });
    REQUIRE(verify(be, exact) <= report.eta + report.eps_M);
}

TEST_CASE("taylor coefficients of the built-in functions") {
    const ScalarFunction fexp = ScalarFunction::exponential();
    const auto aexp = fexp.taylor(cplx{0.5, 0.0}, 5);
    const double e05 = std::exp(0.5);
    REQUIRE(std::abs(aexp[0] - e05) < 1e-14);
    REQUIRE(std::abs(aexp[3] - e05 / 6.0) < 1e-14);

    const ScalarFunction flog = ScalarFunction::logarithm();
    const auto alog = flog.taylor(cplx{2.0, 0.0}, 4);
    REQUIRE(std::abs(alog[0] - std::log(2.0)) < 1e-14);
    REQUIRE(std::abs(alog[1] - 0.5) < 1e-14);
    REQUIRE(std::abs(alog[2] + 1.0 / 8.0) < 1e-14);
    REQUIRE(std::abs(alog[3] - 1.0 / 24.0) < 1e-14);

    const ScalarFunction fis = ScalarFunction::inverse_sqrt();
    const auto ais = fis.taylor(cplx{4.0, 0.0}, 3);
    REQUIRE(std::abs(ais[0] - 0.5) < 1e-14);
    REQUIRE(std::abs(ais[1] + 1.0 / 16.0) < 1e-14);  // -(1/2) 4^{-3/2}
    REQUIRE(std::abs(ais[2] - 3.0 / 256.0) < 1e-14);

    // Series re-centering is exact for polynomials.
    const ScalarFunction poly =
        ScalarFunction::taylor_series({cplx{1.0, 0.0}, cplx{2.0, 0.0}, cplx{3.0, 0.0}}, 0.0);
    const auto shifted = poly.taylor(cplx{1.0, 0.0}, 3);
    // 1 + 2z + 3z^2 about z=1: values 6, 8, 3.
    REQUIRE(std::abs(shifted[0] - 6.0) < 1e-14);
    REQUIRE(std::abs(shifted[1] - 8.0) < 1e-14);
    REQUIRE(std::abs(shifted[2] - 3.0) < 1e-14);
}

TEST_CASE("block_diag_general with constant nodes") {
    const BlockEncoding beA = dilation_encoding(pauli_z(), 1.0);
    QuadratureScheme q;
    q.w = CVector({0.5, 0.5});
    q.y = CVector({1.0, 1.0});
    q.z = CVector({0.0, 0.0});
    q.r = 1.0;
    const BlockEncoding bd = block_diag_general(beA, q);
    REQUIRE(verify(bd, CMatrix::identity(4)) <= 1e-10);
    REQUIRE(bd.epsilon() == 0.0);
}

TEST_CASE("block_diag_general dense assembly") {
    const BlockEncoding beA = dilation_encoding(pauli_z(), 1.0);
    QuadratureScheme q;
    q.w = CVector({0.5, 0.5});
    q.y = CVector({1.0, 2.0});
    q.z = CVector({1.0, 1.0});
    q.r = 1.0;
    const BlockEncoding bd = block_diag_general(beA, q);
    CMatrix target(4, 4);
    target(0, 0) = 2.0;
    target(1, 1) = 0.0;
    target(2, 2) = 3.0;
    target(3, 3) = 1.0;
    REQUIRE(bd.alpha() == 2.0 + 1.0);
    REQUIRE(verify(bd, target) <= bd.epsilon() + 1e-9);
}

TEST_CASE("circle contour re-expressed as a general scheme matches") {
    Rng rng(83);
    const CMatrix a = random_contraction(rng, 2, 0.4);
    const BlockEncoding beA = dilation_encoding(a, 0.5);
    const CircleContour c{cplx{0.1, 0.0}, 1.0, 2.0, 4, 8};
    const ScalarFunction f = ScalarFunction::exponential();

    QuadratureScheme q;
    q.w = CVector(c.M);
    q.y = CVector(c.M);
    q.z = CVector(c.M);
    q.r = c.r;
    for (std::size_t k = 0; k < c.M; ++k) {
        const double theta =
            2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(c.M);
        q.w[k] = f.eval(c.z0 + std::polar(c.r, theta)) * std::polar(1.0, theta) /
                 static_cast<double>(c.M);
        q.y[k] = c.z0 + std::polar(c.r, theta);
        q.z[k] = -1.0;
    }
    const BlockEncoding circle = block_diag_circle(beA, c);
    const BlockEncoding general = block_diag_general(beA, q);
    REQUIRE(max_abs_diff(encoded_block(circle), encoded_block(general)) <= 1e-9);
}

TEST_CASE("build_FM_encoding: trivial scheme") {
    const BlockEncoding beA = dilation_encoding(pauli_z(), 1.0);
    QuadratureScheme q;
    q.w = CVector({1.0, 0.0});
    q.y = CVector({1.0, 1.0});
    q.z = CVector({0.0, 0.0});
    q.r = 1.0;
    const StatePreparationPair pair = build_sqrt_pair(q.w, 1);
    auto [be, report] = build_FM_encoding(beA, q, pair, 1.0, 1e-3);
    REQUIRE(verify(be, CMatrix::identity(2)) <= report.eta);
}

TEST_CASE("build_FM_encoding rejects singular nodes") {
    const BlockEncoding beA = dilation_encoding(pauli_z(), 1.0);
    QuadratureScheme q;
    q.w = CVector({0.5, 0.5});
    q.y = CVector({2.0, 1.0});
    q.z = CVector({1.0, 1.0});  // y=1, z=1 makes I + sigma_z singular
    q.r = 1.0;
    const StatePreparationPair pair = build_sqrt_pair(q.w, 1);
    REQUIRE_THROWS_AS(build_FM_encoding(beA, q, pair, 10.0, 1e-3), precondition_error);
}

TEST_CASE("build_FM_encoding against the dense-inverse oracle") {
    const BlockEncoding beA = dilation_encoding(pauli_z(), 1.0);
    QuadratureScheme q;
    q.w = CVector({0.5, 0.5});
    q.y = CVector({2.0, 3.0});
    q.z = CVector({1.0, 1.0});
    q.r = 1.0;
    const StatePreparationPair pair = build_sqrt_pair(q.w, 1);
    auto [be, report] = build_FM_encoding(beA, q, pair, 1.0, 1e-3);
    // F = (1/2)(diag(1/3, 1) + diag(1/4, 1/2)) = diag(7/24, 3/4).
    CMatrix target(2, 2);
    target(0, 0) = 7.0 / 24.0;
    target(1, 1) = 0.75;
    REQUIRE(verify(be, target) <= report.eta);
    REQUIRE(report.measured_error <= report.eta);
}
