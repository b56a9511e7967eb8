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

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qblock/block_encoding.hpp"
#include "qblock/combinators.hpp"
#include "qblock/report.hpp"
#include "qblock/state_prep.hpp"

namespace qblock {

/// Odd real polynomial in the Chebyshev basis. Even-index coefficients are
/// forced to zero so P(-x) = -P(x) holds exactly in the representation.
class OddPolynomial {
  public:
    explicit OddPolynomial(std::vector<double> cheb_coeffs) : c_(std::move(cheb_coeffs)) {
        for (std::size_t j = 0; j < c_.size(); j += 2) {
            c_[j] = 0.0;
        }
        while (c_.size() > 1 && c_.back() == 0.0) {
            c_.pop_back();
        }
    }

    std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }
    const std::vector<double>& cheb_coeffs() const { return c_; }

    double operator()(double x) const {
        // Clenshaw recurrence.
        double b1 = 0.0;
        double b2 = 0.0;
        for (std::size_t j = c_.size(); j-- > 1;) {
            const double b0 = 2.0 * x * b1 - b2 + c_[j];
            b2 = b1;
            b1 = b0;
        }
        return x * b1 - b2 + (c_.empty() ? 0.0 : c_[0]);
    }

  private:
    std::vector<double> c_;
};

namespace detail {

// (1 - (1 - x^2)^b) / x, evaluated stably near x = 0.
inline double inv_core(double x, double b) {
    if (std::abs(x) < 1e-8) {
        return b * x;
    }
    const double one_minus = -std::expm1(b * std::log1p(-x * x));
    return one_minus / x;
}

struct InvPolyShape {
    double b;       // smoothing exponent of the 1/x core
    double k;       // sharpness of the erf window
    double x0;      // window center
    double sigma;
    double scale;   // 3 sigma / 4

    double operator()(double x) const {
        const double window =
            1.0 - 0.5 * (std::erf(k * (x + x0)) - std::erf(k * (x - x0)));
        return scale * inv_core(x, b) * window;
    }
};

}  // namespace detail

/// Odd polynomial that delta-approximates (3/4) sigma / x on
/// [-1, -sigma] union [sigma, 1] and stays bounded by 1 on [-1, 1].
///
/// Construction: the smoothed inverse (1 - (1 - x^2)^b)/x (which matches
/// 1/x to within delta on the domain but overshoots 1 near the origin) is
/// multiplied by an erf-based high-pass window that suppresses the overshoot
/// without disturbing the approximation on the domain, then truncated in the
/// Chebyshev basis. Degree grows like (1/sigma) log(1/delta).
inline OddPolynomial inv_poly(double sigma, double delta) {
    if (!(sigma > 0.0 && sigma <= 0.5)) {
        throw std::invalid_argument("inv_poly: sigma must be in (0, 1/2]");
    }
    if (!(delta > 0.0 && delta <= 0.5)) {
        throw std::invalid_argument("inv_poly: delta must be in (0, 1/2]");
    }

    const double kappa = 1.0 / sigma;
    detail::InvPolyShape shape;
    shape.sigma = sigma;
    shape.scale = 0.75 * sigma;
    shape.b = std::ceil(kappa * kappa * std::log(kappa / delta));
    shape.x0 = 0.7 * sigma;
    shape.k = 3.4 * std::sqrt(std::log(4.0 / delta)) / sigma;

    const double target_scale = shape.scale;
    for (int attempt = 0; attempt < 4; ++attempt) {
        // Chebyshev coefficients of the shape function, computed at
        // Chebyshev-Gauss nodes with the T_j recurrence.
        std::size_t jmax = static_cast<std::size_t>(10.0 * shape.k) + 300;
        std::size_t nodes = 2048;
        while (nodes < 4 * jmax) {
            nodes *= 2;
        }
        jmax = std::min(jmax, nodes / 2);

        std::vector<double> coeff(jmax + 1, 0.0);
        for (std::size_t i = 0; i < nodes; ++i) {
            const double theta = std::numbers::pi * (static_cast<double>(i) + 0.5) /
                                 static_cast<double>(nodes);
            const double x = std::cos(theta);
            const double g = shape(x);
            double t_prev = 1.0;
            double t_cur = x;
            coeff[0] += g;
            for (std::size_t j = 1; j <= jmax; ++j) {
                coeff[j] += g * t_cur;
                const double t_next = 2.0 * x * t_cur - t_prev;
                t_prev = t_cur;
                t_cur = t_next;
            }
        }
        for (std::size_t j = 0; j <= jmax; ++j) {
            coeff[j] *= (j == 0 ? 1.0 : 2.0) / static_cast<double>(nodes);
        }

        // Truncate where the coefficient tail stops mattering.
        double tail = 0.0;
        std::size_t cut = jmax;
        std::vector<double> tails(jmax + 2, 0.0);
        for (std::size_t j = jmax + 1; j-- > 0;) {
            tails[j] = tails[j + 1] + std::abs(coeff[j]);
        }
        for (std::size_t d = 1; d <= jmax; d += 2) {
            if (tails[d + 1] <= delta / 20.0) {
                cut = d;
                break;
            }
        }
        coeff.resize(cut + 1);
        OddPolynomial p(std::move(coeff));

        // Acceptance: grid sup error on the domain, boundedness on [-1, 1].
        double sup_err = 0.0;
        const std::size_t grid = 10000;
        for (std::size_t i = 0; i < grid; ++i) {
            const double x = sigma + (1.0 - sigma) * static_cast<double>(i) /
                                         static_cast<double>(grid - 1);
            sup_err = std::max(sup_err, std::abs(p(x) - target_scale / x));
            sup_err = std::max(sup_err, std::abs(p(-x) + target_scale / x));
        }
        double sup_all = 0.0;
        const std::size_t grid_all = 20001;
        for (std::size_t i = 0; i < grid_all; ++i) {
            const double x = -1.0 + 2.0 * static_cast<double>(i) /
                                        static_cast<double>(grid_all - 1);
            sup_all = std::max(sup_all, std::abs(p(x)));
        }
        if (sup_err <= delta && sup_all <= 1.0) {
            return p;
        }
        // Sharpen the window and retry; this path is not expected to trigger
        // for parameters within the stated ranges.
        shape.k *= 1.3;
        shape.b = std::ceil(shape.b * 1.2);
    }
    throw std::runtime_error("inv_poly: construction did not meet tolerances");
}

/// Realizes the QSVT contract for applying an odd bounded polynomial to a
/// block-encoded Hermitian matrix: returns a (1, a+2, 4 d sqrt(eps/alpha) +
/// delta)-encoding of (1/2) P(A / alpha). The unitary is the exact dilation
/// of the dense evaluation of (1/2) P(Ahat / alpha); its measured error sits
/// below the claimed bound, which also covers a gate-level realization.
inline BlockEncoding poly_block_encoding(const BlockEncoding& be, const OddPolynomial& p,
                                         double delta) {
    CMatrix ahat = encoded_block(be);
    if (frobenius_norm(ahat - adjoint(ahat)) > 1e-9) {
        throw precondition_error("poly_block_encoding: encoded block is not Hermitian");
    }
    ahat = 0.5 * (ahat + adjoint(ahat));
    EigResult eig = eig_hermitian(ahat);

    const std::size_t dim = ahat.rows();
    CMatrix half_p(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            cplx s{0.0, 0.0};
            for (std::size_t k = 0; k < dim; ++k) {
                double x = eig.values[k] / be.alpha();
                if (std::abs(x) > 1.0 + 1e-6) {
                    throw precondition_error(
                        "poly_block_encoding: encoded block norm exceeds alpha");
                }
                x = std::clamp(x, -1.0, 1.0);
                s += eig.vectors(i, k) * (0.5 * p(x)) * std::conj(eig.vectors(j, k));
            }
            half_p(i, j) = s;
        }
    }
    const double claimed =
        4.0 * static_cast<double>(p.degree()) * std::sqrt(be.epsilon() / be.alpha()) + delta;
    const BlockEncoding dilated(be.system_qubits(), 1, 1.0, claimed,
                                dilate_to_unitary(half_p));
    return embed(dilated, be.ancilla_qubits() + 1);
}

struct InversionParams {
    double beta = 0.0;           // supplied bound on ||A^{-1}||
    double delta = 0.0;          // polynomial accuracy parameter
    double beta_tilde = 0.0;     // (16/3) beta
    double epsilon_tilde = 0.0;  // (4 d sqrt(eps/alpha) + delta) beta_tilde
    double kappa_bar = 0.0;      // 2 alpha beta
    std::size_t degree = 0;      // constructed polynomial degree
};

/// Block-encoding of A^{-1} for Hermitian A with spectrum in
/// [-alpha, -1/beta] union [1/beta, alpha]: a (16 beta / 3, a+2,
/// epsilon_tilde)-encoding built from inv_poly at sigma = 1 / (2 alpha beta).
inline std::pair<BlockEncoding, InversionParams> invert_hermitian(const BlockEncoding& be,
                                                                  double beta, double delta) {
    if (beta <= 0.0) {
        throw std::invalid_argument("invert_hermitian: beta must be positive");
    }
    if (!(delta > 0.0 && delta <= 0.75)) {
        throw std::invalid_argument("invert_hermitian: delta must be in (0, 3/4]");
    }
    if (delta > 0.5) {
        // The stated range reaches 3/4 but the underlying polynomial bound
        // only holds on (0, 1/2]; refuse rather than silently degrade.
        throw std::invalid_argument(
            "invert_hermitian: delta in (1/2, 3/4] is rejected; the construction requires "
            "delta <= 1/2");
    }
    CMatrix ahat = encoded_block(be);
    if (frobenius_norm(ahat - adjoint(ahat)) > 1e-9) {
        throw precondition_error("invert_hermitian: encoded block is not Hermitian");
    }
    ahat = 0.5 * (ahat + adjoint(ahat));
    const EigResult eig = eig_hermitian(ahat);
    const double slack = std::max(1e-9, be.epsilon() + 1e-12);
    for (double lam : eig.values) {
        if (std::abs(lam) < 1.0 / beta - slack) {
            throw precondition_error("invert_hermitian: eigenvalue " + std::to_string(lam) +
                                     " lies inside the spectral gap (-1/beta, 1/beta)");
        }
        if (std::abs(lam) > be.alpha() + slack) {
            throw precondition_error("invert_hermitian: eigenvalue exceeds alpha");
        }
    }

    InversionParams params;
    params.beta = beta;
    params.delta = delta;
    params.kappa_bar = 2.0 * be.alpha() * beta;
    params.beta_tilde = 16.0 * beta / 3.0;

    const OddPolynomial p = inv_poly(1.0 / params.kappa_bar, delta);
    params.degree = p.degree();
    params.epsilon_tilde =
        (4.0 * static_cast<double>(params.degree) * std::sqrt(be.epsilon() / be.alpha()) +
         delta) *
        params.beta_tilde;

    const BlockEncoding poly_be = poly_block_encoding(be, p, delta);
    BlockEncoding inv_be(poly_be.system_qubits(), poly_be.ancilla_qubits(), params.beta_tilde,
                         params.epsilon_tilde, poly_be.unitary());
    return {std::move(inv_be), params};
}

/// Full pipeline for F = sum_k w_k A_k^{-1} from a block-encoding of the
/// block-diagonal matrix: extend to a Hermitian matrix, invert through the
/// polynomial contract, return from the extension, then sandwich with the
/// state-preparation pair for w. Produces a
/// (tau, a+m+3, eta)-encoding of r F with tau = (16/3) r beta mu and
/// eta = r (beta delta_sp + mu epsilon_tilde).
inline std::pair<BlockEncoding, VerificationReport> lincomb_of_inverses(
    const BlockEncoding& be_blockdiag, const StatePreparationPair& pair, double beta, double r,
    double delta) {
    if (r <= 0.0) {
        throw std::invalid_argument("lincomb_of_inverses: r must be positive");
    }
    const std::size_t m = pair.m();
    if (be_blockdiag.system_qubits() < m) {
        throw std::invalid_argument(
            "lincomb_of_inverses: block-diagonal system is smaller than the selector");
    }
    const std::size_t n = be_blockdiag.system_qubits() - m;

    const BlockEncoding ext = extend(be_blockdiag);
    auto [inv_ext, params] = invert_hermitian(ext, beta, delta);
    const BlockEncoding inv = unextend_inverse(inv_ext);

    CMatrix u = kron_mul_right(inv.unitary(), pair.v_right(),
                               pow2(inv.ancilla_qubits()));
    u = kron_mul_left(adjoint(pair.v_left()), u, pow2(inv.ancilla_qubits()));

    const double tau = r * params.beta_tilde * pair.mu();
    const double eta = r * (beta * pair.delta() + pair.mu() * params.epsilon_tilde);
    BlockEncoding result(n, inv.ancilla_qubits() + m, tau, eta, std::move(u));

    // Dense reference: blocks and weights read back from the inputs.
    const CMatrix blockdiag = encoded_block(be_blockdiag);
    const CVector c = pair.left_amplitudes();
    const CVector d = pair.right_amplitudes();
    const std::size_t bdim = pow2(n);
    CMatrix f_ref(bdim, bdim);
    for (std::size_t k = 0; k < pow2(m); ++k) {
        const cplx wk = pair.mu() * std::conj(c[k]) * d[k];
        if (std::abs(wk) < 1e-300) {
            continue;
        }
        CMatrix blk(bdim, bdim);
        for (std::size_t i = 0; i < bdim; ++i) {
            for (std::size_t j = 0; j < bdim; ++j) {
                blk(i, j) = blockdiag(k * bdim + i, k * bdim + j);
            }
        }
        f_ref = f_ref + (r * wk) * inverse(blk);
    }

    VerificationReport report;
    report.tau = tau;
    report.eta = eta;
    report.degree = params.degree;
    report.beta_prime = beta;
    report.measured_error = verify(result, f_ref);
    return {std::move(result), report};
}

}  // namespace qblock
