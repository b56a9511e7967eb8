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
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qblock/block_encoding.hpp"
#include "qblock/combinators.hpp"
#include "qblock/inversion.hpp"
#include "qblock/report.hpp"
#include "qblock/state_prep.hpp"

// Matrix functions f(A) through contour integrals: the M-point trapezoidal
// rule on a circle enclosing the spectrum, and the general quadrature form
// r sum_k w_k (y_k I + z_k A)^{-1} for externally supplied nodes.

namespace qblock {

/// Circle of radius r about z0, inside the analyticity disk of radius R,
/// discretized at M = 2^m equispaced nodes; Taylor data truncated at L terms.
struct CircleContour {
    cplx z0;
    double r = 0.0;
    double R = 0.0;
    std::size_t M = 0;
    std::size_t L = 0;

    std::size_t m() const {
        std::size_t k = 0;
        while (pow2(k) < M) {
            ++k;
        }
        return k;
    }

    void validate() const {
        if (!(r > 0.0 && r < R)) {
            throw std::invalid_argument("CircleContour: need 0 < r < R");
        }
        if (M < 2 || (M & (M - 1)) != 0) {
            throw std::invalid_argument("CircleContour: M must be a power of two (>= 2)");
        }
        if (L < 1) {
            throw std::invalid_argument("CircleContour: L must be >= 1");
        }
    }
};

/// Nodes of a general quadrature approximation r sum_k w_k (y_k I + z_k A)^{-1}.
/// The nodes are data (read from file or built by a caller); this library does
/// not generate Gauss-type or double-exponential rules.
struct QuadratureScheme {
    CVector w;
    CVector y;
    CVector z;
    double r = 0.0;

    std::size_t size() const { return w.dim(); }

    void validate() const {
        if (w.dim() != y.dim() || w.dim() != z.dim()) {
            throw std::invalid_argument("QuadratureScheme: node arrays differ in length");
        }
        const std::size_t M = w.dim();
        if (M < 2 || (M & (M - 1)) != 0) {
            throw std::invalid_argument(
                "QuadratureScheme: node count must be a power of two (>= 2)");
        }
        if (!(r > 0.0)) {
            throw std::invalid_argument("QuadratureScheme: scale r must be positive");
        }
    }
};

/// A scalar function analytic on a disk: one of the built-in families or a
/// user-supplied Taylor series. Supplies point evaluation, Taylor
/// coefficients about a center, and the sup norm over a disk.
class ScalarFunction {
  public:
    static ScalarFunction exponential() { return ScalarFunction(Kind::Exp); }
    static ScalarFunction logarithm() { return ScalarFunction(Kind::Log); }
    static ScalarFunction inverse_sqrt() { return ScalarFunction(Kind::InvSqrt); }

    /// f(z) = sum_l coeffs[l] (z - center)^l. Being a polynomial, it is entire.
    static ScalarFunction taylor_series(std::vector<cplx> coeffs, cplx center) {
        ScalarFunction f(Kind::Series);
        if (coeffs.empty()) {
            throw std::invalid_argument("ScalarFunction: empty coefficient list");
        }
        f.coeffs_ = std::move(coeffs);
        f.center_ = center;
        return f;
    }

    std::string id() const {
        switch (kind_) {
            case Kind::Exp: return "exp";
            case Kind::Log: return "log";
            case Kind::InvSqrt: return "inv_sqrt";
            default: return "series";
        }
    }

    cplx eval(cplx z) const {
        switch (kind_) {
            case Kind::Exp: return std::exp(z);
            case Kind::Log: return std::log(z);
            case Kind::InvSqrt: return std::exp(-0.5 * std::log(z));
            default: {
                cplx acc{0.0, 0.0};
                const cplx u = z - center_;
                for (std::size_t l = coeffs_.size(); l-- > 0;) {
                    acc = acc * u + coeffs_[l];
                }
                return acc;
            }
        }
    }

    /// log and 1/sqrt are taken on the principal branch; their disks must stay
    /// clear of the cut (-inf, 0].
    void check_disk(cplx z0, double R) const {
        if (kind_ != Kind::Log && kind_ != Kind::InvSqrt) {
            return;
        }
        const double dist = z0.real() > 0.0 ? std::abs(z0) : std::abs(z0.imag());
        if (dist <= R) {
            throw precondition_error("ScalarFunction: the disk |z - z0| <= R crosses the "
                                     "branch cut (-inf, 0] of " +
                                     id());
        }
    }

    std::vector<cplx> taylor(cplx z0, std::size_t count) const {
        std::vector<cplx> a(count, cplx{0.0, 0.0});
        if (count == 0) {
            return a;
        }
        switch (kind_) {
            case Kind::Exp: {
                a[0] = std::exp(z0);
                for (std::size_t l = 1; l < count; ++l) {
                    a[l] = a[l - 1] / static_cast<double>(l);
                }
                return a;
            }
            case Kind::Log: {
                if (std::abs(z0) == 0.0) {
                    throw precondition_error("ScalarFunction: log requires z0 != 0");
                }
                a[0] = std::log(z0);
                cplx s{1.0, 0.0};  // (-1)^{l+1} z0^{-l}
                for (std::size_t l = 1; l < count; ++l) {
                    s *= cplx{-1.0, 0.0} / z0;
                    a[l] = -s / static_cast<double>(l);
                }
                return a;
            }
            case Kind::InvSqrt: {
                if (std::abs(z0) == 0.0) {
                    throw precondition_error("ScalarFunction: 1/sqrt requires z0 != 0");
                }
                a[0] = std::exp(-0.5 * std::log(z0));
                cplx c = a[0];
                for (std::size_t l = 1; l < count; ++l) {
                    // binom(-1/2, l) picks up -(2l-1)/(2l) per step.
                    c *= -(2.0 * static_cast<double>(l) - 1.0) /
                         (2.0 * static_cast<double>(l)) / z0;
                    a[l] = c;
                }
                return a;
            }
            default: {
                // Exact polynomial re-centering via the binomial expansion.
                const cplx shift = z0 - center_;
                for (std::size_t l = 0; l < coeffs_.size(); ++l) {
                    cplx binom{1.0, 0.0};  // C(l, k) shift^{l-k}, k ascending
                    cplx pw{1.0, 0.0};
                    // walk k = l down to 0 accumulating C(l,k) shift^{l-k}
                    std::vector<cplx> row(l + 1);
                    row[l] = 1.0;
                    for (std::size_t k = l; k-- > 0;) {
                        pw *= shift;
                        binom *= static_cast<double>(k + 1) / static_cast<double>(l - k);
                        row[k] = binom * pw;
                    }
                    for (std::size_t k = 0; k <= l && k < count; ++k) {
                        a[k] += coeffs_[l] * row[k];
                    }
                }
                return a;
            }
        }
    }

    /// Max modulus over the closed disk |z - z0| <= R, evaluated on the
    /// boundary circle at 4096 samples (maximum-modulus principle).
    double sup_norm(cplx z0, double R) const {
        check_disk(z0, R);
        double best = 0.0;
        const std::size_t samples = 4096;
        for (std::size_t i = 0; i < samples; ++i) {
            const double theta =
                2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(samples);
            best = std::max(best, std::abs(eval(z0 + std::polar(R, theta))));
        }
        return best;
    }

  private:
    enum class Kind { Exp, Log, InvSqrt, Series };
    explicit ScalarFunction(Kind k) : kind_(k) {}

    Kind kind_;
    std::vector<cplx> coeffs_;
    cplx center_{0.0, 0.0};
};

/// Dense trapezoidal approximation
/// f_M(A) = (1/M) sum_k f(z0 + r e^{i theta_k}) r e^{i theta_k}
///          ((z0 + r e^{i theta_k}) I - A)^{-1}.
/// The reference oracle every encoding in this module is verified against.
inline CMatrix f_M_dense(const CMatrix& a, const ScalarFunction& f, const CircleContour& c) {
    c.validate();
    if (!a.is_square()) {
        throw std::invalid_argument("f_M_dense: matrix must be square");
    }
    const std::size_t dim = a.rows();
    const CMatrix id = CMatrix::identity(dim);
    const double shift_norm = spectral_norm(a - c.z0 * id);
    if (shift_norm >= c.r) {
        throw precondition_error("f_M_dense: spectrum not enclosed, ||A - z0 I|| = " +
                                 std::to_string(shift_norm) + " >= r");
    }
    CMatrix acc(dim, dim);
    for (std::size_t k = 0; k < c.M; ++k) {
        const double theta =
            2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(c.M);
        const cplx node = c.z0 + std::polar(c.r, theta);
        const cplx weight =
            f.eval(node) * std::polar(c.r, theta) / static_cast<double>(c.M);
        acc = acc + weight * inverse(node * id - a);
    }
    return acc;
}

struct TrapezoidWeights {
    CVector w;        // exact node weights
    CVector w_tilde;  // weights of the L-term truncated Taylor series
    double delta_L = 0.0;
};

/// w_k = (1/M) f(z0 + r e^{i theta_k}) e^{i theta_k} and the truncated
/// variant from the L-term Taylor polynomial, with
/// delta_L = (1 - r/R)^{-1} (r/R)^L; ||w - w_tilde||_1 <= ||f||_inf delta_L.
inline TrapezoidWeights trapezoid_weights(const ScalarFunction& f, const CircleContour& c) {
    c.validate();
    const std::vector<cplx> a = f.taylor(c.z0, c.L);
    TrapezoidWeights out;
    out.w = CVector(c.M);
    out.w_tilde = CVector(c.M);
    out.delta_L = std::pow(c.r / c.R, static_cast<double>(c.L)) / (1.0 - c.r / c.R);
    for (std::size_t k = 0; k < c.M; ++k) {
        const double theta =
            2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(c.M);
        const cplx phase = std::polar(1.0, theta);
        const cplx u = std::polar(c.r, theta);
        cplx truncated{0.0, 0.0};
        for (std::size_t l = c.L; l-- > 0;) {
            truncated = truncated * u + a[l];
        }
        out.w[k] = f.eval(c.z0 + u) * phase / static_cast<double>(c.M);
        out.w_tilde[k] = truncated * phase / static_cast<double>(c.M);
    }
    return out;
}

/// Encoding of the block-diagonal matrix diag(A_0, ..., A_{M-1}) with
/// A_k = (z0 + r e^{i theta_k}) I - A, via the 3-term decomposition
/// z0 I + r R kron I - I kron A and the linear-combination-of-tensor-products
/// combinator. Contract: (r + alpha + |z0|, a+2, eps_A).
inline BlockEncoding block_diag_circle(const BlockEncoding& beA, const CircleContour& c) {
    c.validate();
    const std::size_t m = c.m();
    const std::size_t n = beA.system_qubits();
    detail::check_cap(2 + beA.ancilla_qubits() + m + n, "block_diag_circle");

    const CMatrix id_m = CMatrix::identity(pow2(m));
    const CMatrix id_n = CMatrix::identity(pow2(n));
    const std::vector<BlockEncoding> first = {trivial(id_m), trivial(phase_R_gates(m)),
                                              trivial(id_m)};
    const std::vector<BlockEncoding> second = {trivial(id_n), trivial(id_n), beA};
    const CVector y({c.z0, cplx{c.r, 0.0}, cplx{-1.0, 0.0}});
    const CVector coeffs({c.z0, cplx{c.r, 0.0}, cplx{-beA.alpha(), 0.0}});
    const StatePreparationPair pair = build_sqrt_pair(coeffs, 2);
    return linear_combination_tensor(first, second, y, pair);
}

/// The closed-form bounds ||blockdiag|| <= r + |z0| + ||A|| and
/// ||blockdiag^{-1}|| <= 1 / (r - ||A - z0 I||).
inline std::pair<double, double> circle_norm_bounds(const CircleContour& c, double normA,
                                                    double normAshift) {
    if (normAshift >= c.r) {
        throw precondition_error("circle_norm_bounds: ||A - z0 I|| >= r, the contour does "
                                 "not enclose the spectrum with margin");
    }
    return {c.r + std::abs(c.z0) + normA, 1.0 / (c.r - normAshift)};
}

/// Sqrt-construction pair for the exact weight vector w, built from the
/// truncated weights: a (||w||_1, m, 2 ||f||_inf delta_L)-pair.
inline StatePreparationPair stateprep_truncated(const ScalarFunction& f,
                                                const CircleContour& c) {
    const TrapezoidWeights tw = trapezoid_weights(f, c);
    const double mu = tw.w.norm1();
    if (mu <= 0.0 || tw.w_tilde.norm1() <= 0.0) {
        throw precondition_error("stateprep_truncated: zero weight vector");
    }
    const StatePreparationPair base = build_sqrt_pair(tw.w_tilde, c.m());
    const double claimed_delta = 2.0 * f.sup_norm(c.z0, c.R) * tw.delta_L;
    return StatePreparationPair(c.m(), mu, claimed_delta, base.v_left(), base.v_right(), c.M);
}

/// The closed-form bound epsilon_M on ||f(A) - f_M(A)||: two geometric terms
/// with prefactor ||f||_inf / (1 - ||A - z0 I|| / R).
inline double trapezoid_error_bound(const CircleContour& c, const ScalarFunction& f,
                                    double normAshift) {
    c.validate();
    if (normAshift >= c.r) {
        throw precondition_error("trapezoid_error_bound: ||A - z0 I|| >= r");
    }
    const double fsup = f.sup_norm(c.z0, c.R);
    const double q1 = std::pow(normAshift / c.r, static_cast<double>(c.M));
    const double q2 = std::pow(c.r / c.R, static_cast<double>(c.M));
    return fsup / (1.0 - normAshift / c.R) * (q1 / (1.0 - q1) + q2 / (1.0 - q2));
}

/// Taylor-series evaluation of f(A) about z0; converges whenever
/// ||A - z0 I|| < R. Used as the exact-f reference in reports.
inline CMatrix f_taylor_dense(const CMatrix& a, const ScalarFunction& f, cplx z0) {
    const std::size_t dim = a.rows();
    const CMatrix shifted = a - z0 * CMatrix::identity(dim);
    const std::size_t max_terms = 600;
    const std::vector<cplx> coeff = f.taylor(z0, max_terms);
    CMatrix acc(dim, dim);
    CMatrix pw = CMatrix::identity(dim);
    for (std::size_t l = 0; l < max_terms; ++l) {
        if (l > 0) {
            pw = pw * shifted;
        }
        const CMatrix term = coeff[l] * pw;
        acc = acc + term;
        if (l > 4 && max_abs(term) < 1e-17 * std::max(1.0, max_abs(acc))) {
            break;
        }
    }
    return acc;
}

/// End-to-end construction for the circle case: builds the block-diagonal
/// encoding, the truncated state-preparation pair, and the
/// linear-combination-of-inverses pipeline. Returns a
/// (tau, a+m+5, eta)-encoding of f_M(A) with
///   tau = (16/3) ||w||_1 / (1 - ||A - z0 I|| / r),
///   eta = ||f||_inf / (1 - ||A - z0 I|| / r)
///         (2 delta_L + (16/3)(4 d sqrt(2 eps_A / alpha') + delta)),
/// which is also a (tau, a+m+5, eta + eps_M)-encoding of f(A).
inline std::pair<BlockEncoding, VerificationReport> build_fM_encoding(
    const BlockEncoding& beA, const ScalarFunction& f, const CircleContour& c, double delta) {
    c.validate();
    f.check_disk(c.z0, c.R);
    const CMatrix ahat = encoded_block(beA);
    const double shift_norm =
        spectral_norm(ahat - c.z0 * CMatrix::identity(ahat.rows()));
    if (shift_norm >= c.r) {
        throw precondition_error("build_fM_encoding: spectrum not enclosed, ||A - z0 I|| = " +
                                 std::to_string(shift_norm) + " >= r");
    }

    const TrapezoidWeights tw = trapezoid_weights(f, c);
    const StatePreparationPair pair = stateprep_truncated(f, c);
    const BlockEncoding blockdiag = block_diag_circle(beA, c);
    const auto [alpha_prime, beta_prime] = circle_norm_bounds(c, beA.alpha(), shift_norm);

    auto [pipeline, rep] = lincomb_of_inverses(blockdiag, pair, beta_prime, c.r, delta);

    const double geom = 1.0 - shift_norm / c.r;
    const double fsup = f.sup_norm(c.z0, c.R);
    const double d = static_cast<double>(rep.degree);
    const double tau = (16.0 / 3.0) * tw.w.norm1() / geom;
    const double eta =
        fsup / geom *
        (2.0 * tw.delta_L +
         (16.0 / 3.0) * (4.0 * d * std::sqrt(2.0 * beA.epsilon() / alpha_prime) + delta));
    BlockEncoding result(pipeline.system_qubits(), pipeline.ancilla_qubits(), tau, eta,
                         pipeline.unitary());

    VerificationReport report;
    report.tau = tau;
    report.eta = eta;
    report.eps_M = trapezoid_error_bound(c, f, shift_norm);
    report.delta_L = tw.delta_L;
    report.alpha_prime = alpha_prime;
    report.beta_prime = beta_prime;
    report.degree = rep.degree;
    report.measured_error = verify(result, f_M_dense(ahat, f, c));
    report.measured_error_vs_f = verify(result, f_taylor_dense(ahat, f, c.z0));
    return {std::move(result), report};
}

/// Encoding of diag(y_k I + z_k A) via diagonal encodings of Y and Z and the
/// linear-combination-of-tensor-products combinator. Contract:
/// (y_max + z_max alpha, a+2, z_max eps_A). An all-zero Y or Z column drops
/// out with an inert identity in its selector slot.
inline BlockEncoding block_diag_general(const BlockEncoding& beA, const QuadratureScheme& q) {
    q.validate();
    const std::size_t M = q.size();
    std::size_t m = 0;
    while (pow2(m) < M) {
        ++m;
    }
    const std::size_t n = beA.system_qubits();
    detail::check_cap(2 + beA.ancilla_qubits() + m + n, "block_diag_general");

    double y_max = 0.0;
    double z_max = 0.0;
    for (std::size_t k = 0; k < M; ++k) {
        y_max = std::max(y_max, std::abs(q.y[k]));
        z_max = std::max(z_max, std::abs(q.z[k]));
    }
    if (y_max <= 0.0 && z_max <= 0.0) {
        throw precondition_error("block_diag_general: all nodes vanish");
    }
    const CMatrix id_m = CMatrix::identity(pow2(m));
    const CMatrix id_n = CMatrix::identity(pow2(n));
    const std::vector<BlockEncoding> first = {
        y_max > 0.0 ? diagonal(q.y) : trivial(id_m),
        z_max > 0.0 ? diagonal(q.z) : trivial(id_m)};
    const std::vector<BlockEncoding> second = {trivial(id_n), beA};
    const CVector y({cplx{y_max > 0.0 ? 1.0 : 0.0, 0.0}, cplx{z_max > 0.0 ? 1.0 : 0.0, 0.0}});
    const CVector coeffs({cplx{y_max, 0.0}, cplx{z_max * beA.alpha(), 0.0}});
    const StatePreparationPair pair = build_sqrt_pair(coeffs, 1);
    return linear_combination_tensor(first, second, y, pair);
}

/// End-to-end construction for a general quadrature: a
/// (tau, a+m+5, eta)-encoding of r sum_k w_k (y_k I + z_k A)^{-1} with
/// tau = (16/3) r beta' mu. beta' must bound max_k ||(y_k I + z_k A)^{-1}||
/// (it is the caller's assumption, checked here against the dense blocks).
inline std::pair<BlockEncoding, VerificationReport> build_FM_encoding(
    const BlockEncoding& beA, const QuadratureScheme& q, const StatePreparationPair& pair,
    double beta_prime, double delta) {
    q.validate();
    const std::size_t M = q.size();
    if (pair.t() != M || pow2(pair.m()) != M) {
        throw std::invalid_argument("build_FM_encoding: pair does not match the node count");
    }
    const CMatrix ahat = encoded_block(beA);
    const CMatrix id = CMatrix::identity(ahat.rows());

    CMatrix dense_ref(ahat.rows(), ahat.cols());
    for (std::size_t k = 0; k < M; ++k) {
        const CMatrix ak = q.y[k] * id + q.z[k] * ahat;
        CMatrix ak_inv;
        try {
            ak_inv = inverse(ak);
        } catch (const precondition_error&) {
            throw precondition_error("build_FM_encoding: singular shifted matrix at node " +
                                     std::to_string(k));
        }
        if (spectral_norm(ak_inv) > beta_prime * (1.0 + 1e-9) + beA.epsilon()) {
            throw precondition_error(
                "build_FM_encoding: ||(y_k I + z_k A)^{-1}|| exceeds beta' at node " +
                std::to_string(k));
        }
        dense_ref = dense_ref + (q.r * q.w[k]) * ak_inv;
    }

    const BlockEncoding blockdiag = block_diag_general(beA, q);
    auto [result, report] = lincomb_of_inverses(blockdiag, pair, beta_prime, q.r, delta);
    report.alpha_prime = blockdiag.alpha();
    report.measured_error = verify(result, dense_ref);
    return {std::move(result), report};
}

}  // namespace qblock
