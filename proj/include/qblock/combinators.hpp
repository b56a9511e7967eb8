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
#include <vector>

#include "qblock/block_encoding.hpp"
#include "qblock/circuits.hpp"
#include "qblock/linalg.hpp"
#include "qblock/state_prep.hpp"

// Block-encoding combinators. Every constructor here assembles the composite
// unitary in a fixed global register order (selector, ancillas, system, most
// significant first) and inserts explicit permutations where the circuit
// diagrams interleave wires.

namespace qblock {

namespace detail {

inline IndexPerm inverse_perm(const IndexPerm& sigma) {
    IndexPerm inv(sigma.size());
    for (std::size_t x = 0; x < sigma.size(); ++x) {
        inv[sigma[x]] = x;
    }
    return inv;
}

inline void check_cap(std::size_t qubits, const char* who) {
    if (qubits > default_qubit_cap) {
        throw std::invalid_argument(std::string(who) + ": " + std::to_string(qubits) +
                                    " qubits exceed the simulation cap");
    }
}

// The pair must prepare the given coefficient vector within its own delta.
inline void check_pair_matches(const StatePreparationPair& pair, const CVector& coeffs,
                               const char* who) {
    if (coeffs.dim() != pair.t()) {
        throw std::invalid_argument(std::string(who) +
                                    ": state-preparation pair active length does not match "
                                    "the number of terms");
    }
    if (verify_pair(pair, coeffs) > pair.delta() + 1e-8) {
        throw std::invalid_argument(std::string(who) +
                                    ": state-preparation pair does not prepare the scaled "
                                    "coefficient vector");
    }
}

}  // namespace detail

/// (I_b kron U_A)(SWAP_{a,b} kron I_n)(I_a kron U_B): an
/// (alpha beta, a+b, alpha eps_B + beta eps_A)-encoding of AB.
inline BlockEncoding product(const BlockEncoding& beA, const BlockEncoding& beB) {
    if (beA.system_qubits() != beB.system_qubits()) {
        throw std::invalid_argument("product: system size mismatch");
    }
    const std::size_t n = beA.system_qubits();
    const std::size_t a = beA.ancilla_qubits();
    const std::size_t b = beB.ancilla_qubits();
    detail::check_cap(a + b + n, "product");

    CMatrix u = kron(CMatrix::identity(pow2(a)), beB.unitary());
    u = apply_perm_rows(wire_block_swap(0, a, b, n), u);
    u = mul(kron(CMatrix::identity(pow2(b)), beA.unitary()), u);
    return BlockEncoding(n, a + b, beA.alpha() * beB.alpha(),
                         beA.alpha() * beB.epsilon() + beB.alpha() * beA.epsilon(), u);
}

/// SWAP-conjugated U_A kron U_B: an
/// (alpha beta, a+b, alpha eps_B + beta eps_A)-encoding of A kron B.
inline BlockEncoding tensor(const BlockEncoding& beA, const BlockEncoding& beB) {
    const std::size_t n = beA.system_qubits();
    const std::size_t m = beB.system_qubits();
    const std::size_t a = beA.ancilla_qubits();
    const std::size_t b = beB.ancilla_qubits();
    detail::check_cap(a + b + n + m, "tensor");

    // kron(U_A, U_B) lives on wires [a][n][b][m]; the composite contract wants
    // [a][b][n][m], so conjugate by the permutation exchanging the middle two.
    const IndexPerm q = wire_block_swap(a, b, n, m);
    CMatrix u = apply_perm_cols(kron(beA.unitary(), beB.unitary()), q);
    u = apply_perm_rows(detail::inverse_perm(q), u);
    return BlockEncoding(n + m, a + b, beA.alpha() * beB.alpha(),
                         beA.alpha() * beB.epsilon() + beB.alpha() * beA.epsilon(), u);
}

/// LCU over block-encodings with unequal scales and ancilla counts:
/// (P_L^dag kron I)(sum_j |j><j| kron (I_{a-a_j} kron U_j) + padding)(P_R kron I),
/// a (mu, a_max + m, sum_j |y_j| eps_j)-encoding of sum_j y_j A_j. The pair
/// must prepare (y_0 alpha_0, ..., y_{t-1} alpha_{t-1}).
inline BlockEncoding linear_combination(const std::vector<BlockEncoding>& bes, const CVector& y,
                                        const StatePreparationPair& pair) {
    if (bes.empty() || bes.size() != y.dim()) {
        throw std::invalid_argument("linear_combination: need one coefficient per encoding");
    }
    const std::size_t t = bes.size();
    const std::size_t n = bes[0].system_qubits();
    std::size_t a = 0;
    for (const auto& be : bes) {
        if (be.system_qubits() != n) {
            throw std::invalid_argument("linear_combination: system size mismatch");
        }
        a = std::max(a, be.ancilla_qubits());
    }
    CVector coeffs(t);
    double claimed_eps = 0.0;
    for (std::size_t j = 0; j < t; ++j) {
        coeffs[j] = y[j] * bes[j].alpha();
        claimed_eps += std::abs(y[j]) * bes[j].epsilon();
    }
    detail::check_pair_matches(pair, coeffs, "linear_combination");

    const std::size_t m = pair.m();
    detail::check_cap(m + a + n, "linear_combination");

    const std::size_t blk = pow2(a + n);
    CMatrix w(pow2(m) * blk, pow2(m) * blk);
    for (std::size_t j = 0; j < pow2(m); ++j) {
        const CMatrix u = j < t ? embed(bes[j], a - bes[j].ancilla_qubits()).unitary()
                                : CMatrix::identity(blk);
        for (std::size_t r = 0; r < blk; ++r) {
            for (std::size_t c = 0; c < blk; ++c) {
                w(j * blk + r, j * blk + c) = u(r, c);
            }
        }
    }
    w = kron_mul_right(w, pair.v_right());
    w = kron_mul_left(adjoint(pair.v_left()), w);
    return BlockEncoding(n, m + a, pair.mu(), claimed_eps, w);
}

/// LCU over tensor products A_j kron B_j, with the B-side ancillas commuted
/// past the A-side system by an explicit permutation. The pair must prepare
/// (y_j alpha_j beta_j); the contract is
/// (mu, a+b+m, sum_j |y_j| (alpha_j delta_j + beta_j eps_j)).
inline BlockEncoding linear_combination_tensor(const std::vector<BlockEncoding>& besA,
                                               const std::vector<BlockEncoding>& besB,
                                               const CVector& y,
                                               const StatePreparationPair& pair) {
    if (besA.empty() || besA.size() != besB.size() || besA.size() != y.dim()) {
        throw std::invalid_argument("linear_combination_tensor: length mismatch");
    }
    const std::size_t t = besA.size();
    const std::size_t nA = besA[0].system_qubits();
    const std::size_t nB = besB[0].system_qubits();
    std::size_t a = 0;
    std::size_t b = 0;
    for (std::size_t j = 0; j < t; ++j) {
        if (besA[j].system_qubits() != nA || besB[j].system_qubits() != nB) {
            throw std::invalid_argument("linear_combination_tensor: system size mismatch");
        }
        a = std::max(a, besA[j].ancilla_qubits());
        b = std::max(b, besB[j].ancilla_qubits());
    }
    CVector coeffs(t);
    double claimed_eps = 0.0;
    for (std::size_t j = 0; j < t; ++j) {
        coeffs[j] = y[j] * besA[j].alpha() * besB[j].alpha();
        claimed_eps += std::abs(y[j]) * (besA[j].alpha() * besB[j].epsilon() +
                                         besB[j].alpha() * besA[j].epsilon());
    }
    detail::check_pair_matches(pair, coeffs, "linear_combination_tensor");

    const std::size_t m = pair.m();
    detail::check_cap(m + a + b + nA + nB, "linear_combination_tensor");

    // W in wire order [m][a][nA][b][nB], block-diagonal over the selector.
    const std::size_t blk = pow2(a + b + nA + nB);
    CMatrix w(pow2(m) * blk, pow2(m) * blk);
    for (std::size_t j = 0; j < pow2(m); ++j) {
        const CMatrix u =
            j < t ? kron(embed(besA[j], a - besA[j].ancilla_qubits()).unitary(),
                         embed(besB[j], b - besB[j].ancilla_qubits()).unitary())
                  : CMatrix::identity(blk);
        for (std::size_t r = 0; r < blk; ++r) {
            for (std::size_t c = 0; c < blk; ++c) {
                w(j * blk + r, j * blk + c) = u(r, c);
            }
        }
    }
    // Reorder [m][a][b][nA][nB] (global) <-> [m][a][nA][b][nB] (W).
    const IndexPerm q = wire_block_swap(m + a, b, nA, nB);
    w = apply_perm_cols(w, q);
    w = apply_perm_rows(detail::inverse_perm(q), w);
    w = kron_mul_right(w, pair.v_right());
    w = kron_mul_left(adjoint(pair.v_left()), w);
    return BlockEncoding(nA + nB, m + a + b, pair.mu(), claimed_eps, w);
}

/// (d_max, 1, 0)-encoding of diag(d): U_D = sum_k (R_z(2 arg d_k) R_y(phi_k))
/// kron |k><k| with cos(phi_k / 2) = |d_k| / d_max. arg(0) is taken as 0.
inline BlockEncoding diagonal(const CVector& d) {
    std::size_t m = 0;
    while (pow2(m) < d.dim()) {
        ++m;
    }
    if (d.dim() == 0 || pow2(m) != d.dim()) {
        throw std::invalid_argument("diagonal: length must be a power of two");
    }
    double dmax = 0.0;
    for (std::size_t k = 0; k < d.dim(); ++k) {
        dmax = std::max(dmax, std::abs(d[k]));
    }
    if (dmax <= 0.0) {
        throw precondition_error("diagonal: all-zero vector");
    }
    detail::check_cap(m + 1, "diagonal");
    const std::size_t dim = d.dim();
    CMatrix u(2 * dim, 2 * dim);
    for (std::size_t k = 0; k < dim; ++k) {
        const double ratio = std::min(1.0, std::abs(d[k]) / dmax);
        const CMatrix rk = rotation_z(2.0 * std::arg(d[k])) * rotation_y(2.0 * std::acos(ratio));
        for (std::size_t r = 0; r < 2; ++r) {
            for (std::size_t c = 0; c < 2; ++c) {
                u(r * dim + k, c * dim + k) = rk(r, c);
            }
        }
    }
    return BlockEncoding(m, 1, dmax, 0.0, u);
}

/// Hermitian extension: (U kron |0><0| + U^dag kron |1><1|)(I kron sigma_x)
/// is an (alpha, a, 2 eps)-encoding of Abar = A kron |0><1| + A^dag kron |1><0|.
/// The extension qubit is appended as the least significant system qubit.
inline BlockEncoding extend(const BlockEncoding& be) {
    detail::check_cap(be.total_qubits() + 1, "extend");
    const CMatrix& u = be.unitary();
    const std::size_t dim = u.rows();
    CMatrix ext(2 * dim, 2 * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            ext(2 * i, 2 * j) = u(i, j);
            ext(2 * i + 1, 2 * j + 1) = std::conj(u(j, i));
        }
    }
    // Right-multiply by I kron sigma_x: flip the last bit of the column index.
    IndexPerm flip(2 * dim);
    for (std::size_t x = 0; x < 2 * dim; ++x) {
        flip[x] = x ^ 1u;
    }
    ext = apply_perm_cols(ext, flip);
    return BlockEncoding(be.system_qubits() + 1, be.ancilla_qubits(), be.alpha(),
                         2.0 * be.epsilon(), ext);
}

/// Return from the extension: given a (beta, a, eps)-encoding of
/// Abar^{-1} = A^{-1} kron |1><0| + (A^dag)^{-1} kron |0><1|, produces a
/// (beta, a+1, eps)-encoding of A^{-1}. The extension qubit is rotated to the
/// front of the system block (where it becomes an ancilla), hit with sigma_x,
/// and rotated back; both rotations are explicit permutations that reduce to
/// the circuit's single pair swap when n = 1.
inline BlockEncoding unextend_inverse(const BlockEncoding& be) {
    if (be.system_qubits() < 1) {
        throw std::invalid_argument("unextend_inverse: no extension qubit to remove");
    }
    const std::size_t n = be.system_qubits() - 1;
    const std::size_t at = be.ancilla_qubits();

    const std::size_t dim = be.unitary().rows();
    IndexPerm flip(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        flip[x] = x ^ 1u;
    }
    CMatrix u = apply_perm_cols(be.unitary(), wire_block_swap(at, 1, n, 0));
    u = apply_perm_rows(flip, u);
    u = apply_perm_rows(wire_block_swap(at, n, 1, 0), u);
    return BlockEncoding(n, at + 1, be.alpha(), be.epsilon(), u);
}

}  // namespace qblock
