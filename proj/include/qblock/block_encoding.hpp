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
#include <iostream>
#include <random>
#include <string>

#include "qblock/circuits.hpp"
#include "qblock/linalg.hpp"

namespace qblock {

namespace detail {

// Full unitarity check is O(dim^3); above this size we spot-check columns
// instead (O(k dim^2)), which still catches any constructor that produced a
// non-unitary composite.
inline constexpr std::size_t full_unitary_check_dim = 512;

inline bool unitary_columns_ok(const CMatrix& u, double tol) {
    const std::size_t n = u.rows();
    std::mt19937_64 rng(0x5eedULL ^ n);
    const std::size_t samples = 32;
    for (std::size_t s = 0; s < samples; ++s) {
        const std::size_t j = rng() % n;
        // || U^dag (U e_j) - e_j ||
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cplx dot{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k) {
                dot += std::conj(u(k, i)) * u(k, j);
            }
            if (i == j) {
                dot -= 1.0;
            }
            acc += std::norm(dot);
        }
        if (std::sqrt(acc) > tol) {
            return false;
        }
    }
    return true;
}

}  // namespace detail

/// A unitary together with its (alpha, a, epsilon) contract: U block-encodes
/// the n-qubit matrix A when ||A - alpha (<0^a| kron I_n) U (|0^a> kron I_n)||
/// <= epsilon. Ancilla qubits are the most significant ones.
class BlockEncoding {
  public:
    BlockEncoding(std::size_t n, std::size_t a, double alpha, double epsilon, CMatrix unitary)
        : n_(n), a_(a), alpha_(alpha), epsilon_(epsilon), u_(std::move(unitary)) {
        if (alpha_ <= 0.0) {
            throw std::invalid_argument("BlockEncoding: alpha must be positive");
        }
        if (epsilon_ < 0.0) {
            throw std::invalid_argument("BlockEncoding: epsilon must be nonnegative");
        }
        if (n_ + a_ > default_qubit_cap) {
            throw std::invalid_argument("BlockEncoding: " + std::to_string(n_ + a_) +
                                        " qubits exceed the simulation cap");
        }
        const std::size_t dim = pow2(n_ + a_);
        if (u_.rows() != dim || u_.cols() != dim) {
            throw std::invalid_argument("BlockEncoding: unitary has wrong dimension");
        }
        const bool ok = dim <= detail::full_unitary_check_dim
                            ? is_unitary(u_, 1e-9)
                            : detail::unitary_columns_ok(u_, 1e-9);
        if (!ok) {
            throw std::invalid_argument("BlockEncoding: matrix is not unitary to 1e-9");
        }
    }

    std::size_t system_qubits() const { return n_; }
    std::size_t ancilla_qubits() const { return a_; }
    std::size_t total_qubits() const { return n_ + a_; }
    double alpha() const { return alpha_; }
    double epsilon() const { return epsilon_; }
    const CMatrix& unitary() const { return u_; }

  private:
    std::size_t n_;
    std::size_t a_;
    double alpha_;
    double epsilon_;
    CMatrix u_;
};

/// alpha * (<0^a| kron I_n) U (|0^a> kron I_n): the matrix the encoding
/// actually represents. With ancillas most significant this is just the
/// scaled top-left 2^n x 2^n block.
inline CMatrix encoded_block(const BlockEncoding& be) {
    const std::size_t dim = pow2(be.system_qubits());
    CMatrix blk(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            blk(i, j) = be.alpha() * be.unitary()(i, j);
        }
    }
    return blk;
}

/// Measured contract error ||target - encoded_block(be)|| in spectral norm.
/// Callers assert measured <= claimed epsilon plus numerical slack. Warns
/// (does not fail) when ||target|| > alpha, which the framework assumes.
inline double verify(const BlockEncoding& be, const CMatrix& target) {
    const std::size_t dim = pow2(be.system_qubits());
    if (target.rows() != dim || target.cols() != dim) {
        throw std::invalid_argument("verify: target dimension mismatch");
    }
    if (spectral_norm(target) > be.alpha() + 1e-9) {
        std::cerr << "[qblock] warning: ||target|| exceeds the encoding scale alpha\n";
    }
    return spectral_norm(target - encoded_block(be));
}

/// (1, 0, 0)-block-encoding of a unitary.
inline BlockEncoding trivial(const CMatrix& u) {
    if (!is_unitary(u, 1e-9)) {
        throw std::invalid_argument("trivial: input is not unitary");
    }
    std::size_t n = 0;
    while (pow2(n) < u.rows()) {
        ++n;
    }
    if (pow2(n) != u.rows()) {
        throw std::invalid_argument("trivial: dimension is not a power of two");
    }
    return BlockEncoding(n, 0, 1.0, 0.0, u);
}

/// Same unitary reinterpreted as a (c alpha, a, c epsilon)-encoding of cA.
inline BlockEncoding rescale(const BlockEncoding& be, double c) {
    if (c <= 0.0) {
        throw std::invalid_argument("rescale: factor must be positive");
    }
    return BlockEncoding(be.system_qubits(), be.ancilla_qubits(), c * be.alpha(),
                         c * be.epsilon(), be.unitary());
}

/// I_b kron U: b extra (inert) ancilla qubits, same contract otherwise.
inline BlockEncoding embed(const BlockEncoding& be, std::size_t b) {
    if (b == 0) {
        return be;
    }
    if (be.total_qubits() + b > default_qubit_cap) {
        throw std::invalid_argument("embed: exceeds the simulation cap");
    }
    return BlockEncoding(be.system_qubits(), be.ancilla_qubits() + b, be.alpha(), be.epsilon(),
                         kron(CMatrix::identity(pow2(b)), be.unitary()));
}

/// (alpha, 1, claimed_eps)-encoding of an arbitrary matrix with ||A|| <= alpha,
/// realized by the unitary dilation of A/alpha. The workhorse for turning
/// dense test matrices into encodings.
inline BlockEncoding dilation_encoding(const CMatrix& a, double alpha,
                                       double claimed_eps = 0.0) {
    if (alpha <= 0.0) {
        throw std::invalid_argument("dilation_encoding: alpha must be positive");
    }
    std::size_t n = 0;
    while (pow2(n) < a.rows()) {
        ++n;
    }
    if (!a.is_square() || pow2(n) != a.rows()) {
        throw std::invalid_argument("dilation_encoding: need a square power-of-two matrix");
    }
    return BlockEncoding(n, 1, alpha, claimed_eps, dilate_to_unitary((1.0 / alpha) * a));
}

}  // namespace qblock
