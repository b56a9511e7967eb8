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
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qblock/linalg.hpp"

namespace qblock {

// Qubit convention used throughout: big-endian, qubit 1 is the most
// significant bit of the basis index. Registers listed first sit on the most
// significant qubits.

/// Largest register the simulator will materialize as a dense operator.
inline constexpr std::size_t default_qubit_cap = 14;

inline std::size_t pow2(std::size_t k) { return std::size_t{1} << k; }

/// Named, ordered qubit registers with a total-size cap.
class RegisterLayout {
  public:
    RegisterLayout(std::vector<std::pair<std::string, std::size_t>> regs,
                   std::size_t cap = default_qubit_cap)
        : regs_(std::move(regs)) {
        std::set<std::string> seen;
        for (const auto& [label, count] : regs_) {
            if (!seen.insert(label).second) {
                throw std::invalid_argument("RegisterLayout: duplicate label '" + label + "'");
            }
            total_ += count;
        }
        if (total_ > cap) {
            throw std::invalid_argument("RegisterLayout: " + std::to_string(total_) +
                                        " qubits exceed the simulation cap of " +
                                        std::to_string(cap));
        }
    }

    std::size_t total() const { return total_; }
    std::size_t size() const { return regs_.size(); }
    const std::pair<std::string, std::size_t>& reg(std::size_t i) const { return regs_[i]; }

  private:
    std::vector<std::pair<std::string, std::size_t>> regs_;
    std::size_t total_ = 0;
};

/// Rank-1 projector |j><j| on m qubits.
inline CMatrix projector(std::size_t j, std::size_t m) {
    const std::size_t dim = pow2(m);
    if (j >= dim) {
        throw std::invalid_argument("projector: index out of range");
    }
    CMatrix p(dim, dim);
    p(j, j) = 1.0;
    return p;
}

/// Permutation on (lead + p + q + trail) qubits exchanging the p-qubit and
/// q-qubit blocks: |l>|u>|v>|t> -> |l>|v>|u>|t>.
inline IndexPerm wire_block_swap(std::size_t lead, std::size_t p, std::size_t q,
                                 std::size_t trail) {
    const std::size_t dim = pow2(lead + p + q + trail);
    IndexPerm sigma(dim);
    const std::size_t dt = pow2(trail);
    const std::size_t dq = pow2(q);
    const std::size_t dp = pow2(p);
    for (std::size_t x = 0; x < dim; ++x) {
        const std::size_t t = x % dt;
        const std::size_t v = (x / dt) % dq;
        const std::size_t u = (x / (dt * dq)) % dp;
        const std::size_t l = x / (dt * dq * dp);
        sigma[x] = ((l * dq + v) * dp + u) * dt + t;
    }
    return sigma;
}

/// Unitary exchanging qubits i and j (1-based, qubit 1 most significant).
inline CMatrix swap_pair(std::size_t i, std::size_t j, std::size_t total) {
    if (i < 1 || j < 1 || i > total || j > total) {
        throw std::invalid_argument("swap_pair: qubit index out of range");
    }
    const std::size_t dim = pow2(total);
    const std::size_t bi = total - i;  // bit positions
    const std::size_t bj = total - j;
    IndexPerm sigma(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        const std::size_t vi = (x >> bi) & 1u;
        const std::size_t vj = (x >> bj) & 1u;
        std::size_t y = x;
        y &= ~((std::size_t{1} << bi) | (std::size_t{1} << bj));
        y |= vi << bj;
        y |= vj << bi;
        sigma[x] = y;
    }
    return perm_to_matrix(sigma);
}

/// Block swap SWAP_{a,b} on the leading a+b qubits: moves the a-qubit zero
/// register past a b-qubit register, SWAP_{a,b}(|0^a> kron x) = x kron |0^a>.
/// Realized as a product of pair swaps (a qubit-position rotation), which
/// satisfies the identity for every register state x and all a, b.
inline CMatrix swap_block(std::size_t a, std::size_t b, std::size_t total) {
    if (a + b > total) {
        throw std::invalid_argument("swap_block: a + b exceeds register size");
    }
    return perm_to_matrix(wire_block_swap(0, a, b, total - a - b));
}

/// R_y(phi) = e^{i (phi/2) sigma_y}.
inline CMatrix rotation_y(double phi) {
    const double c = std::cos(phi / 2.0);
    const double s = std::sin(phi / 2.0);
    return CMatrix::from_rows({{c, s}, {-s, c}});
}

/// R_z(phi) = e^{i (phi/2) sigma_z}.
inline CMatrix rotation_z(double phi) {
    return CMatrix::from_rows({{std::polar(1.0, phi / 2.0), 0.0},
                               {0.0, std::polar(1.0, -phi / 2.0)}});
}

/// The phase ladder diag(e^{i theta_0}, ..., e^{i theta_{M-1}}) with
/// theta_k = 2 pi k / 2^m, assembled as a tensor product of single-qubit
/// phase gates diag(1, e^{2 pi i / 2^{j+1}}), j = 0 on the most significant
/// qubit. (The j-th qubit contributes 2 pi / 2^{j+1} per set bit, which sums
/// to exactly theta_k.)
inline CMatrix phase_R_gates(std::size_t m) {
    if (m < 1) {
        throw std::invalid_argument("phase_R_gates: m must be >= 1");
    }
    CMatrix res = CMatrix::from_rows({{1.0}});
    for (std::size_t j = 0; j < m; ++j) {
        const double angle = 2.0 * std::numbers::pi / static_cast<double>(pow2(j + 1));
        const CMatrix rj = CMatrix::from_rows({{1.0, 0.0}, {0.0, std::polar(1.0, angle)}});
        res = kron(res, rj);
    }
    return res;
}

/// Multiplexed control: applies u on the target registers when the selector
/// register (the first register of the layout) matches the bit pattern, and
/// identity otherwise.
inline CMatrix controlled(const std::string& selector_pattern, const CMatrix& u,
                          const RegisterLayout& layout) {
    if (layout.size() < 2) {
        throw std::invalid_argument("controlled: layout needs a selector and a target register");
    }
    const std::size_t s = layout.reg(0).second;
    if (selector_pattern.size() != s) {
        throw std::invalid_argument("controlled: pattern length does not match selector size");
    }
    std::size_t sel = 0;
    for (char ch : selector_pattern) {
        if (ch != '0' && ch != '1') {
            throw std::invalid_argument("controlled: pattern must be over {0,1}");
        }
        sel = (sel << 1) | static_cast<std::size_t>(ch == '1');
    }
    const std::size_t t = layout.total() - s;
    const std::size_t dt = pow2(t);
    if (u.rows() != dt || u.cols() != dt) {
        throw std::invalid_argument("controlled: target dimension mismatch");
    }
    CMatrix res(pow2(layout.total()), pow2(layout.total()));
    for (std::size_t j = 0; j < pow2(s); ++j) {
        for (std::size_t x = 0; x < dt; ++x) {
            if (j == sel) {
                for (std::size_t y = 0; y < dt; ++y) {
                    res(j * dt + x, j * dt + y) = u(x, y);
                }
            } else {
                res(j * dt + x, j * dt + x) = 1.0;
            }
        }
    }
    return res;
}

inline CMatrix pauli_x() { return CMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }
inline CMatrix pauli_y() {
    return CMatrix::from_rows({{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}});
}
inline CMatrix pauli_z() { return CMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }

}  // namespace qblock
