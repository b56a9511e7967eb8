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

#include "qblock/circuits.hpp"
#include "qblock/linalg.hpp"

namespace qblock {

/// A (mu, m, delta)-state-preparation pair: unitaries (V_L, V_R) whose
/// |0^m>-columns carry amplitudes c, d with sum_{j<t} |mu c_j^* d_j - v_j|
/// <= delta and c_j^* d_j = 0 on the padded tail j >= t.
class StatePreparationPair {
  public:
    StatePreparationPair(std::size_t m, double mu, double delta, CMatrix v_left, CMatrix v_right,
                         std::size_t t)
        : m_(m), mu_(mu), delta_(delta), vl_(std::move(v_left)), vr_(std::move(v_right)), t_(t) {
        const std::size_t dim = pow2(m_);
        if (mu_ <= 0.0 || delta_ < 0.0) {
            throw std::invalid_argument("StatePreparationPair: bad (mu, delta)");
        }
        if (t_ > dim) {
            throw std::invalid_argument("StatePreparationPair: active length exceeds 2^m");
        }
        if (vl_.rows() != dim || vr_.rows() != dim || !is_unitary(vl_, 1e-9) ||
            !is_unitary(vr_, 1e-9)) {
            throw std::invalid_argument("StatePreparationPair: V_L, V_R must be 2^m unitaries");
        }
        for (std::size_t j = t_; j < dim; ++j) {
            if (std::abs(std::conj(vl_(j, 0)) * vr_(j, 0)) > 1e-12) {
                throw std::invalid_argument(
                    "StatePreparationPair: padded tail amplitudes do not vanish");
            }
        }
    }

    std::size_t m() const { return m_; }
    double mu() const { return mu_; }
    double delta() const { return delta_; }
    std::size_t t() const { return t_; }
    const CMatrix& v_left() const { return vl_; }
    const CMatrix& v_right() const { return vr_; }

    /// c = V_L |0^m>.
    CVector left_amplitudes() const {
        CVector c(pow2(m_));
        for (std::size_t j = 0; j < c.dim(); ++j) {
            c[j] = vl_(j, 0);
        }
        return c;
    }

    /// d = V_R |0^m>.
    CVector right_amplitudes() const {
        CVector d(pow2(m_));
        for (std::size_t j = 0; j < d.dim(); ++j) {
            d[j] = vr_(j, 0);
        }
        return d;
    }

  private:
    std::size_t m_;
    double mu_;
    double delta_;
    CMatrix vl_;
    CMatrix vr_;
    std::size_t t_;
};

/// The sqrt construction: amplitudes c_j = conj(sqrt(v_j)) / sqrt(||v||_1) and
/// d_j = sqrt(v_j) / sqrt(||v||_1) under the principal branch, completed to
/// unitaries. Taking c_j = conj(sqrt(v_j)) (rather than sqrt(conj(v_j)), which
/// differs on the negative real axis) makes mu c_j^* d_j = v_j hold exactly
/// for every complex v_j, so the pair is (||v||_1, m, 0).
inline StatePreparationPair build_sqrt_pair(const CVector& v, std::size_t m) {
    const std::size_t dim = pow2(m);
    if (v.dim() == 0 || v.dim() > dim) {
        throw std::invalid_argument("build_sqrt_pair: vector length must be in [1, 2^m]");
    }
    const double mu = v.norm1();
    if (mu <= 0.0) {
        throw precondition_error("build_sqrt_pair: zero vector");
    }
    const double root_mu = std::sqrt(mu);
    CVector c(dim);
    CVector d(dim);
    for (std::size_t j = 0; j < v.dim(); ++j) {
        const cplx s = std::sqrt(v[j]);  // principal branch
        c[j] = std::conj(s) / root_mu;
        d[j] = s / root_mu;
    }
    return StatePreparationPair(m, mu, 0.0, complete_to_unitary(c), complete_to_unitary(d),
                                v.dim());
}

/// Measured delta: sum_{j<t} |mu c_j^* d_j - v_j|, plus the largest residual
/// c_j^* d_j on the padded tail (which must be ~0 for a valid pair).
inline double verify_pair(const StatePreparationPair& p, const CVector& v) {
    if (v.dim() != p.t()) {
        throw std::invalid_argument("verify_pair: vector length does not match active length");
    }
    const CVector c = p.left_amplitudes();
    const CVector d = p.right_amplitudes();
    double sum = 0.0;
    for (std::size_t j = 0; j < p.t(); ++j) {
        sum += std::abs(p.mu() * std::conj(c[j]) * d[j] - v[j]);
    }
    double tail = 0.0;
    for (std::size_t j = p.t(); j < c.dim(); ++j) {
        tail = std::max(tail, std::abs(std::conj(c[j]) * d[j]));
    }
    return sum + tail;
}

}  // namespace qblock
