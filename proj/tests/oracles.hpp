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

// Independent reference computations used only by tests. These deliberately
// avoid the library's own code paths for the quantities they check.

#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include "qblock/linalg.hpp"

namespace qblock::testing {

/// Textbook i-j-k triple loop, independent of the library's loop order.
inline CMatrix naive_mul(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            cplx s{0.0, 0.0};
            for (std::size_t k = 0; k < a.cols(); ++k) {
                s += a(i, k) * b(k, j);
            }
            c(i, j) = s;
        }
    }
    return c;
}

/// Spectral norm by power iteration on A^dag A.
inline double power_iteration_norm(const CMatrix& a, std::size_t iters = 2000) {
    const CMatrix ata = naive_mul(adjoint(a), a);
    const std::size_t n = ata.rows();
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = cplx{1.0 + static_cast<double>(i % 7), 0.3 * static_cast<double>(i % 5)};
    }
    double lam = 0.0;
    for (std::size_t it = 0; it < iters; ++it) {
        std::vector<cplx> w(n, cplx{0.0, 0.0});
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                w[i] += ata(i, j) * v[j];
            }
        }
        double nrm = 0.0;
        for (const auto& x : w) {
            nrm += std::norm(x);
        }
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) {
            return 0.0;
        }
        lam = nrm;
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = w[i] / nrm;
        }
    }
    return std::sqrt(lam);
}

/// f(A) for a diagonalizable 2x2 matrix with distinct eigenvalues, through
/// the spectral projectors P_i = prod_{j != i} (A - lambda_j I)/(lambda_i -
/// lambda_j). Exact for the small acceptance instances.
inline CMatrix f_2x2_spectral(const CMatrix& a, const std::function<cplx(cplx)>& f) {
    const cplx tr = a(0, 0) + a(1, 1);
    const cplx det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    const cplx disc = std::sqrt(tr * tr - 4.0 * det);
    const cplx l1 = 0.5 * (tr + disc);
    const cplx l2 = 0.5 * (tr - disc);
    const CMatrix id = CMatrix::identity(2);
    const CMatrix p1 = (cplx{1.0, 0.0} / (l1 - l2)) * (a - l2 * id);
    const CMatrix p2 = (cplx{1.0, 0.0} / (l2 - l1)) * (a - l1 * id);
    return f(l1) * p1 + f(l2) * p2;
}

/// Plain scaled Taylor series for exp(A); converges fast for the small-norm
/// matrices used in the tests.
inline CMatrix expm_taylor(const CMatrix& a) {
    const std::size_t n = a.rows();
    CMatrix acc = CMatrix::identity(n);
    CMatrix term = CMatrix::identity(n);
    for (std::size_t k = 1; k < 80; ++k) {
        term = (1.0 / static_cast<double>(k)) * naive_mul(term, a);
        acc = acc + term;
        if (max_abs(term) < 1e-18) {
            break;
        }
    }
    return acc;
}

}  // namespace qblock::testing
