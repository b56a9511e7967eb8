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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "qblock/errors.hpp"

namespace qblock {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. The universal carrier for every operator
/// in this library; all dimensions are small enough (<= 2^14) that dense
/// storage and O(n^3) algorithms are the right tool.
class CMatrix {
  public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols, cplx{0.0, 0.0}) {}

    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static CMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
        std::size_t r = rows.size();
        std::size_t c = r ? rows.begin()->size() : 0;
        CMatrix m(r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) {
                throw std::invalid_argument("CMatrix::from_rows: ragged rows");
            }
            std::size_t j = 0;
            for (const auto& v : row) {
                m(i, j++) = v;
            }
            ++i;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    cplx* row_ptr(std::size_t i) { return e_.data() + i * cols_; }
    const cplx* row_ptr(std::size_t i) const { return e_.data() + i * cols_; }

    bool all_finite() const {
        for (const auto& v : e_) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                return false;
            }
        }
        return true;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> e_;
};

/// Dense complex vector (amplitude vectors, coefficient vectors).
class CVector {
  public:
    CVector() = default;
    explicit CVector(std::size_t dim) : e_(dim, cplx{0.0, 0.0}) {}
    CVector(std::initializer_list<cplx> vals) : e_(vals) {}
    explicit CVector(std::vector<cplx> vals) : e_(std::move(vals)) {}

    std::size_t dim() const { return e_.size(); }
    cplx& operator[](std::size_t i) { return e_[i]; }
    const cplx& operator[](std::size_t i) const { return e_[i]; }

    double norm1() const {
        double s = 0.0;
        for (const auto& v : e_) {
            s += std::abs(v);
        }
        return s;
    }

    double norm2() const {
        double s = 0.0;
        for (const auto& v : e_) {
            s += std::norm(v);
        }
        return std::sqrt(s);
    }

    bool all_finite() const {
        for (const auto& v : e_) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                return false;
            }
        }
        return true;
    }

  private:
    std::vector<cplx> e_;
};

inline CMatrix mul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("mul: dimension mismatch (" + std::to_string(a.cols()) +
                                    " vs " + std::to_string(b.rows()) + ")");
    }
    CMatrix c(a.rows(), b.cols());
    // i-k-j order keeps the inner loop on contiguous rows of b and c.
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx* ci = c.row_ptr(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{0.0, 0.0}) {
                continue;
            }
            const cplx* bk = b.row_ptr(k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                ci[j] += aik * bk[j];
            }
        }
    }
    return c;
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{0.0, 0.0}) {
                continue;
            }
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return c;
}

inline CMatrix adjoint(const CMatrix& a) {
    CMatrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            c(j, i) = std::conj(a(i, j));
        }
    }
    return c;
}

inline CMatrix operator*(const CMatrix& a, const CMatrix& b) { return mul(a, b); }

inline CMatrix operator*(cplx s, const CMatrix& a) {
    CMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            c(i, j) = s * a(i, j);
        }
    }
    return c;
}

inline CMatrix operator*(double s, const CMatrix& a) { return cplx{s, 0.0} * a; }

inline CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("operator+: dimension mismatch");
    }
    CMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            c(i, j) = a(i, j) + b(i, j);
        }
    }
    return c;
}

inline CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("operator-: dimension mismatch");
    }
    CMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            c(i, j) = a(i, j) - b(i, j);
        }
    }
    return c;
}

inline double frobenius_norm(const CMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            s += std::norm(a(i, j));
        }
    }
    return std::sqrt(s);
}

inline double max_abs(const CMatrix& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            m = std::max(m, std::abs(a(i, j)));
        }
    }
    return m;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) { return max_abs(a - b); }

inline bool is_hermitian(const CMatrix& a, double tol = 1e-10) {
    if (!a.is_square()) {
        return false;
    }
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = i; j < a.cols(); ++j) {
            if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) {
                return false;
            }
        }
    }
    return true;
}

struct EigResult {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // column k is the eigenvector of values[k]
};

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi with complex
/// rotations. Accurate and simple at the dimensions this library simulates.
/// Requires ||h - h^dag|| <= 1e-10 entrywise.
inline EigResult eig_hermitian(const CMatrix& h) {
    if (!h.is_square()) {
        throw std::invalid_argument("eig_hermitian: matrix must be square");
    }
    if (!is_hermitian(h, 1e-10)) {
        throw precondition_error("eig_hermitian: input is not Hermitian");
    }
    const std::size_t n = h.rows();
    CMatrix a = h;
    CMatrix v = CMatrix::identity(n);
    if (n == 0) {
        return {{}, v};
    }

    const double scale = std::max(frobenius_norm(a), 1e-300);
    const double stop = 1e-15 * scale;
    const int max_sweeps = 60;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += std::norm(a(p, q));
            }
        }
        off = std::sqrt(2.0 * off);
        if (off <= stop) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double rho = std::abs(apq);
                if (rho <= 1e-18 * scale) {
                    continue;
                }
                const cplx phase = apq / rho;  // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * rho);
                const double sgn = theta >= 0.0 ? 1.0 : -1.0;
                const double t = sgn / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const cplx sph = s * phase;        // s e^{i phi}
                const cplx sphc = std::conj(sph);  // s e^{-i phi}

                // Column update: A <- A J with J = [[c, s e^{i phi}], [-s e^{-i phi}, c]]
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = c * akp - sphc * akq;
                    a(k, q) = sph * akp + c * akq;
                }
                // Row update: A <- J^dag A
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = c * apk - sph * aqk;
                    a(q, k) = sphc * apk + c * aqk;
                }
                // Accumulate eigenvectors: V <- V J
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = c * vkp - sphc * vkq;
                    v(k, q) = sph * vkp + c * vkq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

    EigResult res;
    res.values.resize(n);
    res.vectors = CMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        res.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) {
            res.vectors(i, k) = v(i, order[k]);
        }
    }
    return res;
}

/// Largest singular value, via eig_hermitian(A^dag A). Relative accuracy is
/// far better than the 1e-10 contract at these sizes.
inline double spectral_norm(const CMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) {
        return 0.0;
    }
    EigResult e = eig_hermitian(adjoint(a) * a);
    const double lmax = std::max(0.0, e.values.back());
    return std::sqrt(lmax);
}

inline bool is_unitary(const CMatrix& u, double tol = 1e-9) {
    if (!u.is_square()) {
        return false;
    }
    // Frobenius norm of U^dag U - I dominates the spectral norm, so this is
    // the conservative direction for a "unitary to tol" check.
    const std::size_t n = u.rows();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cplx dot{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k) {
                dot += std::conj(u(k, i)) * u(k, j);
            }
            if (i == j) {
                dot -= 1.0;
            }
            s += std::norm(dot);
        }
    }
    return std::sqrt(s) <= tol;
}

/// Hermitian PSD square root. Eigenvalues in [-clamp_tol, 0) are clamped to 0;
/// anything lower throws.
inline CMatrix sqrt_psd(const CMatrix& h, double clamp_tol = 1e-12) {
    EigResult e = eig_hermitian(h);
    const std::size_t n = h.rows();
    const double scale = std::max(1.0, std::abs(e.values.empty() ? 0.0 : e.values.back()));
    for (double& lam : e.values) {
        if (lam < -clamp_tol * scale) {
            throw precondition_error("sqrt_psd: eigenvalue " + std::to_string(lam) +
                                     " below clamp tolerance");
        }
        lam = std::max(lam, 0.0);
    }
    CMatrix res(n, n);
    // V diag(sqrt(lam)) V^dag
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cplx s{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k) {
                s += e.vectors(i, k) * std::sqrt(e.values[k]) * std::conj(e.vectors(j, k));
            }
            res(i, j) = s;
        }
    }
    return res;
}

/// Unitary dilation of a contraction: [[b, sqrt(I-bb*)], [sqrt(I-b*b), -b*]].
/// The dilation qubit is the most significant one, so the top-left block of
/// the result is b itself. Inputs with norm in (1, 1+1e-10] are renormalized.
inline CMatrix dilate_to_unitary(const CMatrix& b) {
    if (!b.is_square()) {
        throw std::invalid_argument("dilate_to_unitary: matrix must be square");
    }
    const double nu = spectral_norm(b);
    if (nu > 1.0 + 1e-10) {
        throw precondition_error("dilate_to_unitary: norm " + std::to_string(nu) +
                                 " exceeds 1");
    }
    CMatrix bc = b;
    if (nu > 1.0) {
        bc = (1.0 / nu) * b;
    }
    const std::size_t n = b.rows();
    const CMatrix id = CMatrix::identity(n);
    const CMatrix bdag = adjoint(bc);
    const CMatrix s1 = sqrt_psd(id - bc * bdag);
    const CMatrix s2 = sqrt_psd(id - bdag * bc);
    CMatrix u(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            u(i, j) = bc(i, j);
            u(i, n + j) = s1(i, j);
            u(n + i, j) = s2(i, j);
            u(n + i, n + j) = -bdag(i, j);
        }
    }
    return u;
}

/// Unitary whose first column is the given unit vector: a complex Householder
/// reflection times a phase correction on column 0.
inline CMatrix complete_to_unitary(const CVector& v) {
    const std::size_t n = v.dim();
    if (n == 0) {
        throw std::invalid_argument("complete_to_unitary: empty vector");
    }
    if (std::abs(v.norm2() - 1.0) > 1e-10) {
        throw precondition_error("complete_to_unitary: vector is not normalized");
    }
    const double a0 = std::abs(v[0]);
    const cplx phase = a0 > 1e-300 ? v[0] / a0 : cplx{1.0, 0.0};

    std::vector<cplx> u(n);
    double unorm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = v[i] - (i == 0 ? phase : cplx{0.0, 0.0});
        unorm2 += std::norm(u[i]);
    }
    CMatrix res = CMatrix::identity(n);
    if (unorm2 > 1e-26) {
        // H = I - 2 u u^dag / |u|^2 sends phase*e0 to v.
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                res(i, j) -= 2.0 * u[i] * std::conj(u[j]) / unorm2;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        res(i, 0) *= phase;
    }
    return res;
}

/// Dense inverse by LU with partial pivoting. Throws on (numerically)
/// singular input.
inline CMatrix inverse(const CMatrix& a) {
    if (!a.is_square()) {
        throw std::invalid_argument("inverse: matrix must be square");
    }
    const std::size_t n = a.rows();
    CMatrix lu = a;
    CMatrix inv = CMatrix::identity(n);
    const double tol = 1e-14 * std::max(1.0, max_abs(a));
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(lu(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double cand = std::abs(lu(r, col));
            if (cand > best) {
                best = cand;
                piv = r;
            }
        }
        if (best <= tol) {
            throw precondition_error("inverse: matrix is singular to working precision");
        }
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(lu(col, j), lu(piv, j));
                std::swap(inv(col, j), inv(piv, j));
            }
        }
        const cplx d = lu(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            lu(col, j) /= d;
            inv(col, j) /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) {
                continue;
            }
            const cplx f = lu(r, col);
            if (f == cplx{0.0, 0.0}) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                lu(r, j) -= f * lu(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

// -------------------------------------------------------------------------
// Structured products. Register reshuffles in the combinators are index
// permutations and kron-structured factors; applying them as such keeps the
// big compositions at O(dim^2) instead of O(dim^3).
// -------------------------------------------------------------------------

/// Basis-index permutation sigma: |x> -> |sigma(x)>.
using IndexPerm = std::vector<std::size_t>;

/// P_sigma * m, i.e. row x of m lands on row sigma(x).
inline CMatrix apply_perm_rows(const IndexPerm& sigma, const CMatrix& m) {
    if (sigma.size() != m.rows()) {
        throw std::invalid_argument("apply_perm_rows: dimension mismatch");
    }
    CMatrix res(m.rows(), m.cols());
    for (std::size_t x = 0; x < m.rows(); ++x) {
        const cplx* src = m.row_ptr(x);
        cplx* dst = res.row_ptr(sigma[x]);
        std::copy(src, src + m.cols(), dst);
    }
    return res;
}

/// m * P_sigma, i.e. column sigma(x) of m lands on column x.
inline CMatrix apply_perm_cols(const CMatrix& m, const IndexPerm& sigma) {
    if (sigma.size() != m.cols()) {
        throw std::invalid_argument("apply_perm_cols: dimension mismatch");
    }
    CMatrix res(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const cplx* src = m.row_ptr(i);
        cplx* dst = res.row_ptr(i);
        for (std::size_t x = 0; x < m.cols(); ++x) {
            dst[x] = src[sigma[x]];
        }
    }
    return res;
}

inline CMatrix perm_to_matrix(const IndexPerm& sigma) {
    CMatrix p(sigma.size(), sigma.size());
    for (std::size_t x = 0; x < sigma.size(); ++x) {
        p(sigma[x], x) = 1.0;
    }
    return p;
}

/// (I_lead kron p kron I_trail) * w, with trail deduced from w.
inline CMatrix kron_mul_left(const CMatrix& p, const CMatrix& w, std::size_t lead_dim = 1) {
    const std::size_t pd = p.rows();
    if (pd == 0 || !p.is_square() || lead_dim == 0 || w.rows() % (lead_dim * pd) != 0) {
        throw std::invalid_argument("kron_mul_left: dimension mismatch");
    }
    const std::size_t trail = w.rows() / (lead_dim * pd);
    CMatrix res(w.rows(), w.cols());
    for (std::size_t l = 0; l < lead_dim; ++l) {
        for (std::size_t ip = 0; ip < pd; ++ip) {
            for (std::size_t lp = 0; lp < pd; ++lp) {
                const cplx f = p(ip, lp);
                if (f == cplx{0.0, 0.0}) {
                    continue;
                }
                for (std::size_t ik = 0; ik < trail; ++ik) {
                    const cplx* src = w.row_ptr((l * pd + lp) * trail + ik);
                    cplx* dst = res.row_ptr((l * pd + ip) * trail + ik);
                    for (std::size_t j = 0; j < w.cols(); ++j) {
                        dst[j] += f * src[j];
                    }
                }
            }
        }
    }
    return res;
}

/// w * (I_lead kron p kron I_trail), with trail deduced from w.
inline CMatrix kron_mul_right(const CMatrix& w, const CMatrix& p, std::size_t lead_dim = 1) {
    const std::size_t pd = p.rows();
    if (pd == 0 || !p.is_square() || lead_dim == 0 || w.cols() % (lead_dim * pd) != 0) {
        throw std::invalid_argument("kron_mul_right: dimension mismatch");
    }
    const std::size_t trail = w.cols() / (lead_dim * pd);
    CMatrix res(w.rows(), w.cols());
    for (std::size_t i = 0; i < w.rows(); ++i) {
        const cplx* src = w.row_ptr(i);
        cplx* dst = res.row_ptr(i);
        for (std::size_t l = 0; l < lead_dim; ++l) {
            for (std::size_t lp = 0; lp < pd; ++lp) {
                for (std::size_t jp = 0; jp < pd; ++jp) {
                    const cplx f = p(lp, jp);
                    if (f == cplx{0.0, 0.0}) {
                        continue;
                    }
                    for (std::size_t jk = 0; jk < trail; ++jk) {
                        dst[(l * pd + jp) * trail + jk] += src[(l * pd + lp) * trail + jk] * f;
                    }
                }
            }
        }
    }
    return res;
}

}  // namespace qblock
