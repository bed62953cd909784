/*
 * Copyright 2026 The magic-minors authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MAGICMINORS_MATRIX_HPP
#define MAGICMINORS_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "magicminors/errors.hpp"

namespace magicminors {

using cplx = std::complex<double>;

inline constexpr double kSkewSymmetryTol = 1e-12;

// ---------------------------------------------------------------------------
// Index machinery (1-based, matching the printed formulas).
// ---------------------------------------------------------------------------

// Strictly increasing list of 1-based indices.
class IndexSet {
public:
    IndexSet() = default;

    explicit IndexSet(std::vector<int> idx) : idx_(std::move(idx)) {
        for (std::size_t i = 0; i < idx_.size(); ++i) {
            if (idx_[i] < 1) throw RangeError("IndexSet: indices are 1-based and positive");
            if (i > 0 && idx_[i] <= idx_[i - 1])
                throw RangeError("IndexSet: indices must be strictly increasing");
        }
    }

    // Conversion from 0-based enumeration subsets.
    static IndexSet from_zero_based(const std::vector<int>& zb) {
        std::vector<int> v(zb.size());
        for (std::size_t i = 0; i < zb.size(); ++i) v[i] = zb[i] + 1;
        return IndexSet(std::move(v));
    }

    int size() const { return static_cast<int>(idx_.size()); }
    int operator[](int i) const { return idx_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& values() const { return idx_; }

    void check_range(int n, const char* what) const {
        if (!idx_.empty() && idx_.back() > n)
            throw RangeError(std::string(what) + ": index exceeds dimension");
    }

private:
    std::vector<int> idx_;
};

// Bijection on {1..n} given as an image list: i -> image[i-1].
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<int> image) : image_(std::move(image)) {
        const int n = static_cast<int>(image_.size());
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        for (int v : image_) {
            if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)])
                throw ConfigError("Permutation: image list is not a bijection on {1..n}");
            seen[static_cast<std::size_t>(v - 1)] = 1;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> im(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) im[static_cast<std::size_t>(i)] = i + 1;
        return Permutation(std::move(im));
    }

    int size() const { return static_cast<int>(image_.size()); }
    int operator()(int i) const { return image_[static_cast<std::size_t>(i - 1)]; }
    const std::vector<int>& image() const { return image_; }

private:
    std::vector<int> image_;
};

// ---------------------------------------------------------------------------
// Matrix
// ---------------------------------------------------------------------------

class Matrix {
public:
    Matrix() : rows_(0), cols_(0), real_(true) {}

    Matrix(int rows, int cols, bool real = true)
        : rows_(rows), cols_(cols), real_(real),
          a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
        if (rows < 0 || cols < 0) throw DimensionError("Matrix: negative dimension");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_real() const { return real_; }
    bool square() const { return rows_ == cols_; }

    cplx at(int i, int j) const { return a_[idx(i, j)]; }

    void set(int i, int j, double v) { a_[idx(i, j)] = v; }

    void set(int i, int j, cplx v) {
        a_[idx(i, j)] = v;
        if (v.imag() != 0.0) real_ = false;
    }

    const std::vector<cplx>& data() const { return a_; }

    // Flat real copy; only valid for real matrices (used by the enumeration
    // fast path).
    std::vector<double> real_data() const {
        if (!real_) throw DomainError("Matrix: real_data on complex matrix");
        std::vector<double> out(a_.size());
        for (std::size_t i = 0; i < a_.size(); ++i) out[i] = a_[i].real();
        return out;
    }

private:
    std::size_t idx(int i, int j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
            throw RangeError("Matrix: index out of range");
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(j);
    }

    int rows_, cols_;
    bool real_;
    std::vector<cplx> a_;
};

// Antisymmetric matrix of even dimension. Construction antisymmetrizes the
// input as (A - A^T)/2, zeroes the diagonal exactly, and rejects inputs whose
// correction exceeds kSkewSymmetryTol in max-norm.
class SkewMatrix {
public:
    SkewMatrix() = default;

    explicit SkewMatrix(const Matrix& a) { init(a); }

    explicit SkewMatrix(int n, bool real = true) : m_(n, n, real) {
        if (n % 2 != 0) throw DimensionError("SkewMatrix: dimension must be even");
    }

    int size() const { return m_.rows(); }
    bool is_real() const { return m_.is_real(); }
    cplx at(int i, int j) const { return m_.at(i, j); }

    // Sets the (i,j) entry and its antisymmetric image.
    void set_pair(int i, int j, cplx v) {
        if (i == j) {
            if (v != cplx(0.0)) throw DomainError("SkewMatrix: nonzero diagonal");
            return;
        }
        m_.set(i, j, v);
        m_.set(j, i, -v);
    }

    const Matrix& as_matrix() const { return m_; }

private:
    void init(const Matrix& a) {
        if (!a.square()) throw DimensionError("SkewMatrix: input must be square");
        if (a.rows() % 2 != 0) throw DimensionError("SkewMatrix: dimension must be even");
        const int n = a.rows();
        m_ = Matrix(n, n, a.is_real());
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const cplx s = 0.5 * (a.at(i, j) - a.at(j, i));
                worst = std::max(worst, std::abs(a.at(i, j) - s));
                if (i == j)
                    m_.set(i, j, cplx(0.0));
                else
                    m_.set(i, j, s);
            }
        }
        if (worst > kSkewSymmetryTol)
            throw ConfigError("SkewMatrix: antisymmetrization correction exceeds 1e-12");
    }

    Matrix m_;
};

// ---------------------------------------------------------------------------
// Dense kernels on flat row-major buffers (the enumeration fast path).
// Both destroy their input buffer.
// ---------------------------------------------------------------------------

// Determinant via LU with partial pivoting; n = 0 gives 1.
template <class T>
inline T det_inplace(T* a, int n) {
    T det = T(1);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(a[static_cast<std::size_t>(k) * n + k]);
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(a[static_cast<std::size_t>(i) * n + k]);
            if (v > best) { best = v; piv = i; }
        }
        if (best == 0.0) return T(0);
        if (piv != k) {
            for (int j = 0; j < n; ++j)
                std::swap(a[static_cast<std::size_t>(k) * n + j],
                          a[static_cast<std::size_t>(piv) * n + j]);
            det = -det;
        }
        const T pivot = a[static_cast<std::size_t>(k) * n + k];
        det *= pivot;
        for (int i = k + 1; i < n; ++i) {
            const T f = a[static_cast<std::size_t>(i) * n + k] / pivot;
            if (f == T(0)) continue;
            T* ri = a + static_cast<std::size_t>(i) * n;
            const T* rk = a + static_cast<std::size_t>(k) * n;
            for (int j = k + 1; j < n; ++j) ri[j] -= f * rk[j];
        }
    }
    return det;
}

// log|det| via the same elimination; -inf for singular input.
template <class T>
inline double log_abs_det_inplace(T* a, int n) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(a[static_cast<std::size_t>(k) * n + k]);
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(a[static_cast<std::size_t>(i) * n + k]);
            if (v > best) { best = v; piv = i; }
        }
        if (best == 0.0) return -std::numeric_limits<double>::infinity();
        if (piv != k)
            for (int j = 0; j < n; ++j)
                std::swap(a[static_cast<std::size_t>(k) * n + j],
                          a[static_cast<std::size_t>(piv) * n + j]);
        const T pivot = a[static_cast<std::size_t>(k) * n + k];
        acc += std::log(std::abs(pivot));
        for (int i = k + 1; i < n; ++i) {
            const T f = a[static_cast<std::size_t>(i) * n + k] / pivot;
            if (f == T(0)) continue;
            T* ri = a + static_cast<std::size_t>(i) * n;
            const T* rk = a + static_cast<std::size_t>(k) * n;
            for (int j = k + 1; j < n; ++j) ri[j] -= f * rk[j];
        }
    }
    return acc;
}

// Pfaffian via Parlett-Reid skew-symmetric elimination with pivoting.
// n must be even; n = 0 gives 1.
template <class T>
inline T pf_inplace(T* a, int n) {
    if (n == 0) return T(1);
    T pf(1);
    for (int k = 0; k + 1 < n; k += 2) {
        // Pivot: move the largest |A[k,j]|, j > k, into position (k, k+1).
        int jmax = k + 1;
        double best = std::abs(a[static_cast<std::size_t>(k) * n + k + 1]);
        for (int j = k + 2; j < n; ++j) {
            const double v = std::abs(a[static_cast<std::size_t>(k) * n + j]);
            if (v > best) { best = v; jmax = j; }
        }
        if (best == 0.0) return T(0);
        if (jmax != k + 1) {
            for (int t = 0; t < n; ++t)
                std::swap(a[static_cast<std::size_t>(k + 1) * n + t],
                          a[static_cast<std::size_t>(jmax) * n + t]);
            for (int t = 0; t < n; ++t)
                std::swap(a[static_cast<std::size_t>(t) * n + k + 1],
                          a[static_cast<std::size_t>(t) * n + jmax]);
            pf = -pf;
        }
        const T piv = a[static_cast<std::size_t>(k) * n + k + 1];
        pf *= piv;
        if (k + 2 >= n) break;
        // Schur-complement update of the trailing block:
        //   A[i][j] += v_i * tau_j - tau_i * v_j
        // with tau = A[k, k+2:]/piv and v = A[k+1, k+2:]. Row k is dead after
        // this step, so it is scaled in place to hold tau.
        const int m = n - k - 2;
        T* tau = a + static_cast<std::size_t>(k) * n + k + 2;
        const T* v = a + static_cast<std::size_t>(k + 1) * n + k + 2;
        for (int j = 0; j < m; ++j) tau[j] /= piv;
        for (int i = 0; i < m; ++i) {
            const T ti = tau[i];
            const T vi = v[i];
            T* row = a + static_cast<std::size_t>(k + 2 + i) * n + k + 2;
            for (int j = 0; j < m; ++j) row[j] += vi * tau[j] - ti * v[j];
        }
    }
    return pf;
}

// log|pf| via the same elimination; immune to overflow of the pivot product.
// -inf for singular input.
template <class T>
inline double log_abs_pf_inplace(T* a, int n) {
    if (n == 0) return 0.0;
    double acc = 0.0;
    for (int k = 0; k + 1 < n; k += 2) {
        int jmax = k + 1;
        double best = std::abs(a[static_cast<std::size_t>(k) * n + k + 1]);
        for (int j = k + 2; j < n; ++j) {
            const double v = std::abs(a[static_cast<std::size_t>(k) * n + j]);
            if (v > best) { best = v; jmax = j; }
        }
        if (best == 0.0) return -std::numeric_limits<double>::infinity();
        if (jmax != k + 1) {
            for (int t = 0; t < n; ++t)
                std::swap(a[static_cast<std::size_t>(k + 1) * n + t],
                          a[static_cast<std::size_t>(jmax) * n + t]);
            for (int t = 0; t < n; ++t)
                std::swap(a[static_cast<std::size_t>(t) * n + k + 1],
                          a[static_cast<std::size_t>(t) * n + jmax]);
        }
        const T piv = a[static_cast<std::size_t>(k) * n + k + 1];
        acc += std::log(std::abs(piv));
        if (k + 2 >= n) break;
        const int m = n - k - 2;
        T* tau = a + static_cast<std::size_t>(k) * n + k + 2;
        const T* v = a + static_cast<std::size_t>(k + 1) * n + k + 2;
        for (int j = 0; j < m; ++j) tau[j] /= piv;
        for (int i = 0; i < m; ++i) {
            const T ti = tau[i];
            const T vi = v[i];
            T* row = a + static_cast<std::size_t>(k + 2 + i) * n + k + 2;
            for (int j = 0; j < m; ++j) row[j] += vi * tau[j] - ti * v[j];
        }
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Matrix-level operations
// ---------------------------------------------------------------------------

inline cplx determinant(const Matrix& m) {
    if (!m.square()) throw DimensionError("determinant: matrix must be square");
    const int n = m.rows();
    if (n == 0) return cplx(1.0);
    if (m.is_real()) {
        std::vector<double> a = m.real_data();
        return cplx(det_inplace(a.data(), n));
    }
    std::vector<cplx> a = m.data();
    return det_inplace(a.data(), n);
}

inline cplx pfaffian(const SkewMatrix& s) {
    const int n = s.size();
    if (n % 2 != 0) throw DimensionError("pfaffian: dimension must be even");
    if (n == 0) return cplx(1.0);
    if (s.is_real()) {
        std::vector<double> a = s.as_matrix().real_data();
        return cplx(pf_inplace(a.data(), n));
    }
    std::vector<cplx> a = s.as_matrix().data();
    return pf_inplace(a.data(), n);
}

inline Matrix submatrix(const Matrix& m, const IndexSet& rows, const IndexSet& cols) {
    rows.check_range(m.rows(), "submatrix rows");
    cols.check_range(m.cols(), "submatrix cols");
    Matrix out(rows.size(), cols.size(), m.is_real());
    for (int i = 0; i < rows.size(); ++i)
        for (int j = 0; j < cols.size(); ++j)
            out.set(i, j, m.at(rows[i] - 1, cols[j] - 1));
    return out;
}

inline SkewMatrix principal_submatrix(const SkewMatrix& s, const IndexSet& set) {
    return SkewMatrix(submatrix(s.as_matrix(), set, set));
}

// D . P^T . M . P . D* with D a unit-modulus diagonal:
//   result[a][b] = d_a * M[pi(a)][pi(b)] * conj(d_b).
inline Matrix conjugate(const Matrix& m, const Permutation& p, const std::vector<cplx>& d) {
    if (!m.square() || p.size() != m.rows() ||
        d.size() != static_cast<std::size_t>(m.rows()))
        throw DimensionError("conjugate: size mismatch");
    const int n = m.rows();
    Matrix out(n, n, false);
    bool real_out = true;
    for (int a = 1; a <= n; ++a) {
        for (int b = 1; b <= n; ++b) {
            const cplx v = d[static_cast<std::size_t>(a - 1)] * m.at(p(a) - 1, p(b) - 1) *
                           std::conj(d[static_cast<std::size_t>(b - 1)]);
            out.set(a - 1, b - 1, v);
            if (v.imag() != 0.0) real_out = false;
        }
    }
    if (real_out) {
        Matrix r(n, n, true);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r.set(i, j, out.at(i, j).real());
        return r;
    }
    return out;
}

inline Matrix conjugate(const Matrix& m, const Permutation& p) {
    std::vector<cplx> d(static_cast<std::size_t>(m.rows()), cplx(1.0));
    return conjugate(m, p, d);
}

// ---------------------------------------------------------------------------
// Text format: first line "n_rows n_cols real|complex", then row-major
// entries, whitespace-separated, complex as a+bi; 17 significant digits.
// ---------------------------------------------------------------------------

inline std::string format_double17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_scalar17(cplx v, bool as_real) {
    if (as_real) return format_double17(v.real());
    std::string s = format_double17(v.real());
    const double im = v.imag();
    if (!std::signbit(im)) s += "+";
    s += format_double17(im);
    s += "i";
    return s;
}

inline void write_matrix(std::ostream& os, const Matrix& m) {
    os << m.rows() << " " << m.cols() << " " << (m.is_real() ? "real" : "complex") << "\n";
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) os << " ";
            os << format_scalar17(m.at(i, j), m.is_real());
        }
        os << "\n";
    }
}

namespace detail {

inline double parse_number(const std::string& body, const std::string& tok) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(body, &pos);
    } catch (const std::exception&) {
        throw ConfigError("matrix parse: bad number '" + tok + "'");
    }
    if (pos != body.size()) throw ConfigError("matrix parse: bad number '" + tok + "'");
    return v;
}

} // namespace detail

inline cplx parse_scalar(const std::string& tok) {
    const bool has_i = !tok.empty() && (tok.back() == 'i' || tok.back() == 'I');
    std::string body = has_i ? tok.substr(0, tok.size() - 1) : tok;
    if (!has_i) return cplx(detail::parse_number(body, tok));
    // Split a+bi at the last sign that is not an exponent sign and not leading.
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        const char c = body[i];
        if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) {
        // Pure imaginary "bi".
        return cplx(0.0, detail::parse_number(body, tok));
    }
    return cplx(detail::parse_number(body.substr(0, split), tok),
                detail::parse_number(body.substr(split), tok));
}

inline Matrix read_matrix(std::istream& is) {
    int rows = 0, cols = 0;
    std::string kind;
    if (!(is >> rows >> cols >> kind))
        throw ConfigError("matrix parse: missing header 'n_rows n_cols real|complex'");
    if (kind != "real" && kind != "complex")
        throw ConfigError("matrix parse: entry kind must be 'real' or 'complex'");
    if (rows < 0 || cols < 0) throw ConfigError("matrix parse: negative dimension");
    Matrix m(rows, cols, kind == "real");
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            std::string tok;
            if (!(is >> tok)) throw ConfigError("matrix parse: not enough entries");
            const cplx v = parse_scalar(tok);
            if (kind == "real" && v.imag() != 0.0)
                throw ConfigError("matrix parse: complex entry in real matrix");
            m.set(i, j, v);
        }
    }
    return m;
}

} // namespace magicminors

#endif
