/**
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

#ifndef MAGICMINORS_LAPACK_HPP
#define MAGICMINORS_LAPACK_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "magicminors/matrix.hpp"

extern "C" {
void dgetrf_(const int* m, const int* n, double* a, const int* lda, int* ipiv, int* info);
}

namespace magicminors {

// log|det| of a real square matrix through a LAPACK LU factorization.
// The buffer is row-major, but |det A^T| = |det A| so no transpose is needed.
inline double lapack_log_abs_det(std::vector<double>& a, int n) {
    if (n == 0) return 0.0;
    std::vector<int> ipiv(static_cast<std::size_t>(n));
    int info = 0;
    dgetrf_(&n, &n, a.data(), &n, ipiv.data(), &info);
    if (info < 0) throw std::runtime_error("dgetrf: invalid argument");
    if (info > 0) return -std::numeric_limits<double>::infinity();
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        acc += std::log(std::abs(a[static_cast<std::size_t>(i) * n + i]));
    return acc;
}

// Size below which the in-house skew elimination is used; above it, LAPACK's
// blocked LU (log|pf| = log|det|/2 for skew-symmetric input) is much faster.
inline constexpr int kPfaffianLapackThreshold = 512;

inline double log_abs_pfaffian(const SkewMatrix& r) {
    const int n = r.size();
    if (n % 2 != 0) return -std::numeric_limits<double>::infinity();
    if (!r.is_real() || n <= kPfaffianLapackThreshold) {
        if (r.is_real()) {
            auto a = r.as_matrix().real_data();
            return log_abs_pf_inplace<double>(a.data(), n);
        }
        auto a = r.as_matrix().data();
        return log_abs_pf_inplace<cplx>(a.data(), n);
    }
    auto a = r.as_matrix().real_data();
    return 0.5 * lapack_log_abs_det(a, n);
}

}  // namespace magicminors

#endif  // MAGICMINORS_LAPACK_HPP
