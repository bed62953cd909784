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

#ifndef MAGICMINORS_ENTROPY_HPP
#define MAGICMINORS_ENTROPY_HPP

#include <cmath>
#include <numbers>
#include <string>

#include "magicminors/errors.hpp"
#include "magicminors/matrix.hpp"
#include "magicminors/minor_engine.hpp"

namespace magicminors {

inline constexpr double kPurityRelTol = 1e-8;

struct EntropyResult {
    double alpha = 0.0;
    double value = 0.0;
    // log of the minor power sum in the numerator and log of the
    // normalization it is measured against.  For alpha != 1,
    // value == (numerator_log - normalization_log) / (1 - alpha).
    double numerator_log = 0.0;
    double normalization_log = 0.0;
    std::string model;
};

// log of det(I + R^T R)^(1/4), the subset-parity normalization for a
// correlation kernel R.  Computed in the log domain via LU.
inline double log_normalization(const SkewMatrix& r) {
    const int n = r.size();
    Matrix g(n, n, r.is_real());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cplx acc = (i == j) ? cplx(1.0) : cplx(0.0);
            for (int k = 0; k < n; ++k) acc += std::conj(r.at(k, i)) * r.at(k, j);
            g.set(i, j, acc);
        }
    }
    double logdet;
    if (g.is_real()) {
        auto a = g.real_data();
        logdet = log_abs_det_inplace<double>(a.data(), n);
    } else {
        auto a = g.data();
        logdet = log_abs_det_inplace<cplx>(a.data(), n);
    }
    return 0.25 * logdet;
}

namespace detail {

// Checks that the length-2 power sum of minors matches the reference
// log value within kPurityRelTol (relative on the linear scale).
inline void check_normalization(double total2, double log_ref, const char* what) {
    const double ref = std::exp(log_ref);
    const double rel = std::abs(total2 - ref) / ref;
    if (!(rel <= kPurityRelTol)) {
        throw ModelError(std::string(what) + ": quadratic minor sum " + format_double17(total2) +
                         " deviates from expected " + format_double17(ref) + " by relative " +
                         format_double17(rel) + "; input is not a valid kernel of this type");
    }
}

}  // namespace detail

// Renyi entropy of the normalized squared-minor distribution of G,
//   q[I,J] = |det G[I,J]|^2 / 2^L,
// evaluated as (log SPM_{2a}(G) - a L log 2) / (1 - a) for a != 1 and as
// -sum q log q in the a -> 1 limit.  G must satisfy SPM_2(G) = 2^L; a
// kernel that fails this check is rejected with ModelError.
inline EntropyResult stabilizer_renyi(const Matrix& g, double alpha, const EngineOptions& opt = {},
                                      const std::string& model = {}) {
    if (!g.square()) throw DimensionError("stabilizer_renyi: matrix must be square");
    if (!(alpha > 0.0)) throw DomainError("stabilizer_renyi: alpha must be positive");
    const double log_norm = g.rows() * std::numbers::ln2;
    detail::check_normalization(spm_fast2(g), log_norm, "stabilizer_renyi");

    EntropyResult res;
    res.alpha = alpha;
    res.normalization_log = log_norm;
    res.model = model;
    if (alpha == 1.0) {
        // Lockstep channels: W = sum of w and S = sum of w log w, w = |det|^2.
        auto sums = reduce_minors<2>(
            g,
            [](double mag) -> std::array<double, 2> {
                const double w = mag * mag;
                return {w, w > 0.0 ? w * std::log(w) : 0.0};
            },
            opt);
        KahanAdder kw, ks;
        for (const auto& rank : sums) {
            kw.add(rank[0]);
            ks.add(rank[1]);
        }
        const double w_total = kw.sum();
        const double s_total = ks.sum();
        detail::check_normalization(w_total, log_norm, "stabilizer_renyi");
        res.value = std::log(w_total) - s_total / w_total;
        res.numerator_log = std::log(w_total);
        return res;
    }
    const PowerSums ps = spm(g, 2.0 * alpha, opt);
    res.numerator_log = std::log(ps.total);
    res.value = (res.numerator_log - alpha * log_norm) / (1.0 - alpha);
    return res;
}

// Renyi entropy of the normalized squared-Pfaffian-minor distribution of a
// skew-symmetric kernel R,
//   p[S] = |pf R[S,S]|^2 / N^2,  N = det(I + R^T R)^(1/4),
// evaluated as (log SPP_{2a}(R) - 2a log N) / (1 - a) for a != 1 and as
// -sum p log p in the a -> 1 limit.
inline EntropyResult shannon_renyi(const SkewMatrix& r, double alpha, const EngineOptions& opt = {},
                                   const std::string& model = {}) {
    if (!(alpha > 0.0)) throw DomainError("shannon_renyi: alpha must be positive");
    const double log_nr = log_normalization(r);
    const double log_norm = 2.0 * log_nr;

    EntropyResult res;
    res.alpha = alpha;
    res.normalization_log = log_norm;
    res.model = model;
    if (alpha == 1.0) {
        auto sums = reduce_pf_minors<2>(
            r,
            [](double mag) -> std::array<double, 2> {
                const double w = mag * mag;
                return {w, w > 0.0 ? w * std::log(w) : 0.0};
            },
            opt);
        KahanAdder kw, ks;
        for (const auto& rank : sums) {
            kw.add(rank[0]);
            ks.add(rank[1]);
        }
        const double w_total = kw.sum();
        const double s_total = ks.sum();
        detail::check_normalization(w_total, log_norm, "shannon_renyi");
        res.value = std::log(w_total) - s_total / w_total;
        res.numerator_log = std::log(w_total);
        return res;
    }
    const PowerSums ps = spp(r, 2.0 * alpha, opt);
    res.numerator_log = std::log(ps.total);
    res.value = (res.numerator_log - alpha * log_norm) / (1.0 - alpha);
    return res;
}

}  // namespace magicminors

#endif  // MAGICMINORS_ENTROPY_HPP
