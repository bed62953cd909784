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

#ifndef MAGICMINORS_SCALING_HPP
#define MAGICMINORS_SCALING_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "magicminors/entropy.hpp"
#include "magicminors/errors.hpp"
#include "magicminors/identities.hpp"
#include "magicminors/models.hpp"

namespace magicminors {

enum class SeriesSource { Brute, Closed };

inline std::string series_source_name(SeriesSource s) {
    return s == SeriesSource::Brute ? "brute" : "closed";
}

struct SeriesPoint {
    int L = 0;
    double value = 0.0;
};

struct CftPrediction {
    double b = 0.0;
    std::optional<double> c;
};

struct ScalingFit {
    double alpha = 0.0;
    Boundary boundary = Boundary::PBC;
    std::vector<int> L_grid;
    std::vector<double> values;
    double m = 0.0;
    double b = 0.0;
    double c = 0.0;
    double residual_rms = 0.0;
    CftPrediction predicted;
    // Set when the series comes from small-size enumeration only, where the
    // three-term ansatz is polluted by further finite-size corrections.
    bool finite_size_caveat = false;
};

// Entropy of the normalized squared-minor distribution of the nearest-neighbor
// kernel as a function of L, from enumeration (small L) or from the closed
// power-sum forms (any L, alpha in {1/2, 2, 4}).
inline std::vector<SeriesPoint> entropy_series(Boundary bc, double alpha,
                                               const std::vector<int>& grid, SeriesSource source,
                                               const EngineOptions& opt = {}) {
    if (alpha == 1.0)
        throw DomainError("entropy_series: alpha = 1 has no closed row and no three-term fit; "
                          "use alpha != 1");
    std::vector<SeriesPoint> out;
    out.reserve(grid.size());
    for (int L : grid) {
        if (L < 1) throw DomainError("entropy_series: L must be >= 1");
        double value;
        if (source == SeriesSource::Closed) {
            if (alpha != 0.5 && alpha != 2.0 && alpha != 4.0)
                throw ConfigError("entropy_series: closed forms cover alpha in {1/2, 2, 4} "
                                  "only; use --source brute for other alpha");
            const double log_num = table2_closed(bc, alpha, L);
            value = (log_num - alpha * L * std::numbers::ln2) / (1.0 - alpha);
        } else {
            value = stabilizer_renyi(tfi_g(bc, L), alpha, opt).value;
        }
        out.push_back({L, value});
    }
    return out;
}

// Least-squares fit of M(L) = m*L + b*log(L) - c by Householder QR in long
// double; the reported c follows the ansatz sign (positive c lowers M).
inline ScalingFit fit_scaling(double alpha, Boundary bc, const std::vector<SeriesPoint>& series,
                              int l_min = 0) {
    std::vector<SeriesPoint> pts;
    for (const auto& p : series)
        if (p.L >= l_min) pts.push_back(p);
    if (pts.size() < 4)
        throw FitError("fit_scaling: need at least 4 grid points (three fitted parameters), "
                       "have " +
                       std::to_string(pts.size()));
    const std::size_t n = pts.size();
    constexpr std::size_t kCols = 3;
    std::vector<long double> a(n * kCols);
    std::vector<long double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const long double L = static_cast<long double>(pts[i].L);
        a[i * kCols + 0] = L;
        a[i * kCols + 1] = std::log(L);
        a[i * kCols + 2] = 1.0L;
        y[i] = static_cast<long double>(pts[i].value);
    }
    // Householder QR, applying the reflectors to y as they are formed.
    for (std::size_t k = 0; k < kCols; ++k) {
        long double norm2 = 0.0L;
        for (std::size_t i = k; i < n; ++i) norm2 += a[i * kCols + k] * a[i * kCols + k];
        const long double norm = std::sqrt(norm2);
        if (norm == 0.0L) throw FitError("fit_scaling: rank-deficient design matrix");
        const long double akk = a[k * kCols + k];
        const long double sign = akk >= 0.0L ? 1.0L : -1.0L;
        std::vector<long double> v(n - k);
        v[0] = akk + sign * norm;
        for (std::size_t i = k + 1; i < n; ++i) v[i - k] = a[i * kCols + k];
        long double vtv = 0.0L;
        for (const long double vi : v) vtv += vi * vi;
        if (vtv == 0.0L) throw FitError("fit_scaling: rank-deficient design matrix");
        for (std::size_t j = k; j < kCols; ++j) {
            long double dot = 0.0L;
            for (std::size_t i = k; i < n; ++i) dot += v[i - k] * a[i * kCols + j];
            const long double f = 2.0L * dot / vtv;
            for (std::size_t i = k; i < n; ++i) a[i * kCols + j] -= f * v[i - k];
        }
        long double dot = 0.0L;
        for (std::size_t i = k; i < n; ++i) dot += v[i - k] * y[i];
        const long double f = 2.0L * dot / vtv;
        for (std::size_t i = k; i < n; ++i) y[i] -= f * v[i - k];
    }
    long double diag_max = 0.0L;
    for (std::size_t k = 0; k < kCols; ++k)
        diag_max = std::max(diag_max, std::abs(a[k * kCols + k]));
    std::vector<long double> beta(kCols);
    for (std::size_t k = kCols; k-- > 0;) {
        const long double rkk = a[k * kCols + k];
        if (std::abs(rkk) < 1e-12L * diag_max)
            throw FitError("fit_scaling: rank-deficient design matrix");
        long double acc = y[k];
        for (std::size_t j = k + 1; j < kCols; ++j) acc -= a[k * kCols + j] * beta[j];
        beta[k] = acc / rkk;
    }

    ScalingFit fit;
    fit.alpha = alpha;
    fit.boundary = bc;
    fit.m = static_cast<double>(beta[0]);
    fit.b = static_cast<double>(beta[1]);
    fit.c = static_cast<double>(-beta[2]);
    long double rss = 0.0L;
    for (const auto& p : pts) {
        fit.L_grid.push_back(p.L);
        fit.values.push_back(p.value);
        const long double L = static_cast<long double>(p.L);
        const long double predicted = beta[0] * L + beta[1] * std::log(L) + beta[2];
        const long double r = static_cast<long double>(p.value) - predicted;
        rss += r * r;
    }
    fit.residual_rms = static_cast<double>(std::sqrt(rss / static_cast<long double>(n)));
    return fit;
}

// Predicted fit coefficients: the log coefficient b is universal; the
// constant c is universal (and predicted) only on the boundary-free chain
// where b vanishes.
inline CftPrediction cft_prediction(double alpha, Boundary bc) {
    if (alpha == 1.0) throw DomainError("cft_prediction: alpha = 1 is excluded");
    if (alpha <= 0.0) throw DomainError("cft_prediction: alpha must be positive");
    CftPrediction p;
    if (bc == Boundary::PBC) {
        p.b = 0.0;
        if (alpha <= 4.0)
            p.c = std::log(alpha) / (2.0 * (alpha - 1.0));
        else
            p.c = std::numbers::ln2 / (1.0 - alpha);
        return p;
    }
    if (alpha < 4.0)
        p.b = -0.25;
    else if (alpha == 4.0)
        p.b = -1.0 / 6.0;
    else
        p.b = 0.0;
    // No constant-term prediction is available for the open chain.
    return p;
}

// Default lower cutoff for closed-form fits: below this the three-term
// ansatz is visibly contaminated by higher finite-size corrections.
inline constexpr int kClosedFitMinL = 20;

}  // namespace magicminors

#endif  // MAGICMINORS_SCALING_HPP
