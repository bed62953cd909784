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

#ifndef MAGICMINORS_IDENTITIES_HPP
#define MAGICMINORS_IDENTITIES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "magicminors/entropy.hpp"
#include "magicminors/errors.hpp"
#include "magicminors/lapack.hpp"
#include "magicminors/matrix.hpp"
#include "magicminors/minor_engine.hpp"
#include "magicminors/models.hpp"

namespace magicminors {

// ---------------------------------------------------------------------------
// Verification reports
// ---------------------------------------------------------------------------

struct VerificationDetail {
    std::string label;
    double lhs_log = 0.0;
    double rhs_log = 0.0;
    double rel_error = 0.0;
};

struct VerificationReport {
    std::string identity_name;
    double tolerance = 0.0;
    std::vector<int> sizes;
    std::vector<VerificationDetail> details;
    double max_rel_error = 0.0;
    bool pass = true;
    // The open-boundary quartic-row closed form is external input under
    // validation; its agreement is flagged separately from the rest.
    std::optional<bool> alpha2_row_pass;

    void add_size(int L) {
        if (std::find(sizes.begin(), sizes.end(), L) == sizes.end()) sizes.push_back(L);
    }
    void add_detail(std::string label, double lhs, double rhs, double rel) {
        details.push_back({std::move(label), lhs, rhs, rel});
        if (rel > max_rel_error) max_rel_error = rel;
    }
    void finalize() { pass = max_rel_error <= tolerance; }
};

namespace detail {

inline double rel_linear(double lhs, double rhs) {
    const double scale = std::max(std::abs(rhs), 1e-300);
    return std::abs(lhs - rhs) / scale;
}

inline double safe_log(double x) {
    return x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Checkerboard doubling
// ---------------------------------------------------------------------------

// Interleaves the off-diagonal block pair [[0,G],[-G^T,0]] into site order:
// odd sites carry the row index, even sites the column index, so the nonzero
// pattern is the 1010... checkerboard.  For L x L input the result is 2L x 2L
// with entries R[2a-1, 2b] = G[a, b] in 1-based site numbering.
inline SkewMatrix doubled_r(const Matrix& g) {
    if (!g.square()) throw DimensionError("doubled_r: matrix must be square");
    const int L = g.rows();
    SkewMatrix r(2 * L, g.is_real());
    for (int a = 0; a < L; ++a) {
        for (int b = 0; b < L; ++b) {
            r.set_pair(2 * a, 2 * b + 1, g.at(a, b));
        }
    }
    return r;
}

// Rank-resolved check that the even-subset Pfaffian power sums of doubled_r(G)
// reproduce the minor power sums of G at every alpha and rank.
inline VerificationReport verify_theorem1(const Matrix& g, const std::vector<double>& alphas,
                                          const EngineOptions& opt = {},
                                          const std::string& label_prefix = {}) {
    VerificationReport rep;
    rep.identity_name = "theorem1";
    rep.tolerance = 1e-10;
    rep.add_size(g.rows());
    const SkewMatrix r = doubled_r(g);
    for (double alpha : alphas) {
        const PowerSums lhs = spp(r, alpha, opt);
        const PowerSums rhs = spm(g, alpha, opt);
        if (lhs.by_rank.size() != rhs.by_rank.size())
            throw DimensionError("verify_theorem1: rank count mismatch");
        for (std::size_t k = 0; k < rhs.by_rank.size(); ++k) {
            const double l = lhs.by_rank[k];
            const double h = rhs.by_rank[k];
            const double rel = (l == 0.0 && h == 0.0) ? 0.0 : detail::rel_linear(l, h);
            rep.add_detail(label_prefix + "alpha=" + format_double17(alpha) +
                               " rank=" + std::to_string(k),
                           detail::safe_log(l), detail::safe_log(h), rel);
        }
    }
    rep.finalize();
    return rep;
}

// Seeded uniform matrix in [-1, 1); the generator is fixed so verification
// output is reproducible bit-for-bit.
inline Matrix random_matrix(int n, std::mt19937_64& eng) {
    Matrix g(n, n, true);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
            g.set(i, j, 2.0 * u - 1.0);
        }
    }
    return g;
}

inline VerificationReport verify_theorem1_random(const std::vector<int>& sizes, int per_size,
                                                 const std::vector<double>& alphas,
                                                 std::uint64_t seed,
                                                 const EngineOptions& opt = {}) {
    VerificationReport rep;
    rep.identity_name = "theorem1";
    rep.tolerance = 1e-10;
    std::mt19937_64 eng(seed);
    for (int n : sizes) {
        rep.add_size(n);
        for (int trial = 0; trial < per_size; ++trial) {
            const Matrix g = random_matrix(n, eng);
            const std::string prefix =
                "M=" + std::to_string(n) + " trial=" + std::to_string(trial) + " ";
            const VerificationReport one = verify_theorem1(g, alphas, opt, prefix);
            for (const auto& d : one.details)
                rep.add_detail(d.label, d.lhs_log, d.rhs_log, d.rel_error);
        }
    }
    rep.finalize();
    return rep;
}

// ---------------------------------------------------------------------------
// Power-sum and entropy correspondence between the two chain kernels
// ---------------------------------------------------------------------------

// Checks Pf_a(xx_r(bc,2L)) = Det_a(tfi_g(bc,L)) and the equality of the two
// entropies built from them.
inline VerificationReport verify_xx_tfi(int L, Boundary bc, const std::vector<double>& alphas,
                                        const EngineOptions& opt = {}) {
    VerificationReport rep;
    rep.identity_name = "xx-tfi";
    rep.tolerance = 1e-9;
    rep.add_size(L);
    const Matrix g = tfi_g(bc, L);
    const SkewMatrix r = xx_r(bc, 2 * L);
    const std::string base = boundary_name(bc) + " L=" + std::to_string(L) + " ";
    for (double alpha : alphas) {
        const double lhs = spp(r, alpha, opt).total;
        const double rhs = spm(g, alpha, opt).total;
        rep.add_detail(base + "power-sum alpha=" + format_double17(alpha), detail::safe_log(lhs),
                       detail::safe_log(rhs), detail::rel_linear(lhs, rhs));
        const EntropyResult sre = stabilizer_renyi(g, alpha, opt);
        const EntropyResult sr = shannon_renyi(r, alpha, opt);
        rep.add_detail(base + "entropy alpha=" + format_double17(alpha), sr.value, sre.value,
                       detail::rel_linear(sr.value, sre.value));
    }
    rep.finalize();
    return rep;
}

// ---------------------------------------------------------------------------
// Block reductions of the symbol kernels
// ---------------------------------------------------------------------------

struct BlockDecomposition {
    Permutation permutation;
    std::vector<Matrix> blocks;
    double off_block_residual = 0.0;
    std::optional<Matrix> chiral_x;
    // Structure residuals recorded during extraction (max-norm):
    double identical_residual = 0.0;  // deviation between block b and block 0
    double diagonal_residual = 0.0;   // chiral only: the two M x M diagonal sub-blocks
    double match_residual = 0.0;      // decimation only: block vs reduced kernel
    std::string matched_form;         // decimation only: "direct" or "sign-conjugated"
};

namespace detail {

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    double worst = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            worst = std::max(worst, std::abs(a.at(i, j) - b.at(i, j)));
    return worst;
}

inline Matrix extract_block(const Matrix& c, int row0, int col0, int size) {
    Matrix b(size, size, true);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) b.set(i, j, c.at(row0 + i, col0 + j));
    return b;
}

// diag(1,-1,1,...) conjugation, the sign gauge that relates the two block
// normal forms.
inline Matrix sign_conjugate(const Matrix& m) {
    Matrix out(m.rows(), m.cols(), m.is_real());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            const double s = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            out.set(i, j, s * m.at(i, j));
        }
    }
    return out;
}

}  // namespace detail

// Decimation of the z^n+1 kernel: conjugating by the residue-class coset
// permutation (in-block order r, r+n, r+2n, ...) must leave n identical
// diagonal blocks of size M = L/n, each a copy of the z+1 kernel at M up to
// the sign gauge.  Both normal forms are compared and the closer one is
// recorded in matched_form.
inline BlockDecomposition block_reduce_zn(int L, int n) {
    ModelSpec spec;
    spec.family = Family::SymbolZn;
    spec.boundary = Boundary::PBC;
    spec.L = L;
    spec.n = n;
    spec.validate();
    const Matrix g = symbol_g(spec);
    const int M = L / n;

    std::vector<int> image(static_cast<std::size_t>(L));
    for (int r = 0; r < n; ++r)
        for (int q = 0; q < M; ++q) image[static_cast<std::size_t>(r * M + q)] = r + q * n + 1;
    const Permutation perm(image);
    const Matrix c = conjugate(g, perm);

    BlockDecomposition dec;
    dec.permutation = perm;
    for (int bi = 0; bi < n; ++bi)
        for (int bj = 0; bj < n; ++bj) {
            if (bi == bj) continue;
            for (int i = 0; i < M; ++i)
                for (int j = 0; j < M; ++j)
                    dec.off_block_residual = std::max(
                        dec.off_block_residual, std::abs(c.at(bi * M + i, bj * M + j)));
        }
    for (int b = 0; b < n; ++b) dec.blocks.push_back(detail::extract_block(c, b * M, b * M, M));
    for (int b = 1; b < n; ++b)
        dec.identical_residual =
            std::max(dec.identical_residual, detail::max_abs_diff(dec.blocks[0], dec.blocks[b]));

    const Matrix target = tfi_g(Boundary::PBC, M);
    const double direct = detail::max_abs_diff(dec.blocks[0], target);
    const double conjugated = detail::max_abs_diff(dec.blocks[0], detail::sign_conjugate(target));
    if (direct <= conjugated) {
        dec.match_residual = direct;
        dec.matched_form = "direct";
    } else {
        dec.match_residual = conjugated;
        dec.matched_form = "sign-conjugated";
    }
    return dec;
}

// Chiral reduction of the z^m + z^-m kernel: the coset permutation lists, for
// each residue r, first the indices r, r+2m, ... and then r+m, r+3m, ...; the
// m identical blocks then take the form [[0, X],[X^T, 0]] with X of size
// M = L/(2m).  X from the first block is returned; the vanishing of the two
// diagonal sub-blocks is recorded as diagonal_residual.
inline BlockDecomposition block_reduce_chiral(int L, int m) {
    ModelSpec spec;
    spec.family = Family::SymbolChiral;
    spec.boundary = Boundary::PBC;
    spec.L = L;
    spec.m = m;
    spec.validate();
    const Matrix g = symbol_g(spec);
    const int M = L / (2 * m);
    const int bs = 2 * M;

    std::vector<int> image(static_cast<std::size_t>(L));
    for (int r = 0; r < m; ++r) {
        for (int q = 0; q < M; ++q) image[static_cast<std::size_t>(r * bs + q)] = r + q * 2 * m + 1;
        for (int q = 0; q < M; ++q)
            image[static_cast<std::size_t>(r * bs + M + q)] = r + m + q * 2 * m + 1;
    }
    const Permutation perm(image);
    const Matrix c = conjugate(g, perm);

    BlockDecomposition dec;
    dec.permutation = perm;
    for (int bi = 0; bi < m; ++bi)
        for (int bj = 0; bj < m; ++bj) {
            if (bi == bj) continue;
            for (int i = 0; i < bs; ++i)
                for (int j = 0; j < bs; ++j)
                    dec.off_block_residual = std::max(
                        dec.off_block_residual, std::abs(c.at(bi * bs + i, bj * bs + j)));
        }
    for (int b = 0; b < m; ++b) dec.blocks.push_back(detail::extract_block(c, b * bs, b * bs, bs));
    for (int b = 1; b < m; ++b)
        dec.identical_residual =
            std::max(dec.identical_residual, detail::max_abs_diff(dec.blocks[0], dec.blocks[b]));

    const Matrix& b0 = dec.blocks[0];
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            dec.diagonal_residual = std::max(dec.diagonal_residual, std::abs(b0.at(i, j)));
            dec.diagonal_residual =
                std::max(dec.diagonal_residual, std::abs(b0.at(M + i, M + j)));
        }
    Matrix x(M, M, true);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) x.set(i, j, b0.at(i, M + j));
    dec.chiral_x = std::move(x);
    return dec;
}

// ---------------------------------------------------------------------------
// Gauge equivalence B = +/- D P^T A P D with D a +/-1 diagonal
// ---------------------------------------------------------------------------

enum class GaugeMode { Exhaustive, Invariant };

inline constexpr int kGaugeExhaustiveCap = 6;
inline constexpr int kGaugeInvariantCap = 8;

inline VerificationReport gauge_equivalent(const Matrix& a, const Matrix& b, GaugeMode mode,
                                           const EngineOptions& opt = {}) {
    if (!a.square() || !b.square() || a.rows() != b.rows())
        throw DimensionError("gauge_equivalent: matrices must be square with equal size");
    const int M = a.rows();
    VerificationReport rep;
    rep.tolerance = 1e-10;
    rep.add_size(M);

    if (mode == GaugeMode::Exhaustive) {
        rep.identity_name = "gauge[exhaustive]";
        if (M > kGaugeExhaustiveCap)
            throw DimensionError("gauge_equivalent: exhaustive mode requires M <= " +
                                 std::to_string(kGaugeExhaustiveCap));
        double best = std::numeric_limits<double>::infinity();
        std::vector<int> image(static_cast<std::size_t>(M));
        for (int i = 0; i < M; ++i) image[static_cast<std::size_t>(i)] = i + 1;
        std::vector<double> d(static_cast<std::size_t>(M), 1.0);
        do {
            // Conjugated candidate A' with A'[i][j] = A[p(i), p(j)].
            Matrix ap(M, M, true);
            for (int i = 0; i < M; ++i)
                for (int j = 0; j < M; ++j)
                    ap.set(i, j, a.at(image[static_cast<std::size_t>(i)] - 1,
                                      image[static_cast<std::size_t>(j)] - 1));
            const std::uint32_t masks = std::uint32_t{1} << (M - 1);
            for (std::uint32_t mask = 0; mask < masks; ++mask) {
                d[0] = 1.0;  // first sign fixed; a global flip is searched separately
                for (int i = 1; i < M; ++i)
                    d[static_cast<std::size_t>(i)] = ((mask >> (i - 1)) & 1u) ? -1.0 : 1.0;
                double worst_plus = 0.0, worst_minus = 0.0;
                for (int i = 0; i < M; ++i)
                    for (int j = 0; j < M; ++j) {
                        const double v = d[static_cast<std::size_t>(i)] *
                                         std::real(ap.at(i, j)) *
                                         d[static_cast<std::size_t>(j)];
                        const double t = std::real(b.at(i, j));
                        worst_plus = std::max(worst_plus, std::abs(t - v));
                        worst_minus = std::max(worst_minus, std::abs(t + v));
                    }
                best = std::min({best, worst_plus, worst_minus});
            }
        } while (std::next_permutation(image.begin(), image.end()));
        rep.add_detail("closest gauge image max deviation", best, 0.0, best);
        rep.finalize();
        return rep;
    }

    rep.identity_name = "gauge[invariant]";
    if (M > kGaugeInvariantCap)
        throw DimensionError("gauge_equivalent: invariant mode capped at M <= " +
                             std::to_string(kGaugeInvariantCap));
    // Gauge transformations preserve every |minor|; compare the sorted
    // multisets (a necessary condition, sufficient in no case but cheap).
    auto multiset = [&](const Matrix& m) {
        std::vector<double> vals;
        reduce_minors<1>(
            m,
            [&](double mag) -> std::array<double, 1> {
                vals.push_back(mag);
                return {0.0};
            },
            EngineOptions{1, opt.max_terms});
        std::sort(vals.begin(), vals.end());
        return vals;
    };
    const std::vector<double> xa = multiset(a);
    const std::vector<double> xb = multiset(b);
    double worst = 0.0;
    for (std::size_t i = 0; i < xa.size(); ++i) worst = std::max(worst, std::abs(xa[i] - xb[i]));
    rep.add_detail("sorted |minor| multiset max deviation", worst, 0.0, worst);
    rep.finalize();
    return rep;
}

// ---------------------------------------------------------------------------
// Bundled block verification (structure, normal form, gauge invariants)
// ---------------------------------------------------------------------------

struct ZnConfig {
    int L;
    int n;
};
struct ChiralConfig {
    int L;
    int m;
};

inline std::vector<VerificationReport> verify_blocks(const std::vector<ZnConfig>& zn,
                                                     const std::vector<ChiralConfig>& chiral,
                                                     const EngineOptions& opt = {}) {
    VerificationReport residual;
    residual.identity_name = "blocks-residual";
    residual.tolerance = 1e-12;
    VerificationReport match;
    match.identity_name = "blocks-match";
    match.tolerance = 1e-10;
    VerificationReport gauge_det;
    gauge_det.identity_name = "chiral-gauge-invariants";
    gauge_det.tolerance = 1e-9;
    VerificationReport gauge_search;
    gauge_search.identity_name = "chiral-gauge-exhaustive";
    gauge_search.tolerance = 1e-10;
    bool any_chiral_exhaustive = false;

    for (const auto& cfg : zn) {
        const BlockDecomposition dec = block_reduce_zn(cfg.L, cfg.n);
        const std::string base = "zn+1 n=" + std::to_string(cfg.n) + " L=" + std::to_string(cfg.L);
        residual.add_size(cfg.L);
        residual.add_detail(base + " off-block", dec.off_block_residual, 0.0,
                            dec.off_block_residual);
        residual.add_detail(base + " blocks-identical", dec.identical_residual, 0.0,
                            dec.identical_residual);
        match.add_size(cfg.L);
        match.add_detail(base + " block vs z+1 kernel (" + dec.matched_form + ")",
                         dec.match_residual, 0.0, dec.match_residual);
    }

    for (const auto& cfg : chiral) {
        const BlockDecomposition dec = block_reduce_chiral(cfg.L, cfg.m);
        const int M = cfg.L / (2 * cfg.m);
        const std::string base =
            "chiral m=" + std::to_string(cfg.m) + " L=" + std::to_string(cfg.L);
        residual.add_size(cfg.L);
        residual.add_detail(base + " off-block", dec.off_block_residual, 0.0,
                            dec.off_block_residual);
        residual.add_detail(base + " blocks-identical", dec.identical_residual, 0.0,
                            dec.identical_residual);
        residual.add_detail(base + " diagonal sub-blocks", dec.diagonal_residual, 0.0,
                            dec.diagonal_residual);

        const Matrix& x = *dec.chiral_x;
        const Matrix target = tfi_g(Boundary::PBC, M);
        if (M <= kGaugeInvariantCap) {
            gauge_det.add_size(cfg.L);
            for (double alpha : {1.0, 2.0, 4.0}) {
                const double lhs = spm(x, alpha, opt).total;
                const double rhs = spm(target, alpha, opt).total;
                gauge_det.add_detail(base + " Det_" + format_double17(alpha) + "(X) vs kernel",
                                     detail::safe_log(lhs), detail::safe_log(rhs),
                                     detail::rel_linear(lhs, rhs));
            }
        }
        if (M <= kGaugeExhaustiveCap) {
            any_chiral_exhaustive = true;
            gauge_search.add_size(cfg.L);
            const VerificationReport found = gauge_equivalent(x, target, GaugeMode::Exhaustive);
            gauge_search.add_detail(base + " X vs z+1 kernel exhaustive",
                                    found.details[0].lhs_log, 0.0, found.details[0].rel_error);
        }
    }

    residual.finalize();
    match.finalize();
    gauge_det.finalize();
    gauge_search.finalize();
    std::vector<VerificationReport> out;
    if (!zn.empty() || !chiral.empty()) out.push_back(std::move(residual));
    if (!zn.empty()) out.push_back(std::move(match));
    if (!chiral.empty()) out.push_back(std::move(gauge_det));
    if (any_chiral_exhaustive) out.push_back(std::move(gauge_search));
    return out;
}

// ---------------------------------------------------------------------------
// Generating-function product identity (even alpha only)
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<double> poly_power(const std::vector<double>& base, int k) {
    std::vector<double> acc{1.0};
    for (int rep = 0; rep < k; ++rep) {
        std::vector<double> next(acc.size() + base.size() - 1, 0.0);
        for (std::size_t i = 0; i < acc.size(); ++i)
            for (std::size_t j = 0; j < base.size(); ++j) next[i + j] += acc[i] * base[j];
        acc = std::move(next);
    }
    return acc;
}

}  // namespace detail

// For even integer alpha the rank generating function of the z^n+1 kernel at
// L factorizes into the n-th power of the z+1 kernel's at M = L/n (and the
// 2m-th power for the chiral kernel at M = L/(2m)).  Compares coefficients.
inline VerificationReport verify_gf_products(int L, Family family, int nm, double alpha,
                                             const EngineOptions& opt = {}) {
    const double rounded = std::round(alpha);
    if (alpha != rounded || static_cast<long long>(rounded) % 2 != 0 || alpha <= 0.0)
        throw DomainError("verify_gf_products: the product identity holds for even integer "
                          "alpha only; got " +
                          format_double17(alpha));
    ModelSpec spec;
    spec.boundary = Boundary::PBC;
    spec.L = L;
    int k = 0;
    int M = 0;
    if (family == Family::SymbolZn) {
        spec.family = Family::SymbolZn;
        spec.n = nm;
        k = nm;
        M = L / nm;
    } else if (family == Family::SymbolChiral) {
        spec.family = Family::SymbolChiral;
        spec.m = nm;
        k = 2 * nm;
        M = L / (2 * nm);
    } else {
        throw ConfigError("verify_gf_products: family must be one of the symbol kernels");
    }
    spec.validate();

    VerificationReport rep;
    rep.identity_name = "gf-products";
    rep.tolerance = 1e-9;
    rep.add_size(L);
    const std::vector<double> lhs = spm(symbol_g(spec), alpha, opt).by_rank;
    const std::vector<double> base = spm(tfi_g(Boundary::PBC, M), alpha, opt).by_rank;
    const std::vector<double> rhs = detail::poly_power(base, k);
    if (lhs.size() != rhs.size()) throw DimensionError("verify_gf_products: degree mismatch");
    const std::string base_label = family_name(family) + (family == Family::SymbolZn ? " n=" : " m=") +
                                   std::to_string(nm) + " L=" + std::to_string(L) +
                                   " alpha=" + format_double17(alpha);
    for (std::size_t r = 0; r < lhs.size(); ++r) {
        const double rel =
            (lhs[r] == 0.0 && rhs[r] == 0.0) ? 0.0 : detail::rel_linear(lhs[r], rhs[r]);
        rep.add_detail(base_label + " coeff[" + std::to_string(r) + "]", detail::safe_log(lhs[r]),
                       detail::safe_log(rhs[r]), rel);
    }
    rep.finalize();
    return rep;
}

// ---------------------------------------------------------------------------
// Closed forms for the three tabulated power-sum rows
// ---------------------------------------------------------------------------

// The skew matrix with +1 above the diagonal wherever i+j is odd and -1 where
// it is even; added to the open-boundary kernel its Pfaffian gives the
// beta = 1 power sum in closed form.
inline SkewMatrix alternating_j(int n) {
    SkewMatrix j(n, true);
    // In 1-based indexing the upper triangle carries (-1)^(i+j+1); the parity
    // of i+j is unchanged by the 0-based shift.
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) j.set_pair(a, b, ((a + b) % 2 == 1) ? 1.0 : -1.0);
    return j;
}

// log of the factorial ratio (2x)! / (x! x^x).
inline double log_phi(int x) {
    return std::lgamma(2.0 * x + 1.0) - std::lgamma(x + 1.0) - x * std::log(static_cast<double>(x));
}

// Returns log Det_{2a}(tfi_g(bc, L)) for the tabulated rows a in {1/2, 2, 4}.
inline double table2_closed(Boundary bc, double alpha_row, int L) {
    if (L < 1) throw DomainError("table2_closed: L must be >= 1");
    const bool half = alpha_row == 0.5;
    const bool two = alpha_row == 2.0;
    const bool four = alpha_row == 4.0;
    if (!half && !two && !four)
        throw DomainError("table2_closed: closed forms exist for alpha in {1/2, 2, 4} only");
    if (bc == Boundary::PBC) {
        if (half) {
            KahanAdder acc;
            for (int r = 1; r <= L; ++r)
                acc.add(std::log1p(std::tan((2.0 * r - 1.0) * std::numbers::pi / (4.0 * L))));
            return acc.sum();
        }
        if (two) return log_phi(L);
        return -L * std::numbers::ln2 + 2.0 * log_phi(L);
    }
    if (half) {
        // Shift the kernel by the alternating skew matrix in place; the grids
        // used for scaling fits make this matrix large.
        SkewMatrix sum = xx_r(Boundary::OBC, 2 * L);
        for (int a = 0; a < 2 * L; ++a)
            for (int b = a + 1; b < 2 * L; ++b)
                sum.set_pair(a, b, sum.at(a, b) + (((a + b) % 2 == 1) ? 1.0 : -1.0));
        return log_abs_pfaffian(sum);
    }
    if (L % 2 != 0)
        throw DomainError("table2_closed: the open-boundary product rows need even L");
    if (two) {
        KahanAdder acc;
        acc.add(std::log(84.0));
        acc.add(-L * std::log(2.0 * L + 1.0));
        for (int r = 2; r <= L / 2; ++r)
            acc.add(std::log(4.0 * (8.0 * r - 5.0) * (8.0 * r - 1.0)));
        return acc.sum();
    }
    return -L * std::numbers::ln2 + 2.0 * table2_closed(bc, 2.0, L);
}

// Brute-force validation of every closed row; the open-boundary alpha = 2 row
// (and the alpha = 4 row built on it) is external input under scrutiny, so its
// agreement is reported through alpha2_row_pass, separate from the main flag.
inline VerificationReport verify_table2(Boundary bc, const std::vector<int>& sizes,
                                        const EngineOptions& opt = {}) {
    VerificationReport rep;
    rep.identity_name = "table2[" + boundary_name(bc) + "]";
    rep.tolerance = 1e-9;
    double alpha2_worst = 0.0;
    for (int L : sizes) {
        rep.add_size(L);
        const Matrix g = tfi_g(bc, L);
        const std::string base = boundary_name(bc) + " L=" + std::to_string(L) + " ";
        std::vector<double> rows{0.5, 2.0, 4.0};
        for (double row : rows) {
            if (bc == Boundary::OBC && row != 0.5 && L % 2 != 0) continue;
            const double closed = table2_closed(bc, row, L);
            const double brute = spm(g, 2.0 * row, opt).total;
            const double rel = detail::rel_linear(std::exp(closed), brute);
            const bool external_row = bc == Boundary::OBC && row != 0.5;
            rep.details.push_back({base + "Det_" + format_double17(2.0 * row) + " closed vs brute",
                                   closed, detail::safe_log(brute), rel});
            if (external_row)
                alpha2_worst = std::max(alpha2_worst, rel);
            else
                rep.max_rel_error = std::max(rep.max_rel_error, rel);
        }
        if (bc == Boundary::OBC && L % 2 == 0) {
            // Power-doubling consistency between the two high rows, with the
            // quartic sum taken from enumeration so the check is independent
            // of the closed-form constant.
            const double det4 = spm(g, 4.0, opt).total;
            const double det8 = spm(g, 8.0, opt).total;
            const double predicted = std::exp(-L * std::numbers::ln2) * det4 * det4;
            rep.add_detail(base + "Det_8 vs 2^-L Det_4^2 (brute)", detail::safe_log(det8),
                           detail::safe_log(predicted), detail::rel_linear(det8, predicted));
        }
    }
    rep.finalize();
    if (bc == Boundary::OBC) rep.alpha2_row_pass = alpha2_worst <= rep.tolerance;
    return rep;
}

}  // namespace magicminors

#endif  // MAGICMINORS_IDENTITIES_HPP
