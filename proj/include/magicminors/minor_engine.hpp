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

#ifndef MAGICMINORS_MINOR_ENGINE_HPP
#define MAGICMINORS_MINOR_ENGINE_HPP

#include <array>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "magicminors/combinatorics.hpp"
#include "magicminors/errors.hpp"
#include "magicminors/kahan.hpp"
#include "magicminors/matrix.hpp"

namespace magicminors {

// Minor magnitudes below this are flushed to exactly zero before the power is
// taken; fractional beta would otherwise turn 1e-16-scale noise into biased
// sums of many tiny terms.
inline constexpr double kMinorFlushTol = 1e-14;

// Default enumeration caps (overridable by an explicit term budget).
inline constexpr int kSpmCapL = 16;
inline constexpr int kSppCapN = 28;

// Terms per enumeration chunk. Fixed: chunk boundaries are part of the
// deterministic-reduction contract and must not depend on the worker count.
inline constexpr std::uint64_t kChunkTerms = 2048;

struct PowerSums {
    double beta = 0.0;
    std::vector<double> by_rank; // index r
    double total = 0.0;
    std::uint64_t term_count = 0;
};

struct EngineOptions {
    int workers = 0;             // <= 0: use available parallelism
    std::uint64_t max_terms = 0; // 0: use MAGIC_MINORS_MAX_TERMS env or default caps
};

inline std::optional<std::uint64_t> env_term_budget() {
    const char* s = std::getenv("MAGIC_MINORS_MAX_TERMS");
    if (!s || !*s) return std::nullopt;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end == s || *end != '\0')
        throw ConfigError("MAGIC_MINORS_MAX_TERMS: not a nonnegative integer");
    return static_cast<std::uint64_t>(v);
}

inline int resolve_workers(int requested) {
    if (requested > 0) return requested;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

namespace detail {

struct Chunk {
    int rank;
    std::uint64_t begin;
    std::uint64_t end;
};

// Splits each rank's term space into fixed-size chunks, rank-major.
inline std::vector<Chunk> make_chunks(const std::vector<std::uint64_t>& rank_counts) {
    std::vector<Chunk> chunks;
    for (std::size_t r = 0; r < rank_counts.size(); ++r) {
        std::uint64_t begin = 0;
        const std::uint64_t total = rank_counts[r];
        while (begin < total) {
            const std::uint64_t end = std::min(begin + kChunkTerms, total);
            chunks.push_back({static_cast<int>(r), begin, end});
            begin = end;
        }
    }
    return chunks;
}

// Runs `work(chunk) -> array<double,K>` over all chunks with an atomic grab
// loop, then combines partials per rank in fixed chunk order.
template <std::size_t K, class Work>
std::vector<std::array<double, K>> run_chunks(const std::vector<Chunk>& chunks,
                                              int n_ranks, int workers, Work work) {
    std::vector<std::array<double, K>> partials(chunks.size());
    std::atomic<std::size_t> next{0};
    auto body = [&]() {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= chunks.size()) break;
            partials[idx] = work(chunks[idx]);
        }
    };
    const int w = std::min<int>(workers, static_cast<int>(chunks.size()));
    if (w <= 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(w));
        for (int i = 0; i < w; ++i) pool.emplace_back(body);
        for (auto& t : pool) t.join();
    }
    std::vector<std::array<double, K>> by_rank(static_cast<std::size_t>(n_ranks));
    std::vector<KahanChannels<K>> acc(static_cast<std::size_t>(n_ranks));
    for (std::size_t i = 0; i < chunks.size(); ++i)
        acc[static_cast<std::size_t>(chunks[i].rank)].add(partials[i]);
    for (int r = 0; r < n_ranks; ++r)
        by_rank[static_cast<std::size_t>(r)] = acc[static_cast<std::size_t>(r)].sums();
    return by_rank;
}

// |det M[I,J]| over chunk [begin,end) of the pair space at the given rank,
// feeding term(|minor|) into K Kahan channels in colex pair order.
template <std::size_t K, class Scalar, class Term>
std::array<double, K> spm_chunk(const std::vector<Scalar>& flat, int n, int rank,
                                std::uint64_t begin, std::uint64_t end, Term term) {
    KahanChannels<K> acc;
    if (rank == 0) {
        // Single empty minor, det = 1.
        for (std::uint64_t t = begin; t < end; ++t) acc.add(term(1.0));
        return acc.sums();
    }
    const std::uint64_t c = binomial(n, rank);
    std::vector<int> rows, cols;
    std::uint64_t irank = begin / c;
    std::uint64_t jrank = begin % c;
    colex_unrank(irank, rank, rows);
    colex_unrank(jrank, rank, cols);
    std::vector<Scalar> sub(static_cast<std::size_t>(rank) * static_cast<std::size_t>(rank));
    for (std::uint64_t t = begin; t < end; ++t) {
        for (int i = 0; i < rank; ++i) {
            const Scalar* src = flat.data() + static_cast<std::size_t>(rows[static_cast<std::size_t>(i)]) * n;
            Scalar* dst = sub.data() + static_cast<std::size_t>(i) * rank;
            for (int j = 0; j < rank; ++j) dst[j] = src[cols[static_cast<std::size_t>(j)]];
        }
        double mag = std::abs(det_inplace(sub.data(), rank));
        if (mag < kMinorFlushTol) mag = 0.0;
        acc.add(term(mag));
        if (t + 1 < end) {
            if (++jrank == c) {
                jrank = 0;
                for (int j = 0; j < rank; ++j) cols[static_cast<std::size_t>(j)] = j;
                colex_next(rows, n);
            } else {
                colex_next(cols, n);
            }
        }
    }
    return acc.sums();
}

// |pf A[S,S]| over chunk [begin,end) of the even-subset space at |S| = 2*rank.
template <std::size_t K, class Scalar, class Term>
std::array<double, K> spp_chunk(const std::vector<Scalar>& flat, int n, int rank,
                                std::uint64_t begin, std::uint64_t end, Term term) {
    KahanChannels<K> acc;
    if (rank == 0) {
        for (std::uint64_t t = begin; t < end; ++t) acc.add(term(1.0));
        return acc.sums();
    }
    const int r2 = 2 * rank;
    std::vector<int> s;
    colex_unrank(begin, r2, s);
    std::vector<Scalar> sub(static_cast<std::size_t>(r2) * static_cast<std::size_t>(r2));
    for (std::uint64_t t = begin; t < end; ++t) {
        for (int i = 0; i < r2; ++i) {
            const Scalar* src = flat.data() + static_cast<std::size_t>(s[static_cast<std::size_t>(i)]) * n;
            Scalar* dst = sub.data() + static_cast<std::size_t>(i) * r2;
            for (int j = 0; j < r2; ++j) dst[j] = src[s[static_cast<std::size_t>(j)]];
        }
        double mag = std::abs(pf_inplace(sub.data(), r2));
        if (mag < kMinorFlushTol) mag = 0.0;
        acc.add(term(mag));
        if (t + 1 < end) colex_next(s, n);
    }
    return acc.sums();
}

} // namespace detail

inline std::uint64_t spm_term_count(int n) { return binomial(2 * n, n); }

inline std::uint64_t spp_term_count(int n) {
    return n == 0 ? 1 : (std::uint64_t{1} << (n - 1));
}

inline void check_spm_budget(int n, const EngineOptions& opt) {
    std::optional<std::uint64_t> budget;
    if (opt.max_terms > 0)
        budget = opt.max_terms;
    else
        budget = env_term_budget();
    const std::uint64_t terms = spm_term_count(n);
    if (budget) {
        if (terms > *budget)
            throw CapacityError("spm: estimated " + std::to_string(terms) +
                                " terms exceeds the term budget " + std::to_string(*budget));
    } else if (n > kSpmCapL) {
        throw CapacityError("spm: L = " + std::to_string(n) + " exceeds the default cap L = " +
                            std::to_string(kSpmCapL) + " (estimated " + std::to_string(terms) +
                            " terms); raise MAGIC_MINORS_MAX_TERMS to override");
    }
}

inline void check_spp_budget(int n, const EngineOptions& opt) {
    std::optional<std::uint64_t> budget;
    if (opt.max_terms > 0)
        budget = opt.max_terms;
    else
        budget = env_term_budget();
    const std::uint64_t terms = spp_term_count(n);
    if (budget) {
        if (terms > *budget)
            throw CapacityError("spp: estimated " + std::to_string(terms) +
                                " terms exceeds the term budget " + std::to_string(*budget));
    } else if (n > kSppCapN) {
        throw CapacityError("spp: n = " + std::to_string(n) + " exceeds the default cap n = " +
                            std::to_string(kSppCapN) + " (estimated " + std::to_string(terms) +
                            " terms); raise MAGIC_MINORS_MAX_TERMS to override");
    }
}

// Rank-resolved reduction of term(|det M[I,J]|) over all equal-size row and
// column subset pairs; deterministic across runs and worker counts.
template <std::size_t K, class Term>
std::vector<std::array<double, K>> reduce_minors(const Matrix& m, Term term,
                                                 const EngineOptions& opt = {}) {
    if (!m.square()) throw DimensionError("reduce_minors: matrix must be square");
    const int n = m.rows();
    check_spm_budget(n, opt);
    std::vector<std::uint64_t> rank_counts(static_cast<std::size_t>(n) + 1);
    for (int r = 0; r <= n; ++r) {
        const std::uint64_t c = binomial(n, r);
        rank_counts[static_cast<std::size_t>(r)] = c * c;
    }
    const auto chunks = detail::make_chunks(rank_counts);
    const int workers = resolve_workers(opt.workers);
    if (m.is_real()) {
        const std::vector<double> flat = m.real_data();
        return detail::run_chunks<K>(chunks, n + 1, workers, [&](const detail::Chunk& c) {
            return detail::spm_chunk<K, double>(flat, n, c.rank, c.begin, c.end, term);
        });
    }
    const std::vector<cplx> flat = m.data();
    return detail::run_chunks<K>(chunks, n + 1, workers, [&](const detail::Chunk& c) {
        return detail::spm_chunk<K, cplx>(flat, n, c.rank, c.begin, c.end, term);
    });
}

// Rank-resolved reduction of term(|pf A[S,S]|) over all even-size principal
// subsets; rank r corresponds to |S| = 2r.
template <std::size_t K, class Term>
std::vector<std::array<double, K>> reduce_pf_minors(const SkewMatrix& a, Term term,
                                                    const EngineOptions& opt = {}) {
    const int n = a.size();
    check_spp_budget(n, opt);
    std::vector<std::uint64_t> rank_counts(static_cast<std::size_t>(n / 2) + 1);
    for (int r = 0; r <= n / 2; ++r)
        rank_counts[static_cast<std::size_t>(r)] = binomial(n, 2 * r);
    const auto chunks = detail::make_chunks(rank_counts);
    const int workers = resolve_workers(opt.workers);
    if (a.is_real()) {
        const std::vector<double> flat = a.as_matrix().real_data();
        return detail::run_chunks<K>(chunks, n / 2 + 1, workers, [&](const detail::Chunk& c) {
            return detail::spp_chunk<K, double>(flat, n, c.rank, c.begin, c.end, term);
        });
    }
    const std::vector<cplx> flat = a.as_matrix().data();
    return detail::run_chunks<K>(chunks, n / 2 + 1, workers, [&](const detail::Chunk& c) {
        return detail::spp_chunk<K, cplx>(flat, n, c.rank, c.begin, c.end, term);
    });
}

namespace detail {

inline PowerSums to_power_sums(double beta, std::vector<std::array<double, 1>> ranks,
                               std::uint64_t term_count) {
    PowerSums out;
    out.beta = beta;
    out.by_rank.resize(ranks.size());
    KahanAdder total;
    for (std::size_t r = 0; r < ranks.size(); ++r) {
        out.by_rank[r] = ranks[r][0];
        total.add(ranks[r][0]);
    }
    out.total = total.sum();
    out.term_count = term_count;
    return out;
}

} // namespace detail

// SPM: Det_beta(M) = sum over all equal-size subset pairs |det M[I,J]|^beta.
inline PowerSums spm(const Matrix& m, double beta, const EngineOptions& opt = {}) {
    if (beta <= 0.0) throw DomainError("spm: beta must be positive");
    auto ranks = reduce_minors<1>(
        m, [beta](double mag) { return std::array<double, 1>{std::pow(mag, beta)}; }, opt);
    return detail::to_power_sums(beta, std::move(ranks), spm_term_count(m.rows()));
}

// SPP: Pf_beta(A) = sum over even-size principal subsets |pf A[S,S]|^beta.
inline PowerSums spp(const SkewMatrix& a, double beta, const EngineOptions& opt = {}) {
    if (beta <= 0.0) throw DomainError("spp: beta must be positive");
    auto ranks = reduce_pf_minors<1>(
        a, [beta](double mag) { return std::array<double, 1>{std::pow(mag, beta)}; }, opt);
    return detail::to_power_sums(beta, std::move(ranks), spp_term_count(a.size()));
}

// Cauchy-Binet fast path: Det_2(M) = det(I + M M^dagger). Independent oracle
// for the enumeration engine and the purity check.
inline double spm_fast2(const Matrix& m) {
    if (!m.square()) throw DimensionError("spm_fast2: matrix must be square");
    const int n = m.rows();
    if (n == 0) return 1.0;
    if (m.is_real()) {
        std::vector<double> flat = m.real_data();
        std::vector<double> b(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double acc = (i == j) ? 1.0 : 0.0;
                for (int k = 0; k < n; ++k)
                    acc += flat[static_cast<std::size_t>(i) * n + k] *
                           flat[static_cast<std::size_t>(j) * n + k];
                b[static_cast<std::size_t>(i) * n + j] = acc;
            }
        return det_inplace(b.data(), n);
    }
    std::vector<cplx> flat = m.data();
    std::vector<cplx> b(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), cplx(0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx acc = (i == j) ? cplx(1.0) : cplx(0.0);
            for (int k = 0; k < n; ++k)
                acc += flat[static_cast<std::size_t>(i) * n + k] *
                       std::conj(flat[static_cast<std::size_t>(j) * n + k]);
            b[static_cast<std::size_t>(i) * n + j] = acc;
        }
    return det_inplace(b.data(), n).real();
}

// Generating-function coefficients: F^(alpha)(t) = sum_r S^(r) t^r. The
// computation is spm with beta = alpha; by_rank are the coefficients.
inline PowerSums minor_gf(const Matrix& m, double alpha, const EngineOptions& opt = {}) {
    if (alpha <= 0.0) throw DomainError("minor_gf: alpha must be positive");
    return spm(m, alpha, opt);
}

} // namespace magicminors

#endif
