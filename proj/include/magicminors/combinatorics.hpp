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

#ifndef MAGICMINORS_COMBINATORICS_HPP
#define MAGICMINORS_COMBINATORICS_HPP

#include <cstdint>
#include <vector>

#include "magicminors/errors.hpp"

namespace magicminors {

// Exact C(n,k) for n <= 64 (largest value used is C(64,32) < 2^63). The
// running product is a binomial coefficient after every step, so only the
// intermediate multiply needs the wider type.
inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 c = 1;
    for (int i = 1; i <= k; ++i)
        c = c * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    return static_cast<std::uint64_t>(c);
}

// Subsets of {0,..,n-1} of size r in colexicographic order: the subset with
// rank t has combinadic digits c_r > c_{r-1} > ... > c_1 where
// t = sum_i C(c_i, i). Unranking proceeds from the largest digit down.
inline void colex_unrank(std::uint64_t t, int r, std::vector<int>& out) {
    out.resize(static_cast<std::size_t>(r));
    for (int i = r; i >= 1; --i) {
        // Largest c with C(c, i) <= t. Linear descent is fine: callers unrank
        // once per chunk, not once per subset.
        int c = i - 1;
        std::uint64_t binom = 0; // C(i-1, i) = 0
        for (;;) {
            std::uint64_t next = binomial(c + 1, i);
            if (next > t) break;
            binom = next;
            ++c;
        }
        out[static_cast<std::size_t>(i - 1)] = c;
        t -= binom;
    }
}

// Advance a subset to its colex successor within {0,..,n-1}. Returns false
// when the input was the last subset.
inline bool colex_next(std::vector<int>& s, int n) {
    const int r = static_cast<int>(s.size());
    for (int i = 0; i < r; ++i) {
        int limit = (i + 1 < r) ? s[static_cast<std::size_t>(i + 1)] - 1 : n - 1;
        if (s[static_cast<std::size_t>(i)] < limit) {
            ++s[static_cast<std::size_t>(i)];
            for (int j = 0; j < i; ++j) s[static_cast<std::size_t>(j)] = j;
            return true;
        }
    }
    return false;
}

} // namespace magicminors

#endif
