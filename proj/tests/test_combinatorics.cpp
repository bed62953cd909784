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

#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include "magicminors/combinatorics.hpp"

using namespace magicminors;

TEST_CASE("binomial exact values", "[combinatorics]") {
    REQUIRE(binomial(0, 0) == 1);
    REQUIRE(binomial(1, 0) == 1);
    REQUIRE(binomial(5, 2) == 10);
    REQUIRE(binomial(10, 3) == binomial(10, 7));
    REQUIRE(binomial(32, 16) == 601080390ULL);
    // Largest value the enumeration engine ever requests.
    REQUIRE(binomial(64, 32) == 1832624140942590534ULL);
}

TEST_CASE("binomial out-of-range arguments give zero", "[combinatorics]") {
    REQUIRE(binomial(5, -1) == 0);
    REQUIRE(binomial(5, 6) == 0);
    REQUIRE(binomial(0, 1) == 0);
}

TEST_CASE("colex order of pairs from a 5-set", "[combinatorics]") {
    // Rank t of a subset equals sum_i C(c_i, i); pairs appear ordered by the
    // larger element first, then the smaller.
    const std::vector<std::vector<int>> expect = {
        {0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}, {0, 4}, {1, 4}, {2, 4}, {3, 4}};
    std::vector<int> s;
    for (std::uint64_t t = 0; t < expect.size(); ++t) {
        colex_unrank(t, 2, s);
        REQUIRE(s == expect[static_cast<std::size_t>(t)]);
    }
}

TEST_CASE("colex_next agrees with colex_unrank", "[combinatorics]") {
    for (const auto [n, r] : {std::pair{6, 3}, std::pair{8, 4}, std::pair{7, 1}}) {
        const std::uint64_t total = binomial(n, r);
        std::vector<int> walk;
        colex_unrank(0, r, walk);
        std::vector<int> direct;
        for (std::uint64_t t = 0; t < total; ++t) {
            colex_unrank(t, r, direct);
            REQUIRE(walk == direct);
            const bool more = colex_next(walk, n);
            REQUIRE(more == (t + 1 < total));
        }
    }
}

TEST_CASE("colex handles the empty subset", "[combinatorics]") {
    std::vector<int> s{1, 2, 3};
    colex_unrank(0, 0, s);
    REQUIRE(s.empty());
    REQUIRE_FALSE(colex_next(s, 5));
}

TEST_CASE("colex rank digits reconstruct the rank", "[combinatorics]") {
    const int n = 9, r = 4;
    const std::uint64_t total = binomial(n, r);
    std::vector<int> s;
    for (std::uint64_t t = 0; t < total; t += 7) {
        colex_unrank(t, r, s);
        std::uint64_t rank = 0;
        for (int i = 0; i < r; ++i) rank += binomial(s[static_cast<std::size_t>(i)], i + 1);
        REQUIRE(rank == t);
    }
}
