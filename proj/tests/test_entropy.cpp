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

#include <cmath>
#include <numbers>

#include "magicminors/entropy.hpp"
#include "magicminors/errors.hpp"
#include "magicminors/models.hpp"

using namespace magicminors;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("pinned entropy values of the L=2 periodic kernel", "[entropy]") {
    const Matrix g = tfi_g(Boundary::PBC, 2);
    // Det_4 = 3, so the alpha=2 entropy is ln(2^4/3) = ln(16/3).
    REQUIRE_THAT(stabilizer_renyi(g, 2.0).value, WithinRel(std::log(16.0 / 3.0), 1e-12));
    // Det_8 = 2^-L Det_4^2 = 9/16 gives ln(1024/9)/3 at alpha=4.
    REQUIRE_THAT(stabilizer_renyi(g, 4.0).value, WithinRel(std::log(1024.0 / 9.0) / 3.0, 1e-12));
    // Det_1 = 2 + 2 sqrt(2) gives 2 ln(1 + sqrt(2)) at alpha = 1/2.
    REQUIRE_THAT(stabilizer_renyi(g, 0.5).value,
                 WithinRel(2.0 * std::log(1.0 + std::sqrt(2.0)), 1e-12));
}

TEST_CASE("identity kernel has flat minor distribution", "[entropy]") {
    // All 2^L nonzero minors equal 1, so every Renyi index gives L ln 2.
    const int L = 3;
    Matrix g(L, L, true);
    for (int i = 0; i < L; ++i) g.set(i, i, 1.0);
    for (double alpha : {0.5, 1.0, 2.0, 3.0})
        REQUIRE_THAT(stabilizer_renyi(g, alpha).value, WithinRel(L * std::numbers::ln2, 1e-12));

    Matrix one(1, 1, true);
    one.set(0, 0, 1.0);
    for (double alpha : {0.5, 1.0, 2.0, 5.0})
        REQUIRE_THAT(stabilizer_renyi(one, alpha).value, WithinRel(std::numbers::ln2, 1e-13));
}

TEST_CASE("result decomposition is self-consistent", "[entropy]") {
    const Matrix g = tfi_g(Boundary::OBC, 4);
    for (double alpha : {0.5, 2.0, 3.0}) {
        const EntropyResult r = stabilizer_renyi(g, alpha);
        REQUIRE(r.alpha == alpha);
        REQUIRE_THAT(r.normalization_log, WithinRel(4.0 * std::numbers::ln2, 1e-14));
        REQUIRE_THAT((r.numerator_log - alpha * r.normalization_log) / (1.0 - alpha),
                     WithinRel(r.value, 1e-12));
    }
}

TEST_CASE("limit entropy sits between neighboring indices", "[entropy]") {
    const Matrix g = tfi_g(Boundary::PBC, 4);
    const double v1 = stabilizer_renyi(g, 1.0).value;
    // Renyi entropies decrease in the index, so the limit is bracketed.
    REQUIRE(stabilizer_renyi(g, 0.99).value > v1);
    REQUIRE(stabilizer_renyi(g, 1.01).value < v1);
    // Smoothness: the centered average agrees to second order.
    const double mid = 0.5 * (stabilizer_renyi(g, 1.0 - 1e-5).value +
                              stabilizer_renyi(g, 1.0 + 1e-5).value);
    REQUIRE_THAT(v1, WithinAbs(mid, 1e-7));
}

TEST_CASE("entropy decreases with the Renyi index", "[entropy]") {
    const Matrix g = tfi_g(Boundary::PBC, 4);
    double prev = stabilizer_renyi(g, 0.5).value;
    for (double alpha : {1.0, 2.0, 3.0, 4.0}) {
        const double v = stabilizer_renyi(g, alpha).value;
        REQUIRE(v < prev);
        prev = v;
    }
}

TEST_CASE("orthogonality gate rejects invalid kernels", "[entropy]") {
    Matrix bad(2, 2, true);
    bad.set(0, 0, 2.0);
    bad.set(1, 1, 2.0);
    REQUIRE_THROWS_AS(stabilizer_renyi(bad, 2.0), ModelError);
    REQUIRE_THROWS_WITH(stabilizer_renyi(bad, 2.0),
                        Catch::Matchers::ContainsSubstring("not a valid kernel"));
    REQUIRE_THROWS_AS(stabilizer_renyi(Matrix(2, 3, true), 2.0), DimensionError);
    REQUIRE_THROWS_AS(stabilizer_renyi(tfi_g(Boundary::PBC, 2), 0.0), DomainError);
}

TEST_CASE("skew-kernel entropy at pinned points", "[entropy]") {
    // L=2 skew kernel [[0,-1],[1,0]]: both Pfaffian weights equal 1/2.
    const SkewMatrix r2 = xx_r(Boundary::PBC, 2);
    for (double alpha : {0.5, 1.0, 2.0, 4.0})
        REQUIRE_THAT(shannon_renyi(r2, alpha).value, WithinRel(std::numbers::ln2, 1e-12));

    // Doubling correspondence at the smallest nontrivial size.
    const double lhs = stabilizer_renyi(tfi_g(Boundary::PBC, 2), 2.0).value;
    const double rhs = shannon_renyi(xx_r(Boundary::PBC, 4), 2.0).value;
    REQUIRE_THAT(lhs, WithinRel(rhs, 1e-12));
}

TEST_CASE("limit entropies of corresponding kernels agree", "[entropy]") {
    const double m1 = stabilizer_renyi(tfi_g(Boundary::PBC, 4), 1.0).value;
    const double h1 = shannon_renyi(xx_r(Boundary::PBC, 8), 1.0).value;
    REQUIRE_THAT(m1, WithinRel(h1, 1e-10));
    // L=2: weights 1/4, 1/8 x4, 1/4 give 2.5 ln 2 in the limit.
    REQUIRE_THAT(stabilizer_renyi(tfi_g(Boundary::PBC, 2), 1.0).value,
                 WithinRel(2.5 * std::numbers::ln2, 1e-12));
}

TEST_CASE("normalization of the skew kernel", "[entropy]") {
    // For R = [[0,1],[-1,0]] the normalizer is det(2I)^(1/4) = sqrt(2).
    SkewMatrix r(2, true);
    r.set_pair(0, 1, 1.0);
    REQUIRE_THAT(log_normalization(r), WithinRel(0.5 * std::numbers::ln2, 1e-14));

    const EntropyResult res = shannon_renyi(xx_r(Boundary::PBC, 4), 2.0);
    REQUIRE_THAT((res.numerator_log - 2.0 * res.normalization_log) / (1.0 - 2.0),
                 WithinRel(res.value, 1e-12));
}

TEST_CASE("interleaved doubling preserves the quadratic normalization", "[entropy]") {
    // Interleaved doubling of an orthogonal G keeps N^2 = 2^L.
    const Matrix g = tfi_g(Boundary::PBC, 3);
    SkewMatrix r(6, true);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) r.set_pair(2 * a, 2 * b + 1, g.at(a, b));
    REQUIRE_THAT(2.0 * log_normalization(r), WithinRel(3.0 * std::numbers::ln2, 1e-10));
}
