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

#ifndef MAGICMINORS_KAHAN_HPP
#define MAGICMINORS_KAHAN_HPP

#include <array>
#include <cstddef>

namespace magicminors {

// Compensated (Kahan) accumulator. Addition order is part of the contract:
// the deterministic reduction in minor_engine relies on every chunk adding
// its terms in enumeration order and on partials being combined in fixed
// chunk order.
class KahanAdder {
public:
    KahanAdder() = default;

    void add(double x) {
        volatile double y = x - comp_;
        volatile double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }

    double sum() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// K independent Kahan channels advanced in lockstep (e.g. sum of weights and
// sum of weight*log(weight) for the Shannon limits).
template <std::size_t K>
class KahanChannels {
public:
    void add(const std::array<double, K>& xs) {
        for (std::size_t i = 0; i < K; ++i) ch_[i].add(xs[i]);
    }

    std::array<double, K> sums() const {
        std::array<double, K> out{};
        for (std::size_t i = 0; i < K; ++i) out[i] = ch_[i].sum();
        return out;
    }

private:
    std::array<KahanAdder, K> ch_{};
};

} // namespace magicminors

#endif
