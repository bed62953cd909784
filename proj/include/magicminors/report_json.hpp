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

#ifndef MAGICMINORS_REPORT_JSON_HPP
#define MAGICMINORS_REPORT_JSON_HPP

#include <json.hpp>

#include "magicminors/entropy.hpp"
#include "magicminors/identities.hpp"
#include "magicminors/scaling.hpp"

namespace magicminors {

// Field order is fixed (ordered_json) so identical runs serialize to
// identical bytes.
using ordered_json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline ordered_json to_json(const VerificationDetail& d) {
    ordered_json j;
    j["label"] = d.label;
    j["lhs_log"] = d.lhs_log;
    j["rhs_log"] = d.rhs_log;
    j["rel_error"] = d.rel_error;
    return j;
}

inline ordered_json to_json(const VerificationReport& r) {
    ordered_json j;
    j["identity_name"] = r.identity_name;
    j["tolerance"] = r.tolerance;
    j["sizes"] = r.sizes;
    ordered_json details = ordered_json::array();
    for (const auto& d : r.details) details.push_back(to_json(d));
    j["details"] = details;
    j["max_rel_error"] = r.max_rel_error;
    if (r.alpha2_row_pass) j["alpha2_row_pass"] = *r.alpha2_row_pass;
    j["pass"] = r.pass;
    return j;
}

inline ordered_json to_json(const EntropyResult& r) {
    ordered_json j;
    j["model"] = r.model;
    j["alpha"] = r.alpha;
    j["value"] = r.value;
    j["numerator_log"] = r.numerator_log;
    j["normalization_log"] = r.normalization_log;
    return j;
}

inline ordered_json to_json(const ScalingFit& f) {
    ordered_json j;
    j["alpha"] = f.alpha;
    j["boundary"] = boundary_name(f.boundary);
    j["L_grid"] = f.L_grid;
    j["values"] = f.values;
    ordered_json fitted;
    fitted["m"] = f.m;
    fitted["b"] = f.b;
    fitted["c"] = f.c;
    j["fitted"] = fitted;
    j["residual_rms"] = f.residual_rms;
    ordered_json predicted;
    predicted["b"] = f.predicted.b;
    if (f.predicted.c)
        predicted["c"] = *f.predicted.c;
    else
        predicted["c"] = nullptr;
    j["predicted"] = predicted;
    j["finite_size_caveat"] = f.finite_size_caveat;
    return j;
}

}  // namespace magicminors

#endif  // MAGICMINORS_REPORT_JSON_HPP
