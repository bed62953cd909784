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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "magicminors/entropy.hpp"
#include "magicminors/errors.hpp"
#include "magicminors/identities.hpp"
#include "magicminors/minor_engine.hpp"
#include "magicminors/models.hpp"
#include "magicminors/report_json.hpp"
#include "magicminors/scaling.hpp"

using namespace magicminors;

namespace {

constexpr std::uint64_t kDefaultSeed = 0x6d696e6f72ULL;

// ---------------------------------------------------------------------------
// Flag parsing helpers: integer lists accept "4", "2,4,6" and "a..b:step".
// ---------------------------------------------------------------------------

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(s);
    while (std::getline(ss, cur, ',')) out.push_back(cur);
    return out;
}

long long parse_ll(const std::string& s, const std::string& flag) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(flag + ": cannot parse integer '" + s + "'");
    }
}

std::vector<int> parse_int_list(const std::string& tokens, const std::string& flag) {
    std::vector<int> out;
    for (const std::string& tok : split_commas(tokens)) {
        const std::size_t dots = tok.find("..");
        if (dots == std::string::npos) {
            out.push_back(static_cast<int>(parse_ll(tok, flag)));
            continue;
        }
        const std::string a = tok.substr(0, dots);
        std::string rest = tok.substr(dots + 2);
        long long step = 1;
        const std::size_t colon = rest.find(':');
        if (colon != std::string::npos) {
            step = parse_ll(rest.substr(colon + 1), flag);
            rest = rest.substr(0, colon);
        }
        const long long lo = parse_ll(a, flag);
        const long long hi = parse_ll(rest, flag);
        if (step < 1) throw ConfigError(flag + ": range step must be >= 1");
        if (hi < lo) throw ConfigError(flag + ": empty range '" + tok + "'");
        for (long long v = lo; v <= hi; v += step) out.push_back(static_cast<int>(v));
    }
    if (out.empty()) throw ConfigError(flag + ": empty list");
    return out;
}

std::vector<double> parse_double_list(const std::string& tokens, const std::string& flag) {
    std::vector<double> out;
    for (const std::string& tok : split_commas(tokens)) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError(flag + ": cannot parse number '" + tok + "'");
        }
    }
    if (out.empty()) throw ConfigError(flag + ": empty list");
    return out;
}

Family parse_family(const std::string& s) {
    if (s == "tfi") return Family::TFI;
    if (s == "xx") return Family::XX;
    if (s == "zn+1") return Family::SymbolZn;
    if (s == "chiral") return Family::SymbolChiral;
    throw ConfigError("--model: expected one of tfi|xx|zn+1|chiral, got '" + s + "'");
}

Boundary parse_bc(const std::string& s) {
    if (s == "pbc") return Boundary::PBC;
    if (s == "obc") return Boundary::OBC;
    throw ConfigError("--bc: expected pbc or obc, got '" + s + "'");
}

void emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw ConfigError("--out: cannot open '" + out_path + "' for writing");
    f << payload;
}

// ---------------------------------------------------------------------------
// Shared flag bundles
// ---------------------------------------------------------------------------

struct CommonFlags {
    int workers = 0;
    std::uint64_t max_terms = 0;
    std::string out;

    void attach(CLI::App* cmd) {
        cmd->add_option("--workers", workers,
                        "worker threads for minor enumeration (0 = hardware)");
        cmd->add_option("--max-terms", max_terms,
                        "override the enumeration term budget (0 = default caps)");
        cmd->add_option("--out", out, "write data to this file instead of stdout");
    }
    EngineOptions engine() const { return EngineOptions{workers, max_terms}; }
};

struct ModelFlags {
    std::string model = "tfi";
    std::string bc = "pbc";
    std::string L = "4";
    int n = 0;
    int m = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--model", model, "model family: tfi|xx|zn+1|chiral");
        cmd->add_option("--bc", bc, "boundary condition: pbc|obc");
        cmd->add_option("--L", L, "matrix sizes, e.g. 4 or 2,4,6 or 2..8:2");
        cmd->add_option("--n", n, "symbol exponent for zn+1");
        cmd->add_option("--m", m, "symbol exponent for chiral");
    }
    ModelSpec spec(int size) const {
        ModelSpec s;
        s.family = parse_family(model);
        s.boundary = parse_bc(bc);
        s.L = size;
        s.n = n;
        s.m = m;
        s.validate();
        return s;
    }
};

// ---------------------------------------------------------------------------
// Entropy commands (sre / sr / shannon)
// ---------------------------------------------------------------------------

std::string entropy_payload(const std::vector<EntropyResult>& rows, const std::string& format) {
    if (format == "json") {
        ordered_json j;
        j["schema_version"] = kSchemaVersion;
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows) arr.push_back(to_json(r));
        j["results"] = arr;
        return j.dump(2) + "\n";
    }
    if (format == "csv") {
        std::string s = "model,alpha,value,numerator_log,normalization_log\n";
        for (const auto& r : rows)
            s += r.model + "," + format_double17(r.alpha) + "," + format_double17(r.value) + "," +
                 format_double17(r.numerator_log) + "," + format_double17(r.normalization_log) +
                 "\n";
        return s;
    }
    std::string s;
    for (const auto& r : rows)
        s += r.model + " alpha=" + format_double17(r.alpha) + " value=" +
             format_double17(r.value) + "\n";
    return s;
}

enum class EntropyKind { SquaredMinors, PfaffianMinors, Limit };

int run_entropy(EntropyKind kind, const ModelFlags& model, const std::string& in_path,
                const std::string& alphas_raw, const std::string& format,
                const CommonFlags& common) {
    std::vector<double> alphas;
    if (kind == EntropyKind::Limit)
        alphas.push_back(1.0);
    else
        alphas = parse_double_list(alphas_raw, "--alpha");
    std::vector<EntropyResult> rows;
    if (!in_path.empty()) {
        // Kernel loaded from a matrix file; the command picks the distribution.
        std::ifstream f(in_path);
        if (!f) throw ConfigError("--in: cannot open '" + in_path + "'");
        const Matrix m = read_matrix(f);
        const std::string label = "file:" + in_path;
        for (double alpha : alphas) {
            if (kind == EntropyKind::PfaffianMinors)
                rows.push_back(shannon_renyi(SkewMatrix(m), alpha, common.engine(), label));
            else
                rows.push_back(stabilizer_renyi(m, alpha, common.engine(), label));
        }
        emit(common.out, entropy_payload(rows, format));
        return exit_ok;
    }
    const std::vector<int> sizes = parse_int_list(model.L, "--L");
    for (int L : sizes) {
        const ModelSpec spec = model.spec(L);
        for (double alpha : alphas) {
            if (kind == EntropyKind::SquaredMinors && spec.family == Family::XX)
                throw ConfigError("sre computes the squared-minor entropy of a G-type model; "
                                  "xx is R-type, use `sr`");
            if (kind == EntropyKind::PfaffianMinors && spec.family != Family::XX)
                throw ConfigError("sr computes the Pfaffian-minor entropy of an R-type model; "
                                  "use `sre` for " + family_name(spec.family));
            EntropyResult res;
            if (spec.family == Family::XX)
                res = shannon_renyi(build_r(spec), alpha, common.engine(), spec.label());
            else
                res = stabilizer_renyi(build_g(spec), alpha, common.engine(), spec.label());
            rows.push_back(res);
        }
    }
    emit(common.out, entropy_payload(rows, format));
    return exit_ok;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyFlags {
    std::string M = "2..5";
    std::string L;
    std::string alpha;
    std::string bc;
    std::string family;
    std::string n = "1,2,3";
    std::string m = "1,2";
    int count = 5;
    std::uint64_t seed = kDefaultSeed;
};

std::vector<int> valid_zn_sizes(int n, int L_max) {
    std::vector<int> out;
    for (int L = 2 * n; L <= L_max; L += 2 * n) out.push_back(L);
    return out;
}

std::vector<int> valid_chiral_sizes(int m, int L_max) {
    std::vector<int> out;
    for (int L = 4 * m; L <= L_max; L += 4 * m) out.push_back(L);
    return out;
}

std::vector<VerificationReport> run_verify_theorem1(const VerifyFlags& vf,
                                                    const EngineOptions& opt) {
    const std::vector<int> sizes = parse_int_list(vf.M, "--M");
    const std::vector<double> alphas =
        parse_double_list(vf.alpha.empty() ? "0.5,1,2,3" : vf.alpha, "--alpha");
    return {verify_theorem1_random(sizes, vf.count, alphas, vf.seed, opt)};
}

std::vector<VerificationReport> run_verify_xx_tfi(const VerifyFlags& vf,
                                                  const EngineOptions& opt) {
    const std::vector<int> sizes = parse_int_list(vf.L.empty() ? "2,4,6" : vf.L, "--L");
    const std::vector<double> alphas =
        parse_double_list(vf.alpha.empty() ? "0.5,2,4" : vf.alpha, "--alpha");
    std::vector<Boundary> bcs;
    if (vf.bc.empty())
        bcs = {Boundary::PBC, Boundary::OBC};
    else
        bcs = {parse_bc(vf.bc)};
    std::vector<VerificationReport> out;
    for (Boundary bc : bcs)
        for (int L : sizes) out.push_back(verify_xx_tfi(L, bc, alphas, opt));
    return out;
}

std::vector<VerificationReport> run_verify_blocks(const VerifyFlags& vf,
                                                  const EngineOptions& opt) {
    const bool want_zn = vf.family.empty() || vf.family == "zn+1";
    const bool want_chiral = vf.family.empty() || vf.family == "chiral";
    if (!want_zn && !want_chiral)
        throw ConfigError("verify blocks: --family must be zn+1 or chiral");
    std::vector<ZnConfig> zn;
    std::vector<ChiralConfig> chiral;
    if (want_zn) {
        for (int n : parse_int_list(vf.n, "--n")) {
            const std::vector<int> sizes =
                vf.L.empty() ? valid_zn_sizes(n, 24) : parse_int_list(vf.L, "--L");
            for (int L : sizes) zn.push_back({L, n});
        }
    }
    if (want_chiral) {
        for (int m : parse_int_list(vf.m, "--m")) {
            const std::vector<int> sizes =
                vf.L.empty() ? valid_chiral_sizes(m, 16) : parse_int_list(vf.L, "--L");
            for (int L : sizes) chiral.push_back({L, m});
        }
    }
    return verify_blocks(zn, chiral, opt);
}

std::vector<VerificationReport> run_verify_gf(const VerifyFlags& vf, const EngineOptions& opt) {
    std::vector<VerificationReport> out;
    if (vf.family.empty() && vf.L.empty() && vf.alpha.empty()) {
        out.push_back(verify_gf_products(8, Family::SymbolZn, 2, 2.0, opt));
        out.push_back(verify_gf_products(8, Family::SymbolZn, 2, 4.0, opt));
        out.push_back(verify_gf_products(8, Family::SymbolChiral, 1, 2.0, opt));
        return out;
    }
    const Family fam = parse_family(vf.family.empty() ? "zn+1" : vf.family);
    if (fam != Family::SymbolZn && fam != Family::SymbolChiral)
        throw ConfigError("verify gf: --family must be zn+1 or chiral");
    const int nm = fam == Family::SymbolZn ? parse_int_list(vf.n, "--n")[0]
                                           : parse_int_list(vf.m, "--m")[0];
    for (int L : parse_int_list(vf.L.empty() ? "8" : vf.L, "--L"))
        for (double alpha : parse_double_list(vf.alpha.empty() ? "2" : vf.alpha, "--alpha"))
            out.push_back(verify_gf_products(L, fam, nm, alpha, opt));
    return out;
}

std::vector<VerificationReport> run_verify_table2(const VerifyFlags& vf,
                                                  const EngineOptions& opt) {
    std::vector<VerificationReport> out;
    std::vector<Boundary> bcs;
    if (vf.bc.empty())
        bcs = {Boundary::PBC, Boundary::OBC};
    else
        bcs = {parse_bc(vf.bc)};
    for (Boundary bc : bcs) {
        std::vector<int> sizes;
        if (!vf.L.empty())
            sizes = parse_int_list(vf.L, "--L");
        else if (bc == Boundary::PBC)
            sizes = {1, 2, 4, 6, 8};
        else
            sizes = {2, 4, 6};
        out.push_back(verify_table2(bc, sizes, opt));
    }
    return out;
}

int run_verify(const std::string& which, const VerifyFlags& vf, const std::string& out_path,
               const EngineOptions& opt) {
    std::vector<VerificationReport> reports;
    auto append = [&](std::vector<VerificationReport> r) {
        for (auto& rep : r) reports.push_back(std::move(rep));
    };
    if (which == "theorem1" || which == "all") append(run_verify_theorem1(vf, opt));
    if (which == "xx-tfi" || which == "all") append(run_verify_xx_tfi(vf, opt));
    if (which == "blocks" || which == "all") append(run_verify_blocks(vf, opt));
    if (which == "gf" || which == "all") append(run_verify_gf(vf, opt));
    if (which == "table2" || which == "all") append(run_verify_table2(vf, opt));
    if (reports.empty())
        throw ConfigError("verify: unknown suite '" + which +
                          "' (expected theorem1|xx-tfi|blocks|gf|table2|all)");

    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    ordered_json arr = ordered_json::array();
    bool all_pass = true;
    for (const auto& r : reports) {
        arr.push_back(to_json(r));
        all_pass = all_pass && r.pass;
    }
    j["reports"] = arr;
    j["pass"] = all_pass;
    emit(out_path, j.dump(2) + "\n");
    return all_pass ? exit_ok : exit_identity_failure;
}

// ---------------------------------------------------------------------------
// scaling
// ---------------------------------------------------------------------------

int run_scaling(const std::string& bc_raw, double alpha, const std::string& source_raw,
                const std::string& L_raw, int l_min_flag, const std::string& format,
                const CommonFlags& common) {
    const Boundary bc = parse_bc(bc_raw);
    SeriesSource source;
    if (source_raw == "brute")
        source = SeriesSource::Brute;
    else if (source_raw == "closed")
        source = SeriesSource::Closed;
    else
        throw ConfigError("--source: expected brute or closed, got '" + source_raw + "'");
    const std::string default_grid = source == SeriesSource::Closed ? "200..2000:200" : "2..10";
    const std::vector<int> grid = parse_int_list(L_raw.empty() ? default_grid : L_raw, "--L");

    const std::vector<SeriesPoint> series = entropy_series(bc, alpha, grid, source,
                                                           common.engine());
    int l_min = l_min_flag;
    if (source == SeriesSource::Closed) l_min = std::max(l_min, kClosedFitMinL);
    ScalingFit fit = fit_scaling(alpha, bc, series, l_min);
    fit.finite_size_caveat = source == SeriesSource::Brute;
    fit.predicted = cft_prediction(alpha, bc);

    if (format == "csv") {
        std::string s = "alpha,boundary,L,M_alpha,source\n";
        for (const auto& p : series)
            s += format_double17(alpha) + "," + boundary_name(bc) + "," + std::to_string(p.L) +
                 "," + format_double17(p.value) + "," + series_source_name(source) + "\n";
        emit(common.out, s);
        std::cerr << "fit: m=" << format_double17(fit.m) << " b=" << format_double17(fit.b)
                  << " c=" << format_double17(fit.c)
                  << " residual_rms=" << format_double17(fit.residual_rms) << "\n";
        std::cerr << "predicted: b=" << format_double17(fit.predicted.b)
                  << (fit.predicted.c ? " c=" + format_double17(*fit.predicted.c) : "") << "\n";
        return exit_ok;
    }
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["source"] = series_source_name(source);
    ordered_json arr = ordered_json::array();
    for (const auto& p : series) {
        ordered_json row;
        row["L"] = p.L;
        row["value"] = p.value;
        arr.push_back(row);
    }
    j["series"] = arr;
    j["fit"] = to_json(fit);
    emit(common.out, j.dump(2) + "\n");
    return exit_ok;
}

// ---------------------------------------------------------------------------
// matrix build / dump
// ---------------------------------------------------------------------------

int run_matrix_build(const ModelFlags& model, const CommonFlags& common) {
    const std::vector<int> sizes = parse_int_list(model.L, "--L");
    if (sizes.size() != 1) throw ConfigError("matrix build: exactly one --L expected");
    const ModelSpec spec = model.spec(sizes[0]);
    std::ostringstream os;
    if (spec.family == Family::XX)
        write_matrix(os, build_r(spec).as_matrix());
    else
        write_matrix(os, build_g(spec));
    emit(common.out, os.str());
    return exit_ok;
}

int run_matrix_dump(const std::string& in_path, const CommonFlags& common) {
    std::ifstream f(in_path);
    if (!f) throw ConfigError("matrix dump: cannot open '" + in_path + "'");
    const Matrix m = read_matrix(f);
    std::ostringstream os;
    write_matrix(os, m);
    emit(common.out, os.str());
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"power sums of matrix minors: entropies, identities, scaling"};
    app.require_subcommand(1);

    // sre / sr / shannon
    ModelFlags sre_model, sr_model, sh_model;
    CommonFlags sre_common, sr_common, sh_common;
    std::string sre_alpha = "2", sr_alpha = "2";
    std::string sre_format = "json", sr_format = "json", sh_format = "json";
    std::string sre_in, sr_in;
    sr_model.model = "xx";
    sr_model.L = "8";

    CLI::App* sre = app.add_subcommand("sre", "entropy of the squared-minor distribution");
    sre_model.attach(sre);
    sre->add_option("--alpha", sre_alpha, "entropy indices, e.g. 2 or 0.5,1,2");
    sre->add_option("--in", sre_in, "read the kernel from a matrix file instead of --model");
    sre->add_option("--format", sre_format, "json|csv|text");
    sre_common.attach(sre);

    CLI::App* sr = app.add_subcommand("sr", "entropy of the Pfaffian-minor distribution");
    sr_model.attach(sr);
    sr->add_option("--alpha", sr_alpha, "entropy indices");
    sr->add_option("--in", sr_in, "read the kernel from a matrix file (must be skew)");
    sr->add_option("--format", sr_format, "json|csv|text");
    sr_common.attach(sr);

    CLI::App* sh = app.add_subcommand("shannon", "alpha -> 1 limit entropy");
    sh_model.attach(sh);
    sh->add_option("--format", sh_format, "json|csv|text");
    sh_common.attach(sh);

    // verify
    CLI::App* verify = app.add_subcommand("verify", "run identity verifiers, emit JSON reports");
    verify->require_subcommand(1);
    VerifyFlags vf;
    CommonFlags verify_common;
    std::vector<std::string> suites = {"theorem1", "xx-tfi", "blocks", "gf", "table2", "all"};
    std::vector<CLI::App*> verify_subs;
    for (const std::string& name : suites) {
        CLI::App* sub = verify->add_subcommand(name, "verify " + name);
        sub->add_option("--M", vf.M, "sizes of the random square matrices");
        sub->add_option("--L", vf.L, "sizes to test");
        sub->add_option("--alpha", vf.alpha, "power-sum indices");
        sub->add_option("--bc", vf.bc, "pbc|obc (default: both)");
        sub->add_option("--family", vf.family, "zn+1|chiral (default: both)");
        sub->add_option("--n", vf.n, "decimation exponents");
        sub->add_option("--m", vf.m, "chiral exponents");
        sub->add_option("--count", vf.count, "random matrices per size");
        sub->add_option("--seed", vf.seed, "random matrix seed");
        verify_common.attach(sub);
        verify_subs.push_back(sub);
    }

    // scaling
    CLI::App* scaling = app.add_subcommand("scaling", "entropy series + three-term fit");
    std::string sc_bc = "pbc", sc_source = "closed", sc_L, sc_format = "json";
    double sc_alpha = 2.0;
    int sc_l_min = 0;
    CommonFlags sc_common;
    scaling->add_option("--bc", sc_bc, "pbc|obc");
    scaling->add_option("--alpha", sc_alpha, "entropy index (alpha != 1)");
    scaling->add_option("--source", sc_source, "brute|closed");
    scaling->add_option("--L", sc_L, "size grid, e.g. 200..2000:200");
    scaling->add_option("--l-min", sc_l_min, "drop grid points below this size before fitting");
    scaling->add_option("--format", sc_format, "json|csv");
    sc_common.attach(scaling);

    // matrix
    CLI::App* matrix = app.add_subcommand("matrix", "build or round-trip matrix files");
    matrix->require_subcommand(1);
    ModelFlags mb_model;
    CommonFlags mb_common, md_common;
    std::string md_in;
    CLI::App* mbuild = matrix->add_subcommand("build", "write a model matrix in text format");
    mb_model.attach(mbuild);
    mb_common.attach(mbuild);
    CLI::App* mdump = matrix->add_subcommand("dump", "parse a matrix file, re-emit canonically");
    mdump->add_option("--in", md_in, "input matrix file")->required();
    md_common.attach(mdump);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config_error;
    }

    try {
        if (sre->parsed())
            return run_entropy(EntropyKind::SquaredMinors, sre_model, sre_in, sre_alpha,
                               sre_format, sre_common);
        if (sr->parsed())
            return run_entropy(EntropyKind::PfaffianMinors, sr_model, sr_in, sr_alpha,
                               sr_format, sr_common);
        if (sh->parsed())
            return run_entropy(EntropyKind::Limit, sh_model, "", "", sh_format, sh_common);
        if (verify->parsed()) {
            for (std::size_t i = 0; i < verify_subs.size(); ++i)
                if (verify_subs[i]->parsed())
                    return run_verify(suites[i], vf, verify_common.out, verify_common.engine());
        }
        if (scaling->parsed())
            return run_scaling(sc_bc, sc_alpha, sc_source, sc_L, sc_l_min, sc_format, sc_common);
        if (matrix->parsed()) {
            if (mbuild->parsed()) return run_matrix_build(mb_model, mb_common);
            if (mdump->parsed()) return run_matrix_dump(md_in, md_common);
        }
        throw ConfigError("no command given");
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config_error;
    }
}
