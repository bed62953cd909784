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

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef MM_CLI_PATH
#error "MM_CLI_PATH must point at the command-line binary"
#endif

namespace {

using nlohmann::json;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

const std::string& scratch_dir() {
    static const std::string dir = [] {
        char tmpl[] = "/tmp/mm-cli-test-XXXXXX";
        const char* d = mkdtemp(tmpl);
        REQUIRE(d != nullptr);
        return std::string(d);
    }();
    return dir;
}

// Runs the binary with the given arguments (and optional environment prefix),
// capturing exit code, stdout, and stderr.
RunResult run(const std::string& args, const std::string& env_prefix = {}) {
    static int counter = 0;
    const std::string base = scratch_dir() + "/run" + std::to_string(counter++);
    const std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") + MM_CLI_PATH + " " +
                            args + " >" + base + ".out 2>" + base + ".err";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(base + ".out");
    r.err = slurp(base + ".err");
    return r;
}

} // namespace

TEST_CASE("entropy command emits schema-tagged JSON", "[cli]") {
    const RunResult r = run("sre --model tfi --bc pbc --L 2 --alpha 2 --format json");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    REQUIRE(doc["schema_version"] == 1);
    REQUIRE(doc["results"].size() == 1);
    REQUIRE(doc["results"][0]["model"] == "tfi,pbc,L=2");
    const double value = doc["results"][0]["value"];
    REQUIRE(std::abs(value - std::log(16.0 / 3.0)) < 1e-10);
}

TEST_CASE("kernel-type mismatches exit with configuration errors", "[cli]") {
    const RunResult sre_xx = run("sre --model xx --L 4");
    REQUIRE(sre_xx.exit_code == 2);
    REQUIRE(sre_xx.err.find("use `sr`") != std::string::npos);
    REQUIRE(sre_xx.out.empty());

    const RunResult sr_tfi = run("sr --model tfi --L 4");
    REQUIRE(sr_tfi.exit_code == 2);
}

TEST_CASE("the two entropy commands agree through the doubling map", "[cli]") {
    const RunResult a = run("sre --model tfi --bc pbc --L 2 --alpha 2");
    const RunResult b = run("sr --model xx --bc pbc --L 4 --alpha 2");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    const double va = json::parse(a.out)["results"][0]["value"];
    const double vb = json::parse(b.out)["results"][0]["value"];
    REQUIRE(std::abs(va - vb) < 1e-12);

    const RunResult la = run("shannon --model tfi --L 2");
    const RunResult lb = run("shannon --model xx --L 4");
    const double sa = json::parse(la.out)["results"][0]["value"];
    const double sb = json::parse(lb.out)["results"][0]["value"];
    REQUIRE(std::abs(sa - sb) < 1e-10);
    REQUIRE(std::abs(sa - 2.5 * std::log(2.0)) < 1e-12);
}

TEST_CASE("alternate output formats", "[cli]") {
    const RunResult csv = run("sre --model tfi --L 2 --alpha 0.5,2 --format csv");
    REQUIRE(csv.exit_code == 0);
    REQUIRE(csv.out.rfind("model,alpha,value,numerator_log,normalization_log", 0) == 0);

    const RunResult text = run("sre --model tfi --L 2 --format text");
    REQUIRE(text.exit_code == 0);
    REQUIRE(text.out.find("value=") != std::string::npos);

    const std::string out_file = scratch_dir() + "/entropy.json";
    const RunResult filed = run("sre --model tfi --L 2 --out " + out_file);
    REQUIRE(filed.exit_code == 0);
    REQUIRE(filed.out.empty());
    REQUIRE_FALSE(json::parse(slurp(out_file))["results"].empty());
}

TEST_CASE("verification suites pass and report through JSON", "[cli]") {
    const RunResult t1 = run("verify theorem1 --M 2,3 --count 2");
    REQUIRE(t1.exit_code == 0);
    const json doc = json::parse(t1.out);
    REQUIRE(doc["pass"] == true);
    REQUIRE(doc["reports"][0]["identity_name"] == "theorem1");

    REQUIRE(run("verify xx-tfi --L 2 --alpha 0.5,2").exit_code == 0);
    REQUIRE(run("verify table2 --bc pbc --L 1,2,4").exit_code == 0);
    REQUIRE(run("verify gf --L 8 --family zn+1 --n 2 --alpha 2").exit_code == 0);

    const RunResult blocks = run("verify blocks --family zn+1 --n 2 --L 8");
    REQUIRE(blocks.exit_code == 0);
    const json bdoc = json::parse(blocks.out);
    bool residual = false, chiral = false;
    for (const auto& rep : bdoc["reports"]) {
        if (rep["identity_name"] == "blocks-residual") residual = true;
        const std::string name = rep["identity_name"];
        if (name.rfind("chiral", 0) == 0) chiral = true;
    }
    REQUIRE(residual);
    REQUIRE_FALSE(chiral); // no chiral family was requested
}

TEST_CASE("verify output is byte-identical across worker counts", "[cli]") {
    const RunResult w1 = run("verify xx-tfi --L 4 --alpha 0.5,2 --workers 1");
    const RunResult w8 = run("verify xx-tfi --L 4 --alpha 0.5,2 --workers 8");
    REQUIRE(w1.exit_code == 0);
    REQUIRE(w8.exit_code == 0);
    REQUIRE(w1.out == w8.out);
}

TEST_CASE("scaling command", "[cli]") {
    REQUIRE(run("scaling --alpha 1").exit_code == 2);
    REQUIRE(run("scaling --alpha 3 --source closed").exit_code == 2);

    const RunResult fit = run("scaling --bc pbc --alpha 2 --source closed --L 200..600:100");
    REQUIRE(fit.exit_code == 0);
    const json doc = json::parse(fit.out);
    REQUIRE(doc["source"] == "closed");
    REQUIRE(doc["series"].size() == 5);
    const double c = doc["fit"]["fitted"]["c"];
    REQUIRE(std::abs(c - 0.5 * std::log(2.0)) < 0.05);

    const RunResult brute = run("scaling --bc pbc --alpha 3 --source brute --L 2..8:2");
    REQUIRE(brute.exit_code == 0);
    REQUIRE(json::parse(brute.out)["fit"]["finite_size_caveat"] == true);
}

TEST_CASE("capacity and budget exits", "[cli]") {
    REQUIRE(run("sre --model tfi --L 17").exit_code == 3);
    REQUIRE(run("sre --model tfi --L 5", "MAGIC_MINORS_MAX_TERMS=100").exit_code == 3);
    REQUIRE(run("sre --model tfi --L 5", "MAGIC_MINORS_MAX_TERMS=300").exit_code == 0);
    REQUIRE(run("sre --model tfi --L 2", "MAGIC_MINORS_MAX_TERMS=abc").exit_code == 2);
}

TEST_CASE("file-backed kernels and the orthogonality gate", "[cli]") {
    const std::string bad = scratch_dir() + "/bad.txt";
    std::ofstream(bad) << "2 2 real\n2 0\n0 2\n";
    const RunResult r = run("sre --in " + bad + " --alpha 2");
    REQUIRE(r.exit_code == 4);
    REQUIRE(r.err.find("not a valid kernel") != std::string::npos);

    const std::string notskew = scratch_dir() + "/notskew.txt";
    std::ofstream(notskew) << "2 2 real\n0 1\n-0.5 0\n";
    REQUIRE(run("sr --in " + notskew).exit_code == 2);

    const std::string skew = scratch_dir() + "/skew.txt";
    std::ofstream(skew) << "2 2 real\n0 1\n-1 0\n";
    const RunResult ok = run("sr --in " + skew + " --alpha 2");
    REQUIRE(ok.exit_code == 0);
    const double v = json::parse(ok.out)["results"][0]["value"];
    REQUIRE(std::abs(v - std::log(2.0)) < 1e-12);
}

TEST_CASE("matrix build and dump round-trip", "[cli]") {
    const std::string a = scratch_dir() + "/a.txt";
    const std::string b = scratch_dir() + "/b.txt";
    REQUIRE(run("matrix build --model tfi --bc pbc --L 3 --out " + a).exit_code == 0);
    REQUIRE(run("matrix dump --in " + a + " --out " + b).exit_code == 0);
    REQUIRE(slurp(a) == slurp(b));
    REQUIRE(slurp(a).rfind("3 3 real", 0) == 0);

    const std::string c = scratch_dir() + "/c.txt";
    REQUIRE(run("matrix build --model xx --L 4 --out " + c).exit_code == 0);
    REQUIRE(slurp(c).rfind("4 4 real", 0) == 0);

    REQUIRE(run("matrix dump --in " + scratch_dir() + "/missing.txt").exit_code == 2);
}

TEST_CASE("argument errors exit with the configuration code", "[cli]") {
    REQUIRE(run("no-such-command").exit_code == 2);
    REQUIRE(run("sre --model tfi --L abc").exit_code == 2);
    REQUIRE(run("sre --model nosuch --L 2").exit_code == 2);
    REQUIRE(run("--help").exit_code == 0);
    REQUIRE(run("verify").exit_code == 2); // verify requires a subcommand
}
