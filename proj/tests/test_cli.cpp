// end-to-end checks of the command-line tool: exit codes, report schema,
// and determinism of the report body across runs

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#ifndef KTYPE_CLI_PATH
#define KTYPE_CLI_PATH "./ktype"
#endif

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(KTYPE_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, got);
    int status = pclose(pipe);
    r.code = WEXITSTATUS(status);
    return r;
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/ktype_test_") + name;
    std::ofstream f(path);
    f << content;
    return path;
}

}  // namespace

TEST_CASE("hilbert subcommand: value and exit code") {
    RunResult r = run_cli("hilbert --p 5 --n 2 --a 0,2 --b 1,1");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == "ktype-report/1");
    CHECK(j["report"]["exponent"] == 1);
    CHECK(j["report"]["residue_value"] == 4);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("hilbert --p 5 --n 2 --a 0,2").code == 2);        // missing --b
    CHECK(run_cli("frobnicate").code != 0);                          // unknown subcommand
    std::string chi = write_temp("chi_l0.json",
                                 R"({"teich_exp":1,"principal_exp":0,"pi_order":4,"pi_exp":0})");
    CHECK(run_cli("hecke --p 5 --n 2 --char " + chi + " --l 0").code == 2);
}

TEST_CASE("verify-cocycle sampled") {
    RunResult r = run_cli("verify-cocycle --p 5 --n 2 --mode sample --level 2 --samples 500");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["report"]["violations"] == 0);
}

TEST_CASE("verify-splitting subcommand") {
    CHECK(run_cli("verify-splitting --p 5 --n 4 --subgroup T1capK1").code == 0);
    RunResult r = run_cli("verify-splitting --p 5 --n 4 --subgroup T1_full");
    CHECK(r.code == 0);  // non-splitting is the expected outcome
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["report"]["splits"] == false);
}

TEST_CASE("char subcommands") {
    std::string chi = write_temp("chi_gen.json",
                                 R"({"teich_exp":1,"principal_exp":0,"pi_order":12,"pi_exp":1})");
    RunResult v = run_cli("char validate --p 13 --n 4 --char " + chi);
    CHECK(v.code == 0);
    RunResult e = run_cli("char extend --p 13 --n 4 --char " + chi);
    CHECK(e.code == 0);
    auto j = nlohmann::json::parse(e.out);
    CHECK(j["report"]["twists"].size() == 2);  // n_under
    RunResult l = run_cli("char level --p 13 --n 4 --char " + chi);
    auto jl = nlohmann::json::parse(l.out);
    CHECK(jl["report"]["primitive_level"] == 1);
}

TEST_CASE("hecke subcommand agrees with the paper's closed form") {
    std::string chi = write_temp("chi52.json",
                                 R"({"teich_exp":1,"principal_exp":0,"pi_order":4,"pi_exp":1})");
    RunResult r = run_cli("hecke --p 5 --n 2 --char " + chi + " --l 2");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["report"]["dim_bruteforce"] == 3);
    CHECK(j["report"]["dim_closed_form"] == 3);
    CHECK(j["report"]["dim_oracle"] == 3);
}

TEST_CASE("oracle subcommand emits aux primes") {
    std::string chi = write_temp("chi52b.json",
                                 R"({"teich_exp":1,"principal_exp":0,"pi_order":4,"pi_exp":1})");
    RunResult r = run_cli("oracle --p 5 --n 2 --char " + chi + " --l 1 --char-i 0 --char-j 0");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["report"]["hom_dim"] == 1);
    CHECK(j["report"]["aux_primes"].size() == 2);
}

TEST_CASE("report body is deterministic across runs") {
    std::string chi = write_temp("chi52c.json",
                                 R"({"teich_exp":2,"principal_exp":0,"pi_order":4,"pi_exp":0})");
    RunResult r1 = run_cli("branch --p 5 --n 2 --char " + chi + " --lmax 2");
    RunResult r2 = run_cli("branch --p 5 --n 2 --char " + chi + " --lmax 2");
    CHECK(r1.code == 0);
    auto j1 = nlohmann::json::parse(r1.out), j2 = nlohmann::json::parse(r2.out);
    CHECK(j1["report"] == j2["report"]);  // only wall_ms in the manifest may differ
    CHECK(j1["manifest"]["char_digests"] == j2["manifest"]["char_digests"]);
}

TEST_CASE("branch markdown rendering") {
    std::string chi = write_temp("chi52d.json",
                                 R"({"teich_exp":2,"principal_exp":0,"pi_order":4,"pi_exp":0})");
    RunResult r = run_cli("branch --p 5 --n 2 --char " + chi + " --lmax 2 --format md");
    CHECK(r.code == 0);
    CHECK(r.out.find("K-type branching report") != std::string::npos);
    CHECK(r.out.find("Level-m constituents") != std::string::npos);
}

TEST_CASE("gl subcommands") {
    std::string chi2 = write_temp(
        "chi2.json",
        R"({"teich1":1,"principal1":0,"teich2":0,"principal2":0,"pi1_order":4,"pi1_exp":0,"pi2_order":4,"pi2_exp":0})");
    RunResult r = run_cli("gl-hecke --p 5 --n 2 --char2 " + chi2 + " --l 2 --i 0 --j 1");
    CHECK(r.code == 0);
    RunResult g = run_cli("gl-restrict --p 5 --n 2 --char2 " + chi2);
    CHECK(g.code == 0);
    auto j = nlohmann::json::parse(g.out);
    CHECK(j["report"]["central_characters"] == 4);
    CHECK(j["report"]["each_res_twice"] == true);
}

TEST_CASE("validate-beta-prime adopts the transcribed formula") {
    RunResult r = run_cli("validate-beta-prime --p 5 --n 2 --samples 800 --emit-candidates");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["report"]["adopted"].get<std::string>().find("transcribed") != std::string::npos);
    int pass_count = 0;
    for (const auto& c : j["report"]["candidates"])
        if (c["pass"].get<bool>()) ++pass_count;
    CHECK(pass_count == 1);
}

TEST_CASE("acceptance subcommand runs a single criterion") {
    RunResult r = run_cli("acceptance --criterion 10 --jobs 2");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["report"]["criteria"][0]["pass"] == true);
}
