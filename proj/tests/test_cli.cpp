#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#ifndef AMU_CLI_PATH
#define AMU_CLI_PATH "amu"
#endif
#ifndef AMU_GOLDEN_DIR
#define AMU_GOLDEN_DIR "tests/golden"
#endif

namespace {

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    RunResult r;
    std::string cmd = std::string(AMU_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    r.status = pclose(p);
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("cli output is byte-identical across runs and carries the seed") {
    auto a = run_cli("system --mu 2 --nu 2 --m 1 --json --seed 77");
    auto b = run_cli("system --mu 2 --nu 2 --m 1 --json --seed 77");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(contains(a.out, "\"seed\": 77"));
    CHECK(contains(a.out, "\"schema_version\": 1"));
    CHECK(contains(a.out, "s0^2 + 4/27*s1^3"));
    CHECK(contains(a.out, "5/6"));
    CHECK(contains(a.out, "7/6"));
}

TEST_CASE("cli canonical output matches the golden file") {
    auto r = run_cli("system --mu 3 --nu 2 --m 1 --json --seed 1");
    CHECK(r.status == 0);
    std::ifstream in(std::string(AMU_GOLDEN_DIR) + "/system_mu3_nu2_m1.json");
    REQUIRE(in.good());
    std::ostringstream want;
    want << in.rdbuf();
    CHECK(r.out == want.str());
}

TEST_CASE("cli exit codes") {
    auto usage = run_cli("bounds --no-such-flag");
    CHECK(WEXITSTATUS(usage.status) == 2);
    auto internal = run_cli("strata --mu 2 --point 1,0");  // not on D
    CHECK(WEXITSTATUS(internal.status) == 1);
}

TEST_CASE("cli subcommand smoke") {
    auto bounds = run_cli("bounds --mu 2 --nu 2 --m 1 --K 0 --k1 0 --point branch");
    CHECK(bounds.status == 0);
    CHECK(contains(bounds.out, "\"bound\": 2"));

    auto strata = run_cli("strata --mu 2 --point 2,-3");
    CHECK(strata.status == 0);
    CHECK(contains(strata.out, "\"k\": 0"));

    auto exps = run_cli("exponents --mu 2 --nu 2 --m 1 --family 4.2 --point zero --k 0 --computed");
    CHECK(exps.status == 0);
    CHECK(contains(exps.out, "\"exponent\": \"3/2\""));

    auto per = run_cli("periods --mu 2 --nu 2 --m 1 --s 0,-1 --cycle 1,2 --i 0");
    CHECK(per.status == 0);
    CHECK(contains(per.out, "\"value\""));

    auto res = run_cli("residual --mu 2 --nu 2 --m 1 --s 0.25,-1");
    CHECK(res.status == 0);
    CHECK(contains(res.out, "\"residual\""));

    auto op = run_cli("operator --mu 2 --nu 2 --m 1");
    CHECK(op.status == 0);
    CHECK(contains(op.out, "\"leading\": \"s0^2 + 4/27*s1^3\""));

    auto bad = run_cli("bounds --mu 1 --nu 2 --m 1");
    CHECK(bad.status != 0);
}
