#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

using std::string;

namespace {

string bin() {
    const char* b = std::getenv("SINGFORGE_BIN");
    REQUIRE(b != nullptr);
    return b;
}

struct RunResult {
    int exit_code;
    string out;
};

RunResult run(const string& args) {
    const string cmd = bin() + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), p)) > 0) out.append(buf, n);
    const int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

string write_temp(const string& name, const string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("singforge_cli_" + name);
    std::ofstream(path) << content;
    return path.string();
}

}  // namespace

TEST_CASE("forge produces u^2 - v^2 for the full twist and is deterministic") {
    const RunResult r1 = run("forge --word \"s=2: s1 s1\" --k 1");
    CHECK(r1.exit_code == 0);
    CHECK(r1.out.find("[0,0,2,0,-1,") != string::npos);
    CHECK(r1.out.find("[2,0,0,0,1,0]") != string::npos);
    CHECK(r1.out.find("\"pass\":true") != string::npos);
    const RunResult r2 = run("forge --word \"s=2: s1 s1\" --k 1");
    CHECK(r1.out == r2.out);  // byte-identical reruns
}

TEST_CASE("forge auto-selects an admissible k on the divisor route") {
    const RunResult r = run("forge --word \"s=2: s1\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"k\":1") != string::npos);
}

TEST_CASE("forge error exits") {
    CHECK(run("forge --strands /nonexistent/strands.csv").exit_code == 1);
    // sigma_1 is not u-even, so demanding that symmetry fails with 2
    CHECK(run("forge --word \"s=2: s1\" --symmetry u_even").exit_code == 2);
}

TEST_CASE("certify exit code reflects the verdict") {
    const string hopf = write_temp("hopf.json", "{\"terms\":[[2,0,0,0,1,0],[0,0,2,0,-1,0]]}");
    CHECK(run("certify " + hopf).exit_code == 0);
    CHECK(run("certify " + hopf + " --strong").exit_code == 0);

    const string neg = write_temp(
        "neg.json",
        "{\"terms\":[[1,0,1,0,1,0],[1,0,0,1,1,0],[0,1,1,0,1,0],[0,1,0,1,1,0]]}");
    const RunResult r = run("certify " + neg);
    CHECK(r.exit_code == 4);
    CHECK(r.out.find("\"pass\":false") != string::npos);

    const string weak_only =
        write_temp("weakonly.json", "{\"terms\":[[2,0,0,0,1,0],[0,0,2,2,-1,0]]}");
    CHECK(run("certify " + weak_only).exit_code == 0);
    CHECK(run("certify " + weak_only + " --strong").exit_code == 4);
}

TEST_CASE("compat verifies and realizes the pinned sequence") {
    const string seq = write_temp(
        "seq.json",
        "{\"braids\":[{\"coeffs\":[{\"freqs\":[[2,-1,0]]},{\"freqs\":[]},"
        "{\"freqs\":[[0,1,0]]}]},{\"coeffs\":[{\"freqs\":[[4,-1,0]]},{\"freqs\":[[0,1,0]]}]}],"
        "\"coefficients\":[{\"freqs\":[[4,-1,0]]},{\"freqs\":[[0,1,0]]}],\"o_mults\":[0,2]}");
    const RunResult r = run("compat " + seq);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"ok\":true") != string::npos);
    CHECK(r.out.find("\"ks\":[5,4]") != string::npos);
    CHECK(r.out.find("[0,0,10,4,1,0]") != string::npos);

    const string empty = write_temp("empty.json", "{\"braids\":[]}");
    CHECK(run("compat " + empty).exit_code == 1);
}

TEST_CASE("obstruct reports the knot examples") {
    const RunResult r816 = run("obstruct 1 -4 8 -9 8 -4 1");
    CHECK(r816.exit_code == 0);
    CHECK(r816.out.find("\"excluded\":true") != string::npos);

    const RunResult tre = run("obstruct 1 -1 1");
    CHECK(tre.exit_code == 0);
    CHECK(tre.out.find("\"excluded\":false") != string::npos);
    CHECK(tre.out.find("\"murasugi\":\"possible\"") != string::npos);

    CHECK(run("obstruct 1").out.find("no obstruction found") != string::npos);
}

TEST_CASE("newton lists boundary faces") {
    const string two = write_temp(
        "two.json", "{\"terms\":[[3,0,0,0,1,0],[1,0,2,0,1,0],[0,0,0,5,1,0]]}");
    const RunResult r = run("newton " + two);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"P\":[3,1]") != string::npos);
    CHECK(r.out.find("\"P\":[1,1]") != string::npos);

    const string hopf = write_temp("hopf2.json", "{\"terms\":[[2,0,0,0,1,0],[0,0,2,0,-1,0]]}");
    CHECK(run("newton " + hopf).out.find("\"P\":[1,1]") != string::npos);

    const string constant = write_temp("const.json", "{\"terms\":[[0,0,0,0,1,0]]}");
    CHECK(run("newton " + constant).exit_code == 1);
}

TEST_CASE("plotdata emits the root-circle CSV") {
    const string loop = write_temp(
        "loop.json",
        "{\"coeffs\":[{\"freqs\":[[2,-1,0]]},{\"freqs\":[]},{\"freqs\":[[0,1,0]]}]}");
    const RunResult r = run("plotdata " + loop + " --grid 16");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("t,root_index,re,im,circle_radius,circle_index", 0) == 0);
    int lines = 0;
    for (char c : r.out)
        if (c == '\n') ++lines;
    CHECK(lines >= 2 * 16 + 1);
}

TEST_CASE("symmetry prints detected classes") {
    const RunResult r = run("symmetry --word \"s=2: s1 s1\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"u_even\":true") != string::npos);
    const RunResult r2 = run("symmetry --word \"s=2: s1\"");
    CHECK(r2.out.find("\"best_divisor\":2") != string::npos);
}
