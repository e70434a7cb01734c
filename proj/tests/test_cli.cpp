#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "causal/intervention.hpp"
#include "causal/io.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    std::string command = std::string(CAUSAL_CLI_BIN) + " " + args + " 2>&1";
    std::array<char, 4096> buffer{};
    std::string output;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buffer.data(), buffer.size(), pipe)) output += buffer.data();
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

std::string data(const std::string& name) {
    return std::string(CAUSAL_DATA_DIR) + "/" + name;
}

} // namespace

TEST_CASE("check decides truth with exit codes 0/1") {
    RunResult ok = run_cli("check " + data("example5.json") + " \"Z=3 => Y=2\"");
    REQUIRE(ok.exit_code == 0);
    REQUIRE(ok.output == "true\n");

    RunResult no = run_cli("check " + data("example5.json") + " \"Z=3 => X=1\"");
    REQUIRE(no.exit_code == 1);
    REQUIRE(no.output == "false\n");
}

TEST_CASE("check auto-completes partial teams for counterfactuals") {
    RunResult r = run_cli("check " + data("example3.json") + " \"X=1 ~> Y=2\"");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output == "true\n");

    RunResult off = run_cli("check " + data("example3.json") + " \"X=1 ~> Y=2\" --no-complete");
    REQUIRE(off.exit_code == 2);
}

TEST_CASE("check --explain prints the intermediate tables") {
    RunResult r = run_cli("check " + data("example5.json") + " \"Z=3 => Y=2\" --explain");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output ==
            "T^{Z=3}:\n"
            "X Y Z\n"
            "1 2 3\n"
            "2 2 3\n"
            "true\n");
}

TEST_CASE("check supports the falsifiable and admissible relations") {
    REQUIRE(run_cli("check " + data("sec9.json") + " \"Y=1 => X=2\" --relation falsifiable")
                .exit_code == 1);
    REQUIRE(run_cli("check " + data("sec9.json") + " \"X=1\" --relation falsifiable").exit_code ==
            0);
    REQUIRE(run_cli("check " + data("sec9.json") + " \"Y=1\" --relation admissible").exit_code ==
            0);
    REQUIRE(run_cli("check " + data("sec9.json") + " \"X=3\" --relation admissible").exit_code ==
            1);
}

TEST_CASE("check dep on the running example") {
    RunResult r = run_cli("check " + data("example3.json") + " \"dep(U; Z)\"");
    REQUIRE(r.exit_code == 0);  // brute-force pairwise scan: the U=1 rows share Z=1
}

TEST_CASE("intervene prints the worked-example table") {
    RunResult r = run_cli("intervene " + data("example3.json") + " \"X=1\"");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output ==
            "U X Y Z\n"
            "2 1 2 4\n"
            "3 1 2 4\n"
            "1 1 2 f_Z(1,1,2)\n"
            "4 1 2 3\n");

    RunResult dc = run_cli("intervene " + data("dc_example.json") + " \"Z=1\"");
    REQUIRE(dc.exit_code == 0);
    REQUIRE(dc.output ==
            "X Y Z\n"
            "1 2 1\n"
            "2 3 1\n"
            "3 4 1\n");
}

TEST_CASE("intervene rejects inconsistent antecedents with a note") {
    RunResult r = run_cli("intervene " + data("example3.json") + " \"X=1 & X=2\"");
    REQUIRE(r.exit_code == 2);
    REQUIRE(r.output.find("InconsistentIntervention") != std::string::npos);
    REQUIRE(r.output.find("true") != std::string::npos);
}

TEST_CASE("intervene --out round-trips through the document format") {
    std::string out_file = std::string(CAUSAL_DATA_DIR) + "/../build_roundtrip_tmp.json";
    RunResult r = run_cli("intervene " + data("example3.json") + " \"X=1\" --out " + out_file);
    REQUIRE(r.exit_code == 0);

    causal::CausalTeam reloaded = causal::load_team(out_file);
    causal::CausalTeam expected = causal::intervene(
        causal::complete_partial(causal::load_team(data("example3.json"))),
        {{"X", causal::Value(1)}}, causal::SolutionPolicy::Recursive);
    REQUIRE(reloaded == expected);
    std::remove(out_file.c_str());
}

TEST_CASE("prob prints reduced rationals") {
    REQUIRE(run_cli("prob " + data("example5.json") + " \"Z=3\"").output == "1/2\n");
    REQUIRE(run_cli("prob " + data("example5.json") + " \"Z=3 & Y=2\"").output == "1/2\n");
    REQUIRE(run_cli("prob " + data("example5.json") + " \"X=1 | X!=1\"").output == "1\n");
    RunResult err = run_cli("prob " + data("example5.json") + " \"dep(X; Y)\"");
    REQUIRE(err.exit_code == 2);
}

TEST_CASE("causes subcommand") {
    RunResult dc = run_cli("causes " + data("dc_example.json") + " direct X Y");
    REQUIRE(dc.exit_code == 0);
    REQUIRE(dc.output ==
            "holds\n"
            "witness: fix Z=1; X=1 -> Y=2; X=2 -> Y=3\n");

    REQUIRE(run_cli("causes " + data("dc_example.json") + " total X Y").exit_code == 0);
    RunResult no = run_cli("causes " + data("dc_example.json") + " direct Y X");
    REQUIRE(no.exit_code == 1);
    REQUIRE(no.output == "does not hold\n");

    RunResult pdc = run_cli("causes " + data("pdc_example.json") + " pdirect X Y");
    REQUIRE(pdc.exit_code == 0);
    REQUIRE(pdc.output ==
            "holds\n"
            "witness: fix Z=1; X=1 -> Pr(Y=3)=0; X=2 -> Pr(Y=3)=1\n");

    RunResult all = run_cli("causes " + data("dc_example.json") + " direct --all");
    REQUIRE(all.exit_code == 0);
    REQUIRE(all.output.find("direct(X; Y): holds") != std::string::npos);
    REQUIRE(all.output.find("direct(Y; X): does not hold") != std::string::npos);

    RunResult capped =
        run_cli("causes " + data("dc_example.json") + " direct X Y --max-search 1");
    REQUIRE(capped.exit_code == 2);
}

TEST_CASE("input errors exit with 2 and a diagnostic") {
    REQUIRE(run_cli("check /nonexistent.json \"X=1\"").exit_code == 2);
    RunResult bad = run_cli("check " + data("example5.json") + " \"Z=3 =>\"");
    REQUIRE(bad.exit_code == 2);
    REQUIRE(bad.output.find("ParseError") != std::string::npos);
    REQUIRE(run_cli("check " + data("example5.json") + " \"W=1\"").exit_code == 2);
    REQUIRE(run_cli("intervene " + data("example5.json") + " \"W=1\"").exit_code == 2);
}

TEST_CASE("unique-solutions policy over a cyclic team") {
    RunResult r =
        run_cli("intervene " + data("nonrecursive_unique.json") + " \"B=0\" --policy unique");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output ==
            "A B U\n"
            "0 0 0\n"
            "1 0 1\n");
}
