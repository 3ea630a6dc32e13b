#include "doctest.h"

#include "semiample/cli.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace semiample;

namespace {

const std::string kFixtures = SEMIAMPLE_FIXTURES;

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

Json load(const std::string& name) {
    std::ifstream is(fixture(name));
    return Json::parse(is);
}

struct Run {
    int exit_code = -1;
    std::string out;
};

Run run_binary(const std::string& args) {
    const char* bin = std::getenv("SEMIAMPLE_BIN");
    REQUIRE_MESSAGE(bin, "SEMIAMPLE_BIN is not set");
    std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    Run r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("every subcommand reports an anchor") {
    CHECK(command_names().size() == 13);
    for (const auto& name : command_names()) {
        CommandOutcome o = dispatch(name, Json::object(), {});
        CHECK(o.exit_code == 1);
        CHECK(o.report["command"] == name);
        CHECK_FALSE(o.report["paper_anchor"].get<std::string>().empty());
    }
    CHECK(dispatch("fan explode", Json::object(), {}).exit_code == 1);
}

TEST_CASE("schema errors name the offending field") {
    Json in = load("blowup_pullback.json");
    SUBCASE("missing field") {
        in.erase("divisor");
        auto o = dispatch("divisor sigma-d", in, {});
        CHECK(o.exit_code == 1);
        CHECK(o.report["error"]["path"] == "/divisor");
    }
    SUBCASE("wrong length") {
        in["divisor"] = Json::array({0, 0, 1});
        CHECK(dispatch("divisor analyze", in, {}).report["error"]["path"] == "/divisor");
    }
    SUBCASE("bad number") {
        in["divisor"][2] = "one";
        CHECK(dispatch("divisor analyze", in, {}).report["error"]["path"] == "/divisor/2");
    }
    SUBCASE("ray index out of range") {
        in["fan"]["cones"][1][0] = 9;
        auto o = dispatch("divisor analyze", in, {});
        CHECK(o.exit_code == 1);
        CHECK(o.report["error"]["path"] == "/fan/cones/1/0");
    }
    SUBCASE("overlapping cones are not a fan") {
        in["fan"]["cones"].push_back(Json::array({0, 2}));
        in["fan"]["cones"][4] = Json::array({0, 1});
        auto o = dispatch("divisor analyze", in, {});
        CHECK(o.exit_code == 1);
        CHECK(o.report["error"]["path"] == "/fan");
    }
    SUBCASE("polynomial term of the wrong degree") {
        Json c = load("fermat_cubic.json");
        c["polynomial"]["terms"][1]["exponents"] = Json::array({2, 0, 0});
        auto o = dispatch("ring dims", c, {});
        CHECK(o.exit_code == 1);
        CHECK(o.report["error"]["path"] == "/polynomial/terms/1");
    }
}

TEST_CASE("precondition failures exit with 2 and an anchor") {
    Json in = load("projective_plane.json");
    in["divisor"] = Json::array({-1, 0, 0});
    auto o = dispatch("divisor sigma-d", in, {});
    CHECK(o.exit_code == 2);
    CHECK(o.report["error"]["kind"] == "precondition");
    CHECK_FALSE(o.report["error"]["paper_anchor"].get<std::string>().empty());

    Json h = load("quintic_polytope.json");
    h["polytope"]["vertices"][1][0] = 3;  // no longer reflexive
    CHECK(dispatch("hodge h21", h, {}).exit_code == 2);
}

TEST_CASE("numbers are exact strings") {
    auto o = dispatch("cup pair", load("cup_cubic.json"), {});
    REQUIRE(o.exit_code == 0);
    CHECK(o.report["result"]["pairing"]["rational"].is_string());
    Rational v = parse_rational(o.report["result"]["pairing"]["rational"].get<std::string>());
    CHECK(v != 0);
    auto r = dispatch("residue eval", load("residue_p1.json"), {});
    CHECK(r.report["result"]["section_degree"] == "2");
}

TEST_CASE("binary: sigma-d on the blowup pullback") {
    Run r = run_binary("divisor sigma-d --verify --input " + fixture("blowup_pullback.json"));
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["result"]["fan"]["rays"] == Json::parse(R"([["1","0"],["0","1"],["-1","-1"]])"));
    CHECK(j["result"]["fan"]["cones"] == Json::parse("[[0,1],[0,2],[1,2]]"));
    CHECK(j["result"]["verify"]["pullback_of_pushforward_matches"] == true);
}

TEST_CASE("binary: exit codes") {
    Run bad = run_binary("fan check --input " + fixture("malformed_rays.json"));
    CHECK(bad.exit_code == 1);
    CHECK(Json::parse(bad.out)["error"]["path"] == "/fan/rays/1");
    CHECK(run_binary("fan check --input /nonexistent.json").exit_code == 1);
    CHECK(run_binary("fan check").exit_code == 1);
    CHECK(run_binary("").exit_code == 1);
    CHECK(run_binary("fan check --help").exit_code == 0);
}

TEST_CASE("binary: output file, stdin and determinism") {
    const std::string in = fixture("p11222_crepant.json");
    Run a = run_binary("threefold h3 --verify --threads 1 --input " + in);
    Run b = run_binary("threefold h3 --verify --threads 3 --input " + in);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    Json j = Json::parse(a.out);
    CHECK(j["result"]["hodge_numbers"] == Json::parse(R"(["1","86","86","1"])"));
    for (const auto& g : j["result"]["gram"]) CHECK(g["rank"] == g["rows"]);

    const std::string path = "cli_test_output.json";
    Run c = run_binary("threefold h3 --verify --input " + in + " --output " + path);
    CHECK(c.exit_code == 0);
    CHECK(c.out.empty());
    std::ifstream is(path);
    std::stringstream ss;
    ss << is.rdbuf();
    CHECK(ss.str() == a.out);
    std::remove(path.c_str());

    Run s = run_binary("hodge h21 --input - < " + fixture("quintic_polytope.json"));
    CHECK(s.exit_code == 0);
    CHECK(Json::parse(s.out)["result"]["h21"] == "101");
}

TEST_CASE("binary: regression corpus") {
    Run r = run_binary("corpus run --input " + fixture("corpus.json"));
    CHECK(r.exit_code == 0);
    Json j = Json::parse(r.out);
    for (const auto& c : j["result"]["cases"]) CHECK_MESSAGE(c["passed"] == true, c.dump());
    CHECK(j["result"]["all_passed"] == true);
}
