#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "opcalc/cli.hpp"

#ifndef OPCALC_GOLDEN_DIR
#error "OPCALC_GOLDEN_DIR must be defined"
#endif

using namespace opcalc;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "opcalc");
    std::ostringstream out, err;
    int code = cli::main(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("integration coefficients") {
        Result r = run_cli({"expand-xd", "J", "-N", "4"});
        CHECK(r.code == 0);
        CHECK(r.out.find("a_0(x) = x\n") != std::string::npos);
        CHECK(r.out.find("a_1(x) = -1/2*x^2\n") != std::string::npos);
        CHECK(r.out.find("a_2(x) = 1/6*x^3\n") != std::string::npos);
        CHECK(r.out.find("a_3(x) = -1/24*x^4\n") != std::string::npos);
        CHECK(r.out.find("a_4(x) = 1/120*x^5\n") != std::string::npos);
    }

    TEST_CASE("diagonal report and strict exit") {
        Result r = run_cli({"check-dx", "J", "--t", "-1..2", "-n", "12"});
        CHECK(r.code == 0);
        CHECK(r.out.find("q_1: not_polynomial") != std::string::npos);
        CHECK(run_cli({"check-dx", "J", "--t", "-1..2", "-n", "12", "--strict"}).code == 3);
        CHECK(run_cli({"check-dx", "X", "--strict"}).code == 0);
    }

    TEST_CASE("counterexample line") {
        CHECK(run_cli({"counterexample", "2"}).out == "S(2) = 31, (2!)^2 = 4, bound holds\n");
    }

    TEST_CASE("exit codes") {
        Result p = run_cli({"apply", "D +", "x"});
        CHECK(p.code == 2);
        CHECK(p.out.empty());
        CHECK(p.err.find("line 1, column 4") != std::string::npos);
        CHECK(run_cli({"apply", "D"}).code == 2);
        CHECK(run_cli({"bogus"}).code == 2);
        CHECK(run_cli({"check-dx", "D", "--t", "3..1"}).code == 2);
        CHECK(run_cli({"check-dx", "D", "--t", "a..b"}).code == 2);
        CHECK(run_cli({"expand-xd", "D", "--format", "yaml"}).code == 2);
        CHECK(run_cli({"check-dx", "D", "-n", "3"}).code == 4);
        CHECK(run_cli({"apply", "series(t, 1)", "x^2"}).code == 4);
        CHECK(run_cli({"expand-dx", "J"}).code == 1);
        CHECK(run_cli({"expand-dx", "J", "--strict"}).code == 3);
        CHECK(run_cli({"expand-xb", "J", "--basis", "X"}).code == 2);
        CHECK(run_cli({"expand-xb", "J", "--basis", "series:t^2"}).code == 1);
        CHECK(run_cli({"--help"}).code == 0);
    }

    TEST_CASE("format from the environment") {
        setenv("OPCALC_FORMAT", "json", 1);
        Result r = run_cli({"counterexample", "3"});
        unsetenv("OPCALC_FORMAT");
        auto j = nlohmann::json::parse(r.out);
        CHECK(j["S"] == "853");
        CHECK(j["bound_holds"] == true);
        setenv("OPCALC_FORMAT", "json", 1);
        Result t = run_cli({"counterexample", "3", "--format", "text"});
        unsetenv("OPCALC_FORMAT");
        CHECK(t.out.rfind("S(3) = ", 0) == 0);
    }

    TEST_CASE("golden files") {
        const std::string dir = OPCALC_GOLDEN_DIR;
        auto cases = nlohmann::json::parse(slurp(dir + "/cases.json"));
        const bool update = std::getenv("OPCALC_UPDATE_GOLDEN") != nullptr;
        REQUIRE(cases.size() >= 20);
        for (const auto& c : cases) {
            std::string name = c["name"];
            std::vector<std::string> args = c["args"];
            Result r = run_cli(args);
            Result again = run_cli(args);
            CHECK_MESSAGE(r.code == c["exit"].get<int>(), name);
            CHECK_MESSAGE(r.out == again.out, name);
            std::string path = dir + "/" + name + ".out";
            if (update) {
                std::ofstream(path, std::ios::binary) << r.out;
                continue;
            }
            CHECK_MESSAGE(r.out == slurp(path), name);
        }
    }
}
