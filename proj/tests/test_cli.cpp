#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gauss_neumann/cli.hpp"
#include "gauss_neumann/domain_json.hpp"

using namespace gauss_neumann;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "gauss-neumann");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text)
{
    const std::string path = "cli_test_" + name;
    std::ofstream(path) << text;
    return path;
}

}

TEST_SUITE("cli") {

TEST_CASE("solve1d json with a negative interval")
{
    const Run r = run({"solve1d", "--interval", "-inf,inf", "--k", "2", "--R", "10", "--format", "json"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["eigenvalues"][1].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(j["provenance"]["R"].get<double>() == 10.0);
    CHECK(j["provenance"]["build"].get<std::string>() == cli::build_id());
    CHECK(j["interval"][0] == "-inf");
}

TEST_CASE("solve2d with csv")
{
    const std::string dom = write_temp("square.json", R"({"kind":"polygon","vertices":[[-1,-1],[1,-1],[1,1],[-1,1]]})");
    const Run r = run({"solve2d", "--domain", dom, "--k", "2", "--h", "0.2", "--csv", "cli_test_out.csv", "--format", "json"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["eigenvalues"][1].get<double>() == doctest::Approx(j["eigenvalues"][2].get<double>()).epsilon(1e-6));
    std::ifstream csv("cli_test_out.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header.rfind("n,h,", 0) == 0);
    std::remove(dom.c_str());
    std::remove("cli_test_out.csv");
}

TEST_CASE("bisect")
{
    const std::string dom = write_temp("strip.json", R"({"kind":"strip","y1":-1,"y2":1})");
    const Run r = run({"bisect", "--domain", dom, "--angle", "1.5707963267948966", "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(std::abs(Json::parse(r.out)["offset"].get<double>()) < 1e-9);
    std::remove(dom.c_str());
}

TEST_CASE("exit codes")
{
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"solve1d", "--k", "x"}).code == cli::kUsage);
    CHECK(run({"solve1d", "--interval", "1,0"}).code == cli::kUsage);
    CHECK(run({"verify", "--suite", "bogus"}).code == cli::kUsage);
    CHECK(run({"solve2d", "--domain", "does-not-exist.json"}).code == cli::kUsage);
    const std::string bad = write_temp("bad.json", R"({"kind":"hexagon"})");
    CHECK(run({"solve2d", "--domain", bad}).code == cli::kUsage);
    std::remove(bad.c_str());
    CHECK(run({"--help"}).code == cli::kOk);
}

}
