#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "convasym/cli.hpp"

using convasym::run_cli;
using json = nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("help and argument errors") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"ft", "--help"}).code == 0);
    CHECK(run({"--no-such-flag"}).code == 2);
    CHECK(run({"ft", "--bogus"}).code == 2);
    CHECK(run({}).code == 2);                       // a subcommand is required
    CHECK(run({"ft", "--density", "weird:x=1"}).code == 2);
    CHECK(run({"nt", "n0", "--p", "9"}).code == 2); // not a prime
}

TEST_CASE("numeric failure and zero-free-line exit codes") {
    CHECK(run({"ft", "--k", "0,-4000"}).code == 3);           // overflow guard
    CHECK(run({"fd", "--x", "-1"}).code == 2);
    CHECK(run({"fd", "--x", "2.0", "--max-grid", "1000"}).code == 3);  // lattice cap
    // the strip line through the first zero ring
    CHECK(run({"zeros", "--c", "2.2605599857402185", "--rmax", "60"}).code == 4);
}

TEST_CASE("transform evaluation output") {
    RunResult r = run({"ft", "--k", "0"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["re"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
    r = run({"ft", "--density", "uniform:a=1,b=2", "--k", "3.141592653589793", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("re,im\n", 0) == 0);
    r = run({"ft", "--k", "0", "--derivative"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["im"].get<double>() ==
          doctest::Approx(0.19673467014368329).epsilon(1e-9));
}

TEST_CASE("series evaluation") {
    RunResult r = run({"fd", "--x", "0.2"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header == "x,f");
    CHECK(std::stod(row.substr(row.find(',') + 1)) == doctest::Approx(10.0).epsilon(1e-6));
}

TEST_CASE("arithmetic subcommands") {
    RunResult r = run({"nt", "incexc", "--p", "7", "--xmax", "48"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["equal"].get<bool>());
    CHECK(j["lhs"] == j["rhs"]);
    r = run({"nt", "n0", "--p", "23"});
    CHECK(json::parse(r.out)["n0"] == 5);
    r = run({"nt", "spj", "--p", "7", "--j", "1", "--theta", "1"});
    CHECK(json::parse(r.out)["value"].get<double>() == doctest::Approx(8.0 / 15));
    r = run({"nt", "profile", "--p", "7", "--theta", "1.0:1.0:1.0"});
    CHECK(r.out.rfind("# p=7 n0=3\n", 0) == 0);
}

TEST_CASE("tight-Burgess subcommands") {
    RunResult r = run({"hb", "delta", "--theta", "0.2:0.2:1", "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)[0]["delta"].get<double>() ==
          doctest::Approx(0.27685644868579024).epsilon(1e-12));
    r = run({"hb", "check", "--samples", "5"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["max_residual"].get<double>() < 1e-9);
    r = run({"hb", "zeros", "--lambda", "0.125", "--c", "3", "--rmax", "40"});
    REQUIRE(r.code == 0);
    const json zeros = json::parse(r.out);
    REQUIRE(zeros.size() == 2);   // the first ring, rescaled by 1/(4 lambda) = 2
    CHECK(zeros[1]["re"].get<double>() == doctest::Approx(2 * 31.720909427740057).epsilon(1e-8));
}

TEST_CASE("overflow guard rails") {
    // |Im k| b beyond the exp range
    CHECK(run({"ft", "--k", "0,-2900"}).code == 3);
}

TEST_CASE("density validation report") {
    RunResult r = run({"density-validate"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["pass"].get<bool>());
    // a broken file is reported rather than rejected
    const auto path = temp_file("convasym_bad_density.txt");
    std::ofstream(path) << "piecewise-poly v1\n1,2,0.9\n";
    r = run({"density-validate", "--density", "file:" + path.string()});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(!j["pass"].get<bool>());
    CHECK(j["failures"].size() > 0);
    // and --normalize repairs it
    r = run({"density-validate", "--density", "file:" + path.string(), "--normalize"});
    CHECK(json::parse(r.out)["pass"].get<bool>());
    std::filesystem::remove(path);
}

TEST_CASE("zero list round trip reproduces the comparison report") {
    const auto zeros_path = temp_file("convasym_zeros.json");
    RunResult zr = run({"zeros", "--c", "6", "--rmax", "60", "--output", zeros_path.string()});
    REQUIRE(zr.code == 0);
    std::ifstream zf(zeros_path);
    json zeros;
    zf >> zeros;
    REQUIRE(zeros.size() == 2);

    const std::vector<std::string> base = {"compare", "--c", "6", "--x", "1.0:2.0:0.5"};
    RunResult direct = run(base);
    REQUIRE(direct.code == 0);
    std::vector<std::string> fed = base;
    fed.push_back("--zeros-file");
    fed.push_back(zeros_path.string());
    RunResult refed = run(fed);
    REQUIRE(refed.code == 0);
    CHECK(direct.out == refed.out);          // byte-identical report
    CHECK(run(fed).out == refed.out);        // and deterministic
    std::filesystem::remove(zeros_path);
}

} // TEST_SUITE
