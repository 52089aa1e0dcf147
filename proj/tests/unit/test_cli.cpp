#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "frontlab/io.hpp"
#include "frontlab_cli/app.hpp"
#include "frontlab_cli/sweep.hpp"

namespace fs = std::filesystem;
using frontlab::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("frontlab_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
    const auto path = dir / "run.cfg";
    std::ofstream(path) << text;
    return path;
}

std::string slurp(const fs::path& p) { return frontlab::read_file(p); }

}  // namespace

TEST_CASE("list parsing") {
    using frontlab::cli::parse_list;
    CHECK(parse_list("").empty());
    CHECK(parse_list("1, 2.5,3") == std::vector<double>{1.0, 2.5, 3.0});
    const auto r = parse_list("0:1:5");
    REQUIRE(r.size() == 5);
    CHECK(r[1] == doctest::Approx(0.25));
    CHECK(r.back() == 1.0);
    CHECK_THROWS(parse_list("1,x"));
}

TEST_CASE("version and eigen output") {
    const auto v = call({"--version"});
    CHECK(v.code == 0);
    CHECK(v.out.rfind("frontlab ", 0) == 0);

    const auto e = call({"--json", "eigen", "--find-lstar", "--beta", "0", "--a", "1", "--b", "0", "--m", "1"});
    REQUIRE(e.code == 0);
    const auto j = nlohmann::json::parse(e.out);
    CHECK(std::abs(j.at("lstar").get<double>() - std::acos(-1.0)) < 1e-6);

    const auto plain = call({"eigen", "--find-lstar", "--beta", "0", "--a", "1", "--b", "0", "--m", "1"});
    CHECK(plain.out.find("lstar = 3.14159265358979") != std::string::npos);
}

TEST_CASE("exit codes") {
    const auto none = call({"semiwave", "--beta", "-2.1", "--mu", "1"});
    CHECK(none.code == 1);
    CHECK(none.err.find("no semi-wave") != std::string::npos);

    CHECK(call({"simulate", "--config", "/nonexistent/missing.cfg"}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);

    const auto dir = scratch("codes");
    const auto cfg = write_config(dir, "beta = 0\nspeed = 3\n");
    const auto bad = call({"simulate", "--config", cfg.string(), "--out", dir.string()});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("run.cfg:2") != std::string::npos);

    const auto neg = write_config(dir, "mu = -1\nnx = 50\n");
    CHECK(call({"simulate", "--config", neg.string(), "--out", dir.string()}).code == 1);
    fs::remove_all(dir);
}

TEST_CASE("simulate writes deterministic artifacts that classify") {
    const auto dir = scratch("simulate");
    const auto cfg = write_config(dir, "beta = -2.5\nh0 = 2\nnx = 100\ntmax = 20\n");
    const auto first = dir / "first";
    const auto second = dir / "second";
    const auto r1 = call({"simulate", "--config", cfg.string(), "--snapshots", "5,10", "--out", first.string()});
    REQUIRE(r1.code == 0);
    REQUIRE(call({"simulate", "--config", cfg.string(), "--snapshots", "5,10", "--out", second.string()}).code == 0);
    for (const char* name : {"trajectory.csv", "final_profile.csv", "snapshot_t5.000000.csv", "snapshot_t10.000000.csv"}) {
        REQUIRE(fs::exists(first / name));
        CHECK(slurp(first / name) == slurp(second / name));
    }
    CHECK(slurp(first / "trajectory.csv").rfind("t,h,hprime,supu,eta\n", 0) == 0);
    const auto summary = nlohmann::json::parse(slurp(first / "summary.json"));
    REQUIRE(summary.contains("classification"));

    const auto c = call({"--json", "classify", "--trajectory", (first / "trajectory.csv").string(), "--config",
                         cfg.string(), "--profile", (first / "final_profile.csv").string()});
    REQUIRE(c.code == 0);
    CHECK(nlohmann::json::parse(c.out).at("verdict") == summary.at("classification").at("verdict"));
    fs::remove_all(dir);
}

TEST_CASE("sweep") {
    const auto dir = scratch("sweep");
    const auto cfg = write_config(dir, "h0 = 2\nnx = 60\ntmax = 5\n");
    const auto empty = call({"sweep", "--config", cfg.string(), "--beta", ""});
    REQUIRE(empty.code == 0);
    CHECK(empty.out == "beta,mu,lambda,verdict,h_final,supu_final\n");

    const std::vector<std::string> args = {"sweep", "--config", cfg.string(), "--beta", "-2.5,0.5", "--mu",
                                           "0.5:1.5:3", "--threads", "3"};
    const auto a = call(args);
    const auto b = call(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    std::istringstream lines(a.out);
    std::string line;
    int rows = -1;
    while (std::getline(lines, line)) {
        ++rows;
        if (rows > 0) CHECK(std::count(line.begin(), line.end(), ',') == 5);
    }
    CHECK(rows == 6);
    fs::remove_all(dir);
}
