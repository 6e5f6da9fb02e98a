#include "wml/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <sstream>

using namespace wml;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("census subcommand") {
    const Run k4 = run({"census", "--graph", "complete:n=4"});
    REQUIRE(k4.code == 0);
    const json j = json::parse(k4.out);
    CHECK(j["num_c3"] == 4);
    CHECK(j["meta"]["version"] == WML_VERSION);
    CHECK(j["meta"]["args"].size() == 3);

    const json b = json::parse(run({"census", "--graph", "kbip:n=2,m=4"}).out);
    CHECK(b["num_c3"] == 0);
    CHECK(b["onum_k24"] == 1);

    const Run bad = run({"census", "--graph", "er:n="});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("n=") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"census"}).code == 2);
    CHECK(run({"verify", "--trials", "10"}).code == 2);
    CHECK(run({"verify", "--suite", "nope", "--trials", "1000"}).code == 2);
    CHECK(run({"moments", "--graph", "complete:n=4", "--ensemble", "wishart", "--trials", "10"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("kappa subcommand") {
    const Run r = run({"kappa", "--graph", "complete:n=5", "--ensemble", "goe", "--seed", "3"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(std::isfinite(j["kappa3"].get<double>()));
    CHECK(std::isfinite(j["kappa4"]["total"].get<double>()));
    CHECK(j["kappa_r"].is_number());
    CHECK(json::parse(run({"kappa", "--graph", "complete:n=3", "--seed", "3"}).out)["kappa_r"].is_number());
    CHECK(json::parse(run({"kappa", "--graph", "er:n=3,p=0"}).out)["kappa_r"].is_null());
}

TEST_CASE("moments subcommand") {
    const std::vector<std::string> args = {"moments", "--graph", "er:n=40,p=0.3", "--ensemble", "wishart", "--d",
                                           "100", "--trials", "20000", "--seed", "9", "--statistic", "kappa3"};
    const Run r = run(args);
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(std::abs(j["z_scores"]["mean"].get<double>()) <= 4.0);
    CHECK(j["n_trials"] == 20000);
    CHECK(j["predicted"]["mean_kind"] == "exact");

    std::vector<std::string> threaded = args;
    threaded.insert(threaded.end(), {"--threads", "2"});
    CHECK(run(threaded).out == r.out);

    const json all = json::parse(run({"moments", "--graph", "complete:n=5", "--trials", "200"}).out);
    CHECK(all["results"].size() == 6);
}

TEST_CASE("seed comes from the environment when not given") {
    setenv("WML_SEED", "77", 1);
    const json j = json::parse(run({"kappa", "--graph", "complete:n=4"}).out);
    unsetenv("WML_SEED");
    CHECK(j["meta"]["seed"] == 77);
    CHECK(json::parse(run({"kappa", "--graph", "complete:n=4"}).out)["meta"]["seed"] == 1);
}

TEST_CASE("sweep subcommand") {
    const Run r = run({"sweep", "--family", "er", "--n", "8", "--p-grid", "0.4,0.8", "--d-grid", "5,500",
                       "--test", "deg3", "--trials", "50", "--seed", "2"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::size_t meta = 0, rows = 0;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.rfind("#", 0) == 0) ++meta;
        else if (!header) header = true;
        else ++rows;
    }
    CHECK(meta == 3);
    CHECK(rows == 4);
    CHECK(run({"sweep", "--family", "er", "--n", "8", "--p-grid", "0.4,x", "--d-grid", "5", "--trials", "5"}).code == 2);
}

TEST_CASE("verify subcommand") {
    const Run r = run({"verify", "--suite", "bartlett", "--trials", "20000", "--seed", "1"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["passed"] == true);
    CHECK(j["suites"][0]["suite"] == "bartlett");
}
