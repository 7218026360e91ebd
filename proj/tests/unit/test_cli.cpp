#include "doctest.h"

#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(RGC_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

}  // namespace

TEST_CASE("moment subcommand") {
    const Run r = run("moment --quantity mean_chi --d 1 --a 1 --eps 0.05 --lambda 30");
    CHECK(r.status == 0);
    CHECK(nlohmann::json::parse(r.out).at("value").get<double>() == doctest::Approx(1.493612).epsilon(1e-6));
}

TEST_CASE("homology of a single point") {
    {
        FILE* f = std::fopen("cli_one_point.json", "w");
        REQUIRE(f);
        std::fputs(R"({"d":1,"a":1,"points":[[0.3]]})", f);
        std::fclose(f);
    }
    const Run r = run("homology --in cli_one_point.json --eps 0.2");
    CHECK(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("betti") == nlohmann::json::array({1}));
    CHECK(j.at("chi_counts") == 1);
    std::remove("cli_one_point.json");
}

TEST_CASE("tail subcommand") {
    const Run r = run("tail --quantity beta0 --d 1 --a 1 --lambda 10 --y 20");
    CHECK(r.status == 0);
    CHECK(nlohmann::json::parse(r.out).at("bound").get<double>() == doctest::Approx(0.03125));
}

TEST_CASE("sample then complex equals the in-process pipeline") {
    const Run s = run("sample --d 2 --lambda 80 --seed 11 --out cli_pts.json");
    CHECK(s.status == 0);
    const Run a = run("complex --in cli_pts.json --eps 0.06");
    const Run b = run("complex --in cli_pts.json --eps 0.06");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    const Run again = run("sample --d 2 --lambda 80 --seed 11");
    FILE* f = std::fopen("cli_pts.json", "r");
    REQUIRE(f);
    std::string saved;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, f)) saved.append(buf, n);
    std::fclose(f);
    CHECK(saved == again.out);
    std::remove("cli_pts.json");
}

TEST_CASE("exit codes") {
    CHECK(run("").status == 2);
    CHECK(run("frobnicate").status == 2);
    CHECK(run("moment --quantity mean_chi --eps 0.05 --lambda 30 --bogus 1").status == 2);
    CHECK(run("sample --d 1 --lambda 10").status == 2);
    const Run bad = run("moment --quantity mean_chi --d 1 --a 1 --eps 0.4 --lambda 30");
    CHECK(bad.status == 1);
    CHECK(bad.out.find('\n') == bad.out.size() - 1);
    CHECK(nlohmann::json::parse(bad.out).contains("error"));
}
