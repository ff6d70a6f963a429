#include "support.hpp"

#include "sumrange/cli/cli.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sumrange;
namespace cli = sumrange::cli;

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    Outcome o;
    o.code = cli::main_entry(args, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::string golden(const std::string& name) {
    std::ifstream f(std::string(SUMRANGE_GOLDEN_DIR) + "/" + name + ".txt");
    REQUIRE(f.good());
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("reports match the golden files") {
    struct Case {
        const char* golden;
        std::vector<std::string> args;
    };
    std::vector<Case> cases{
        {"analyze_s1", {"analyze", fixtures::path("s1")}},
        {"analyze_s2", {"analyze", fixtures::path("s2")}},
        {"analyze_s3", {"analyze", fixtures::path("s3")}},
        {"analyze_s4", {"analyze", fixtures::path("s4")}},
        {"analyze_s5", {"analyze", fixtures::path("s5")}},
        {"analyze_s3_stat", {"analyze", fixtures::path("s3"), "--mode", "stat"}},
        {"analyze_s3_ordinary", {"analyze", fixtures::path("s3"), "--mode", "ordinary"}},
        {"analyze_dipoles_stat", {"analyze", fixtures::path("stat_example2"), "--mode", "stat"}},
        {"construct_s1_target2", {"construct", fixtures::path("s1"), "--target", "2", "--depth", "8"}},
        {"construct_s2_lattice", {"construct", fixtures::path("s2"), "--target", "4-2*sqrt2", "--depth", "10"}},
        {"construct_dipoles_stat",
         {"construct", fixtures::path("stat_example2"), "--mode", "stat", "--target", "3", "--depth", "5"}},
        {"enumerate_s2", {"enumerate", fixtures::path("s2"), "--window=-2,2", "--coeff-bound", "2"}},
        {"verify_s5_ordinary", {"verify", fixtures::path("s5"), "--mode", "ordinary", "--depth", "2000"}},
        {"verify_s1_identity", {"verify", fixtures::path("s1"), "--depth", "1000"}},
    };
    for (const Case& c : cases) {
        CAPTURE(c.golden);
        Outcome o = invoke(c.args);
        CHECK(o.code == cli::exit_code::ok);
        CHECK(o.err.empty());
        CHECK(cli::canonicalize(o.out) == golden(c.golden));
    }
}

TEST_CASE("enumerate lists the even lattice") {
    Outcome o = invoke({"enumerate", fixtures::path("s1"), "--window=-4,4"});
    CHECK(o.code == 0);
    CHECK(o.out.find("\n-4, -2, 0, 2, 4\n") != std::string::npos);
    Outcome s = invoke({"enumerate", fixtures::path("s5"), "--window=0,5"});
    CHECK(s.out.find("\n2\n") != std::string::npos);
    Outcome none = invoke({"enumerate", fixtures::path("s5"), "--window=3,5"});
    CHECK(none.code == 0);
}

TEST_CASE("exit codes") {
    CHECK(invoke({}).code == cli::exit_code::usage);
    CHECK(invoke({"bogus", fixtures::path("s1")}).code == cli::exit_code::usage);
    CHECK(invoke({"analyze", fixtures::path("s1"), "--target", "1"}).code == cli::exit_code::usage);
    CHECK(invoke({"construct", fixtures::path("s1")}).code == cli::exit_code::usage);
    CHECK(invoke({"enumerate", fixtures::path("s1")}).code == cli::exit_code::usage);
    CHECK(invoke({"enumerate", fixtures::path("s1"), "--window=1"}).code == cli::exit_code::usage);
    CHECK(invoke({"enumerate", fixtures::path("s1"), "--window=4,-4"}).code == cli::exit_code::usage);
    CHECK(invoke({"enumerate", fixtures::path("s1"), "--window=0,1", "--mode", "ordinary"}).code ==
          cli::exit_code::usage);
    CHECK(invoke({"analyze", fixtures::path("s1"), "--mode", "weird"}).code == cli::exit_code::usage);

    std::string bad = (std::filesystem::temp_directory_path() / "sumrange_bad_spec.json").string();
    {
        std::ofstream f(bad);
        f << "{\"variant\": \"symmetric_ordered\", \"entries\": [";
    }
    CHECK(invoke({"analyze", bad}).code == cli::exit_code::spec_parse);
    std::remove(bad.c_str());
    CHECK(invoke({"analyze", "/nonexistent/spec.json"}).code == cli::exit_code::spec_parse);

    Outcome miss = invoke({"construct", fixtures::path("s1"), "--target", "3"});
    CHECK(miss.code == cli::exit_code::not_attainable);
    CHECK(miss.err.find("TargetNotInRange") != std::string::npos);
    CHECK(invoke({"construct", fixtures::path("stat_example2"), "--mode", "stat", "--target", "1/2"}).code ==
          cli::exit_code::not_attainable);
    CHECK(invoke({"enumerate", fixtures::path("s4"), "--window=0,1"}).code == cli::exit_code::unsupported);
    CHECK(invoke({"construct", fixtures::path("s4"), "--mode", "stat", "--target", "0"}).code ==
          cli::exit_code::unsupported);

    Outcome fail = invoke({"verify", fixtures::path("s3"), "--mode", "ordinary", "--eps", "1/1000000000",
                           "--depth", "1000"});
    CHECK(fail.code == cli::exit_code::verify_failed);
    CHECK(fail.out.find("verdict=Fail") != std::string::npos);
}

TEST_CASE("flag parsing") {
    cli::CommandRequest r = cli::parse_command_line(
        {"construct", "x.json", "--mode", "stat", "--target", "1/2", "--eps", "1/10", "--depth", "77"});
    CHECK(r.verb == cli::Verb::Construct);
    CHECK(r.mode == ClassMode::Statistical);
    CHECK(r.spec_path == "x.json");
    CHECK(*r.target == "1/2");
    CHECK(*r.eps == "1/10");
    CHECK(*r.depth == 77);
    cli::CommandRequest e = cli::parse_command_line({"enumerate", "x.json", "--window", "-1,1", "--coeff-bound", "3"});
    CHECK(e.window->first == "-1");
    CHECK(e.window->second == "1");
    CHECK(*e.coeff_bound == 3);
    CHECK_THROWS_AS(cli::parse_command_line({"verify", "x.json", "--window", "0,1"}), cli::UsageError);
}

TEST_CASE("--out writes the report to a file") {
    std::string path = (std::filesystem::temp_directory_path() / "sumrange_out.txt").string();
    Outcome o = invoke({"analyze", fixtures::path("s1"), "--out", path});
    CHECK(o.code == 0);
    CHECK(o.out.empty());
    std::ifstream f(path);
    std::stringstream s;
    s << f.rdbuf();
    CHECK(cli::canonicalize(s.str()) == golden("analyze_s1"));
    std::remove(path.c_str());
}

TEST_CASE("canonicalize drops timing lines only") {
    CHECK(cli::canonicalize("a=1\nruntime_ms=3.2\n\nb=2\n") == "a=1\n\nb=2\n");
}
