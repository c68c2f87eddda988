#include "pb/io.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

using namespace pb;
using Catch::Matchers::ContainsSubstring;

namespace {

std::string pbtool_path() {
    const char* path = std::getenv("PBTOOL");
    REQUIRE(path != nullptr);
    return path;
}

struct CmdResult {
    int rc = -1;
    std::string out;
};

CmdResult run_tool(const std::string& args) {
    std::string cmd = pbtool_path() + " " + args + " 2>&1";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult result;
    char buf[4096];
    size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0)
        result.out.append(buf, got);
    int status = ::pclose(pipe);
    result.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

struct TempDir {
    std::filesystem::path path;

    TempDir() {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() /
               ("pbtool-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }

    std::string file(const std::string& name) const {
        return (path / name).string();
    }
};

std::string fixture_path(const std::string& name) {
    return (testutil::fixtures_dir() / (name + ".json")).string();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << text;
}

std::string write_outcome(const TempDir& dir, const std::string& fixture,
                          std::initializer_list<const char*> ids) {
    PBInstance inst = testutil::load_fixture(fixture + ".json");
    std::string path = dir.file(fixture + "-outcome.json");
    write_file(path, io::serialize_outcome(
                         inst, testutil::outcome_of(inst, ids)));
    return path;
}

} // namespace

TEST_CASE("compute prints the selection, cost, and slack") {
    CmdResult r = run_tool("compute " + fixture_path("dichotomous_small"));
    CHECK(r.rc == 0);
    CHECK(r.out ==
          "selected: a c\n"
          "total cost: 2/1\n"
          "budget slack: 0/1\n");

    CmdResult alt = run_tool("compute " + fixture_path("dichotomous_small") +
                             " --selection min-cost --reweight lex-depletion");
    CHECK(alt.rc == 0);
    CHECK_THAT(alt.out, ContainsSubstring("selected: a c\n"));
}

TEST_CASE("compute writes deterministic outcome and trace files") {
    TempDir dir;
    std::string base = "compute " + fixture_path("mw_ear_4");
    CmdResult first = run_tool(base + " --output " + dir.file("o1.json") +
                               " --trace " + dir.file("t1.json"));
    CmdResult second = run_tool(base + " --output " + dir.file("o2.json") +
                                " --trace " + dir.file("t2.json"));
    CHECK(first.rc == 0);
    CHECK(second.rc == 0);
    CHECK(first.out == second.out);
    CHECK(testutil::slurp(dir.file("o1.json")) ==
          testutil::slurp(dir.file("o2.json")));
    CHECK(testutil::slurp(dir.file("t1.json")) ==
          testutil::slurp(dir.file("t2.json")));

    PBInstance inst = testutil::load_fixture("mw_ear_4.json");
    CHECK(testutil::slurp(dir.file("o1.json")) ==
          io::serialize_outcome(inst, testutil::outcome_of(inst, {"w", "x"})));
}

TEST_CASE("verify reports witnesses for violated axioms") {
    TempDir dir;
    std::string outcome = write_outcome(dir, "dichotomous_small", {"b", "c"});
    CmdResult r = run_tool("verify " + fixture_path("dichotomous_small") + " " +
                           outcome + " --axiom cpsc");
    CHECK(r.rc == 1);
    CHECK(r.out ==
          "cpsc: violated\n"
          "  voters: v1 v2\n"
          "  coalition: a\n"
          "  comparison: a\n"
          "  spend: 9/10\n"
          "  claim: 1/1\n"
          "  entitlement: 1/1\n");
}

TEST_CASE("verify checks every applicable axiom by default") {
    TempDir dir;
    std::string outcome = write_outcome(dir, "dichotomous_small", {"a", "c"});
    std::string report = dir.file("verdicts.json");
    CmdResult r = run_tool("verify " + fixture_path("dichotomous_small") + " " +
                           outcome + " --output " + report);
    CHECK(r.rc == 0);
    CHECK(r.out ==
          "exhaustive: satisfied\n"
          "maxcost: satisfied\n"
          "ipsc: satisfied\n"
          "cpsc: satisfied\n"
          "ipsc-approval: satisfied\n"
          "cpsc-approval: satisfied\n");

    io::json verdicts = io::parse_json_strict(testutil::slurp(report));
    REQUIRE(verdicts.is_array());
    CHECK(verdicts.size() == 6);
    CHECK(verdicts[0]["axiom"] == "exhaustive");
    CHECK(verdicts[0]["satisfied"] == true);
}

TEST_CASE("verify rejects inapplicable or unknown axioms") {
    TempDir dir;
    std::string outcome = write_outcome(dir, "weak_six", {"b", "c"});
    CmdResult pjr = run_tool("verify " + fixture_path("weak_six") + " " +
                             outcome + " --axiom pjr");
    CHECK(pjr.rc == 2);
    CHECK_THAT(pjr.out, ContainsSubstring("error:"));

    CmdResult unknown = run_tool("verify " + fixture_path("weak_six") + " " +
                                 outcome + " --axiom zebra");
    CHECK(unknown.rc == 2);
    CHECK_THAT(unknown.out, ContainsSubstring("unknown axiom: zebra"));
}

TEST_CASE("verify honours the witness policy flag") {
    TempDir dir;
    std::string outcome = write_outcome(dir, "dichotomous_small", {"b", "c"});
    std::string base = "verify " + fixture_path("dichotomous_small") + " " +
                       outcome + " --axiom cpsc --witness ";
    CmdResult first = run_tool(base + "first");
    CHECK(first.rc == 1);
    CHECK_THAT(first.out, ContainsSubstring("cpsc: violated\n"));

    CmdResult bad = run_tool(base + "loosest");
    CHECK(bad.rc == 2);
    CHECK_THAT(bad.out, ContainsSubstring("unknown witness policy"));
}

TEST_CASE("search reports the first satisfying outcome or an empty result") {
    CmdResult hit = run_tool("search " + fixture_path("dichotomous_small") +
                             " --axiom ipsc");
    CHECK(hit.rc == 0);
    CHECK(hit.out == "outcome: a c (cost 2/1)\n");

    CmdResult miss = run_tool("search " + fixture_path("weak_six") +
                              " --axiom cpsc");
    CHECK(miss.rc == 3);
    CHECK(miss.out == "no CPSC outcome exists\n");

    CmdResult joint = run_tool("search " + fixture_path("weak_six") +
                               " --axiom ipsc --axiom cpsc");
    CHECK(joint.rc == 3);
    CHECK(joint.out == "no IPSC+CPSC outcome exists\n");
}

TEST_CASE("search lists every satisfying outcome with --all") {
    TempDir dir;
    std::string report = dir.file("found.json");
    CmdResult r = run_tool("search " + fixture_path("mw_ear_4") +
                           " --axiom ipsc --all --output " + report);
    CHECK(r.rc == 0);
    CHECK(r.out ==
          "outcome: w x (cost 2/1)\n"
          "outcome: w y (cost 2/1)\n");

    io::json found = io::parse_json_strict(testutil::slurp(report));
    REQUIRE(found.is_array());
    CHECK(found.size() == 2);
}

TEST_CASE("gen is deterministic and respects --output") {
    TempDir dir;
    std::string args = "gen --seed 11 --n 4 --m 4 --cost small-int "
                       "--prefs weak --weights rational";
    CmdResult first = run_tool(args);
    CmdResult second = run_tool(args);
    CHECK(first.rc == 0);
    CHECK(first.out == second.out);

    std::string path = dir.file("instance.json");
    CmdResult to_file = run_tool(args + " --output " + path);
    CHECK(to_file.rc == 0);
    CHECK(to_file.out.empty());
    CHECK(testutil::slurp(path) == first.out);
    CHECK_NOTHROW(io::parse_instance(first.out));

    CmdResult bad_cost = run_tool("gen --cost gaussian");
    CHECK(bad_cost.rc == 2);
    CHECK_THAT(bad_cost.out, ContainsSubstring("error:"));

    CmdResult bad_p = run_tool("gen --prefs approval --p 3/2");
    CHECK(bad_p.rc == 2);
    CHECK_THAT(bad_p.out, ContainsSubstring("error:"));
}

TEST_CASE("a generated instance flows through compute and verify") {
    TempDir dir;
    std::string inst_path = dir.file("instance.json");
    std::string outcome_path = dir.file("outcome.json");
    CHECK(run_tool("gen --seed 1 --n 17 --m 2 --output " + inst_path).rc == 0);
    CHECK(run_tool("compute " + inst_path + " --output " + outcome_path).rc ==
          0);

    CmdResult guarded = run_tool("verify " + inst_path + " " + outcome_path +
                                 " --axiom ipsc");
    CHECK(guarded.rc == 2);
    CHECK_THAT(guarded.out, ContainsSubstring("error:"));

    CmdResult forced = run_tool("verify " + inst_path + " " + outcome_path +
                                " --axiom ipsc --force");
    CHECK(forced.rc == 0);
    CHECK(forced.out == "ipsc: satisfied\n");
}

TEST_CASE("crosscheck runs the property suites") {
    std::string fixtures = testutil::fixtures_dir().string();
    CmdResult r = run_tool("crosscheck --fixtures " + fixtures +
                           " --seeds 10 --sizes 4,4");
    CHECK(r.rc == 0);
    CHECK_THAT(r.out, ContainsSubstring("fixtures"));
    CHECK_THAT(r.out, ContainsSubstring("ear-ipsc"));
    CHECK_THAT(r.out, !ContainsSubstring("FAIL"));

    CmdResult missing = run_tool("crosscheck --fixtures no_such_dir");
    CHECK(missing.rc == 2);
    CHECK_THAT(missing.out, ContainsSubstring("fixtures directory not found"));

    CmdResult sizes = run_tool("crosscheck --fixtures " + fixtures +
                               " --sizes 4");
    CHECK(sizes.rc == 2);
    CHECK_THAT(sizes.out, ContainsSubstring("bad --sizes"));
}

TEST_CASE("usage errors exit with the usage code") {
    CHECK(run_tool("").rc == 2);
    CHECK(run_tool("frobnicate").rc == 2);
    CHECK(run_tool("compute").rc == 2);
    CHECK(run_tool("search " + fixture_path("weak_six")).rc == 2);
    CHECK(run_tool("compute " + fixture_path("weak_six") + " --bogus").rc == 2);
    CHECK(run_tool("compute no_such_file.json").rc == 2);
}
