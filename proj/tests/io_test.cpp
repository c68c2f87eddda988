#include "pb/io.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <string>

using namespace pb;
using Catch::Matchers::ContainsSubstring;

namespace {

std::string small_doc(const std::string& weights3 = R"("1", "1", "1")") {
    std::string w = weights3;
    std::string::size_type a = w.find(','), b = w.find(',', a + 1);
    std::string w1 = w.substr(0, a);
    std::string w2 = w.substr(a + 1, b - a - 1);
    std::string w3 = w.substr(b + 1);
    return std::string(R"({
  "limit": "2",
  "candidates": [
    {"id": "a", "cost": "1"},
    {"id": "b", "cost": "1"}
  ],
  "voters": [
    {"id": "v1", "weight": )") + w1 + R"(, "prefs": [["a"]]},
    {"id": "v2", "weight": )" + w2 + R"(, "prefs": [["a", "b"]]},
    {"id": "v3", "weight": )" + w3 + R"(, "prefs": [["b"], ["a"]]}
  ]
})";
}

} // namespace

TEST_CASE("strict parsing refuses unquoted non-integer numbers") {
    CHECK_THROWS_AS(io::parse_json_strict("[0.5]"), ParseError);
    CHECK_THROWS_AS(io::parse_json_strict("[1e3]"), ParseError);
    CHECK_THROWS_AS(io::parse_json_strict("[2E2]"), ParseError);
    CHECK_THROWS_AS(io::parse_json_strict("[-0.5]"), ParseError);
    CHECK_THROWS_AS(io::parse_json_strict(R"({"x": [[1, 2.0]]})"), ParseError);
    CHECK_THROWS_WITH(io::parse_json_strict("[1.5]"),
                      ContainsSubstring("write exact values as strings"));

    CHECK(io::parse_json_strict("[1, -2, 30]").is_array());
    CHECK(io::parse_json_strict(R"(["0.5", "1e3"])").size() == 2);
    CHECK(io::parse_json_strict(R"({"note": "pay 0.5 now"})").is_object());
    CHECK_THROWS_WITH(io::parse_json_strict("[1, ]"),
                      ContainsSubstring("invalid JSON"));
}

TEST_CASE("instances round-trip through their canonical form") {
    for (const char* name : {"dichotomous_small.json", "dichotomous_unit.json",
                             "mw_ear_4.json", "mw_pjr_12.json",
                             "one_voter_knapsack.json", "weak_six.json"}) {
        PBInstance inst = testutil::load_fixture(name);
        std::string canonical = io::serialize_instance(inst);
        PBInstance again = io::parse_instance(canonical);
        INFO(name);
        CHECK(io::serialize_instance(again) == canonical);
        CHECK(again.num_voters() == inst.num_voters());
        CHECK(again.limit() == inst.limit());
    }
}

TEST_CASE("instance parsing accepts integers and exact strings") {
    PBInstance inst = io::parse_instance(small_doc(R"(1, "1", "2/2")"));
    CHECK(inst.weight(0) == Rat(1));
    CHECK(inst.weight(2) == Rat(1));
    CHECK(inst.prefs(2).num_classes() == 2);
    // v1 left b unranked; it lands in an implicit final class.
    CHECK(inst.prefs(0).num_classes() == 2);
    CHECK(inst.prefs(0).top(2) == inst.all_candidates());
}

TEST_CASE("instance parsing rejects malformed documents") {
    CHECK_THROWS_WITH(io::parse_instance("[]"), ContainsSubstring("expected an object"));
    CHECK_THROWS_WITH(io::parse_instance(R"({"candidates": [], "voters": []})"),
                      ContainsSubstring("missing key 'limit'"));
    CHECK_THROWS_WITH(
        io::parse_instance(
            R"({"limit": "1", "candidates": [], "voters": [], "extra": 1})"),
        ContainsSubstring("unknown key 'extra'"));

    std::string dup_cand = R"({
      "limit": "2",
      "candidates": [{"id": "a", "cost": "1"}, {"id": "a", "cost": "1"}],
      "voters": [{"id": "v1", "weight": "1", "prefs": [["a"]]}]
    })";
    CHECK_THROWS_WITH(io::parse_instance(dup_cand),
                      ContainsSubstring("duplicate candidate id 'a'"));

    std::string unknown_pref = R"({
      "limit": "2",
      "candidates": [{"id": "a", "cost": "1"}],
      "voters": [{"id": "v1", "weight": "1", "prefs": [["q"]]}]
    })";
    CHECK_THROWS_WITH(io::parse_instance(unknown_pref),
                      ContainsSubstring("unknown candidate id 'q'"));

    std::string dup_in_class = R"({
      "limit": "2",
      "candidates": [{"id": "a", "cost": "1"}],
      "voters": [{"id": "v1", "weight": "1", "prefs": [["a", "a"]]}]
    })";
    CHECK_THROWS_WITH(io::parse_instance(dup_in_class),
                      ContainsSubstring("listed twice in one class"));

    std::string overlap = R"({
      "limit": "2",
      "candidates": [{"id": "a", "cost": "1"}, {"id": "b", "cost": "1"}],
      "voters": [{"id": "v1", "weight": "2", "prefs": [["a"], ["a", "b"]]}]
    })";
    CHECK_THROWS_AS(io::parse_instance(overlap), ParseError);

    std::string float_cost = R"({
      "limit": "2",
      "candidates": [{"id": "a", "cost": 0.9}],
      "voters": [{"id": "v1", "weight": "1", "prefs": [["a"]]}]
    })";
    CHECK_THROWS_AS(io::parse_instance(float_cost), ParseError);

    std::string bad_rat = small_doc(R"("1/0", "1", "1")");
    CHECK_THROWS_AS(io::parse_instance(bad_rat), ParseError);
}

TEST_CASE("weight normalization is opt-in") {
    std::string doc = small_doc(R"("2", "0", "2")");
    CHECK_THROWS_WITH(io::parse_instance(doc),
                      ContainsSubstring("rescale or pass normalize"));
    PBInstance inst = io::parse_instance(doc, true);
    CHECK(inst.weight(0) == Rat(3, 2));
    CHECK(inst.weight(1) == Rat(0));
    CHECK(inst.weight(2) == Rat(3, 2));

    // Already-normalized weights pass through untouched.
    PBInstance plain = io::parse_instance(small_doc(), true);
    CHECK(plain.weight(0) == Rat(1));

    CHECK_THROWS_WITH(io::parse_instance(small_doc(R"("0", "0", "0")"), true),
                      ContainsSubstring("total voter weight must be positive"));
}

TEST_CASE("outcome parsing validates ids, budget and stated cost") {
    PBInstance inst = testutil::load_fixture("dichotomous_small.json");

    Outcome bare = io::parse_outcome(inst, R"(["a", "c"])");
    CHECK(bare.selected() == testutil::cands(inst, {"a", "c"}));

    Outcome full = io::parse_outcome(
        inst, R"({"selected": ["a", "c"], "total_cost": "2"})");
    CHECK(full.total_cost() == Rat(2));
    CHECK(io::parse_outcome(inst, R"({"selected": [], "total_cost": 0})")
              .selected()
              .empty());

    CHECK_THROWS_WITH(io::parse_outcome(inst, R"(["a", "q"])"),
                      ContainsSubstring("unknown candidate id 'q'"));
    CHECK_THROWS_WITH(io::parse_outcome(inst, R"(["a", "a"])"),
                      ContainsSubstring("listed twice"));
    CHECK_THROWS_WITH(
        io::parse_outcome(inst, R"({"selected": ["a", "c"], "total_cost": "3"})"),
        ContainsSubstring("differs from recomputed"));
    CHECK_THROWS_AS(io::parse_outcome(inst, R"(["a", "b", "c"])"), ParseError);
    CHECK_THROWS_AS(io::parse_outcome(inst, R"({"selected": ["a"]})"), ParseError);

    std::string serialized = io::serialize_outcome(inst, bare);
    CHECK(io::parse_outcome(inst, serialized).selected() == bare.selected());
    CHECK(serialized.back() == '\n');
}

TEST_CASE("verdicts and witnesses serialize with exact rationals") {
    PBInstance inst = testutil::load_fixture("dichotomous_small.json");
    Outcome bc = testutil::outcome_of(inst, {"b", "c"});

    io::json sat = io::verdict_json(inst, check_ipsc(inst, bc));
    CHECK(sat["axiom"] == "ipsc");
    CHECK(sat["satisfied"] == true);
    CHECK_FALSE(sat.contains("witness"));

    io::json bad = io::verdict_json(inst, check_cpsc(inst, bc));
    CHECK(bad["axiom"] == "cpsc");
    CHECK(bad["satisfied"] == false);
    const io::json& wit = bad["witness"];
    CHECK(wit["voters"] == io::json::array({"v1", "v2"}));
    CHECK(wit["coalition"] == io::json::array({"a"}));
    CHECK(wit["comparison"] == io::json::array({"a"}));
    CHECK(wit["spend"] == "9/10");
    CHECK(wit["claim"] == "1/1");
    CHECK(wit["entitlement"] == "1/1");
    CHECK_FALSE(wit.contains("candidate"));
    CHECK_FALSE(wit.contains("level"));

    PBInstance weak = testutil::load_fixture("weak_six.json");
    io::json inc = io::verdict_json(
        weak, check_ipsc(weak, testutil::outcome_of(weak, {"c", "z"})));
    CHECK(inc["witness"]["candidate"] == "b");
    CHECK_FALSE(inc["witness"].contains("comparison"));
}

TEST_CASE("traces serialize every step with exact arithmetic") {
    PBInstance inst = testutil::load_fixture("mw_ear_4.json");
    EarConfig config;
    io::json doc = io::trace_json(inst, pb_ear(inst, config), config);

    CHECK(doc["selection"] == "lex");
    CHECK(doc["reweight"] == "proportional");
    REQUIRE(doc["steps"].size() == 2);
    const io::json& first = doc["steps"][0];
    CHECK(first["level"] == 1);
    CHECK(first["support"]["w"] == "2/1");
    CHECK(first["support"]["z"] == "0/1");
    CHECK(first["threshold"]["y"] == "2/1");
    CHECK(first["eligible"] == io::json::array({"w", "x"}));
    CHECK(first["selected"] == "w");
    CHECK(first["supporters"] == io::json::array({"v1", "v2"}));
    CHECK(first["deductions"]["v1"] == "1/1");
    CHECK(doc["outcome"] == io::json::array({"w", "x"}));
    CHECK(doc["total_cost"] == "2/1");
    CHECK(doc["final_weights"]["v4"] == "0/1");

    std::string text = io::serialize_trace(inst, pb_ear(inst, config), config);
    CHECK(text.back() == '\n');
    CHECK(io::parse_json_strict(text)["outcome"] == io::json::array({"w", "x"}));
}

TEST_CASE("rule names round-trip and reject unknowns") {
    for (SelectionRule rule : {SelectionRule::kLexicographic,
                               SelectionRule::kMinCostThenLex,
                               SelectionRule::kMaxSupportThenLex})
        CHECK(io::selection_from_name(io::selection_name(rule)) == rule);
    for (ReweightRule rule : {ReweightRule::kProportional,
                              ReweightRule::kLexicographicDepletion})
        CHECK(io::reweight_from_name(io::reweight_name(rule)) == rule);
    CHECK_THROWS_AS(io::selection_from_name("best"), ParseError);
    CHECK_THROWS_AS(io::reweight_from_name("fair"), ParseError);

    for (Axiom axiom : kAllAxioms)
        CHECK(axiom_from_name(axiom_name(axiom)) == axiom);
    CHECK_FALSE(axiom_from_name("jr").has_value());
}
