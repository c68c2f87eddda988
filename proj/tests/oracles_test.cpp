#include "pb/oracles.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <vector>

using namespace pb;

namespace {

std::vector<CandidateSet> selected_sets(const std::vector<Outcome>& outcomes) {
    std::vector<CandidateSet> out;
    for (const Outcome& o : outcomes) out.push_back(o.selected());
    return out;
}

} // namespace

TEST_CASE("feasible outcomes are enumerated in lexicographic order") {
    PBInstance inst = testutil::load_fixture("one_voter_knapsack.json");
    std::vector<CandidateSet> sets = selected_sets(enumerate_feasible_outcomes(inst));
    std::vector<CandidateSet> expected = {
        CandidateSet(),
        testutil::cands(inst, {"a"}),
        testutil::cands(inst, {"b"}),
        testutil::cands(inst, {"b", "c"}),
        testutil::cands(inst, {"b", "d"}),
        testutil::cands(inst, {"c"}),
        testutil::cands(inst, {"c", "d"}),
        testutil::cands(inst, {"d"}),
    };
    CHECK(sets == expected);
}

TEST_CASE("raw violation tuples re-check the pinned witnesses") {
    SECTION("proportional-solid-coalition tuple under weak orders") {
        PBInstance inst = testutil::load_fixture("weak_six.json");
        CandidateSet w = testutil::cands(inst, {"c", "z"});
        VoterSet v2 = testutil::voters(inst, {"v2"});
        CandidateSet b = testutil::cands(inst, {"b"});
        int cand_b = inst.candidate_index("b");
        CHECK(raw::ipsc_violation(inst, w, v2, b, cand_b));
        // Funding b or picking a non-supporter dissolves the violation.
        CHECK_FALSE(raw::ipsc_violation(inst, testutil::cands(inst, {"b", "c"}),
                                        v2, b, cand_b));
        CHECK_FALSE(raw::ipsc_violation(inst, w, testutil::voters(inst, {"v1"}),
                                        b, cand_b));
    }
    SECTION("comparative tuple on the approval fixture") {
        PBInstance inst = testutil::load_fixture("dichotomous_small.json");
        CandidateSet w = testutil::cands(inst, {"b", "c"});
        VoterSet pair = testutil::voters(inst, {"v1", "v2"});
        CandidateSet a = testutil::cands(inst, {"a"});
        CHECK(raw::cpsc_violation(inst, w, pair, a, a));
        CHECK_FALSE(raw::cpsc_violation(inst, testutil::cands(inst, {"a", "c"}),
                                        pair, a, a));
        CHECK_FALSE(raw::cpsc_violation(inst, w, pair, a, CandidateSet()));
    }
    SECTION("exhaustiveness and maximal cost") {
        PBInstance inst = testutil::load_fixture("dichotomous_small.json");
        CandidateSet just_a = testutil::cands(inst, {"a"});
        CHECK(raw::exhaustive_violation(inst, just_a, inst.candidate_index("b")));
        CHECK_FALSE(raw::exhaustive_violation(inst, just_a, inst.candidate_index("a")));
        CHECK(raw::maxcost_violation(inst, testutil::cands(inst, {"b", "c"}),
                                     testutil::cands(inst, {"a", "c"})));
        CHECK_FALSE(raw::maxcost_violation(inst, testutil::cands(inst, {"b", "c"}),
                                           testutil::cands(inst, {"a", "b"})));
    }
    SECTION("approval and committee tuples") {
        PBInstance unit = testutil::load_fixture("dichotomous_unit.json");
        CandidateSet ab = testutil::cands(unit, {"a", "b"});
        VoterSet c_fans = testutil::voters(unit, {"v3", "v4"});
        CandidateSet c_set = testutil::cands(unit, {"c"});
        CHECK(raw::ipsc_approval_violation(unit, ab, c_fans, unit.candidate_index("c")));
        CHECK(raw::cpsc_approval_violation(unit, ab, c_fans, c_set));
        CHECK(raw::bpjr_violation(unit, ab, 1, c_fans, c_set));
        CHECK(raw::local_bpjr_violation(unit, ab, 1, c_fans, c_set));
        CHECK_FALSE(raw::local_bpjr_violation(unit, ab, 1, c_fans, CandidateSet()));

        PBInstance mw = testutil::load_fixture("mw_ear_4.json");
        CandidateSet xy = testutil::cands(mw, {"x", "y"});
        VoterSet w_fans = testutil::voters(mw, {"v1", "v2"});
        CandidateSet w_set = testutil::cands(mw, {"w"});
        CHECK(raw::pjr_violation(mw, xy, 1, w_fans));
        CHECK(raw::gen_psc_violation(mw, xy, 1, w_fans, w_set));
        CHECK(raw::cpsc_mw_violation(mw, xy, w_fans, w_set, w_set));
        CandidateSet wx = testutil::cands(mw, {"w", "x"});
        CHECK_FALSE(raw::pjr_violation(mw, wx, 1, w_fans));
        CHECK_FALSE(raw::cpsc_mw_violation(mw, wx, w_fans, w_set, w_set));
    }
}

TEST_CASE("raw satisfaction scans match the fixture verdicts") {
    PBInstance inst = testutil::load_fixture("dichotomous_small.json");
    Outcome bc = testutil::outcome_of(inst, {"b", "c"});
    Outcome ac = testutil::outcome_of(inst, {"a", "c"});
    CHECK(raw::satisfies(inst, bc, Axiom::kIpsc));
    CHECK_FALSE(raw::satisfies(inst, bc, Axiom::kCpsc));
    CHECK(raw::satisfies(inst, ac, Axiom::kIpsc));
    CHECK(raw::satisfies(inst, ac, Axiom::kCpsc));
    CHECK(raw::satisfies(inst, ac, Axiom::kCpscApproval));
    CHECK_FALSE(raw::satisfies(inst, bc, Axiom::kCpscApproval));
}

TEST_CASE("the approval forms include their outcome-level conjuncts") {
    // Both voters approve only c0; c1 is unwanted filler.
    PBInstance wide = testutil::make_instance(
        {Rat(1), Rat(1)}, {{{0}}, {{0}}}, Rat(2));
    Outcome just_c0 = testutil::outcome_of(wide, {"c0"});
    // The pairwise condition is met, yet room for c1 remains.
    CHECK_FALSE(raw::satisfies(wide, just_c0, Axiom::kIpscApproval));
    CHECK_FALSE(raw::satisfies(wide, just_c0, Axiom::kCpscApproval));

    PBInstance tight = testutil::make_instance(
        {Rat(1), Rat(1)}, {{{0}}, {{0}}}, Rat(1));
    Outcome picked = testutil::outcome_of(tight, {"c0"});
    CHECK(raw::satisfies(tight, picked, Axiom::kIpscApproval));
    CHECK(raw::satisfies(tight, picked, Axiom::kCpscApproval));
}

TEST_CASE("outcome search returns every satisfying outcome in order") {
    PBInstance inst = testutil::load_fixture("mw_ear_4.json");
    std::vector<CandidateSet> ipsc = selected_sets(find_outcomes(inst, Axiom::kIpsc));
    std::vector<CandidateSet> expected = {
        testutil::cands(inst, {"w", "x"}),
        testutil::cands(inst, {"w", "y"}),
    };
    CHECK(ipsc == expected);

    // Committee axioms only rate full committees of k winners.
    std::vector<CandidateSet> pjr = selected_sets(find_outcomes(inst, Axiom::kPjr));
    CHECK(pjr == expected);
}

TEST_CASE("first satisfying outcome and comparative existence") {
    PBInstance small = testutil::load_fixture("dichotomous_small.json");
    std::optional<Outcome> first = cpsc_exists(small);
    REQUIRE(first.has_value());
    CHECK(first->selected() == testutil::cands(small, {"a", "c"}));

    CHECK_FALSE(cpsc_exists(testutil::load_fixture("one_voter_knapsack.json")));
    CHECK_FALSE(cpsc_exists(testutil::load_fixture("weak_six.json")));

    std::optional<Outcome> ipsc = first_outcome(small, Axiom::kIpsc);
    REQUIRE(ipsc.has_value());
    CHECK(ipsc->selected() == testutil::cands(small, {"a", "c"}));
}

TEST_CASE("applicability is enforced by the raw route") {
    PBInstance weak = testutil::load_fixture("weak_six.json");
    Outcome bc = testutil::outcome_of(weak, {"b", "c"});
    CHECK_THROWS_AS(raw::satisfies(weak, bc, Axiom::kPjr), PreconditionError);
    CHECK_THROWS_AS(find_outcomes(weak, Axiom::kIpscApproval), PreconditionError);
}

TEST_CASE("size guards on enumeration and scanning") {
    std::vector<Rat> many_costs(21, Rat(1));
    std::vector<std::vector<std::vector<int>>> prefs(1);
    prefs[0].push_back({});
    for (int c = 0; c < 21; ++c) prefs[0][0].push_back(c);
    PBInstance wide = testutil::make_instance(many_costs, prefs, Rat(1));
    CHECK_THROWS_AS(enumerate_feasible_outcomes(wide), SizeGuardError);
    CHECK(enumerate_feasible_outcomes(wide, true).size() == 22);
    CHECK_THROWS_AS(find_outcomes(wide, Axiom::kIpsc), SizeGuardError);

    std::vector<std::vector<std::vector<int>>> crowd_prefs(17, {{0}});
    PBInstance crowd = testutil::make_instance({Rat(17)}, crowd_prefs, Rat(17));
    // Voter count only guards the satisfaction scans, not bare enumeration.
    CHECK(enumerate_feasible_outcomes(crowd).size() == 2);
    CHECK_THROWS_AS(find_outcomes(crowd, Axiom::kIpsc), SizeGuardError);
    CHECK(find_outcomes(crowd, Axiom::kIpsc, true).size() == 1);
}
