#pragma once

#include "pb/instance.hpp"
#include "pb/knapsack.hpp"
#include "pb/rational.hpp"

namespace pb {

/// The smallest top segment of voter i's weak order containing at least j
/// candidates; every candidate once j exceeds the number of candidates.
inline CandidateSet weak_pref_set(const PBInstance& inst, int voter, int j) {
    if (voter < 0 || voter >= inst.num_voters())
        throw PreconditionError("weak_pref_set: voter index out of range");
    return inst.prefs(voter).top(j);
}

/// True iff voter i ranks every member of cands weakly above every
/// non-member.
inline bool voter_solidly_supports(const PBInstance& inst, int voter,
                                   CandidateSet cands) {
    if (cands.empty())
        throw PreconditionError("voter_solidly_supports: empty candidate set");
    const WeakOrder& order = inst.prefs(voter);
    const auto& classes = order.classes();
    // Find the deepest class touching cands; everything strictly above it
    // must lie inside cands.
    CandidateSet above;
    for (std::size_t r = 0; r < classes.size(); ++r) {
        if (!(classes[r] & cands).empty()) {
            CandidateSet deeper;
            for (std::size_t s = r + 1; s < classes.size(); ++s)
                if (!(classes[s] & cands).empty()) deeper = deeper | classes[s];
            if (deeper.empty()) return above.subset_of(cands);
        }
        above = above | classes[r];
    }
    return false; // cands empty within classes; unreachable for valid input
}

/// True iff every voter in the coalition ranks every member of cands weakly
/// above every non-member (a generalised solid coalition).
inline bool is_solidly_supported(const PBInstance& inst, VoterSet coalition,
                                 CandidateSet cands) {
    if (coalition.empty() || cands.empty())
        throw PreconditionError("is_solidly_supported: empty coalition or candidate set");
    bool all = true;
    for_each_member(coalition, [&](int i) {
        if (all && !voter_solidly_supports(inst, i, cands)) all = false;
    });
    return all;
}

/// The maximal coalition solidly supporting cands; possibly empty.
inline VoterSet supporters(const PBInstance& inst, CandidateSet cands) {
    if (cands.empty())
        throw PreconditionError("supporters: empty candidate set");
    VoterSet out;
    for (int i = 0; i < inst.num_voters(); ++i)
        if (voter_solidly_supports(inst, i, cands)) out.add(i);
    return out;
}

namespace detail {

/// Union of the voters' weak preference sets at rank level j, without the
/// solid-support precondition.
inline CandidateSet top_union(const PBInstance& inst, VoterSet voters, int j) {
    CandidateSet out;
    for_each_member(voters, [&](int i) { out = out | inst.prefs(i).top(j); });
    return out;
}

} // namespace detail

/// Every candidate some coalition member weakly prefers to their |cands|-th
/// choice: the set whose funded cost is compared against the quota.
inline CandidateSet bar_set(const PBInstance& inst, VoterSet coalition,
                            CandidateSet cands) {
    if (!is_solidly_supported(inst, coalition, cands))
        throw PreconditionError("bar_set: coalition does not solidly support the candidate set");
    return detail::top_union(inst, coalition, cands.size());
}

/// Bar-set members outside the solidly supported set itself.
inline CandidateSet periphery(const PBInstance& inst, VoterSet coalition,
                              CandidateSet cands) {
    return bar_set(inst, coalition, cands) - cands;
}

/// The budget share a coalition's weight entitles it to: b(N') * L / n.
inline Rat quota(const PBInstance& inst, VoterSet coalition) {
    return inst.total_weight(coalition) * inst.limit() /
           Rat(inst.num_voters());
}

/// True iff no unselected candidate fits the remaining budget.
inline bool is_exhaustive(const PBInstance& inst, const Outcome& outcome) {
    for (int c = 0; c < inst.num_candidates(); ++c) {
        if (outcome.selected().contains(c)) continue;
        if (outcome.total_cost() + inst.cost(c) <= inst.limit()) return false;
    }
    return true;
}

/// True iff the outcome spends as much of the limit as any feasible set can.
inline bool is_maximal_cost(const PBInstance& inst, const Outcome& outcome) {
    return outcome.total_cost() ==
           max_knapsack(inst, inst.all_candidates(), inst.limit()).best_weight;
}

} // namespace pb
