#pragma once

#include "pb/axiom.hpp"
#include "pb/core.hpp"
#include "pb/floatguard.hpp"
#include "pb/instance.hpp"
#include "pb/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pb {

// ---------------------------------------------------------------------------
// Raw definitional route
//
// Everything in pb::raw transcribes the axiom definitions as directly as
// possible: quantifiers become loops, existence tests become subset scans.
// No knapsack, no supporter precomputation, no witness bookkeeping. The
// verifiers in axioms.hpp are checked against this route, and a verifier
// witness is accepted only if its tuple re-checks true here.
// ---------------------------------------------------------------------------

namespace raw {

inline bool ipsc_violation(const PBInstance& inst, CandidateSet w,
                           VoterSet coalition, CandidateSet cands, int c) {
    if (coalition.empty() || cands.empty() || !cands.contains(c)) return false;
    if (!is_solidly_supported(inst, coalition, cands)) return false;
    CandidateSet funded = bar_set(inst, coalition, cands) & w;
    if (funded.contains(c)) return false;
    Rat spent = inst.total_cost(funded);
    Rat entitlement = quota(inst, coalition);
    return spent < entitlement && spent + inst.cost(c) <= entitlement;
}

inline bool cpsc_violation(const PBInstance& inst, CandidateSet w,
                           VoterSet coalition, CandidateSet cands,
                           CandidateSet alternative) {
    if (coalition.empty() || cands.empty()) return false;
    if (!alternative.subset_of(cands)) return false;
    if (!is_solidly_supported(inst, coalition, cands)) return false;
    Rat spent = inst.total_cost(bar_set(inst, coalition, cands) & w);
    Rat entitlement = quota(inst, coalition);
    if (!(spent < entitlement)) return false;
    Rat alt = inst.total_cost(alternative);
    return spent < alt && alt <= entitlement;
}

inline bool exhaustive_violation(const PBInstance& inst, CandidateSet w, int c) {
    if (c < 0 || c >= inst.num_candidates() || w.contains(c)) return false;
    return inst.total_cost(w) + inst.cost(c) <= inst.limit();
}

inline bool maxcost_violation(const PBInstance& inst, CandidateSet w,
                              CandidateSet better) {
    Rat cost = inst.total_cost(better);
    return cost <= inst.limit() && cost > inst.total_cost(w);
}

inline bool ipsc_approval_violation(const PBInstance& inst, CandidateSet w,
                                    VoterSet coalition, int c) {
    if (coalition.empty()) return false;
    CandidateSet approved_union, approved_common = inst.all_candidates();
    for_each_member(coalition, [&](int i) {
        approved_union = approved_union | inst.approvals(i);
        approved_common = approved_common & inst.approvals(i);
    });
    if (!approved_common.contains(c)) return false;
    CandidateSet funded = approved_union & w;
    if (funded.contains(c)) return false;
    Rat spent = inst.total_cost(funded);
    Rat entitlement = quota(inst, coalition);
    return spent < entitlement && spent + inst.cost(c) <= entitlement;
}

inline bool cpsc_approval_violation(const PBInstance& inst, CandidateSet w,
                                    VoterSet coalition, CandidateSet alternative) {
    if (coalition.empty()) return false;
    CandidateSet approved_union, approved_common = inst.all_candidates();
    for_each_member(coalition, [&](int i) {
        approved_union = approved_union | inst.approvals(i);
        approved_common = approved_common & inst.approvals(i);
    });
    if (!alternative.subset_of(approved_common)) return false;
    Rat alt = inst.total_cost(alternative);
    if (!(alt <= quota(inst, coalition))) return false;
    return inst.total_cost(approved_union & w) < alt;
}

inline bool bpjr_violation(const PBInstance& inst, CandidateSet w, int level,
                           VoterSet coalition, CandidateSet alternative) {
    if (coalition.empty() || level < 1) return false;
    if (Rat(level) > inst.limit()) return false;
    if (Rat(coalition.size()) * inst.limit() < Rat(level * inst.num_voters()))
        return false;
    CandidateSet approved_union, approved_common = inst.all_candidates();
    for_each_member(coalition, [&](int i) {
        approved_union = approved_union | inst.approvals(i);
        approved_common = approved_common & inst.approvals(i);
    });
    if (inst.total_cost(approved_common) < Rat(level)) return false;
    if (!alternative.subset_of(approved_common)) return false;
    Rat cap = Rat(coalition.size()) * inst.limit() / Rat(inst.num_voters());
    Rat alt = inst.total_cost(alternative);
    if (!(alt <= cap)) return false;
    return inst.total_cost(approved_union & w) < alt;
}

inline bool local_bpjr_violation(const PBInstance& inst, CandidateSet w,
                                 int level, VoterSet coalition,
                                 CandidateSet replacement) {
    if (coalition.empty() || level < 1) return false;
    if (Rat(level) > inst.limit()) return false;
    if (Rat(coalition.size()) * inst.limit() < Rat(level * inst.num_voters()))
        return false;
    CandidateSet approved_union, approved_common = inst.all_candidates();
    for_each_member(coalition, [&](int i) {
        approved_union = approved_union | inst.approvals(i);
        approved_common = approved_common & inst.approvals(i);
    });
    CandidateSet funded = approved_union & w;
    if (!replacement.subset_of(approved_common)) return false;
    if (!(funded.subset_of(replacement) && replacement != funded)) return false;
    Rat repl_cost = inst.total_cost(replacement);
    if (!(repl_cost <= Rat(level))) return false;
    // Membership in the argmax: no affordable subset of the common approvals
    // weighs more.
    bool maximal = true;
    for_each_subset(approved_common, [&](CandidateSet s) {
        if (!maximal) return;
        Rat c = inst.total_cost(s);
        if (c <= Rat(level) && c > repl_cost) maximal = false;
    });
    return maximal;
}

inline bool pjr_violation(const PBInstance& inst, CandidateSet w, int level,
                          VoterSet group) {
    if (group.empty() || level < 1) return false;
    if (Rat(level) > inst.limit()) return false;
    if (Rat(group.size()) * inst.limit() < Rat(level * inst.num_voters()))
        return false;
    CandidateSet approved_union, approved_common = inst.all_candidates();
    for_each_member(group, [&](int i) {
        approved_union = approved_union | inst.approvals(i);
        approved_common = approved_common & inst.approvals(i);
    });
    if (approved_common.size() < level) return false;
    return (approved_union & w).size() < level;
}

inline bool gen_psc_violation(const PBInstance& inst, CandidateSet w, int level,
                              VoterSet coalition, CandidateSet cands) {
    if (coalition.empty() || cands.empty() || level < 1) return false;
    if (Rat(coalition.size()) * inst.limit() < Rat(level * inst.num_voters()))
        return false;
    if (!is_solidly_supported(inst, coalition, cands)) return false;
    CandidateSet bar = bar_set(inst, coalition, cands);
    int needed = level < cands.size() ? level : cands.size();
    bool found = false;
    for_each_subset(w, [&](CandidateSet s) {
        if (found) return;
        if (s.size() >= needed && s.subset_of(bar)) found = true;
    });
    return !found;
}

inline bool cpsc_mw_violation(const PBInstance& inst, CandidateSet w,
                              VoterSet coalition, CandidateSet cands,
                              CandidateSet alternative) {
    if (coalition.empty() || cands.empty()) return false;
    if (!alternative.subset_of(cands)) return false;
    if (!is_solidly_supported(inst, coalition, cands)) return false;
    if (Rat(alternative.size() * inst.num_voters()) >
        Rat(coalition.size()) * inst.limit())
        return false;
    return (bar_set(inst, coalition, cands) & w).size() < alternative.size();
}

/// Literal quantifier scan for one axiom; true iff the outcome satisfies it.
inline bool satisfies(const PBInstance& inst, const Outcome& outcome, Axiom axiom) {
    [[maybe_unused]] FloatTrapGuard float_guard;
    require_axiom_applicable(inst, axiom);
    require_outcome_applicable(inst, axiom, outcome);
    CandidateSet w = outcome.selected();
    const int m = inst.num_candidates();

    switch (axiom) {
    case Axiom::kExhaustive: {
        for (int c = 0; c < m; ++c)
            if (exhaustive_violation(inst, w, c)) return false;
        return true;
    }
    case Axiom::kMaxCost: {
        bool ok = true;
        for_each_subset(inst.all_candidates(), [&](CandidateSet s) {
            if (ok && maxcost_violation(inst, w, s)) ok = false;
        });
        return ok;
    }
    case Axiom::kIpsc: {
        bool ok = true;
        for_each_subset(inst.all_candidates(), [&](CandidateSet cands) {
            if (!ok || cands.empty()) return;
            for_each_subset(inst.all_voters(), [&](VoterSet coalition) {
                if (!ok || coalition.empty()) return;
                if (!is_solidly_supported(inst, coalition, cands)) return;
                for_each_member(cands, [&](int c) {
                    if (ok && ipsc_violation(inst, w, coalition, cands, c))
                        ok = false;
                });
            });
        });
        return ok;
    }
    case Axiom::kCpsc: {
        bool ok = true;
        for_each_subset(inst.all_candidates(), [&](CandidateSet cands) {
            if (!ok || cands.empty()) return;
            for_each_subset(inst.all_voters(), [&](VoterSet coalition) {
                if (!ok || coalition.empty()) return;
                if (!is_solidly_supported(inst, coalition, cands)) return;
                for_each_subset(cands, [&](CandidateSet alt) {
                    if (ok && cpsc_violation(inst, w, coalition, cands, alt))
                        ok = false;
                });
            });
        });
        return ok;
    }
    case Axiom::kIpscApproval: {
        if (!satisfies(inst, outcome, Axiom::kExhaustive)) return false;
        bool ok = true;
        for_each_subset(inst.all_voters(), [&](VoterSet coalition) {
            if (!ok || coalition.empty()) return;
            for (int c = 0; ok && c < m; ++c)
                if (ipsc_approval_violation(inst, w, coalition, c)) ok = false;
        });
        return ok;
    }
    case Axiom::kCpscApproval: {
        if (!satisfies(inst, outcome, Axiom::kMaxCost)) return false;
        bool ok = true;
        for_each_subset(inst.all_voters(), [&](VoterSet coalition) {
            if (!ok || coalition.empty()) return;
            for_each_subset(inst.all_candidates(), [&](CandidateSet alt) {
                if (ok && cpsc_approval_violation(inst, w, coalition, alt))
                    ok = false;
            });
        });
        return ok;
    }
    case Axiom::kBpjrL: {
        long long limit = inst.limit().floor().convert_to<long long>();
        for (int level = 1; level <= limit; ++level) {
            bool ok = true;
            for_each_subset(inst.all_voters(), [&](VoterSet coalition) {
                if (!ok || coalition.empty()) return;
                for_each_subset(inst.all_candidates(), [&](CandidateSet alt) {
                    if (ok && bpjr_violation(inst, w, level, coalition, alt))
                        ok = false;
                });
            });
            if (!ok) return false;
        }
        return true;
    }
    case Axiom::kLocalBpjrL: {
        long long limit = inst.limit().floor().convert_to<long long>();
        for (int level = 1; level <= limit; ++level) {
            bool ok = true;
            for_each_subset(inst.all_voters(), [&](VoterSet coalition) {
                if (!ok || coalition.empty()) return;
                for_each_subset(inst.all_candidates(), [&](CandidateSet repl) {
                    if (ok && local_bpjr_violation(inst, w, level, coalition, repl))
                        ok = false;
                });
            });
            if (!ok) return false;
        }
        return true;
    }
    case Axiom::kPjr: {
        long long k = inst.limit().floor().convert_to<long long>();
        for (int level = 1; level <= k; ++level) {
            bool ok = true;
            for_each_subset(inst.all_voters(), [&](VoterSet group) {
                if (ok && !group.empty() && pjr_violation(inst, w, level, group))
                    ok = false;
            });
            if (!ok) return false;
        }
        return true;
    }
    case Axiom::kGenPsc: {
        long long k = inst.limit().floor().convert_to<long long>();
        for (int level = 1; level <= k; ++level) {
            bool ok = true;
            for_each_subset(inst.all_candidates(), [&](CandidateSet cands) {
                if (!ok || cands.empty()) return;
                for_each_subset(inst.all_voters(), [&](VoterSet coalition) {
                    if (ok && !coalition.empty() &&
                        gen_psc_violation(inst, w, level, coalition, cands))
                        ok = false;
                });
            });
            if (!ok) return false;
        }
        return true;
    }
    case Axiom::kCpscMw: {
        bool ok = true;
        for_each_subset(inst.all_candidates(), [&](CandidateSet cands) {
            if (!ok || cands.empty()) return;
            for_each_subset(inst.all_voters(), [&](VoterSet coalition) {
                if (!ok || coalition.empty()) return;
                if (!is_solidly_supported(inst, coalition, cands)) return;
                for_each_subset(cands, [&](CandidateSet alt) {
                    if (ok && cpsc_mw_violation(inst, w, coalition, cands, alt))
                        ok = false;
                });
            });
        });
        return ok;
    }
    }
    return true;
}

} // namespace raw

// ---------------------------------------------------------------------------
// Enumeration oracles
// ---------------------------------------------------------------------------

namespace detail {

inline void check_enumeration_guard(const PBInstance& inst, bool force,
                                    const char* who) {
    if (!force && inst.num_candidates() > 20)
        throw SizeGuardError(std::string(who) + ": refusing enumeration over " +
                             std::to_string(inst.num_candidates()) +
                             " candidates (limit 20); pass force to override");
}

inline void check_scan_guard(const PBInstance& inst, bool force, const char* who) {
    check_enumeration_guard(inst, force, who);
    if (!force && inst.num_voters() > 16)
        throw SizeGuardError(std::string(who) + ": refusing scan over " +
                             std::to_string(inst.num_voters()) +
                             " voters (limit 16); pass force to override");
}

/// Emits feasible candidate sets in lexicographic order of their ascending
/// index sequences; supersets of an over-budget set are skipped.
template <typename Fn>
bool emit_feasible(const PBInstance& inst, CandidateSet prefix, Rat cost,
                   int next, Fn&& fn) {
    if (!fn(prefix, cost)) return false;
    for (int c = next; c < inst.num_candidates(); ++c) {
        Rat extended = cost + inst.cost(c);
        if (extended > inst.limit()) continue;
        if (!emit_feasible(inst, CandidateSet(prefix).add(c), extended, c + 1, fn))
            return false;
    }
    return true;
}

} // namespace detail

/// All feasible outcomes, in lexicographic candidate-sequence order starting
/// with the empty outcome. Guarded to 20 candidates unless forced.
inline std::vector<Outcome> enumerate_feasible_outcomes(const PBInstance& inst,
                                                        bool force = false) {
    detail::check_enumeration_guard(inst, force, "enumerate_feasible_outcomes");
    std::vector<Outcome> out;
    detail::emit_feasible(inst, CandidateSet(), Rat(0), 0,
                          [&](CandidateSet s, const Rat&) {
                              out.emplace_back(inst, s);
                              return true;
                          });
    return out;
}

/// All feasible outcomes satisfying the axiom under the raw definitional
/// scan. Committee axioms only consider full committees of k winners.
inline std::vector<Outcome> find_outcomes(const PBInstance& inst, Axiom axiom,
                                          bool force = false) {
    require_axiom_applicable(inst, axiom);
    detail::check_scan_guard(inst, force, "find_outcomes");
    bool committee_only = axiom == Axiom::kPjr || axiom == Axiom::kGenPsc;
    std::vector<Outcome> out;
    detail::emit_feasible(inst, CandidateSet(), Rat(0), 0,
                          [&](CandidateSet s, const Rat&) {
                              Outcome candidate(inst, s);
                              if (committee_only &&
                                  Rat(s.size()) != inst.limit())
                                  return true;
                              if (raw::satisfies(inst, candidate, axiom))
                                  out.push_back(candidate);
                              return true;
                          });
    return out;
}

/// First element of find_outcomes in enumeration order, without building the
/// rest.
inline std::optional<Outcome> first_outcome(const PBInstance& inst, Axiom axiom,
                                            bool force = false) {
    require_axiom_applicable(inst, axiom);
    detail::check_scan_guard(inst, force, "first_outcome");
    bool committee_only = axiom == Axiom::kPjr || axiom == Axiom::kGenPsc;
    std::optional<Outcome> found;
    detail::emit_feasible(inst, CandidateSet(), Rat(0), 0,
                          [&](CandidateSet s, const Rat&) {
                              Outcome candidate(inst, s);
                              if (committee_only &&
                                  Rat(s.size()) != inst.limit())
                                  return true;
                              if (raw::satisfies(inst, candidate, axiom)) {
                                  found = candidate;
                                  return false;
                              }
                              return true;
                          });
    return found;
}

/// Some outcome satisfying CPSC, or nothing: CPSC outcomes can fail to exist.
inline std::optional<Outcome> cpsc_exists(const PBInstance& inst,
                                          bool force = false) {
    return first_outcome(inst, Axiom::kCpsc, force);
}

} // namespace pb
