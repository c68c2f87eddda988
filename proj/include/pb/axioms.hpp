#pragma once

#include "pb/axiom.hpp"
#include "pb/core.hpp"
#include "pb/floatguard.hpp"
#include "pb/instance.hpp"
#include "pb/knapsack.hpp"
#include "pb/oracles.hpp"
#include "pb/rational.hpp"

#include <optional>
#include <string>

namespace pb {

enum class WitnessPolicy {
    kMinimal, // full scan, report the least witness under witness_less
    kFirst,   // stop at the first violation found in scan order
};

struct CheckOptions {
    bool force = false;
    WitnessPolicy policy = WitnessPolicy::kMinimal;
};

/// A machine-checkable violation certificate. `voters` is the coalition N'
/// (or group N*), `coalition` the solidly supported C' (for the approval
/// axioms: the coalition's common approval set). `comparison` is a C''-style
/// alternative bundle, `candidate` a c*-style single candidate, `level` an
/// l-style rank. `spend` < `claim` <= `entitlement` are the numeric sides of
/// the violated inequality chain. An approval-form violation with an empty
/// voter set records the axiom's outcome-level second conjunct: maximal cost
/// for cpsc-approval, exhaustiveness for ipsc-approval.
struct Witness {
    VoterSet voters;
    CandidateSet coalition;
    std::optional<CandidateSet> comparison;
    std::optional<int> candidate;
    std::optional<int> level;
    Rat spend;
    Rat claim;
    Rat entitlement;
};

struct Verdict {
    Axiom axiom = Axiom::kExhaustive;
    bool satisfied = true;
    std::optional<Witness> witness;
};

/// Reporting order: smaller coalitions first, then fewer voters, then
/// lexicographic sets, then level and candidate details. The approval-family
/// checks derive `coalition` from the voter set, so the voter fields
/// effectively lead there.
inline bool witness_less(const Witness& a, const Witness& b) {
    if (a.coalition.size() != b.coalition.size())
        return a.coalition.size() < b.coalition.size();
    if (a.voters.size() != b.voters.size())
        return a.voters.size() < b.voters.size();
    if (a.coalition != b.coalition) return lex_less(a.coalition, b.coalition);
    if (a.voters != b.voters) return lex_less(a.voters, b.voters);
    int la = a.level.value_or(0), lb = b.level.value_or(0);
    if (la != lb) return la < lb;
    int ca = a.candidate.value_or(-1), cb = b.candidate.value_or(-1);
    if (ca != cb) return ca < cb;
    CandidateSet xa = a.comparison.value_or(CandidateSet());
    CandidateSet xb = b.comparison.value_or(CandidateSet());
    if (xa != xb) return lex_less(xa, xb);
    return false;
}

namespace detail {

inline void check_verifier_guard(const PBInstance& inst, const CheckOptions& opts,
                                 Axiom axiom) {
    if (opts.force) return;
    if (inst.num_voters() > 16 || inst.num_candidates() > 16)
        throw SizeGuardError(std::string(axiom_name(axiom)) +
                             ": refusing exponential search on " +
                             std::to_string(inst.num_voters()) + " voters x " +
                             std::to_string(inst.num_candidates()) +
                             " candidates (limit 16 each); pass force to override");
}

struct WitnessCollector {
    explicit WitnessCollector(WitnessPolicy p) : policy(p) {}

    WitnessPolicy policy;
    std::optional<Witness> best;
    bool done = false;

    void offer(Witness w) {
        if (policy == WitnessPolicy::kFirst) {
            best = std::move(w);
            done = true;
            return;
        }
        if (!best || witness_less(w, *best)) best = std::move(w);
    }
};

inline Verdict finish(Axiom axiom, WitnessCollector& collector) {
    Verdict v;
    v.axiom = axiom;
    v.satisfied = !collector.best.has_value();
    v.witness = std::move(collector.best);
    return v;
}

/// Runs fn(coalition, common, united) for candidate coalitions of the
/// approval-family scans: every nonempty voter set with its common and
/// united approval sets.
template <typename Fn>
void for_each_approval_coalition(const PBInstance& inst, Fn&& fn) {
    for_each_subset(inst.all_voters(), [&](VoterSet coalition) {
        if (coalition.empty()) return;
        CandidateSet united, common = inst.all_candidates();
        for_each_member(coalition, [&](int i) {
            united = united | inst.approvals(i);
            common = common & inst.approvals(i);
        });
        fn(coalition, common, united);
    });
}

/// Runs fn(cands, coalition, funded, entitlement) over every solidly
/// supported pair: cands nonempty, coalition a nonempty subset of its
/// supporters, funded the bar-set spend of the pair.
template <typename Fn>
void for_each_solid_pair(const PBInstance& inst, CandidateSet w, Fn&& fn) {
    for_each_subset(inst.all_candidates(), [&](CandidateSet cands) {
        if (cands.empty()) return;
        VoterSet backers = supporters(inst, cands);
        if (backers.empty()) return;
        for_each_subset(backers, [&](VoterSet coalition) {
            if (coalition.empty()) return;
            CandidateSet funded =
                top_union(inst, coalition, cands.size()) & w;
            fn(cands, coalition, funded, quota(inst, coalition));
        });
    });
}

} // namespace detail

inline Verdict check_exhaustive(const PBInstance& inst, const Outcome& outcome,
                                const CheckOptions& opts = {}) {
    (void)opts;
    Verdict v;
    v.axiom = Axiom::kExhaustive;
    for (int c = 0; c < inst.num_candidates(); ++c) {
        if (outcome.selected().contains(c)) continue;
        Rat extended = outcome.total_cost() + inst.cost(c);
        if (extended <= inst.limit()) {
            Witness w;
            w.candidate = c;
            w.spend = outcome.total_cost();
            w.claim = extended;
            w.entitlement = inst.limit();
            v.satisfied = false;
            v.witness = std::move(w);
            return v;
        }
    }
    return v;
}

inline Verdict check_maximal_cost(const PBInstance& inst, const Outcome& outcome,
                                  const CheckOptions& opts = {}) {
    (void)opts;
    Verdict v;
    v.axiom = Axiom::kMaxCost;
    KnapsackResult best =
        max_knapsack(inst, inst.all_candidates(), inst.limit());
    if (best.best_weight > outcome.total_cost()) {
        Witness w;
        w.comparison = best.best_set;
        w.spend = outcome.total_cost();
        w.claim = best.best_weight;
        w.entitlement = inst.limit();
        v.satisfied = false;
        v.witness = std::move(w);
    }
    return v;
}

inline Verdict check_ipsc(const PBInstance& inst, const Outcome& outcome,
                          const CheckOptions& opts = {}) {
    detail::check_verifier_guard(inst, opts, Axiom::kIpsc);
    detail::WitnessCollector collector(opts.policy);
    CandidateSet w = outcome.selected();
    detail::for_each_solid_pair(inst, w, [&](CandidateSet cands, VoterSet coalition,
                                             CandidateSet funded,
                                             const Rat& entitlement) {
        if (collector.done) return;
        Rat spend = inst.total_cost(funded);
        if (!(spend < entitlement)) return;
        bool recorded = false;
        for_each_member(cands - funded, [&](int c) {
            if (recorded || collector.done) return;
            Rat claim = spend + inst.cost(c);
            if (claim <= entitlement) {
                Witness wit;
                wit.voters = coalition;
                wit.coalition = cands;
                wit.candidate = c;
                wit.spend = spend;
                wit.claim = claim;
                wit.entitlement = entitlement;
                collector.offer(std::move(wit));
                recorded = true;
            }
        });
    });
    return detail::finish(Axiom::kIpsc, collector);
}

inline Verdict check_cpsc(const PBInstance& inst, const Outcome& outcome,
                          const CheckOptions& opts = {}) {
    detail::check_verifier_guard(inst, opts, Axiom::kCpsc);
    detail::WitnessCollector collector(opts.policy);
    CandidateSet w = outcome.selected();
    detail::for_each_solid_pair(inst, w, [&](CandidateSet cands, VoterSet coalition,
                                             CandidateSet funded,
                                             const Rat& entitlement) {
        if (collector.done) return;
        Rat spend = inst.total_cost(funded);
        KnapsackResult best = max_knapsack(inst, cands, entitlement);
        if (best.best_weight > spend) {
            Witness wit;
            wit.voters = coalition;
            wit.coalition = cands;
            wit.comparison = best.best_set;
            wit.spend = spend;
            wit.claim = best.best_weight;
            wit.entitlement = entitlement;
            collector.offer(std::move(wit));
        }
    });
    return detail::finish(Axiom::kCpsc, collector);
}

inline Verdict check_ipsc_approval(const PBInstance& inst, const Outcome& outcome,
                                   const CheckOptions& opts = {}) {
    require_axiom_applicable(inst, Axiom::kIpscApproval);
    detail::check_verifier_guard(inst, opts, Axiom::kIpscApproval);
    detail::WitnessCollector collector(opts.policy);
    CandidateSet w = outcome.selected();
    detail::for_each_approval_coalition(inst, [&](VoterSet coalition,
                                                  CandidateSet common,
                                                  CandidateSet united) {
        if (collector.done) return;
        CandidateSet funded = united & w;
        Rat spend = inst.total_cost(funded);
        Rat entitlement = quota(inst, coalition);
        if (!(spend < entitlement)) return;
        bool recorded = false;
        for_each_member(common - funded, [&](int c) {
            if (recorded || collector.done) return;
            Rat claim = spend + inst.cost(c);
            if (claim <= entitlement) {
                Witness wit;
                wit.voters = coalition;
                wit.coalition = common;
                wit.candidate = c;
                wit.spend = spend;
                wit.claim = claim;
                wit.entitlement = entitlement;
                collector.offer(std::move(wit));
                recorded = true;
            }
        });
    });
    if (!collector.best) {
        Verdict exhaustive = check_exhaustive(inst, outcome);
        if (!exhaustive.satisfied) {
            Witness wit = *exhaustive.witness;
            collector.offer(std::move(wit));
        }
    }
    return detail::finish(Axiom::kIpscApproval, collector);
}

inline Verdict check_cpsc_approval(const PBInstance& inst, const Outcome& outcome,
                                   const CheckOptions& opts = {}) {
    require_axiom_applicable(inst, Axiom::kCpscApproval);
    detail::check_verifier_guard(inst, opts, Axiom::kCpscApproval);
    detail::WitnessCollector collector(opts.policy);
    CandidateSet w = outcome.selected();
    detail::for_each_approval_coalition(inst, [&](VoterSet coalition,
                                                  CandidateSet common,
                                                  CandidateSet united) {
        if (collector.done) return;
        Rat spend = inst.total_cost(united & w);
        Rat entitlement = quota(inst, coalition);
        KnapsackResult best = max_knapsack(inst, common, entitlement);
        if (best.best_weight > spend) {
            Witness wit;
            wit.voters = coalition;
            wit.coalition = common;
            wit.comparison = best.best_set;
            wit.spend = spend;
            wit.claim = best.best_weight;
            wit.entitlement = entitlement;
            collector.offer(std::move(wit));
        }
    });
    if (!collector.best) {
        Verdict maxcost = check_maximal_cost(inst, outcome);
        if (!maxcost.satisfied) {
            Witness wit = *maxcost.witness;
            collector.offer(std::move(wit));
        }
    }
    return detail::finish(Axiom::kCpscApproval, collector);
}

inline Verdict check_bpjr_l(const PBInstance& inst, const Outcome& outcome,
                            const CheckOptions& opts = {}) {
    require_axiom_applicable(inst, Axiom::kBpjrL);
    detail::check_verifier_guard(inst, opts, Axiom::kBpjrL);
    detail::WitnessCollector collector(opts.policy);
    CandidateSet w = outcome.selected();
    const Rat n(inst.num_voters());
    const long long limit = inst.limit().floor().convert_to<long long>();
    detail::for_each_approval_coalition(inst, [&](VoterSet coalition,
                                                  CandidateSet common,
                                                  CandidateSet united) {
        if (collector.done) return;
        // Both the group-size and common-cost conditions must admit a shared
        // integer level in [1, limit]; the knapsack bound is level-free.
        Rat size_bound = Rat(coalition.size()) * inst.limit() / n;
        Rat cost_bound = inst.total_cost(common);
        long long max_level = size_bound.floor().convert_to<long long>();
        if (cost_bound < size_bound) {
            long long by_cost = cost_bound.floor().convert_to<long long>();
            if (by_cost < max_level) max_level = by_cost;
        }
        if (max_level > limit) max_level = limit;
        if (max_level < 1) return;
        Rat spend = inst.total_cost(united & w);
        KnapsackResult best = max_knapsack(inst, common, size_bound);
        if (best.best_weight > spend) {
            Witness wit;
            wit.voters = coalition;
            wit.coalition = common;
            wit.comparison = best.best_set;
            wit.level = 1;
            wit.spend = spend;
            wit.claim = best.best_weight;
            wit.entitlement = size_bound;
            collector.offer(std::move(wit));
        }
    });
    return detail::finish(Axiom::kBpjrL, collector);
}

inline Verdict check_local_bpjr_l(const PBInstance& inst, const Outcome& outcome,
                                  const CheckOptions& opts = {}) {
    require_axiom_applicable(inst, Axiom::kLocalBpjrL);
    detail::check_verifier_guard(inst, opts, Axiom::kLocalBpjrL);
    detail::WitnessCollector collector(opts.policy);
    CandidateSet w = outcome.selected();
    const Rat n(inst.num_voters());
    const long long limit = inst.limit().floor().convert_to<long long>();
    detail::for_each_approval_coalition(inst, [&](VoterSet coalition,
                                                  CandidateSet common,
                                                  CandidateSet united) {
        if (collector.done) return;
        CandidateSet funded = united & w;
        if (!funded.subset_of(common)) return;
        Rat size_bound = Rat(coalition.size()) * inst.limit() / n;
        long long max_level = size_bound.floor().convert_to<long long>();
        if (max_level > limit) max_level = limit;
        for (long long level = 1; level <= max_level; ++level) {
            if (collector.done) return;
            KnapsackResult best = max_knapsack(inst, common, Rat(level));
            Rat funded_cost = inst.total_cost(funded);
            if (best.best_weight < funded_cost) continue;
            // Some optimum must strictly extend the funded set.
            CandidateSet extra = common - funded;
            std::optional<CandidateSet> replacement;
            for_each_subset(extra, [&](CandidateSet added) {
                if (replacement || added.empty()) return;
                CandidateSet candidate_set = funded | added;
                if (inst.total_cost(candidate_set) == best.best_weight)
                    replacement = candidate_set;
            });
            if (replacement) {
                Witness wit;
                wit.voters = coalition;
                wit.coalition = common;
                wit.comparison = *replacement;
                wit.level = static_cast<int>(level);
                wit.spend = funded_cost;
                wit.claim = best.best_weight;
                wit.entitlement = Rat(level);
                collector.offer(std::move(wit));
            }
        }
    });
    return detail::finish(Axiom::kLocalBpjrL, collector);
}

inline Verdict check_pjr(const PBInstance& inst, const Outcome& outcome,
                         const CheckOptions& opts = {}) {
    require_axiom_applicable(inst, Axiom::kPjr);
    require_outcome_applicable(inst, Axiom::kPjr, outcome);
    detail::check_verifier_guard(inst, opts, Axiom::kPjr);
    detail::WitnessCollector collector(opts.policy);
    CandidateSet w = outcome.selected();
    const Rat n(inst.num_voters());
    detail::for_each_approval_coalition(inst, [&](VoterSet group,
                                                  CandidateSet common,
                                                  CandidateSet united) {
        if (collector.done) return;
        Rat size_bound = Rat(group.size()) * inst.limit() / n;
        long long max_level = size_bound.floor().convert_to<long long>();
        if (max_level > common.size()) max_level = common.size();
        int got = (united & w).size();
        if (got >= max_level) return;
        int level = got + 1;
        Witness wit;
        wit.voters = group;
        wit.coalition = common;
        wit.level = level;
        wit.spend = Rat(got);
        wit.claim = Rat(level);
        wit.entitlement = Rat(level) * n / inst.limit();
        collector.offer(std::move(wit));
    });
    return detail::finish(Axiom::kPjr, collector);
}

inline Verdict check_gen_psc(const PBInstance& inst, const Outcome& outcome,
                             const CheckOptions& opts = {}) {
    require_axiom_applicable(inst, Axiom::kGenPsc);
    require_outcome_applicable(inst, Axiom::kGenPsc, outcome);
    detail::check_verifier_guard(inst, opts, Axiom::kGenPsc);
    detail::WitnessCollector collector(opts.policy);
    CandidateSet w = outcome.selected();
    const Rat n(inst.num_voters());
    detail::for_each_solid_pair(inst, w, [&](CandidateSet cands, VoterSet coalition,
                                             CandidateSet funded, const Rat&) {
        if (collector.done) return;
        Rat size_bound = Rat(coalition.size()) * inst.limit() / n;
        long long max_level = size_bound.floor().convert_to<long long>();
        int got = funded.size();
        if (got >= cands.size() || got >= max_level) return;
        int level = got + 1;
        Witness wit;
        wit.voters = coalition;
        wit.coalition = cands;
        wit.level = level;
        wit.spend = Rat(got);
        wit.claim = Rat(level < cands.size() ? level : cands.size());
        wit.entitlement = Rat(level) * n / inst.limit();
        collector.offer(std::move(wit));
    });
    return detail::finish(Axiom::kGenPsc, collector);
}

inline Verdict check_cpsc_mw(const PBInstance& inst, const Outcome& outcome,
                             const CheckOptions& opts = {}) {
    require_axiom_applicable(inst, Axiom::kCpscMw);
    detail::check_verifier_guard(inst, opts, Axiom::kCpscMw);
    detail::WitnessCollector collector(opts.policy);
    CandidateSet w = outcome.selected();
    const Rat n(inst.num_voters());
    detail::for_each_solid_pair(inst, w, [&](CandidateSet cands, VoterSet coalition,
                                             CandidateSet funded, const Rat&) {
        if (collector.done) return;
        Rat size_bound = Rat(coalition.size()) * inst.limit() / n;
        long long max_size = size_bound.floor().convert_to<long long>();
        if (max_size > cands.size()) max_size = cands.size();
        int got = funded.size();
        if (got >= max_size) return;
        CandidateSet alternative;
        for_each_member(cands, [&](int c) {
            if (alternative.size() < max_size) alternative.add(c);
        });
        Witness wit;
        wit.voters = coalition;
        wit.coalition = cands;
        wit.comparison = alternative;
        wit.spend = Rat(got);
        wit.claim = Rat(static_cast<long long>(alternative.size()));
        wit.entitlement = size_bound;
        collector.offer(std::move(wit));
    });
    return detail::finish(Axiom::kCpscMw, collector);
}

inline Verdict check_axiom(const PBInstance& inst, const Outcome& outcome,
                           Axiom axiom, const CheckOptions& opts = {}) {
    [[maybe_unused]] FloatTrapGuard float_guard;
    switch (axiom) {
    case Axiom::kExhaustive:   return check_exhaustive(inst, outcome, opts);
    case Axiom::kMaxCost:      return check_maximal_cost(inst, outcome, opts);
    case Axiom::kIpsc:         return check_ipsc(inst, outcome, opts);
    case Axiom::kCpsc:         return check_cpsc(inst, outcome, opts);
    case Axiom::kIpscApproval: return check_ipsc_approval(inst, outcome, opts);
    case Axiom::kCpscApproval: return check_cpsc_approval(inst, outcome, opts);
    case Axiom::kBpjrL:        return check_bpjr_l(inst, outcome, opts);
    case Axiom::kLocalBpjrL:   return check_local_bpjr_l(inst, outcome, opts);
    case Axiom::kPjr:          return check_pjr(inst, outcome, opts);
    case Axiom::kGenPsc:       return check_gen_psc(inst, outcome, opts);
    case Axiom::kCpscMw:       return check_cpsc_mw(inst, outcome, opts);
    }
    throw PreconditionError("check_axiom: unknown axiom");
}

/// Re-evaluates a violation witness against the raw definitional route,
/// independent of how the verifier found it. Satisfied verdicts pass
/// trivially.
inline bool recheck_witness(const PBInstance& inst, const Outcome& outcome,
                            const Verdict& verdict) {
    if (verdict.satisfied) return true;
    if (!verdict.witness) return false;
    const Witness& wit = *verdict.witness;
    CandidateSet w = outcome.selected();
    switch (verdict.axiom) {
    case Axiom::kExhaustive:
        return wit.candidate && raw::exhaustive_violation(inst, w, *wit.candidate);
    case Axiom::kMaxCost:
        return wit.comparison && raw::maxcost_violation(inst, w, *wit.comparison);
    case Axiom::kIpsc:
        return wit.candidate &&
               raw::ipsc_violation(inst, w, wit.voters, wit.coalition, *wit.candidate);
    case Axiom::kCpsc:
        return wit.comparison &&
               raw::cpsc_violation(inst, w, wit.voters, wit.coalition, *wit.comparison);
    case Axiom::kIpscApproval:
        if (wit.voters.empty())
            return wit.candidate && raw::exhaustive_violation(inst, w, *wit.candidate);
        return wit.candidate &&
               raw::ipsc_approval_violation(inst, w, wit.voters, *wit.candidate);
    case Axiom::kCpscApproval:
        if (wit.voters.empty())
            return wit.comparison && raw::maxcost_violation(inst, w, *wit.comparison);
        return wit.comparison &&
               raw::cpsc_approval_violation(inst, w, wit.voters, *wit.comparison);
    case Axiom::kBpjrL:
        return wit.comparison && wit.level &&
               raw::bpjr_violation(inst, w, *wit.level, wit.voters, *wit.comparison);
    case Axiom::kLocalBpjrL:
        return wit.comparison && wit.level &&
               raw::local_bpjr_violation(inst, w, *wit.level, wit.voters,
                                         *wit.comparison);
    case Axiom::kPjr:
        return wit.level && raw::pjr_violation(inst, w, *wit.level, wit.voters);
    case Axiom::kGenPsc:
        return wit.level &&
               raw::gen_psc_violation(inst, w, *wit.level, wit.voters, wit.coalition);
    case Axiom::kCpscMw:
        return wit.comparison &&
               raw::cpsc_mw_violation(inst, w, wit.voters, wit.coalition,
                                      *wit.comparison);
    }
    return false;
}

} // namespace pb
