#pragma once

#include "pb/instance.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace pb {

enum class Axiom {
    kExhaustive,
    kMaxCost,
    kIpsc,
    kCpsc,
    kIpscApproval,
    kCpscApproval,
    kBpjrL,
    kLocalBpjrL,
    kPjr,
    kGenPsc,
    kCpscMw,
};

constexpr std::array<Axiom, 11> kAllAxioms = {
    Axiom::kExhaustive,  Axiom::kMaxCost,      Axiom::kIpsc,
    Axiom::kCpsc,        Axiom::kIpscApproval, Axiom::kCpscApproval,
    Axiom::kBpjrL,       Axiom::kLocalBpjrL,   Axiom::kPjr,
    Axiom::kGenPsc,      Axiom::kCpscMw,
};

inline std::string_view axiom_name(Axiom a) {
    switch (a) {
    case Axiom::kExhaustive:   return "exhaustive";
    case Axiom::kMaxCost:      return "maxcost";
    case Axiom::kIpsc:         return "ipsc";
    case Axiom::kCpsc:         return "cpsc";
    case Axiom::kIpscApproval: return "ipsc-approval";
    case Axiom::kCpscApproval: return "cpsc-approval";
    case Axiom::kBpjrL:        return "bpjr-l";
    case Axiom::kLocalBpjrL:   return "local-bpjr-l";
    case Axiom::kPjr:          return "pjr";
    case Axiom::kGenPsc:       return "gen-psc";
    case Axiom::kCpscMw:       return "cpsc-mw";
    }
    return "?";
}

inline std::optional<Axiom> axiom_from_name(std::string_view name) {
    for (Axiom a : kAllAxioms)
        if (axiom_name(a) == name) return a;
    return std::nullopt;
}

/// Throws PreconditionError when the axiom is not defined on this instance
/// (approval axioms need dichotomous voters, the committee axioms need unit
/// costs and weights with an integer limit, and BPJR-L additionally needs a
/// cheapest candidate of cost exactly 1).
inline void require_axiom_applicable(const PBInstance& inst, Axiom axiom) {
    auto require_dichotomous = [&] {
        if (!inst.is_dichotomous())
            throw PreconditionError(std::string(axiom_name(axiom)) +
                                    ": instance must be dichotomous");
    };
    auto require_multi_winner = [&] {
        if (!inst.is_multi_winner())
            throw PreconditionError(std::string(axiom_name(axiom)) +
                                    ": instance must have unit costs, unit weights and an integer limit");
    };
    switch (axiom) {
    case Axiom::kExhaustive:
    case Axiom::kMaxCost:
    case Axiom::kIpsc:
    case Axiom::kCpsc:
        return;
    case Axiom::kIpscApproval:
    case Axiom::kCpscApproval:
        require_dichotomous();
        return;
    case Axiom::kBpjrL:
    case Axiom::kLocalBpjrL: {
        require_dichotomous();
        if (inst.num_candidates() == 0)
            throw PreconditionError(std::string(axiom_name(axiom)) +
                                    ": instance has no candidates");
        Rat min_cost = inst.cost(0);
        for (int c = 1; c < inst.num_candidates(); ++c)
            if (inst.cost(c) < min_cost) min_cost = inst.cost(c);
        if (min_cost != Rat(1))
            throw PreconditionError(std::string(axiom_name(axiom)) +
                                    ": cheapest candidate must cost exactly 1");
        if (!inst.limit().is_integer())
            throw PreconditionError(std::string(axiom_name(axiom)) +
                                    ": limit must be a positive integer");
        return;
    }
    case Axiom::kPjr:
        require_multi_winner();
        require_dichotomous();
        return;
    case Axiom::kGenPsc:
    case Axiom::kCpscMw:
        require_multi_winner();
        return;
    }
}

/// Committee axioms additionally require a full committee of k = L winners.
inline void require_outcome_applicable(const PBInstance& inst, Axiom axiom,
                                       const Outcome& outcome) {
    if (axiom == Axiom::kPjr || axiom == Axiom::kGenPsc) {
        if (Rat(outcome.selected().size()) != inst.limit())
            throw PreconditionError(std::string(axiom_name(axiom)) +
                                    ": outcome must select exactly k = " +
                                    inst.limit().str() + " candidates");
    }
}

inline bool axiom_applicable(const PBInstance& inst, Axiom axiom) {
    try {
        require_axiom_applicable(inst, axiom);
        return true;
    } catch (const PreconditionError&) {
        return false;
    }
}

inline bool outcome_applicable(const PBInstance& inst, Axiom axiom,
                               const Outcome& outcome) {
    if (!axiom_applicable(inst, axiom)) return false;
    try {
        require_outcome_applicable(inst, axiom, outcome);
        return true;
    } catch (const PreconditionError&) {
        return false;
    }
}

} // namespace pb
