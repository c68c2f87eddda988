#pragma once

#include "pb/axioms.hpp"
#include "pb/ear.hpp"
#include "pb/instance.hpp"
#include "pb/rational.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace pb::io {

using json = nlohmann::ordered_json;

/// Parses JSON after rejecting every unquoted number token that contains a
/// fraction dot or an exponent. Exact values travel as strings ("1/2",
/// "0.9"); a bare 0.9 would silently round on any decimal that has no binary
/// representation, so it is an error everywhere in this format.
inline json parse_json_strict(std::string_view text) {
    bool in_string = false, escaped = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (in_string) {
            if (escaped) escaped = false;
            else if (ch == '\\') escaped = true;
            else if (ch == '"') in_string = false;
            continue;
        }
        if (ch == '"') {
            in_string = true;
            continue;
        }
        if (ch == '-' || (ch >= '0' && ch <= '9')) {
            std::size_t start = i;
            bool fractional = false;
            while (i < text.size()) {
                char c = text[i];
                if (c == '.' || c == 'e' || c == 'E') fractional = true;
                else if (!(c == '-' || c == '+' || (c >= '0' && c <= '9'))) break;
                ++i;
            }
            if (fractional)
                throw ParseError("float literal '" +
                                 std::string(text.substr(start, i - start)) +
                                 "' at offset " + std::to_string(start) +
                                 ": write exact values as strings, e.g. \"1/2\"");
            --i;
        }
    }
    try {
        return json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

namespace detail {

inline Rat parse_rat(const json& value, const std::string& what) {
    try {
        if (value.is_string()) return Rat::parse(value.get<std::string>());
        if (value.is_number_unsigned())
            return Rat(Rat::Int(value.get<std::uint64_t>()));
        if (value.is_number_integer()) return Rat(value.get<long long>());
    } catch (const ParseError& e) {
        throw ParseError(what + ": " + e.what());
    }
    throw ParseError(what + ": expected a rational string or integer, got " +
                     std::string(value.type_name()));
}

inline void require_object(const json& value,
                           std::initializer_list<const char*> keys,
                           const std::string& what) {
    if (!value.is_object())
        throw ParseError(what + ": expected an object, got " +
                         std::string(value.type_name()));
    for (const char* key : keys)
        if (!value.contains(key))
            throw ParseError(what + ": missing key '" + key + "'");
    for (const auto& item : value.items()) {
        bool known = false;
        for (const char* key : keys)
            if (item.key() == key) known = true;
        if (!known)
            throw ParseError(what + ": unknown key '" + item.key() + "'");
    }
}

inline const json& require_array(const json& value, const std::string& what) {
    if (!value.is_array())
        throw ParseError(what + ": expected an array, got " +
                         std::string(value.type_name()));
    return value;
}

inline std::string require_string(const json& value, const std::string& what) {
    if (!value.is_string())
        throw ParseError(what + ": expected a string, got " +
                         std::string(value.type_name()));
    return value.get<std::string>();
}

inline json id_array(const PBInstance& inst, CandidateSet set) {
    json out = json::array();
    for (int c : set.members()) out.push_back(inst.candidate_id(c));
    return out;
}

inline json id_array(const PBInstance& inst, VoterSet set) {
    json out = json::array();
    for (int i : set.members()) out.push_back(inst.voter_id(i));
    return out;
}

} // namespace detail

/// Instance document:
///   {"limit": "4", "candidates": [{"id": "a", "cost": "1"}, ...],
///    "voters": [{"id": "1", "weight": "1",
///                "prefs": [["a", "b"], ["c"]]}, ...]}
/// prefs lists preference classes from best to worst by candidate id;
/// unranked candidates form an implicit final class. With normalize set,
/// weights are rescaled to sum to the number of voters.
inline PBInstance parse_instance(std::string_view text, bool normalize = false) {
    json doc = parse_json_strict(text);
    detail::require_object(doc, {"limit", "candidates", "voters"}, "instance");

    std::vector<std::string> candidate_ids;
    std::vector<Rat> costs;
    std::map<std::string, int, std::less<>> index_of;
    for (const json& item :
         detail::require_array(doc["candidates"], "instance.candidates")) {
        std::string what = "candidate " + std::to_string(candidate_ids.size());
        detail::require_object(item, {"id", "cost"}, what);
        std::string id = detail::require_string(item["id"], what + ".id");
        if (!index_of.emplace(id, static_cast<int>(candidate_ids.size())).second)
            throw ParseError(what + ": duplicate candidate id '" + id + "'");
        candidate_ids.push_back(std::move(id));
        costs.push_back(detail::parse_rat(item["cost"], what + ".cost"));
    }

    const int m = static_cast<int>(candidate_ids.size());
    std::vector<std::string> voter_ids;
    std::vector<Rat> weights;
    std::vector<WeakOrder> prefs;
    for (const json& item : detail::require_array(doc["voters"], "instance.voters")) {
        std::string what = "voter " + std::to_string(voter_ids.size());
        detail::require_object(item, {"id", "weight", "prefs"}, what);
        voter_ids.push_back(detail::require_string(item["id"], what + ".id"));
        weights.push_back(detail::parse_rat(item["weight"], what + ".weight"));
        std::vector<CandidateSet> classes;
        for (const json& cls :
             detail::require_array(item["prefs"], what + ".prefs")) {
            CandidateSet set;
            for (const json& ref :
                 detail::require_array(cls, what + ".prefs class")) {
                std::string id = detail::require_string(ref, what + ".prefs entry");
                auto it = index_of.find(id);
                if (it == index_of.end())
                    throw ParseError(what + ": unknown candidate id '" + id + "'");
                if (set.contains(it->second))
                    throw ParseError(what + ": candidate '" + id +
                                     "' listed twice in one class");
                set.add(it->second);
            }
            classes.push_back(set);
        }
        try {
            prefs.emplace_back(std::move(classes), m);
        } catch (const PreconditionError& e) {
            throw ParseError(what + ": " + e.what());
        }
    }

    if (normalize) {
        Rat total;
        for (const Rat& w : weights) total += w;
        Rat n(static_cast<long long>(weights.size()));
        if (total != n) {
            if (!(total > Rat(0)))
                throw ParseError("normalize: total voter weight must be positive");
            for (Rat& w : weights) w = w * n / total;
        }
    }

    Rat limit = detail::parse_rat(doc["limit"], "instance.limit");
    try {
        return PBInstance(std::move(candidate_ids), std::move(costs),
                          std::move(voter_ids), std::move(weights),
                          std::move(prefs), std::move(limit));
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    }
}

/// Canonical form: every rational as "p/q", every preference class explicit.
/// parse_instance(serialize_instance(x)) reproduces x.
inline json instance_json(const PBInstance& inst) {
    json doc;
    doc["limit"] = inst.limit().str();
    json candidates = json::array();
    for (int c = 0; c < inst.num_candidates(); ++c) {
        json item;
        item["id"] = inst.candidate_id(c);
        item["cost"] = inst.cost(c).str();
        candidates.push_back(std::move(item));
    }
    doc["candidates"] = std::move(candidates);
    json voters = json::array();
    for (int i = 0; i < inst.num_voters(); ++i) {
        json item;
        item["id"] = inst.voter_id(i);
        item["weight"] = inst.weight(i).str();
        json classes = json::array();
        for (CandidateSet cls : inst.prefs(i).classes())
            classes.push_back(detail::id_array(inst, cls));
        item["prefs"] = std::move(classes);
        voters.push_back(std::move(item));
    }
    doc["voters"] = std::move(voters);
    return doc;
}

inline std::string serialize_instance(const PBInstance& inst) {
    return instance_json(inst).dump(2) + "\n";
}

/// Outcome document: {"selected": ["a", "c"], "total_cost": "2/1"} or the
/// bare id array. A stated total_cost must match the recomputed one.
inline Outcome parse_outcome(const PBInstance& inst, std::string_view text) {
    json doc = parse_json_strict(text);
    const json* ids = nullptr;
    if (doc.is_array()) {
        ids = &doc;
    } else {
        detail::require_object(doc, {"selected", "total_cost"}, "outcome");
        ids = &doc["selected"];
    }
    CandidateSet selected;
    for (const json& ref : detail::require_array(*ids, "outcome.selected")) {
        std::string id = detail::require_string(ref, "outcome.selected entry");
        int c = inst.candidate_index(id);
        if (c < 0) throw ParseError("outcome: unknown candidate id '" + id + "'");
        if (selected.contains(c))
            throw ParseError("outcome: candidate '" + id + "' listed twice");
        selected.add(c);
    }
    Outcome outcome = [&] {
        try {
            return Outcome(inst, selected);
        } catch (const PreconditionError& e) {
            throw ParseError(e.what());
        }
    }();
    if (doc.is_object()) {
        Rat stated = detail::parse_rat(doc["total_cost"], "outcome.total_cost");
        if (stated != outcome.total_cost())
            throw ParseError("outcome: stated total_cost " + stated.str() +
                             " differs from recomputed " +
                             outcome.total_cost().str());
    }
    return outcome;
}

inline json outcome_json(const PBInstance& inst, const Outcome& outcome) {
    json doc;
    doc["selected"] = detail::id_array(inst, outcome.selected());
    doc["total_cost"] = outcome.total_cost().str();
    return doc;
}

inline std::string serialize_outcome(const PBInstance& inst, const Outcome& outcome) {
    return outcome_json(inst, outcome).dump(2) + "\n";
}

inline json witness_json(const PBInstance& inst, const Witness& wit) {
    json doc;
    doc["voters"] = detail::id_array(inst, wit.voters);
    doc["coalition"] = detail::id_array(inst, wit.coalition);
    if (wit.comparison) doc["comparison"] = detail::id_array(inst, *wit.comparison);
    if (wit.candidate) doc["candidate"] = inst.candidate_id(*wit.candidate);
    if (wit.level) doc["level"] = *wit.level;
    doc["spend"] = wit.spend.str();
    doc["claim"] = wit.claim.str();
    doc["entitlement"] = wit.entitlement.str();
    return doc;
}

inline json verdict_json(const PBInstance& inst, const Verdict& verdict) {
    json doc;
    doc["axiom"] = std::string(axiom_name(verdict.axiom));
    doc["satisfied"] = verdict.satisfied;
    if (verdict.witness) doc["witness"] = witness_json(inst, *verdict.witness);
    return doc;
}

inline const char* selection_name(SelectionRule rule) {
    switch (rule) {
    case SelectionRule::kLexicographic:    return "lex";
    case SelectionRule::kMinCostThenLex:   return "min-cost";
    case SelectionRule::kMaxSupportThenLex: return "max-support";
    }
    throw PreconditionError("unknown selection rule");
}

inline SelectionRule selection_from_name(std::string_view name) {
    if (name == "lex") return SelectionRule::kLexicographic;
    if (name == "min-cost") return SelectionRule::kMinCostThenLex;
    if (name == "max-support") return SelectionRule::kMaxSupportThenLex;
    throw ParseError("unknown selection rule '" + std::string(name) +
                     "' (choose lex, min-cost, max-support)");
}

inline const char* reweight_name(ReweightRule rule) {
    switch (rule) {
    case ReweightRule::kProportional:          return "proportional";
    case ReweightRule::kLexicographicDepletion: return "lex-depletion";
    }
    throw PreconditionError("unknown reweight rule");
}

inline ReweightRule reweight_from_name(std::string_view name) {
    if (name == "proportional") return ReweightRule::kProportional;
    if (name == "lex-depletion") return ReweightRule::kLexicographicDepletion;
    throw ParseError("unknown reweight rule '" + std::string(name) +
                     "' (choose proportional, lex-depletion)");
}

inline json trace_json(const PBInstance& inst, const EarTrace& trace,
                       const EarConfig& config) {
    json doc;
    doc["selection"] = selection_name(config.selection);
    doc["reweight"] = reweight_name(config.reweight);
    json steps = json::array();
    for (const EarStep& step : trace.steps) {
        json s;
        s["level"] = step.level;
        json support = json::object();
        for (const auto& [c, v] : step.support)
            support[inst.candidate_id(c)] = v.str();
        s["support"] = std::move(support);
        json threshold = json::object();
        for (const auto& [c, v] : step.threshold)
            threshold[inst.candidate_id(c)] = v.str();
        s["threshold"] = std::move(threshold);
        s["eligible"] = detail::id_array(inst, step.eligible);
        s["selected"] = inst.candidate_id(step.selected);
        s["supporters"] = detail::id_array(inst, step.supporters);
        json deductions = json::object();
        for (const auto& [i, v] : step.deductions)
            deductions[inst.voter_id(i)] = v.str();
        s["deductions"] = std::move(deductions);
        steps.push_back(std::move(s));
    }
    doc["steps"] = std::move(steps);
    doc["outcome"] = detail::id_array(inst, trace.outcome);
    doc["total_cost"] = trace.total_cost.str();
    json final_weights = json::object();
    for (int i = 0; i < inst.num_voters(); ++i)
        final_weights[inst.voter_id(i)] = trace.final_weights[i].str();
    doc["final_weights"] = std::move(final_weights);
    return doc;
}

inline std::string serialize_trace(const PBInstance& inst, const EarTrace& trace,
                                   const EarConfig& config) {
    return trace_json(inst, trace, config).dump(2) + "\n";
}

} // namespace pb::io
