#pragma once

#include "pb/core.hpp"
#include "pb/floatguard.hpp"
#include "pb/instance.hpp"
#include "pb/rational.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace pb {

enum class SelectionRule { kLexicographic, kMinCostThenLex, kMaxSupportThenLex };
enum class ReweightRule { kProportional, kLexicographicDepletion };

struct EarConfig {
    SelectionRule selection = SelectionRule::kLexicographic;
    ReweightRule reweight = ReweightRule::kProportional;
};

/// One selection made by PB-EAR: the rank level it happened at, the support
/// and threshold of every candidate still unselected, the eligible set, the
/// chosen candidate, its supporter set and the per-voter weight deductions.
struct EarStep {
    int level = 1;
    std::vector<std::pair<int, Rat>> support;    // unselected candidate -> support
    std::vector<std::pair<int, Rat>> threshold;  // unselected candidate -> n*w(c)/L
    CandidateSet eligible;
    int selected = -1;
    VoterSet supporters;
    std::vector<std::pair<int, Rat>> deductions; // supporter -> weight removed
};

struct EarTrace {
    std::vector<EarStep> steps;
    CandidateSet outcome;
    Rat total_cost;
    std::vector<Rat> final_weights;
};

/// Sum of the given residual weights over voters whose rank-j weak
/// preference set contains candidate c.
inline Rat support_of(const PBInstance& inst, const std::vector<Rat>& residual,
                      int j, int c) {
    Rat sum;
    for (int i = 0; i < inst.num_voters(); ++i)
        if (inst.prefs(i).top(j).contains(c)) sum += residual[i];
    return sum;
}

/// Expanding Approvals Rule for participatory budgeting. Voters start with
/// their instance weights; whenever a candidate's support at the current rank
/// level reaches n*w(c)/L it may be selected, and exactly that much weight is
/// removed from its supporters. The rank level only grows when no candidate
/// qualifies, and the rule runs until no unselected candidate fits the
/// residual budget.
inline EarTrace pb_ear(const PBInstance& inst, const EarConfig& config = {}) {
    [[maybe_unused]] FloatTrapGuard float_guard;
    const int n = inst.num_voters();
    const int m = inst.num_candidates();
    const Rat n_over_limit = Rat(n) / inst.limit();

    std::vector<Rat> residual;
    residual.reserve(n);
    for (int i = 0; i < n; ++i) residual.push_back(inst.weight(i));

    EarTrace trace;
    CandidateSet selected;
    Rat spent;
    int j = 1;

    auto some_candidate_fits = [&] {
        for (int c = 0; c < m; ++c)
            if (!selected.contains(c) && spent + inst.cost(c) <= inst.limit())
                return true;
        return false;
    };

    while (some_candidate_fits()) {
        EarStep step;
        step.level = j;
        for (int c = 0; c < m; ++c) {
            if (selected.contains(c)) continue;
            Rat support = support_of(inst, residual, j, c);
            Rat threshold = inst.cost(c) * n_over_limit;
            if (support >= threshold) step.eligible.add(c);
            step.support.emplace_back(c, std::move(support));
            step.threshold.emplace_back(c, std::move(threshold));
        }
        if (step.eligible.empty()) {
            ++j;
            if (j > m + 1)
                throw std::logic_error("pb_ear: rank level exceeded candidate count");
            continue;
        }

        int chosen = -1;
        switch (config.selection) {
        case SelectionRule::kLexicographic:
            chosen = step.eligible.members().front();
            break;
        case SelectionRule::kMinCostThenLex:
            for_each_member(step.eligible, [&](int c) {
                if (chosen < 0 || inst.cost(c) < inst.cost(chosen)) chosen = c;
            });
            break;
        case SelectionRule::kMaxSupportThenLex: {
            const Rat* best = nullptr;
            for (const auto& [c, support] : step.support) {
                if (!step.eligible.contains(c)) continue;
                if (best == nullptr || support > *best) {
                    best = &support;
                    chosen = c;
                }
            }
            break;
        }
        }
        step.selected = chosen;

        if (spent + inst.cost(chosen) > inst.limit())
            throw std::logic_error("pb_ear: eligible candidate exceeds residual budget");

        VoterSet backers;
        for (int i = 0; i < n; ++i)
            if (inst.prefs(i).top(j).contains(chosen)) backers.add(i);
        step.supporters = backers;

        const Rat price = inst.cost(chosen) * n_over_limit;
        Rat removed;
        switch (config.reweight) {
        case ReweightRule::kProportional: {
            Rat pool;
            for_each_member(backers, [&](int i) { pool += residual[i]; });
            for_each_member(backers, [&](int i) {
                Rat cut = residual[i] * price / pool;
                residual[i] -= cut;
                removed += cut;
                step.deductions.emplace_back(i, std::move(cut));
            });
            break;
        }
        case ReweightRule::kLexicographicDepletion: {
            Rat remaining = price;
            for_each_member(backers, [&](int i) {
                Rat cut = residual[i] < remaining ? residual[i] : remaining;
                residual[i] -= cut;
                remaining -= cut;
                removed += cut;
                step.deductions.emplace_back(i, std::move(cut));
            });
            break;
        }
        }
        if (removed != price)
            throw std::logic_error("pb_ear: deductions do not sum to the selection price");
        for (const Rat& w : residual)
            if (w < Rat(0))
                throw std::logic_error("pb_ear: negative residual weight");

        selected.add(chosen);
        spent += inst.cost(chosen);
        trace.steps.push_back(std::move(step));
    }

    trace.outcome = selected;
    trace.total_cost = spent;
    trace.final_weights = std::move(residual);
    return trace;
}

} // namespace pb
