#pragma once

#include "pb/floatguard.hpp"
#include "pb/instance.hpp"
#include "pb/rational.hpp"

#include <vector>

namespace pb {

struct KnapsackResult {
    Rat best_weight;       // maximum total cost not exceeding the capacity
    CandidateSet best_set; // lexicographically least set attaining it
};

namespace detail {

struct KnapsackSearch {
    const std::vector<Rat>& costs;
    const std::vector<int>& items;
    const Rat& capacity;
    bool use_bounds;          // branch-and-bound pruning for large item counts
    std::vector<Rat> suffix;  // suffix[i] = sum of costs of items[i..]
    Rat best_weight;
    CandidateSet best_set;

    KnapsackSearch(const std::vector<Rat>& costs_, const std::vector<int>& items_,
                   const Rat& capacity_, bool use_bounds_)
        : costs(costs_), items(items_), capacity(capacity_), use_bounds(use_bounds_) {
        suffix.assign(items.size() + 1, Rat(0));
        for (int i = static_cast<int>(items.size()) - 1; i >= 0; --i)
            suffix[i] = suffix[i + 1] + costs[items[i]];
    }

    // Include-first depth-first search in original index order. The first
    // optimum encountered is the lexicographically least one, so the best is
    // replaced only on strict improvement and pruning on "cannot strictly
    // beat" keeps that property.
    void run(std::size_t pos, const Rat& current, CandidateSet chosen) {
        if (use_bounds) {
            if (best_weight == capacity) return;
            if (current + suffix[pos] <= best_weight) return;
        }
        if (pos == items.size()) {
            if (current > best_weight) {
                best_weight = current;
                best_set = chosen;
            }
            return;
        }
        int item = items[pos];
        if (current + costs[item] <= capacity)
            run(pos + 1, current + costs[item], CandidateSet(chosen).add(item));
        run(pos + 1, current, chosen);
    }
};

} // namespace detail

/// Exact 0/1 max-knapsack: the heaviest subset of `items` whose total cost
/// stays within `capacity`, ties broken toward the lexicographically least
/// index set. Item costs must be strictly positive; a zero-cost item would
/// let a padded set tie with its own prefix, which the include-first order
/// resolves the wrong way. Plain subset enumeration up to 24 items, exact
/// branch-and-bound beyond that.
inline KnapsackResult max_knapsack(const std::vector<Rat>& costs,
                                   CandidateSet items, const Rat& capacity) {
    [[maybe_unused]] FloatTrapGuard float_guard;
    if (capacity < Rat(0))
        throw PreconditionError("max_knapsack: negative capacity");
    std::vector<int> members = items.members();
    for (int item : members)
        if (!(costs[item] > Rat(0)))
            throw PreconditionError("max_knapsack: item costs must be positive");
    detail::KnapsackSearch search(costs, members, capacity, members.size() > 24);
    search.run(0, Rat(0), CandidateSet());
    return {search.best_weight, search.best_set};
}

inline KnapsackResult max_knapsack(const PBInstance& inst, CandidateSet items,
                                   const Rat& capacity) {
    std::vector<Rat> costs;
    costs.reserve(inst.num_candidates());
    for (int c = 0; c < inst.num_candidates(); ++c) costs.push_back(inst.cost(c));
    return max_knapsack(costs, items, capacity);
}

} // namespace pb
