#pragma once

#include "pb/instance.hpp"
#include "pb/rational.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace pb {

/// Deterministic instance generator. Identical params produce the identical
/// instance on every platform: only the raw mt19937_64 stream is used, never
/// std::uniform_int_distribution, whose mapping is implementation-defined.
struct GenParams {
    std::uint64_t seed = 0;
    int n = 4;
    int m = 4;
    std::string cost_model = "unit";     // unit | small-int | rational
    std::string pref_model = "weak";     // strict | weak | approval
    std::string weight_model = "unit";   // unit | rational
    Rat approval_p = Rat(1, 2);
    std::optional<Rat> limit;            // default: max(1, ceil(m/2))
    std::optional<int> mw_k;             // committee mode: unit costs and
                                         // weights, limit = k
};

namespace detail {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform draw from [0, k) by rejection, unbiased for any k >= 1.
    std::uint64_t below(std::uint64_t k) {
        if (k == 0) throw PreconditionError("rng: empty range");
        std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        std::uint64_t rem = (max % k + 1) % k;
        std::uint64_t cutoff = max - rem;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x > cutoff);
        return x % k;
    }

    int below_int(int k) { return static_cast<int>(below(static_cast<std::uint64_t>(k))); }

    /// True with probability p in [0, 1].
    bool chance(const Rat& p) {
        if (p < Rat(0) || p > Rat(1))
            throw PreconditionError("rng: probability out of [0, 1]");
        std::uint64_t den = p.denominator().convert_to<std::uint64_t>();
        std::uint64_t num = p.numerator().convert_to<std::uint64_t>();
        return below(den) < num;
    }

private:
    std::mt19937_64 eng_;
};

inline std::vector<int> shuffled_indices(Rng& rng, int m) {
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    for (int i = m - 1; i > 0; --i)
        std::swap(order[i], order[rng.below_int(i + 1)]);
    return order;
}

} // namespace detail

/// Draw order is fixed: costs, then weights, then one voter's ballot at a
/// time. Models that draw nothing (unit costs, unit weights, committee mode)
/// consume no randomness, so goldens stay stable across model combinations.
inline PBInstance generate_instance(const GenParams& params) {
    if (params.n < 1 || params.m < 1)
        throw PreconditionError("generator: need at least one voter and one candidate");
    if (params.mw_k && (*params.mw_k < 1 || *params.mw_k > params.m))
        throw PreconditionError("generator: committee size must be in [1, m]");
    if (params.cost_model != "unit" && params.cost_model != "small-int" &&
        params.cost_model != "rational")
        throw PreconditionError("generator: unknown cost model '" +
                                params.cost_model + "'");
    if (params.weight_model != "unit" && params.weight_model != "rational")
        throw PreconditionError("generator: unknown weight model '" +
                                params.weight_model + "'");
    if (params.pref_model != "strict" && params.pref_model != "weak" &&
        params.pref_model != "approval")
        throw PreconditionError("generator: unknown preference model '" +
                                params.pref_model + "'");
    detail::Rng rng(params.seed);
    const int n = params.n;
    const int m = params.m;

    std::vector<std::string> candidate_ids;
    for (int c = 0; c < m; ++c) candidate_ids.push_back("c" + std::to_string(c));
    std::vector<std::string> voter_ids;
    for (int i = 0; i < n; ++i) voter_ids.push_back("v" + std::to_string(i));

    std::vector<Rat> costs(m, Rat(1));
    if (!params.mw_k) {
        if (params.cost_model == "small-int") {
            for (int c = 0; c < m; ++c) costs[c] = Rat(1 + rng.below_int(3));
            costs[rng.below_int(m)] = Rat(1);
        } else if (params.cost_model == "rational") {
            for (int c = 0; c < m; ++c)
                costs[c] = Rat(1 + rng.below_int(4), 1 + rng.below_int(3));
        }
    }

    std::vector<Rat> weights(n, Rat(1));
    if (!params.mw_k && params.weight_model == "rational") {
        Rat total;
        for (int i = 0; i < n; ++i) {
            weights[i] = Rat(1 + rng.below_int(5));
            total += weights[i];
        }
        for (int i = 0; i < n; ++i) weights[i] = weights[i] * Rat(n) / total;
    }

    std::vector<WeakOrder> prefs;
    for (int i = 0; i < n; ++i) {
        std::vector<CandidateSet> classes;
        if (params.pref_model == "approval") {
            CandidateSet approved;
            for (int c = 0; c < m; ++c)
                if (rng.chance(params.approval_p)) approved.add(c);
            if (approved.empty()) approved.add(rng.below_int(m));
            classes.push_back(approved);
        } else {
            std::vector<int> order = detail::shuffled_indices(rng, m);
            CandidateSet current;
            for (int pos = 0; pos < m; ++pos) {
                current.add(order[pos]);
                bool cut = pos + 1 == m || params.pref_model == "strict" ||
                           rng.below_int(2) == 0;
                if (cut) {
                    classes.push_back(current);
                    current = CandidateSet();
                }
            }
            if (params.pref_model == "weak") {
                int keep = 1 + rng.below_int(static_cast<int>(classes.size()));
                classes.resize(keep);
            }
        }
        prefs.emplace_back(std::move(classes), m);
    }

    Rat limit;
    if (params.mw_k) limit = Rat(*params.mw_k);
    else if (params.limit) limit = *params.limit;
    else limit = Rat((m + 1) / 2 > 1 ? (m + 1) / 2 : 1);

    return PBInstance(std::move(candidate_ids), std::move(costs),
                      std::move(voter_ids), std::move(weights),
                      std::move(prefs), std::move(limit));
}

} // namespace pb
