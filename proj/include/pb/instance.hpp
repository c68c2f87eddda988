#pragma once

#include "pb/rational.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace pb {

class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string& msg)
        : std::invalid_argument(msg) {}
};

class SizeGuardError : public std::runtime_error {
public:
    explicit SizeGuardError(const std::string& msg)
        : std::runtime_error(msg) {}
};

// ---------------------------------------------------------------------------
// Index sets
//
// Voters and candidates are dense indices in input order; sets are 64-bit
// masks, so instances are capped at 64 of each. Iteration is always in
// ascending index order, which equals input order.
// ---------------------------------------------------------------------------

constexpr int kMaxSetSize = 64;

template <typename Tag>
class IndexSet {
public:
    constexpr IndexSet() : bits_(0) {}
    constexpr explicit IndexSet(std::uint64_t bits) : bits_(bits) {}

    static constexpr IndexSet universe(int count) {
        return IndexSet(count >= 64 ? ~std::uint64_t{0}
                                    : (std::uint64_t{1} << count) - 1);
    }
    static constexpr IndexSet single(int i) {
        return IndexSet(std::uint64_t{1} << i);
    }
    static constexpr IndexSet of(std::initializer_list<int> indices) {
        IndexSet s;
        for (int i : indices) s.add(i);
        return s;
    }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool contains(int i) const { return (bits_ >> i) & 1; }
    constexpr bool subset_of(IndexSet o) const { return (bits_ & ~o.bits_) == 0; }

    constexpr IndexSet& add(int i) { bits_ |= std::uint64_t{1} << i; return *this; }
    constexpr IndexSet& remove(int i) { bits_ &= ~(std::uint64_t{1} << i); return *this; }

    friend constexpr IndexSet operator|(IndexSet a, IndexSet b) { return IndexSet(a.bits_ | b.bits_); }
    friend constexpr IndexSet operator&(IndexSet a, IndexSet b) { return IndexSet(a.bits_ & b.bits_); }
    friend constexpr IndexSet operator-(IndexSet a, IndexSet b) { return IndexSet(a.bits_ & ~b.bits_); }
    friend constexpr bool operator==(IndexSet a, IndexSet b) { return a.bits_ == b.bits_; }
    friend constexpr bool operator!=(IndexSet a, IndexSet b) { return a.bits_ != b.bits_; }

    std::vector<int> members() const {
        std::vector<int> out;
        for (std::uint64_t b = bits_; b; b &= b - 1)
            out.push_back(std::countr_zero(b));
        return out;
    }

private:
    std::uint64_t bits_;
};

struct VoterTag {};
struct CandidateTag {};
using VoterSet = IndexSet<VoterTag>;
using CandidateSet = IndexSet<CandidateTag>;

/// Calls fn(i) for each member in ascending index order.
template <typename Tag, typename Fn>
void for_each_member(IndexSet<Tag> set, Fn&& fn) {
    for (std::uint64_t b = set.bits(); b; b &= b - 1)
        fn(std::countr_zero(b));
}

/// Calls fn(subset) for every subset of `set`, the empty set and `set`
/// included, in ascending mask order.
template <typename Tag, typename Fn>
void for_each_subset(IndexSet<Tag> set, Fn&& fn) {
    std::uint64_t m = set.bits();
    std::uint64_t sub = 0;
    while (true) {
        fn(IndexSet<Tag>(sub));
        if (sub == m) break;
        sub = (sub - m) & m; // next subset in ascending order
    }
}

/// Subsets of `set` with exactly k members, in lexicographic order of their
/// ascending index sequences.
template <typename Tag>
std::vector<IndexSet<Tag>> subsets_of_size(IndexSet<Tag> set, int k) {
    std::vector<int> pool = set.members();
    std::vector<IndexSet<Tag>> out;
    int n = static_cast<int>(pool.size());
    if (k < 0 || k > n) return out;
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    while (true) {
        IndexSet<Tag> s;
        for (int i : pick) s.add(pool[i]);
        out.push_back(s);
        int i = k - 1;
        while (i >= 0 && pick[i] == n - k + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

/// Ascending-sequence lexicographic order on sets: {0,3} < {1,2}.
template <typename Tag>
bool lex_less(IndexSet<Tag> a, IndexSet<Tag> b) {
    std::uint64_t x = a.bits(), y = b.bits();
    while (x && y) {
        int i = std::countr_zero(x), j = std::countr_zero(y);
        if (i != j) return i < j;
        x &= x - 1;
        y &= y - 1;
    }
    return x == 0 && y != 0;
}

// ---------------------------------------------------------------------------
// Weak orders
// ---------------------------------------------------------------------------

/// A voter's weak order: equivalence classes from most to least preferred,
/// disjoint and jointly covering all candidates. Candidates a submission
/// leaves unranked form the implicit final class.
class WeakOrder {
public:
    WeakOrder() = default;

    /// `classes` need not cover all of the m candidates; leftovers become a
    /// final class. Throws PreconditionError on empty or overlapping classes.
    WeakOrder(std::vector<CandidateSet> classes, int m) {
        CandidateSet seen;
        for (CandidateSet cls : classes) {
            if (cls.empty())
                throw PreconditionError("weak order: empty preference class");
            if (!(cls & seen).empty())
                throw PreconditionError("weak order: candidate ranked twice");
            if (!cls.subset_of(CandidateSet::universe(m)))
                throw PreconditionError("weak order: candidate index out of range");
            seen = seen | cls;
        }
        CandidateSet rest = CandidateSet::universe(m) - seen;
        if (!rest.empty()) classes.push_back(rest);
        classes_ = std::move(classes);
        prefix_masks_.reserve(classes_.size());
        prefix_counts_.reserve(classes_.size());
        CandidateSet acc;
        int count = 0;
        for (CandidateSet cls : classes_) {
            acc = acc | cls;
            count += cls.size();
            prefix_masks_.push_back(acc);
            prefix_counts_.push_back(count);
        }
    }

    WeakOrder(const std::vector<std::vector<int>>& classes, int m)
        : WeakOrder(to_sets(classes), m) {}

    const std::vector<CandidateSet>& classes() const { return classes_; }
    int num_classes() const { return static_cast<int>(classes_.size()); }

    /// Union of the smallest prefix of classes holding at least j candidates;
    /// all candidates when j exceeds their number.
    CandidateSet top(int j) const {
        if (j < 1) throw PreconditionError("weak order: rank level must be >= 1");
        if (classes_.empty()) return CandidateSet();
        auto it = std::lower_bound(prefix_counts_.begin(), prefix_counts_.end(), j);
        if (it == prefix_counts_.end()) return prefix_masks_.back();
        return prefix_masks_[it - prefix_counts_.begin()];
    }

    /// 0-based index of the class containing candidate c.
    int rank_of(int c) const {
        for (std::size_t i = 0; i < classes_.size(); ++i)
            if (classes_[i].contains(c)) return static_cast<int>(i);
        throw PreconditionError("weak order: unknown candidate");
    }

    /// True iff c is weakly preferred to d.
    bool weakly_prefers(int c, int d) const { return rank_of(c) <= rank_of(d); }

private:
    static std::vector<CandidateSet> to_sets(const std::vector<std::vector<int>>& classes) {
        std::vector<CandidateSet> out;
        out.reserve(classes.size());
        for (const std::vector<int>& cls : classes) {
            CandidateSet s;
            for (int c : cls) {
                if (c < 0 || c >= kMaxSetSize)
                    throw PreconditionError("weak order: candidate index out of range");
                if (s.contains(c))
                    throw PreconditionError("weak order: candidate ranked twice");
                s.add(c);
            }
            out.push_back(s);
        }
        return out;
    }

    std::vector<CandidateSet> classes_;
    std::vector<CandidateSet> prefix_masks_;
    std::vector<int> prefix_counts_;
};

// ---------------------------------------------------------------------------
// Instances and outcomes
// ---------------------------------------------------------------------------

/// A participatory-budgeting instance. Voter weights sum exactly to the
/// number of voters; every cost and the limit are positive.
class PBInstance {
public:
    PBInstance(std::vector<std::string> candidate_ids, std::vector<Rat> costs,
               std::vector<std::string> voter_ids, std::vector<Rat> weights,
               std::vector<WeakOrder> prefs, Rat limit)
        : candidate_ids_(std::move(candidate_ids)), costs_(std::move(costs)),
          voter_ids_(std::move(voter_ids)), weights_(std::move(weights)),
          prefs_(std::move(prefs)), limit_(std::move(limit)) {
        validate();
    }

    int num_candidates() const { return static_cast<int>(costs_.size()); }
    int num_voters() const { return static_cast<int>(weights_.size()); }
    const Rat& limit() const { return limit_; }

    const std::string& candidate_id(int c) const { return candidate_ids_[c]; }
    const std::string& voter_id(int i) const { return voter_ids_[i]; }
    const Rat& cost(int c) const { return costs_[c]; }
    const Rat& weight(int i) const { return weights_[i]; }
    const WeakOrder& prefs(int i) const { return prefs_[i]; }

    CandidateSet all_candidates() const {
        return CandidateSet::universe(num_candidates());
    }
    VoterSet all_voters() const { return VoterSet::universe(num_voters()); }

    /// -1 when the id is unknown.
    int candidate_index(const std::string& id) const {
        auto it = candidate_index_.find(id);
        return it == candidate_index_.end() ? -1 : it->second;
    }
    int voter_index(const std::string& id) const {
        auto it = voter_index_.find(id);
        return it == voter_index_.end() ? -1 : it->second;
    }

    Rat total_cost(CandidateSet s) const {
        Rat sum;
        for_each_member(s, [&](int c) { sum += costs_[c]; });
        return sum;
    }
    Rat total_weight(VoterSet s) const {
        Rat sum;
        for_each_member(s, [&](int i) { sum += weights_[i]; });
        return sum;
    }

    /// True iff every cost is 1, every weight is 1 and the limit is a
    /// positive integer: the embedded multi-winner committee setting.
    bool is_multi_winner() const {
        Rat one(1);
        for (const Rat& c : costs_)
            if (c != one) return false;
        for (const Rat& w : weights_)
            if (w != one) return false;
        return limit_.is_integer();
    }

    /// True iff every voter has at most two preference classes.
    bool is_dichotomous() const {
        for (const WeakOrder& p : prefs_)
            if (p.num_classes() > 2) return false;
        return true;
    }

    /// A dichotomous voter's approval set: the top class. A voter who is
    /// indifferent between all candidates approves all of them.
    CandidateSet approvals(int i) const {
        if (prefs_[i].classes().empty()) return CandidateSet();
        return prefs_[i].classes().front();
    }

private:
    void validate() {
        if (voter_ids_.size() != weights_.size() ||
            voter_ids_.size() != prefs_.size())
            throw PreconditionError("instance: voter field lengths differ");
        if (candidate_ids_.size() != costs_.size())
            throw PreconditionError("instance: candidate field lengths differ");
        if (weights_.empty())
            throw PreconditionError("instance: at least one voter required");
        if (costs_.size() > kMaxSetSize || weights_.size() > kMaxSetSize)
            throw PreconditionError("instance: at most 64 candidates and 64 voters supported");
        if (!(limit_ > Rat(0)))
            throw PreconditionError("instance: limit must be positive");
        for (const Rat& c : costs_)
            if (!(c > Rat(0)))
                throw PreconditionError("instance: candidate costs must be positive");
        Rat sum;
        for (const Rat& w : weights_) {
            if (w < Rat(0))
                throw PreconditionError("instance: voter weights must be nonnegative");
            sum += w;
        }
        if (sum != Rat(num_voters()))
            throw PreconditionError(
                "instance: voter weights sum to " + sum.str() + ", expected " +
                Rat(num_voters()).str() + "; rescale or pass normalize");
        for (std::size_t i = 0; i < candidate_ids_.size(); ++i) {
            if (candidate_ids_[i].empty())
                throw PreconditionError("instance: empty candidate id");
            if (!candidate_index_.emplace(candidate_ids_[i], static_cast<int>(i)).second)
                throw PreconditionError("instance: duplicate candidate id '" +
                                        candidate_ids_[i] + "'");
        }
        for (std::size_t i = 0; i < voter_ids_.size(); ++i) {
            if (voter_ids_[i].empty())
                throw PreconditionError("instance: empty voter id");
            if (!voter_index_.emplace(voter_ids_[i], static_cast<int>(i)).second)
                throw PreconditionError("instance: duplicate voter id '" +
                                        voter_ids_[i] + "'");
        }
        for (const WeakOrder& p : prefs_) {
            int covered = 0;
            for (CandidateSet cls : p.classes()) covered += cls.size();
            if (covered != num_candidates())
                throw PreconditionError("instance: preference classes must cover all candidates");
        }
    }

    std::vector<std::string> candidate_ids_;
    std::vector<Rat> costs_;
    std::vector<std::string> voter_ids_;
    std::vector<Rat> weights_;
    std::vector<WeakOrder> prefs_;
    Rat limit_;
    std::map<std::string, int> candidate_index_;
    std::map<std::string, int> voter_index_;
};

/// A feasible selection of candidates; construction rejects over-budget sets.
class Outcome {
public:
    Outcome(const PBInstance& inst, CandidateSet selected) : selected_(selected) {
        if (!selected.subset_of(inst.all_candidates()))
            throw PreconditionError("outcome: unknown candidate index");
        total_cost_ = inst.total_cost(selected);
        if (total_cost_ > inst.limit())
            throw PreconditionError("outcome: total cost " + total_cost_.str() +
                                    " exceeds limit " + inst.limit().str());
    }

    CandidateSet selected() const { return selected_; }
    const Rat& total_cost() const { return total_cost_; }

private:
    CandidateSet selected_;
    Rat total_cost_;
};

} // namespace pb
