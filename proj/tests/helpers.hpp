#pragma once

#include "pb/instance.hpp"
#include "pb/io.hpp"
#include "pb/rational.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace testutil {

inline std::filesystem::path fixtures_dir() {
    const char* env = std::getenv("PB_FIXTURES_DIR");
    return env ? std::filesystem::path(env) : std::filesystem::path("fixtures");
}

inline std::filesystem::path golden_dir() {
    const char* env = std::getenv("PB_GOLDEN_DIR");
    return env ? std::filesystem::path(env) : std::filesystem::path("tests/golden");
}

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline pb::PBInstance load_fixture(const std::string& name) {
    return pb::io::parse_instance(slurp(fixtures_dir() / name));
}

inline pb::CandidateSet cands(const pb::PBInstance& inst,
                              std::initializer_list<const char*> ids) {
    pb::CandidateSet set;
    for (const char* id : ids) {
        int c = inst.candidate_index(id);
        if (c < 0) throw std::runtime_error(std::string("unknown candidate id ") + id);
        set.add(c);
    }
    return set;
}

inline pb::VoterSet voters(const pb::PBInstance& inst,
                           std::initializer_list<const char*> ids) {
    pb::VoterSet set;
    for (const char* id : ids) {
        int i = inst.voter_index(id);
        if (i < 0) throw std::runtime_error(std::string("unknown voter id ") + id);
        set.add(i);
    }
    return set;
}

inline pb::Outcome outcome_of(const pb::PBInstance& inst,
                              std::initializer_list<const char*> ids) {
    return pb::Outcome(inst, cands(inst, ids));
}

/// Instance with ids c0..c{m-1} / v0..v{n-1}; preference classes by candidate
/// index; unit weights unless given.
inline pb::PBInstance make_instance(std::vector<pb::Rat> costs,
                                    std::vector<std::vector<std::vector<int>>> prefs,
                                    pb::Rat limit,
                                    std::vector<pb::Rat> weights = {}) {
    const int m = static_cast<int>(costs.size());
    const int n = static_cast<int>(prefs.size());
    std::vector<std::string> candidate_ids, voter_ids;
    for (int c = 0; c < m; ++c) candidate_ids.push_back("c" + std::to_string(c));
    for (int i = 0; i < n; ++i) voter_ids.push_back("v" + std::to_string(i));
    if (weights.empty()) weights.assign(n, pb::Rat(1));
    std::vector<pb::WeakOrder> orders;
    orders.reserve(prefs.size());
    for (const std::vector<std::vector<int>>& p : prefs) orders.emplace_back(p, m);
    return pb::PBInstance(std::move(candidate_ids), std::move(costs),
                          std::move(voter_ids), std::move(weights),
                          std::move(orders), std::move(limit));
}

} // namespace testutil
