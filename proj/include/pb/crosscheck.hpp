#pragma once

#include "pb/axioms.hpp"
#include "pb/ear.hpp"
#include "pb/gen.hpp"
#include "pb/io.hpp"
#include "pb/oracles.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace pb {

/// Injectable decision procedures so the harness itself is testable: a
/// deliberately broken checker must make the suites fail.
struct Checkers {
    std::function<Verdict(const PBInstance&, const Outcome&, Axiom,
                          const CheckOptions&)>
        check;
    std::function<bool(const PBInstance&, const Outcome&, Axiom)> raw_satisfies;

    static Checkers standard() {
        Checkers ck;
        ck.check = [](const PBInstance& inst, const Outcome& outcome, Axiom axiom,
                      const CheckOptions& opts) {
            return check_axiom(inst, outcome, axiom, opts);
        };
        ck.raw_satisfies = [](const PBInstance& inst, const Outcome& outcome,
                              Axiom axiom) {
            return raw::satisfies(inst, outcome, axiom);
        };
        return ck;
    }
};

struct SuiteResult {
    std::string name;
    long long checks = 0;
    long long failures = 0;
    std::vector<std::string> messages;

    template <typename Fn>
    void expect(bool ok, Fn&& describe) {
        ++checks;
        if (ok) return;
        ++failures;
        if (messages.size() < 10) messages.push_back(describe());
    }

    void fail(const std::string& msg) {
        expect(false, [&] { return msg; });
    }
};

struct SuiteReport {
    std::vector<SuiteResult> suites;

    bool ok() const {
        for (const SuiteResult& s : suites)
            if (s.failures > 0) return false;
        return true;
    }

    std::string table() const {
        std::ostringstream out;
        out << "suite                 checks  failures  status\n";
        for (const SuiteResult& s : suites) {
            std::string name = s.name;
            name.resize(20, ' ');
            std::string checks = std::to_string(s.checks);
            std::string failures = std::to_string(s.failures);
            out << name << "  " << std::string(6 - std::min<std::size_t>(6, checks.size()), ' ')
                << checks << "  "
                << std::string(8 - std::min<std::size_t>(8, failures.size()), ' ')
                << failures << "  " << (s.failures == 0 ? "pass" : "FAIL") << "\n";
        }
        for (const SuiteResult& s : suites)
            for (const std::string& msg : s.messages)
                out << "\n[" << s.name << "] " << msg << "\n";
        return out.str();
    }
};

namespace detail {

struct PoolLimits {
    int max_n = 6;
    int max_m = 5;
};

/// Deterministic spread over sizes and models; every fourth seed is a
/// committee instance, every third a dichotomous one.
inline GenParams pool_params(std::uint64_t seed, const PoolLimits& lim) {
    GenParams p;
    p.seed = seed;
    p.n = 2 + static_cast<int>(seed % static_cast<std::uint64_t>(lim.max_n - 1));
    p.m = 2 + static_cast<int>((seed / 3) % static_cast<std::uint64_t>(lim.max_m - 1));
    switch (seed % 3) {
    case 0:  p.pref_model = "strict"; break;
    case 1:  p.pref_model = "weak"; break;
    default: p.pref_model = "approval"; break;
    }
    switch ((seed / 5) % 3) {
    case 0:  p.cost_model = "unit"; break;
    case 1:  p.cost_model = "small-int"; break;
    default: p.cost_model = "rational"; break;
    }
    if (seed % 7 == 3) p.weight_model = "rational";
    if (seed % 4 == 3)
        p.mw_k = 1 + static_cast<int>(seed % static_cast<std::uint64_t>(p.m));
    return p;
}

inline std::string describe_instance(const PBInstance& inst) {
    return io::serialize_instance(inst);
}

inline std::string describe_outcome(const PBInstance& inst, const Outcome& outcome) {
    std::string out = "W={";
    bool first = true;
    for (int c : outcome.selected().members()) {
        if (!first) out += ",";
        out += inst.candidate_id(c);
        first = false;
    }
    return out + "}";
}

inline std::vector<std::string> outcome_ids(const PBInstance& inst,
                                            CandidateSet set) {
    std::vector<std::string> ids;
    for (int c : set.members()) ids.push_back(inst.candidate_id(c));
    return ids;
}

inline bool has_unit_weights(const PBInstance& inst) {
    for (int i = 0; i < inst.num_voters(); ++i)
        if (inst.weight(i) != Rat(1)) return false;
    return true;
}

} // namespace detail

/// Replays every fixture against its expected-verdicts sidecar: axiom
/// verdicts through both decision routes, witness rechecks, PB-EAR outcomes
/// per config, and the optional enumeration facts. Sidecar verdicts were
/// frozen from the raw definitional scans, so for instances too large to
/// rescan cheaply (over 8 voters or candidates) only the verifier route and
/// witness rechecks run live.
inline SuiteResult fixture_suite(const std::filesystem::path& dir,
                                 const Checkers& ck = Checkers::standard()) {
    SuiteResult suite;
    suite.name = "fixtures";
    std::vector<std::filesystem::path> files;
    if (std::filesystem::is_directory(dir)) {
        for (const auto& entry : std::filesystem::directory_iterator(dir)) {
            std::string name = entry.path().filename().string();
            if (name.size() > 5 && name.ends_with(".json") &&
                !name.ends_with(".expected.json"))
                files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        suite.fail("no fixtures found in " + dir.string());
        return suite;
    }
    for (const std::filesystem::path& path : files) {
        std::string label = path.filename().string();
        try {
            std::ifstream in(path);
            std::stringstream buf;
            buf << in.rdbuf();
            PBInstance inst = io::parse_instance(buf.str());
            suite.expect(
                io::parse_instance(io::serialize_instance(inst)).num_voters() ==
                    inst.num_voters(),
                [&] { return label + ": canonical round trip changed the instance"; });

            std::filesystem::path sidecar = path;
            sidecar.replace_extension();
            sidecar += ".expected.json";
            std::ifstream sin(sidecar);
            if (!sin) {
                suite.fail(label + ": missing sidecar " + sidecar.filename().string());
                continue;
            }
            std::stringstream sbuf;
            sbuf << sin.rdbuf();
            io::json expected = io::parse_json_strict(sbuf.str());
            bool raw_budget =
                inst.num_voters() <= 8 && inst.num_candidates() <= 8;

            io::json ear_entries = expected.value("ear", io::json::object());
            for (const auto& item : ear_entries.items()) {
                std::string key = item.key();
                auto plus = key.find('+');
                EarConfig config;
                config.selection = io::selection_from_name(key.substr(0, plus));
                config.reweight = io::reweight_from_name(key.substr(plus + 1));
                EarTrace trace = pb_ear(inst, config);
                std::vector<std::string> got =
                    detail::outcome_ids(inst, trace.outcome);
                std::vector<std::string> want =
                    item.value().get<std::vector<std::string>>();
                suite.expect(got == want, [&] {
                    std::string g;
                    for (const std::string& s : got) g += s + " ";
                    return label + ": ear " + key + " produced {" + g +
                           "} instead of the recorded outcome";
                });
            }

            io::json outcome_entries = expected.value("outcomes", io::json::array());
            for (const io::json& entry : outcome_entries) {
                Outcome outcome =
                    io::parse_outcome(inst, entry["selected"].dump());
                std::string olabel =
                    label + " " + detail::describe_outcome(inst, outcome);
                for (const auto& axpair : entry["axioms"].items()) {
                    std::optional<Axiom> named = axiom_from_name(axpair.key());
                    if (!named) {
                        suite.fail(olabel + ": unknown axiom " + axpair.key());
                        continue;
                    }
                    Axiom axiom = *named;
                    bool want = axpair.value().get<bool>();
                    Verdict verdict = ck.check(inst, outcome, axiom, CheckOptions{});
                    suite.expect(verdict.satisfied == want, [&] {
                        return olabel + ": " + axpair.key() + " verifier says " +
                               (verdict.satisfied ? "satisfied" : "violated") +
                               ", sidecar says " + (want ? "satisfied" : "violated") +
                               "\n" + detail::describe_instance(inst);
                    });
                    if (raw_budget) {
                        bool raw_ok = ck.raw_satisfies(inst, outcome, axiom);
                        suite.expect(raw_ok == want, [&] {
                            return olabel + ": " + axpair.key() + " raw scan says " +
                                   (raw_ok ? "satisfied" : "violated") +
                                   ", sidecar says " +
                                   (want ? "satisfied" : "violated");
                        });
                    }
                    if (!verdict.satisfied)
                        suite.expect(recheck_witness(inst, outcome, verdict), [&] {
                            return olabel + ": " + axpair.key() +
                                   " witness failed its definitional recheck";
                        });
                }
            }

            if (expected.contains("feasible_count")) {
                std::size_t count = enumerate_feasible_outcomes(inst).size();
                suite.expect(
                    count == expected["feasible_count"].get<std::size_t>(), [&] {
                        return label + ": feasible outcome count " +
                               std::to_string(count) + " != recorded " +
                               expected["feasible_count"].dump();
                    });
            }
            if (expected.contains("cpsc_exists")) {
                bool exists = cpsc_exists(inst).has_value();
                suite.expect(exists == expected["cpsc_exists"].get<bool>(), [&] {
                    return label + ": cpsc_exists = " + std::to_string(exists) +
                           " != recorded";
                });
            }
            if (expected.contains("max_knapsack")) {
                const io::json& mk = expected["max_knapsack"];
                KnapsackResult best = max_knapsack(
                    inst, inst.all_candidates(),
                    Rat::parse(mk["capacity"].get<std::string>()));
                suite.expect(
                    best.best_weight == Rat::parse(mk["weight"].get<std::string>()),
                    [&] {
                        return label + ": knapsack weight " + best.best_weight.str() +
                               " != recorded " + mk["weight"].get<std::string>();
                    });
                suite.expect(detail::outcome_ids(inst, best.best_set) ==
                                 mk["set"].get<std::vector<std::string>>(),
                             [&] { return label + ": knapsack set mismatch"; });
            }
        } catch (const std::exception& e) {
            suite.fail(label + ": unexpected error: " + e.what());
        }
    }
    return suite;
}

/// Verifier vs raw definitional scan on enumerated outcomes of a small random
/// pool, both witness policies, with every violation witness rechecked.
inline SuiteResult oracle_agreement_suite(int seeds,
                                          const Checkers& ck = Checkers::standard()) {
    SuiteResult suite;
    suite.name = "oracle-agreement";
    detail::PoolLimits lim{4, 4};
    for (int s = 0; s < seeds; ++s) {
        try {
            PBInstance inst = generate_instance(detail::pool_params(s, lim));
            std::vector<Outcome> outcomes = enumerate_feasible_outcomes(inst);
            std::size_t step = outcomes.size() > 8 ? outcomes.size() / 8 : 1;
            for (std::size_t oi = 0; oi < outcomes.size(); oi += step) {
                const Outcome& outcome = outcomes[oi];
                for (Axiom axiom : kAllAxioms) {
                    if (!outcome_applicable(inst, axiom, outcome)) continue;
                    bool want = ck.raw_satisfies(inst, outcome, axiom);
                    for (WitnessPolicy policy :
                         {WitnessPolicy::kMinimal, WitnessPolicy::kFirst}) {
                        CheckOptions opts;
                        opts.policy = policy;
                        Verdict verdict = ck.check(inst, outcome, axiom, opts);
                        suite.expect(verdict.satisfied == want, [&] {
                            return std::string("seed ") + std::to_string(s) + " " +
                                   detail::describe_outcome(inst, outcome) + " " +
                                   std::string(axiom_name(axiom)) +
                                   ": verifier disagrees with raw scan\n" +
                                   detail::describe_instance(inst);
                        });
                        if (!verdict.satisfied)
                            suite.expect(recheck_witness(inst, outcome, verdict), [&] {
                                return std::string("seed ") + std::to_string(s) + " " +
                                       std::string(axiom_name(axiom)) +
                                       ": witness failed recheck\n" +
                                       detail::describe_instance(inst);
                            });
                    }
                }
            }
        } catch (const std::exception& e) {
            suite.fail("seed " + std::to_string(s) + ": unexpected error: " + e.what());
        }
    }
    return suite;
}

/// The axiom lattice over all feasible outcomes of a random pool:
/// IPSC implies exhaustive, CPSC implies maximal cost; on committee
/// instances gen-psc, cpsc-mw and cpsc coincide, and with approvals IPSC
/// implies PJR while CPSC and PJR coincide. A small subpool also checks the
/// find_outcomes inclusion chains through the raw route.
inline SuiteResult implication_suite(int seeds,
                                     const Checkers& ck = Checkers::standard()) {
    SuiteResult suite;
    suite.name = "implications";
    detail::PoolLimits lim{6, 5};
    CheckOptions fast;
    fast.policy = WitnessPolicy::kFirst;
    for (int s = 0; s < seeds; ++s) {
        try {
            PBInstance inst = generate_instance(detail::pool_params(s, lim));
            bool mw = inst.is_multi_winner();
            bool dich = inst.is_dichotomous();
            for (const Outcome& outcome : enumerate_feasible_outcomes(inst)) {
                auto sat = [&](Axiom axiom) {
                    return ck.check(inst, outcome, axiom, fast).satisfied;
                };
                bool ipsc = sat(Axiom::kIpsc);
                bool cpsc = sat(Axiom::kCpsc);
                auto describe = [&](const char* what) {
                    return std::string("seed ") + std::to_string(s) + " " +
                           detail::describe_outcome(inst, outcome) + ": " + what +
                           "\n" + detail::describe_instance(inst);
                };
                suite.expect(!ipsc || sat(Axiom::kExhaustive),
                             [&] { return describe("IPSC holds but exhaustive fails"); });
                suite.expect(!cpsc || sat(Axiom::kMaxCost),
                             [&] { return describe("CPSC holds but maximal cost fails"); });
                if (mw && Rat(outcome.selected().size()) == inst.limit()) {
                    bool gen = sat(Axiom::kGenPsc);
                    bool cmw = sat(Axiom::kCpscMw);
                    suite.expect(gen == cmw, [&] {
                        return describe("gen-psc and cpsc-mw verdicts differ");
                    });
                    suite.expect(gen == cpsc, [&] {
                        return describe("gen-psc and cpsc verdicts differ");
                    });
                    suite.expect(!ipsc || gen, [&] {
                        return describe("IPSC holds but gen-psc fails");
                    });
                    if (dich) {
                        bool pjr = sat(Axiom::kPjr);
                        suite.expect(!ipsc || pjr,
                                     [&] { return describe("IPSC holds but PJR fails"); });
                        suite.expect(cpsc == pjr, [&] {
                            return describe("cpsc and pjr verdicts differ");
                        });
                    }
                }
            }
        } catch (const std::exception& e) {
            suite.fail("seed " + std::to_string(s) + ": unexpected error: " + e.what());
        }
    }
    detail::PoolLimits small{4, 4};
    for (int s = 0; s < seeds / 10 + 1; ++s) {
        try {
            PBInstance inst = generate_instance(detail::pool_params(s, small));
            auto contains = [](const std::vector<Outcome>& haystack,
                               const Outcome& needle) {
                for (const Outcome& o : haystack)
                    if (o.selected() == needle.selected()) return true;
                return false;
            };
            std::vector<Outcome> exhaustive = find_outcomes(inst, Axiom::kExhaustive);
            std::vector<Outcome> maxcost = find_outcomes(inst, Axiom::kMaxCost);
            std::vector<Outcome> ipsc = find_outcomes(inst, Axiom::kIpsc);
            std::vector<Outcome> cpsc = find_outcomes(inst, Axiom::kCpsc);
            for (const Outcome& o : maxcost)
                suite.expect(contains(exhaustive, o), [&] {
                    return "seed " + std::to_string(s) +
                           ": maximal-cost outcome is not exhaustive\n" +
                           detail::describe_instance(inst);
                });
            for (const Outcome& o : cpsc)
                suite.expect(contains(maxcost, o), [&] {
                    return "seed " + std::to_string(s) +
                           ": CPSC outcome is not maximal-cost\n" +
                           detail::describe_instance(inst);
                });
            for (const Outcome& o : ipsc)
                suite.expect(contains(exhaustive, o), [&] {
                    return "seed " + std::to_string(s) +
                           ": IPSC outcome is not exhaustive\n" +
                           detail::describe_instance(inst);
                });
        } catch (const std::exception& e) {
            suite.fail("subset seed " + std::to_string(s) + ": unexpected error: " +
                       e.what());
        }
    }
    return suite;
}

/// Approval-form and cardinality-form checkers agree with the general ones
/// on their shared domain: dichotomous instances for the approval pair,
/// dichotomous unit-weight integer instances for the BPJR-L characterization
/// of CPSC and the Local-BPJR-L consequence of IPSC.
inline SuiteResult specialization_suite(int seeds,
                                        const Checkers& ck = Checkers::standard()) {
    SuiteResult suite;
    suite.name = "specializations";
    detail::PoolLimits lim{6, 5};
    CheckOptions fast;
    fast.policy = WitnessPolicy::kFirst;
    for (int s = 0; s < seeds; ++s) {
        try {
            PBInstance inst = generate_instance(detail::pool_params(s, lim));
            if (!inst.is_dichotomous()) continue;
            bool bpjr_comparable = axiom_applicable(inst, Axiom::kBpjrL) &&
                                   detail::has_unit_weights(inst);
            for (const Outcome& outcome : enumerate_feasible_outcomes(inst)) {
                auto sat = [&](Axiom axiom) {
                    return ck.check(inst, outcome, axiom, fast).satisfied;
                };
                auto describe = [&](const char* what) {
                    return std::string("seed ") + std::to_string(s) + " " +
                           detail::describe_outcome(inst, outcome) + ": " + what +
                           "\n" + detail::describe_instance(inst);
                };
                suite.expect(sat(Axiom::kIpsc) == sat(Axiom::kIpscApproval), [&] {
                    return describe("ipsc and ipsc-approval verdicts differ");
                });
                suite.expect(sat(Axiom::kCpsc) == sat(Axiom::kCpscApproval), [&] {
                    return describe("cpsc and cpsc-approval verdicts differ");
                });
                if (bpjr_comparable) {
                    bool cpsc = sat(Axiom::kCpsc);
                    bool characterized =
                        sat(Axiom::kBpjrL) && sat(Axiom::kMaxCost);
                    suite.expect(cpsc == characterized, [&] {
                        return describe(
                            "cpsc differs from bpjr-l with maximal cost");
                    });
                    suite.expect(!sat(Axiom::kIpsc) || sat(Axiom::kLocalBpjrL), [&] {
                        return describe("IPSC holds but local-bpjr-l fails");
                    });
                }
            }
        } catch (const std::exception& e) {
            suite.fail("seed " + std::to_string(s) + ": unexpected error: " + e.what());
        }
    }
    return suite;
}

/// Every PB-EAR configuration yields a feasible, exhaustive, IPSC-satisfying
/// outcome with conserved weight flow, and an IPSC outcome always exists.
inline SuiteResult ear_suite(int seeds, int max_n = 6, int max_m = 5,
                             const Checkers& ck = Checkers::standard()) {
    SuiteResult suite;
    suite.name = "ear-ipsc";
    detail::PoolLimits lim{max_n, max_m};
    CheckOptions fast;
    fast.policy = WitnessPolicy::kFirst;
    for (int s = 0; s < seeds; ++s) {
        try {
            PBInstance inst = generate_instance(detail::pool_params(s, lim));
            const Rat n(inst.num_voters());
            for (SelectionRule sel :
                 {SelectionRule::kLexicographic, SelectionRule::kMinCostThenLex,
                  SelectionRule::kMaxSupportThenLex}) {
                for (ReweightRule rw : {ReweightRule::kProportional,
                                        ReweightRule::kLexicographicDepletion}) {
                    EarConfig config{sel, rw};
                    std::string key = std::string(io::selection_name(sel)) + "+" +
                                      io::reweight_name(rw);
                    EarTrace trace = pb_ear(inst, config);
                    Outcome outcome(inst, trace.outcome);
                    auto describe = [&](const char* what) {
                        return "seed " + std::to_string(s) + " " + key + " " +
                               detail::describe_outcome(inst, outcome) + ": " +
                               what + "\n" + detail::describe_instance(inst);
                    };
                    Rat removed;
                    for (const EarStep& step : trace.steps) {
                        Rat price = inst.cost(step.selected) * n / inst.limit();
                        Rat sum;
                        for (const auto& [i, cut] : step.deductions) sum += cut;
                        suite.expect(sum == price, [&] {
                            return describe("step deductions do not sum to n*w(c)/L");
                        });
                        removed += sum;
                    }
                    Rat remaining;
                    for (const Rat& w : trace.final_weights) {
                        suite.expect(!(w < Rat(0)), [&] {
                            return describe("negative residual weight");
                        });
                        remaining += w;
                    }
                    suite.expect(remaining + removed == n, [&] {
                        return describe("weight not conserved");
                    });
                    suite.expect(
                        ck.check(inst, outcome, Axiom::kExhaustive, fast).satisfied,
                        [&] { return describe("outcome is not exhaustive"); });
                    suite.expect(
                        ck.check(inst, outcome, Axiom::kIpsc, fast).satisfied,
                        [&] { return describe("outcome violates IPSC"); });
                    EarTrace again = pb_ear(inst, config);
                    suite.expect(again.outcome == trace.outcome, [&] {
                        return describe("rerun produced a different outcome");
                    });
                }
            }
            suite.expect(first_outcome(inst, Axiom::kIpsc).has_value(), [&] {
                return "seed " + std::to_string(s) +
                       ": no IPSC outcome found by enumeration\n" +
                       detail::describe_instance(inst);
            });
        } catch (const std::exception& e) {
            suite.fail("seed " + std::to_string(s) + ": unexpected error: " + e.what());
        }
    }
    return suite;
}

inline SuiteReport run_crosscheck(const std::filesystem::path& fixtures_dir,
                                  int seeds = 200, int max_n = 6, int max_m = 5,
                                  const Checkers& ck = Checkers::standard()) {
    SuiteReport report;
    report.suites.push_back(fixture_suite(fixtures_dir, ck));
    report.suites.push_back(oracle_agreement_suite(seeds / 5 + 1, ck));
    report.suites.push_back(implication_suite(seeds / 2 + 1, ck));
    report.suites.push_back(specialization_suite(seeds / 2 + 1, ck));
    report.suites.push_back(ear_suite(seeds, max_n, max_m, ck));
    return report;
}

} // namespace pb
