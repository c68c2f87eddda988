#include "pb/crosscheck.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace pb;

// Exit contract: 0 ok, 1 axiom violation or suite counterexample,
// 2 usage/parse/precondition error, 3 empty search result.
constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;
constexpr int kEmptySearch = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    out << text;
}

PBInstance load_instance(const std::string& path, bool normalize) {
    return io::parse_instance(slurp(path), normalize);
}

std::string id_list(const PBInstance& inst, CandidateSet set) {
    if (set.empty()) return "(none)";
    std::string out;
    for (int c : set.members()) {
        if (!out.empty()) out += " ";
        out += inst.candidate_id(c);
    }
    return out;
}

std::string voter_list(const PBInstance& inst, VoterSet set) {
    if (set.empty()) return "(none)";
    std::string out;
    for (int i : set.members()) {
        if (!out.empty()) out += " ";
        out += inst.voter_id(i);
    }
    return out;
}

std::vector<Axiom> parse_axioms(const PBInstance& inst,
                                const std::vector<std::string>& names) {
    std::vector<Axiom> axioms;
    for (const std::string& name : names) {
        std::optional<Axiom> axiom = axiom_from_name(name);
        if (!axiom) throw ParseError("unknown axiom: " + name);
        require_axiom_applicable(inst, *axiom);
        axioms.push_back(*axiom);
    }
    return axioms;
}

std::string upper(std::string_view text) {
    std::string out(text);
    for (char& ch : out) ch = static_cast<char>(std::toupper(ch));
    return out;
}

int run_compute(const std::string& instance_path, const std::string& selection,
                const std::string& reweight, const std::string& trace_path,
                const std::string& output_path, bool normalize) {
    PBInstance inst = load_instance(instance_path, normalize);
    EarConfig config;
    config.selection = io::selection_from_name(selection);
    config.reweight = io::reweight_from_name(reweight);
    EarTrace trace = pb_ear(inst, config);
    std::cout << "selected: " << id_list(inst, trace.outcome) << "\n";
    std::cout << "total cost: " << trace.total_cost.str() << "\n";
    std::cout << "budget slack: " << (inst.limit() - trace.total_cost).str()
              << "\n";
    if (!output_path.empty())
        spill(output_path,
              io::serialize_outcome(inst, Outcome(inst, trace.outcome)));
    if (!trace_path.empty())
        spill(trace_path, io::serialize_trace(inst, trace, config));
    return kOk;
}

void print_witness(const PBInstance& inst, const Witness& wit) {
    std::cout << "  voters: " << voter_list(inst, wit.voters) << "\n";
    std::cout << "  coalition: " << id_list(inst, wit.coalition) << "\n";
    if (wit.comparison)
        std::cout << "  comparison: " << id_list(inst, *wit.comparison) << "\n";
    if (wit.candidate)
        std::cout << "  candidate: " << inst.candidate_id(*wit.candidate) << "\n";
    if (wit.level) std::cout << "  level: " << *wit.level << "\n";
    std::cout << "  spend: " << wit.spend.str() << "\n";
    std::cout << "  claim: " << wit.claim.str() << "\n";
    std::cout << "  entitlement: " << wit.entitlement.str() << "\n";
}

int run_verify(const std::string& instance_path, const std::string& outcome_path,
               const std::vector<std::string>& axiom_names,
               const std::string& witness_policy, const std::string& output_path,
               bool normalize, bool force) {
    PBInstance inst = load_instance(instance_path, normalize);
    Outcome outcome = io::parse_outcome(inst, slurp(outcome_path));
    std::vector<Axiom> axioms;
    if (axiom_names.empty()) {
        for (Axiom axiom : kAllAxioms)
            if (outcome_applicable(inst, axiom, outcome)) axioms.push_back(axiom);
    } else {
        axioms = parse_axioms(inst, axiom_names);
        for (Axiom axiom : axioms) require_outcome_applicable(inst, axiom, outcome);
    }
    if (witness_policy != "minimal" && witness_policy != "first")
        throw ParseError("unknown witness policy: " + witness_policy);
    CheckOptions opts;
    opts.force = force;
    opts.policy = witness_policy == "first" ? WitnessPolicy::kFirst
                                            : WitnessPolicy::kMinimal;
    bool all_ok = true;
    io::json report = io::json::array();
    for (Axiom axiom : axioms) {
        Verdict verdict = check_axiom(inst, outcome, axiom, opts);
        std::cout << axiom_name(axiom) << ": "
                  << (verdict.satisfied ? "satisfied" : "violated") << "\n";
        if (!verdict.satisfied) {
            all_ok = false;
            print_witness(inst, *verdict.witness);
        }
        report.push_back(io::verdict_json(inst, verdict));
    }
    if (!output_path.empty()) spill(output_path, report.dump(2) + "\n");
    return all_ok ? kOk : kViolation;
}

int run_search(const std::string& instance_path,
               const std::vector<std::string>& axiom_names, bool all,
               const std::string& output_path, bool normalize, bool force) {
    PBInstance inst = load_instance(instance_path, normalize);
    std::vector<Axiom> axioms = parse_axioms(inst, axiom_names);
    std::vector<Outcome> found;
    for (const Outcome& outcome : enumerate_feasible_outcomes(inst, force)) {
        bool ok = true;
        for (Axiom axiom : axioms) {
            if (!outcome_applicable(inst, axiom, outcome) ||
                !raw::satisfies(inst, outcome, axiom)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        found.push_back(outcome);
        if (!all) break;
    }
    std::string label;
    for (Axiom axiom : axioms) {
        if (!label.empty()) label += "+";
        label += upper(axiom_name(axiom));
    }
    if (found.empty()) {
        std::cout << "no " << label << " outcome exists\n";
        return kEmptySearch;
    }
    for (const Outcome& outcome : found)
        std::cout << "outcome: " << id_list(inst, outcome.selected()) << " (cost "
                  << outcome.total_cost().str() << ")\n";
    if (!output_path.empty()) {
        io::json report = io::json::array();
        for (const Outcome& outcome : found)
            report.push_back(io::outcome_json(inst, outcome));
        spill(output_path, report.dump(2) + "\n");
    }
    return kOk;
}

int run_gen(const GenParams& params, const std::string& output_path) {
    PBInstance inst = generate_instance(params);
    std::string text = io::serialize_instance(inst);
    if (output_path.empty())
        std::cout << text;
    else
        spill(output_path, text);
    return kOk;
}

int run_crosscheck(const std::string& fixtures_dir, int seeds,
                   const std::string& sizes) {
    if (!std::filesystem::is_directory(fixtures_dir))
        throw ParseError("fixtures directory not found: " + fixtures_dir);
    int max_n = 0, max_m = 0;
    char comma = 0;
    std::istringstream in(sizes);
    if (!(in >> max_n >> comma >> max_m) || comma != ',' || max_n < 2 ||
        max_m < 2 || !(in >> std::ws).eof())
        throw ParseError("bad --sizes, expected N,M with both at least 2: " +
                         sizes);
    if (seeds < 1) throw ParseError("--seeds must be positive");
    SuiteReport report = pb::run_crosscheck(fixtures_dir, seeds, max_n, max_m);
    std::cout << report.table();
    return report.ok() ? kOk : kViolation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for participatory budgeting with weak ordinal "
                 "preferences"};
    app.require_subcommand(1);

    std::string instance_path, outcome_path, output_path, trace_path;
    std::string selection = "lex", reweight = "proportional";
    std::string witness_policy = "minimal";
    std::vector<std::string> axiom_names;
    bool normalize = false, force = false, all = false;

    CLI::App* compute = app.add_subcommand(
        "compute", "run the expanding approvals rule on an instance");
    compute->add_option("instance", instance_path, "instance file")->required();
    compute->add_option("--selection", selection,
                        "candidate selection rule: lex, min-cost, max-support");
    compute->add_option("--reweight", reweight,
                        "weight deduction rule: proportional, lex-depletion");
    compute->add_option("--trace", trace_path, "write a step-by-step trace file");
    compute->add_option("--output", output_path, "write the outcome file");
    compute->add_flag("--normalize", normalize,
                      "rescale voter weights to sum to the voter count");

    CLI::App* verify = app.add_subcommand(
        "verify", "check axioms for an outcome, reporting violation witnesses");
    verify->add_option("instance", instance_path, "instance file")->required();
    verify->add_option("outcome", outcome_path, "outcome file")->required();
    verify->add_option("--axiom", axiom_names,
                       "axiom to check (repeatable; default: all applicable)");
    verify->add_option("--witness", witness_policy,
                       "witness policy: minimal, first");
    verify->add_option("--output", output_path, "write verdicts as JSON");
    verify->add_flag("--normalize", normalize,
                     "rescale voter weights to sum to the voter count");
    verify->add_flag("--force", force, "override exponential-search size guards");

    CLI::App* search = app.add_subcommand(
        "search", "enumerate feasible outcomes satisfying the given axioms");
    search->add_option("instance", instance_path, "instance file")->required();
    search->add_option("--axiom", axiom_names, "axiom to satisfy (repeatable)")
        ->required();
    search->add_flag("--all", all, "list every satisfying outcome, not the first");
    search->add_option("--output", output_path, "write found outcomes as JSON");
    search->add_flag("--normalize", normalize,
                     "rescale voter weights to sum to the voter count");
    search->add_flag("--force", force, "override exponential-search size guards");

    GenParams params;
    std::string limit_text, approval_text;
    int mw_k = 0;
    CLI::App* gen = app.add_subcommand(
        "gen", "generate a deterministic random instance");
    gen->add_option("--seed", params.seed, "random seed");
    gen->add_option("--n", params.n, "number of voters");
    gen->add_option("--m", params.m, "number of candidates");
    gen->add_option("--cost", params.cost_model,
                    "cost model: unit, small-int, rational");
    gen->add_option("--prefs", params.pref_model,
                    "preference model: strict, weak, approval");
    gen->add_option("--weights", params.weight_model,
                    "voter weight model: unit, rational");
    gen->add_option("--p", approval_text, "approval probability (exact rational)");
    gen->add_option("--limit", limit_text, "budget limit (exact rational)");
    gen->add_option("--mw", mw_k, "committee mode: unit costs and weights, limit K");
    gen->add_option("--output", output_path, "write the instance file");

    std::string fixtures_dir = "fixtures", sizes = "6,5";
    int seeds = 200;
    CLI::App* crosscheck = app.add_subcommand(
        "crosscheck", "run the fixture and random property suites");
    crosscheck->add_option("--fixtures", fixtures_dir, "fixtures directory");
    crosscheck->add_option("--seeds", seeds, "random instances per suite");
    crosscheck->add_option("--sizes", sizes, "instance size cap as N,M");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*compute)
            return run_compute(instance_path, selection, reweight, trace_path,
                               output_path, normalize);
        if (*verify)
            return run_verify(instance_path, outcome_path, axiom_names,
                              witness_policy, output_path, normalize, force);
        if (*search)
            return run_search(instance_path, axiom_names, all, output_path,
                              normalize, force);
        if (*gen) {
            if (!approval_text.empty()) params.approval_p = Rat::parse(approval_text);
            if (!limit_text.empty()) params.limit = Rat::parse(limit_text);
            if (mw_k > 0) params.mw_k = mw_k;
            return run_gen(params, output_path);
        }
        if (*crosscheck) return run_crosscheck(fixtures_dir, seeds, sizes);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const SizeGuardError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
