#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "causal/causes.hpp"
#include "causal/error.hpp"
#include "causal/intervention.hpp"
#include "causal/io.hpp"
#include "causal/parser.hpp"
#include "causal/semantics.hpp"
#include "causal/team.hpp"

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitInputError = 2;

struct CommonArgs {
    std::string team_file;
    std::string policy;  // "", "recursive", "unique", "at-most-unique"
    bool no_complete = false;
};

std::optional<causal::SolutionPolicy> policy_from_flag(const std::string& flag) {
    if (flag.empty()) return std::nullopt;
    if (flag == "recursive") return causal::SolutionPolicy::Recursive;
    if (flag == "unique") return causal::SolutionPolicy::UniqueSolutions;
    if (flag == "at-most-unique") return causal::SolutionPolicy::AtMostUnique;
    throw causal::Error(causal::ErrorKind::InvalidComponents, "unknown policy: " + flag);
}

// Loads the team and, unless disabled, totalizes partial functions on
// recursive teams so counterfactuals can run.
causal::CausalTeam load_prepared(const CommonArgs& args) {
    causal::CausalTeam team = causal::load_team(args.team_file);
    if (!args.no_complete && !team.fully_defined() && team.recursive())
        team = causal::complete_partial(team);
    return team;
}

std::string render_witness(const causal::CauseWitness& w, bool probabilistic,
                           const std::string& x, const std::string& y) {
    std::string out = "witness: fix ";
    if (w.fixed.empty()) {
        out += "(none)";
    } else {
        for (std::size_t i = 0; i < w.fixed.size(); ++i) {
            if (i) out += ", ";
            out += w.fixed[i].first + "=" + causal::to_string(w.fixed[i].second);
        }
    }
    if (probabilistic) {
        out += "; " + x + "=" + causal::to_string(w.x) + " -> Pr(" + y + "=" +
               causal::to_string(w.y) + ")=0";
        out += "; " + x + "=" + causal::to_string(w.x_prime) + " -> Pr(" + y + "=" +
               causal::to_string(w.y) + ")=1";
    } else {
        out += "; " + x + "=" + causal::to_string(w.x) + " -> " + y + "=" +
               causal::to_string(w.y);
        out += "; " + x + "=" + causal::to_string(w.x_prime) + " -> " + y + "=" +
               causal::to_string(*w.y_prime);
    }
    return out;
}

int run_check(const CommonArgs& common, const std::string& formula_text,
              const std::string& relation, bool explain) {
    causal::CausalTeam team = load_prepared(common);
    causal::Formula formula = causal::parse_formula(formula_text);

    bool verdict = false;
    if (relation == "truth") {
        std::vector<causal::TraceEntry> trace;
        causal::EvalOptions opts;
        opts.policy = policy_from_flag(common.policy);
        if (explain) opts.trace = &trace;
        verdict = causal::satisfies(team, formula, opts);
        for (const auto& entry : trace)
            std::cout << entry.label << ":\n" << causal::render_table(entry.team);
    } else if (relation == "falsifiable") {
        causal::EvalOptions opts;
        opts.policy = policy_from_flag(common.policy);
        verdict = causal::falsifies(team, formula, opts);
    } else if (relation == "admissible") {
        verdict = causal::admits(team, formula);
    } else {
        throw causal::Error(causal::ErrorKind::InvalidComponents,
                            "unknown relation: " + relation);
    }
    std::cout << (verdict ? "true" : "false") << "\n";
    return verdict ? kExitTrue : kExitFalse;
}

int run_intervene(const CommonArgs& common, const std::string& intervention_text,
                  const std::string& out_file) {
    causal::CausalTeam team = load_prepared(common);
    auto pairs = causal::Parser::parse_intervention(intervention_text);
    causal::Intervention iv = causal::Intervention::over(team, pairs);
    if (!iv.consistent())
        throw causal::Error(causal::ErrorKind::InconsistentIntervention,
                            "inconsistent intervention (a counterfactual with this antecedent "
                            "would evaluate to true)");
    causal::SolutionPolicy policy =
        policy_from_flag(common.policy)
            .value_or(team.recursive() ? causal::SolutionPolicy::Recursive
                                       : causal::SolutionPolicy::UniqueSolutions);
    causal::CausalTeam result = causal::intervene(team, iv, policy);
    std::cout << causal::render_table(result);
    if (!out_file.empty()) causal::save_team(result, out_file);
    return kExitTrue;
}

int run_prob(const CommonArgs& common, const std::string& formula_text) {
    causal::CausalTeam team = load_prepared(common);
    causal::Formula formula = causal::parse_formula(formula_text);
    causal::EvalOptions opts;
    opts.policy = policy_from_flag(common.policy);
    std::cout << causal::probability(team, formula, opts).str() << "\n";
    return kExitTrue;
}

int run_causes(const CommonArgs& common, const std::string& kind, const std::string& x,
               const std::string& y, bool all, std::uint64_t max_search) {
    causal::CausalTeam team = load_prepared(common);
    causal::CauseOptions opts;
    opts.max_search = max_search;

    auto judge = [&](const std::string& from, const std::string& to) {
        if (kind == "direct") return causal::direct_cause(team, from, to, opts);
        if (kind == "pdirect") return causal::probabilistic_direct_cause(team, from, to, opts);
        if (kind == "total") return causal::total_cause(team, from, to, opts);
        throw causal::Error(causal::ErrorKind::InvalidComponents, "unknown cause kind: " + kind);
    };

    if (all) {
        for (const auto& from : team.vars)
            for (const auto& to : team.vars) {
                if (from == to) continue;
                causal::CauseVerdict v = judge(from, to);
                std::cout << kind << "(" << from << "; " << to << "): "
                          << (v.holds ? "holds" : "does not hold") << "\n";
            }
        return kExitTrue;
    }

    causal::CauseVerdict verdict = judge(x, y);
    std::cout << (verdict.holds ? "holds" : "does not hold") << "\n";
    if (verdict.witness)
        std::cout << render_witness(*verdict.witness, kind == "pdirect", x, y) << "\n";
    return verdict.holds ? kExitTrue : kExitFalse;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Causal team semantics: check, intervene, prob, causes"};
    app.require_subcommand(1);

    CommonArgs common;
    std::string formula_text, relation = "truth", intervention_text, out_file;
    std::string cause_kind, cause_x, cause_y;
    bool explain = false, all_pairs = false;
    std::uint64_t max_search = 1u << 20;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("team-file", common.team_file, "team document (JSON)")->required();
        cmd->add_option("--policy", common.policy,
                        "intervention policy: recursive, unique, at-most-unique");
        cmd->add_flag("--no-complete", common.no_complete,
                      "do not totalize partial functions before evaluating");
    };

    CLI::App* check = app.add_subcommand("check", "decide a satisfaction relation");
    add_common(check);
    check->add_option("formula", formula_text, "formula text")->required();
    check->add_option("--relation", relation, "truth (default), falsifiable, admissible");
    check->add_flag("--explain", explain, "print restricted/intervened tables");

    CLI::App* intervene_cmd = app.add_subcommand("intervene", "apply do(X=x) and print the team");
    add_common(intervene_cmd);
    intervene_cmd->add_option("intervention", intervention_text, "conjunction of equalities")
        ->required();
    intervene_cmd->add_option("--out", out_file, "write the resulting team document here");

    CLI::App* prob = app.add_subcommand("prob", "exact probability of a CO formula");
    add_common(prob);
    prob->add_option("formula", formula_text, "formula text")->required();

    CLI::App* causes = app.add_subcommand("causes", "direct/probabilistic/total cause");
    add_common(causes);
    causes->add_option("kind", cause_kind, "direct, pdirect, or total")->required();
    causes->add_option("X", cause_x, "candidate cause");
    causes->add_option("Y", cause_y, "effect");
    causes->add_flag("--all", all_pairs, "scan every ordered variable pair");
    causes->add_option("--max-search", max_search, "cap on the context enumeration size");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return run_check(common, formula_text, relation, explain);
        if (intervene_cmd->parsed()) return run_intervene(common, intervention_text, out_file);
        if (prob->parsed()) return run_prob(common, formula_text);
        if (causes->parsed()) {
            if (!all_pairs && (cause_x.empty() || cause_y.empty()))
                throw causal::Error(causal::ErrorKind::InvalidComponents,
                                    "causes needs X and Y (or --all)");
            return run_causes(common, cause_kind, cause_x, cause_y, all_pairs, max_search);
        }
    } catch (const causal::Error& e) {
        std::cerr << "error [" << causal::error_kind_name(e.kind()) << "]: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
