#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "causal/formula.hpp"
#include "causal/intervention.hpp"
#include "causal/team.hpp"

// Random recursive fully defined teams and random formulas for the property
// suites. Everything is driven by a caller-owned engine so suites replay
// deterministically from a fixed seed.
namespace testgen {

using causal::CausalTeam;
using causal::Formula;
using causal::LanguageTag;
using causal::Row;
using causal::TeamBuilder;
using causal::TeamMode;
using causal::Value;

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool chance(Rng& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

struct TeamGenOptions {
    int max_vars = 4;
    int max_range = 3;
    int max_rows = 6;
    int min_rows = 0;
    TeamMode mode = TeamMode::Set;
    double drop_entry = 0.0;  // > 0 produces partially defined teams
};

inline CausalTeam random_team(Rng& rng, const TeamGenOptions& opts = {}) {
    static const std::vector<std::string> names = {"A", "B", "C", "D"};
    int n = pick(rng, 1, opts.max_vars);

    // Random DAG: draw a topological priority, allow only priority-increasing
    // edges. Variables with at least one parent become endogenous.
    std::vector<int> priority(n);
    std::iota(priority.begin(), priority.end(), 0);
    std::shuffle(priority.begin(), priority.end(), rng);
    std::vector<std::vector<int>> parents(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (priority[a] < priority[b] && chance(rng, 0.45)) parents[b].push_back(a);

    std::vector<std::vector<Value>> ranges(n);
    for (int v = 0; v < n; ++v) {
        int size = pick(rng, 1, opts.max_range);
        for (int i = 1; i <= size; ++i) ranges[v].push_back(Value(std::int64_t{i}));
    }

    TeamBuilder builder;
    builder.mode(opts.mode);
    for (int v = 0; v < n; ++v) builder.variable(names[v], ranges[v]);

    // Total tables over the parents' range product, random outputs.
    std::vector<std::map<std::vector<Value>, Value>> tables(n);
    for (int v = 0; v < n; ++v) {
        if (parents[v].empty()) continue;
        std::vector<std::vector<Value>> tuples{{}};
        for (int p : parents[v]) {
            std::vector<std::vector<Value>> next;
            for (const auto& prefix : tuples)
                for (const Value& value : ranges[p]) {
                    auto t = prefix;
                    t.push_back(value);
                    next.push_back(std::move(t));
                }
            tuples = std::move(next);
        }
        std::vector<std::pair<std::vector<Value>, causal::ExtendedValue>> entries;
        for (auto& tuple : tuples) {
            Value out = ranges[v][pick(rng, 0, static_cast<int>(ranges[v].size()) - 1)];
            tables[v].emplace(tuple, out);
            if (opts.drop_entry > 0 && chance(rng, opts.drop_entry)) continue;
            entries.emplace_back(tuple, causal::ExtendedValue(out));
        }
        std::vector<std::string> parent_names;
        for (int p : parents[v]) parent_names.push_back(names[p]);
        builder.function(names[v], parent_names, entries);
    }

    // Rows: draw exogenous values, push them through the full tables in
    // topological order. Multiteams keep repetitions.
    std::vector<int> topo(n);
    std::iota(topo.begin(), topo.end(), 0);
    std::sort(topo.begin(), topo.end(), [&](int a, int b) { return priority[a] < priority[b]; });
    int rows = pick(rng, opts.min_rows, opts.max_rows);
    for (int r = 0; r < rows; ++r) {
        std::vector<Value> row(n);
        for (int v : topo) {
            if (parents[v].empty()) {
                row[v] = ranges[v][pick(rng, 0, static_cast<int>(ranges[v].size()) - 1)];
            } else {
                std::vector<Value> tuple;
                for (int p : parents[v]) tuple.push_back(row[p]);
                row[v] = tables[v].at(tuple);
            }
        }
        std::map<std::string, causal::ExtendedValue> assignment;
        for (int v = 0; v < n; ++v) assignment.emplace(names[v], causal::ExtendedValue(row[v]));
        builder.row(std::move(assignment));
    }

    return builder.build();
}

inline Value random_range_value(Rng& rng, const CausalTeam& team, int v) {
    const auto& r = team.ranges[v];
    return r[pick(rng, 0, static_cast<int>(r.size()) - 1)];
}

inline Formula random_literal(Rng& rng, const CausalTeam& team) {
    int v = pick(rng, 0, team.var_count() - 1);
    Value value = chance(rng, 0.9) ? random_range_value(rng, team, v)
                                   : Value(std::int64_t{99});
    return chance(rng, 0.5) ? Formula::eq(team.vars[v], value)
                            : Formula::neq(team.vars[v], value);
}

inline std::vector<std::pair<std::string, Value>> random_cf_pairs(Rng& rng,
                                                                  const CausalTeam& team,
                                                                  bool force_consistent = true) {
    int count = pick(rng, 1, std::min(2, team.var_count()));
    std::vector<std::pair<std::string, Value>> pairs;
    std::vector<int> vars;
    for (int i = 0; i < count; ++i) {
        int v = pick(rng, 0, team.var_count() - 1);
        if (force_consistent) {
            while (std::find(vars.begin(), vars.end(), v) != vars.end())
                v = pick(rng, 0, team.var_count() - 1);
        }
        vars.push_back(v);
        pairs.emplace_back(team.vars[v], random_range_value(rng, team, v));
    }
    return pairs;
}

// The least language of the output is at most `lang`; antecedents stay in CO.
inline Formula random_formula(Rng& rng, const CausalTeam& team, int depth, LanguageTag lang) {
    if (depth <= 0 || chance(rng, 0.3)) {
        if (lang == LanguageTag::CD && chance(rng, 0.3)) {
            std::vector<std::string> args;
            int count = pick(rng, 1, team.var_count());
            for (int i = 0; i < count; ++i)
                args.push_back(team.vars[pick(rng, 0, team.var_count() - 1)]);
            return Formula::dep(args, team.vars[pick(rng, 0, team.var_count() - 1)]);
        }
        if (lang == LanguageTag::PCD && chance(rng, 0.4)) {
            static const std::vector<causal::Rational> bounds = {
                {0, 1}, {1, 4}, {1, 3}, {1, 2}, {2, 3}, {3, 4}, {1, 1}};
            Formula chi = random_formula(rng, team, depth > 0 ? depth - 1 : 0, LanguageTag::CO);
            if (chance(rng, 0.25)) {
                Formula theta = random_formula(rng, team, 0, LanguageTag::CO);
                Formula atom = chance(rng, 0.5) ? Formula::pr_leq_pr(chi, theta)
                                                : Formula::pr_geq_pr(chi, theta);
                return chance(rng, 0.3) ? Formula::contra_neg(atom) : atom;
            }
            causal::Rational bound = bounds[pick(rng, 0, static_cast<int>(bounds.size()) - 1)];
            Formula atom = chance(rng, 0.5) ? Formula::pr_leq(chi, bound)
                                            : Formula::pr_geq(chi, bound);
            return chance(rng, 0.3) ? Formula::contra_neg(atom) : atom;
        }
        if (lang == LanguageTag::CO_NEG && chance(rng, 0.3))
            return Formula::dual_neg(random_literal(rng, team));
        return random_literal(rng, team);
    }

    int choice = pick(rng, 0, 5);
    switch (choice) {
        case 0:
            return Formula::conj(random_formula(rng, team, depth - 1, lang),
                                 random_formula(rng, team, depth - 1, lang));
        case 1:
            return Formula::tensor(random_formula(rng, team, depth - 1, lang),
                                   random_formula(rng, team, depth - 1, lang));
        case 2:
            if (lang == LanguageTag::PCD)
                return Formula::bor(random_formula(rng, team, depth - 1, lang),
                                    random_formula(rng, team, depth - 1, lang));
            if (lang == LanguageTag::CO_NEG)
                return Formula::dual_neg(random_formula(rng, team, depth - 1, lang));
            return Formula::conj(random_formula(rng, team, depth - 1, lang),
                                 random_formula(rng, team, depth - 1, lang));
        case 3:
            return Formula::sel(random_formula(rng, team, depth - 1, LanguageTag::CO),
                                random_formula(rng, team, depth - 1, lang));
        case 4:
            return Formula::cf(random_cf_pairs(rng, team),
                               random_formula(rng, team, depth - 1, lang));
        default:
            return random_formula(rng, team, depth - 1, lang);
    }
}

inline CausalTeam random_subteam(Rng& rng, const CausalTeam& team) {
    std::vector<int> keep;
    for (std::size_t i = 0; i < team.rows.size(); ++i)
        if (chance(rng, 0.5)) keep.push_back(static_cast<int>(i));
    return team.subteam(keep);
}

} // namespace testgen
