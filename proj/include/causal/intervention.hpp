#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "causal/error.hpp"
#include "causal/team.hpp"

namespace causal {

// do(X=x): an ordered list of variable/value pairs. Duplicate variables are
// representable; consistency (no conflicting duplicates) is checked when the
// intervention is applied, because an inconsistent antecedent still has a
// defined truth value under the counterfactual.
struct Intervention {
    std::vector<std::pair<int, Value>> pairs;  // variable index -> target value

    bool consistent() const {
        for (std::size_t i = 0; i < pairs.size(); ++i)
            for (std::size_t j = i + 1; j < pairs.size(); ++j)
                if (pairs[i].first == pairs[j].first && !(pairs[i].second == pairs[j].second))
                    return false;
        return true;
    }

    std::vector<int> variables() const {
        std::vector<int> xs;
        for (const auto& [v, x] : pairs) xs.push_back(v);
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        return xs;
    }

    static Intervention over(const CausalTeam& team,
                             const std::vector<std::pair<std::string, Value>>& named) {
        Intervention iv;
        for (const auto& [name, value] : named) iv.pairs.emplace_back(team.index_of(name), value);
        return iv;
    }
};

enum class SolutionPolicy { Recursive, UniqueSolutions, AtMostUnique };

// ---------------------------------------------------------------------------
// Graph measures

// Longest directed path length from any vertex of xs to y, measured in the
// surgered graph (arrows into xs removed). Vertices of xs sit at distance 0
// through the empty path; unreachable vertices get -1.
inline int evaluation_distance(const CausalGraph& graph, const std::vector<int>& xs, int y) {
    if (!graph.acyclic()) throw Error(ErrorKind::CyclicGraph, "evaluation distance needs an acyclic graph");
    CausalGraph g = graph.without_arrows_into(xs);
    std::vector<int> dist(g.size(), -2);  // -2 = not computed
    std::vector<bool> source(g.size(), false);
    for (int x : xs) source[x] = true;

    // Longest path over a DAG by memoized recursion on parents.
    auto compute = [&](auto&& self, int v) -> int {
        if (dist[v] != -2) return dist[v];
        int best = source[v] ? 0 : -1;
        for (int p : g.parents[v]) {
            int dp = self(self, p);
            if (dp >= 0) best = std::max(best, dp + 1);
        }
        return dist[v] = best;
    };
    return compute(compute, y);
}

inline std::vector<int> distances_from(const CausalGraph& graph, const std::vector<int>& xs) {
    std::vector<int> out(graph.size());
    for (int v = 0; v < graph.size(); ++v) out[v] = evaluation_distance(graph, xs, v);
    return out;
}

// Vertices other than x that are not reachable from x by a directed path.
inline std::vector<int> nondescendants(const CausalGraph& graph, int x) {
    std::vector<bool> reached(graph.size(), false);
    auto children = graph.children();
    std::vector<int> stack{x};
    reached[x] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int c : children[v])
            if (!reached[c]) { reached[c] = true; stack.push_back(c); }
    }
    std::vector<int> out;
    for (int v = 0; v < graph.size(); ++v)
        if (v != x && !reached[v]) out.push_back(v);
    return out;
}

// ---------------------------------------------------------------------------
// Completion of partially defined teams

namespace detail {

inline ExtendedValue apply_function(const CausalTeam& team, int v, const Row& row) {
    const FunctionTable& table = team.functions.at(v);
    std::vector<Value> tuple;
    for (int p : table.parents) {
        if (!row[p].is_value()) {
            // A formal parent entry cannot be looked up; the result is the
            // formal application of v's function symbol to the parent values.
            FormalTerm t;
            t.symbol = "f_" + team.vars[v];
            for (int q : table.parents) t.args.push_back(row[q]);
            return ExtendedValue(std::move(t));
        }
        tuple.push_back(row[p].value());
    }
    auto it = table.entries.find(tuple);
    if (it == table.entries.end())
        throw Error(ErrorKind::NotFullyDefined,
                    "no table entry for " + team.vars[v] + " at a required parent tuple");
    return it->second;
}

// All tuples in the product of the parents' declared ranges, in range order.
inline std::vector<std::vector<Value>> range_product(const CausalTeam& team,
                                                     const std::vector<int>& vars) {
    std::vector<std::vector<Value>> tuples{{}};
    for (int v : vars) {
        std::vector<std::vector<Value>> next;
        for (const auto& prefix : tuples)
            for (const Value& value : team.ranges[v]) {
                auto t = prefix;
                t.push_back(value);
                next.push_back(std::move(t));
            }
        tuples = std::move(next);
    }
    return tuples;
}

} // namespace detail

// Extends every function table to the full product of its parents' ranges.
// For each missing tuple: take the value observed in the first support row
// matching the tuple if there is one, otherwise insert the formal term
// f_X(tuple). Invariant (b) makes the observed value independent of which
// matching row is used.
inline CausalTeam complete_partial(const CausalTeam& team) {
    if (!team.recursive())
        throw Error(ErrorKind::NonRecursive, "completion is defined for recursive teams");
    CausalTeam out = team;
    for (auto& [v, table] : out.functions) {
        for (const auto& tuple : detail::range_product(out, table.parents)) {
            if (table.entries.count(tuple)) continue;
            bool found = false;
            for (const Row& row : out.rows) {
                bool match = true;
                for (std::size_t i = 0; i < table.parents.size(); ++i)
                    if (!(row[table.parents[i]] == ExtendedValue(tuple[i]))) { match = false; break; }
                if (match) {
                    table.entries.emplace(tuple, row[v]);
                    found = true;
                    break;
                }
            }
            if (!found) {
                FormalTerm t;
                t.symbol = "f_" + out.vars[v];
                for (const Value& value : tuple) t.args.push_back(ExtendedValue(value));
                table.entries.emplace(tuple, ExtendedValue(std::move(t)));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Interventions

namespace detail {

inline void dedupe_set_mode(CausalTeam& team) {
    if (team.mode != TeamMode::Set) return;
    std::set<Row> seen;
    std::vector<Row> unique;
    for (Row& r : team.rows)
        if (seen.insert(r).second) unique.push_back(std::move(r));
    team.rows = std::move(unique);
}

// The staged do-algorithm for recursive, fully defined teams. Stage 0 writes
// the targets and performs the graph surgery; stage n recomputes every
// variable at evaluation distance n from its (stage n-1) parents. Variables
// at the same distance never read each other, so rows update in place.
inline CausalTeam intervene_recursive(const CausalTeam& team, const Intervention& iv) {
    std::vector<int> xs = iv.variables();

    CausalTeam out = team;
    for (const auto& [v, x] : iv.pairs)
        for (Row& row : out.rows) row[v] = ExtendedValue(x);
    out.graph = team.graph.without_arrows_into(xs);
    for (int x : xs) out.functions.erase(x);

    std::vector<int> dist = distances_from(team.graph, xs);
    int horizon = dist.empty() ? -1 : *std::max_element(dist.begin(), dist.end());
    for (int stage = 1; stage <= horizon; ++stage)
        for (int v = 0; v < team.var_count(); ++v)
            if (dist[v] == stage)
                for (Row& row : out.rows) row[v] = apply_function(out, v, row);

    dedupe_set_mode(out);
    return out;
}

// Brute-force solver for the nonrecursive policies: enumerate candidate
// assignments for the remaining endogenous variables over their finite
// ranges and keep those satisfying every remaining equation.
inline std::vector<Row> solve_rows(const CausalTeam& team, const Intervention& iv,
                                   const Row& base, const std::vector<int>& unknowns) {
    std::vector<Row> solutions;
    Row candidate = base;
    for (const auto& [v, x] : iv.pairs) candidate[v] = ExtendedValue(x);

    auto tuples = range_product(team, unknowns);
    for (const auto& tuple : tuples) {
        for (std::size_t i = 0; i < unknowns.size(); ++i)
            candidate[unknowns[i]] = ExtendedValue(tuple[i]);
        bool ok = true;
        for (int v : unknowns) {
            if (!(candidate[v] == apply_function(team, v, candidate))) { ok = false; break; }
        }
        if (ok) solutions.push_back(candidate);
    }
    return solutions;
}

inline CausalTeam intervene_by_solving(const CausalTeam& team, const Intervention& iv,
                                       bool require_solution) {
    std::vector<int> xs = iv.variables();
    std::vector<int> unknowns;  // endogenous, not intervened
    for (int v : team.endogenous())
        if (!std::binary_search(xs.begin(), xs.end(), v)) unknowns.push_back(v);

    CausalTeam out = team;
    out.rows.clear();
    out.keys.clear();
    for (std::size_t i = 0; i < team.rows.size(); ++i) {
        auto solutions = solve_rows(team, iv, team.rows[i], unknowns);
        if (solutions.size() > 1)
            throw Error(ErrorKind::MultipleSolutions,
                        "row " + std::to_string(i + 1) + " " + team.render_row(static_cast<int>(i)) +
                            " has " + std::to_string(solutions.size()) +
                            " solutions under the intervention");
        if (solutions.empty()) {
            if (require_solution)
                throw Error(ErrorKind::NoSolution,
                            "row " + std::to_string(i + 1) + " " +
                                team.render_row(static_cast<int>(i)) +
                                " has no solution under the intervention");
            continue;  // at-most-unique: discard the row
        }
        out.rows.push_back(solutions.front());
        if (team.mode == TeamMode::Multiteam) out.keys.push_back(team.keys[i]);
    }

    out.graph = team.graph.without_arrows_into(xs);
    for (int x : xs) out.functions.erase(x);
    dedupe_set_mode(out);
    return out;
}

} // namespace detail

// Applies do(X=x) under the given policy. The output team keeps the input
// ranges, carries the surgered graph, and loses the intervened variables from
// the endogenous set.
inline CausalTeam intervene(const CausalTeam& team, const Intervention& iv, SolutionPolicy policy) {
    if (!iv.consistent())
        throw Error(ErrorKind::InconsistentIntervention,
                    "intervention sets a variable to two distinct values");
    for (const auto& [v, x] : iv.pairs)
        if (!team.range_contains(v, x))
            throw Error(ErrorKind::RangeViolation,
                        "intervention value " + causal::to_string(x) + " outside the range of " +
                            team.vars[v]);
    if (!team.fully_defined())
        throw Error(ErrorKind::NotFullyDefined,
                    "intervention needs fully defined functions; complete the team first");

    switch (policy) {
        case SolutionPolicy::Recursive:
            if (!team.recursive())
                throw Error(ErrorKind::CyclicGraph,
                            "the staged algorithm needs an acyclic graph");
            return detail::intervene_recursive(team, iv);
        case SolutionPolicy::UniqueSolutions:
            return detail::intervene_by_solving(team, iv, /*require_solution=*/true);
        case SolutionPolicy::AtMostUnique:
            return detail::intervene_by_solving(team, iv, /*require_solution=*/false);
    }
    throw Error(ErrorKind::UnsupportedPolicy, "unknown policy");
}

inline CausalTeam intervene(const CausalTeam& team,
                            const std::vector<std::pair<std::string, Value>>& named,
                            SolutionPolicy policy) {
    return intervene(team, Intervention::over(team, named), policy);
}

// Name-based wrappers for the graph measures.
inline int evaluation_distance(const CausalTeam& team, const std::vector<std::string>& xs,
                               const std::string& y) {
    std::vector<int> xi;
    for (const auto& x : xs) xi.push_back(team.index_of(x));
    return evaluation_distance(team.graph, xi, team.index_of(y));
}

inline std::vector<std::string> nondescendants(const CausalTeam& team, const std::string& x) {
    std::vector<std::string> out;
    for (int v : nondescendants(team.graph, team.index_of(x))) out.push_back(team.vars[v]);
    return out;
}

} // namespace causal
