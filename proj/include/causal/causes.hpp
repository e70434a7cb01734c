#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "causal/error.hpp"
#include "causal/formula.hpp"
#include "causal/intervention.hpp"
#include "causal/semantics.hpp"
#include "causal/team.hpp"

namespace causal {

// The tuple certifying a cause judgment: the context values fixed by
// intervention, the two interventions x, x' on the candidate cause, and the
// observed effect values. Deterministic judgments carry y and y'; the
// probabilistic one carries the single y whose probability flips 0 -> 1.
struct CauseWitness {
    std::vector<std::pair<std::string, Value>> fixed;
    Value x;
    Value x_prime;
    Value y;
    std::optional<Value> y_prime;
};

struct CauseVerdict {
    bool holds = false;
    std::optional<CauseWitness> witness;
};

struct CauseOptions {
    // Upper bound on the number of context tuples enumerated; the product of
    // the fixed variables' range sizes is exponential in the domain size.
    std::uint64_t max_search = 1u << 20;
};

namespace detail {

inline void check_cause_preconditions(const CausalTeam& team, const std::string& x,
                                      const std::string& y) {
    if (x == y) throw Error(ErrorKind::InvalidComponents, "cause and effect must differ");
    team.index_of(x);
    team.index_of(y);
    if (!team.recursive())
        throw Error(ErrorKind::NonRecursive, "cause judgments need a recursive team");
    if (!team.fully_defined())
        throw Error(ErrorKind::NotFullyDefined,
                    "cause judgments need fully defined functions; complete the team first");
}

inline void check_context_product(const CausalTeam& team, const std::vector<int>& context,
                                  std::uint64_t cap) {
    std::uint64_t product = 1;
    for (int v : context) {
        product *= team.ranges[v].size();
        if (product > cap)
            throw Error(ErrorKind::SearchCapExceeded,
                        "context enumeration exceeds the configured search cap");
    }
}

// Lexicographic walk over the value tuples of the given variables; the last
// variable varies fastest, ranges in declared order.
inline bool next_tuple(const CausalTeam& team, const std::vector<int>& vars,
                       std::vector<std::size_t>& odometer) {
    for (std::size_t i = vars.size(); i-- > 0;) {
        if (++odometer[i] < team.ranges[vars[i]].size()) return true;
        odometer[i] = 0;
    }
    return false;
}

inline std::vector<std::pair<std::string, Value>> named_tuple(const CausalTeam& team,
                                                              const std::vector<int>& vars,
                                                              const std::vector<std::size_t>& odo) {
    std::vector<std::pair<std::string, Value>> out;
    for (std::size_t i = 0; i < vars.size(); ++i)
        out.emplace_back(team.vars[vars[i]], team.ranges[vars[i]][odo[i]]);
    return out;
}

// The y values with team |= Y=y. Nonempty supports give at most one; an
// empty support satisfies them all.
inline std::vector<Value> satisfied_values(const CausalTeam& team, const std::string& y_name,
                                           const std::vector<Value>& range) {
    std::vector<Value> out;
    for (const Value& yv : range)
        if (satisfies(team, Formula::eq(y_name, yv))) out.push_back(yv);
    return out;
}

// Common search body for DC and TC: over every context tuple, apply the two
// interventions on X and look for distinct determined Y values. The first
// witness in enumeration order is returned.
template <typename ContextToTeam>
CauseVerdict search_two_interventions(const CausalTeam& team, const std::string& x_name,
                                      const std::string& y_name, const std::vector<int>& context,
                                      ContextToTeam&& base_for) {
    int x = team.index_of(x_name);
    int y = team.index_of(y_name);
    std::vector<std::size_t> odo(context.size(), 0);
    do {
        auto fixed = named_tuple(team, context, odo);
        CausalTeam base = base_for(fixed);
        std::vector<std::vector<Value>> outcome;
        for (const Value& xv : team.ranges[x]) {
            CausalTeam after = intervene(base, {{x_name, xv}}, SolutionPolicy::Recursive);
            outcome.push_back(satisfied_values(after, y_name, team.ranges[y]));
        }
        for (std::size_t a = 0; a < outcome.size(); ++a)
            for (std::size_t b = 0; b < outcome.size(); ++b) {
                if (a == b) continue;
                for (const Value& ya : outcome[a])
                    for (const Value& yb : outcome[b]) {
                        if (ya == yb) continue;
                        CauseWitness w;
                        w.fixed = fixed;
                        w.x = team.ranges[x][a];
                        w.x_prime = team.ranges[x][b];
                        w.y = ya;
                        w.y_prime = yb;
                        return {true, std::move(w)};
                    }
            }
    } while (next_tuple(team, context, odo));
    return {false, std::nullopt};
}

} // namespace detail

// Woodward's direct cause: some intervention on X changes Y while every other
// variable is held fixed by intervention. The change is read off two distinct
// interventions X=x, X=x' producing distinct determined Y values.
inline CauseVerdict direct_cause(const CausalTeam& team, const std::string& x_name,
                                 const std::string& y_name, const CauseOptions& opts = {}) {
    detail::check_cause_preconditions(team, x_name, y_name);
    int x = team.index_of(x_name);
    int y = team.index_of(y_name);
    std::vector<int> context;
    for (int v = 0; v < team.var_count(); ++v)
        if (v != x && v != y) context.push_back(v);
    detail::check_context_product(team, context, opts.max_search);

    return detail::search_two_interventions(
        team, x_name, y_name, context,
        [&](const std::vector<std::pair<std::string, Value>>& fixed) {
            return intervene(team, fixed, SolutionPolicy::Recursive);
        });
}

// Woodward's total cause: after fixing all nondescendants of X by
// intervention, two interventions on X produce distinct Y values. An empty
// nondescendant set leaves the team as it is.
inline CauseVerdict total_cause(const CausalTeam& team, const std::string& x_name,
                                const std::string& y_name, const CauseOptions& opts = {}) {
    detail::check_cause_preconditions(team, x_name, y_name);
    std::vector<int> context = nondescendants(team.graph, team.index_of(x_name));
    detail::check_context_product(team, context, opts.max_search);

    return detail::search_two_interventions(
        team, x_name, y_name, context,
        [&](const std::vector<std::pair<std::string, Value>>& fixed) {
            return fixed.empty() ? team : intervene(team, fixed, SolutionPolicy::Recursive);
        });
}

// Probabilistic direct cause over multiteams: some context and pair x, x'
// drive Pr(Y=y) to 0 under do(X=x) and to 1 under do(X=x').
inline CauseVerdict probabilistic_direct_cause(const CausalTeam& team, const std::string& x_name,
                                               const std::string& y_name,
                                               const CauseOptions& opts = {}) {
    detail::check_cause_preconditions(team, x_name, y_name);
    if (team.rows.empty())
        throw Error(ErrorKind::EmptySupport, "probabilistic direct cause over an empty support");
    int x = team.index_of(x_name);
    int y = team.index_of(y_name);
    std::vector<int> context;
    for (int v = 0; v < team.var_count(); ++v)
        if (v != x && v != y) context.push_back(v);
    detail::check_context_product(team, context, opts.max_search);

    std::vector<std::size_t> odo(context.size(), 0);
    do {
        auto fixed = detail::named_tuple(team, context, odo);
        std::vector<CausalTeam> after;
        for (const Value& xv : team.ranges[x]) {
            auto pairs = fixed;
            pairs.emplace_back(x_name, xv);
            after.push_back(intervene(team, pairs, SolutionPolicy::Recursive));
        }
        for (std::size_t a = 0; a < after.size(); ++a)
            for (std::size_t b = 0; b < after.size(); ++b) {
                if (a == b) continue;
                for (const Value& yv : team.ranges[y]) {
                    Formula zero = Formula::pr_leq(Formula::eq(y_name, yv), Rational(0));
                    Formula one = Formula::pr_geq(Formula::eq(y_name, yv), Rational(1));
                    if (satisfies(after[a], zero) && satisfies(after[b], one)) {
                        CauseWitness w;
                        w.fixed = fixed;
                        w.x = team.ranges[x][a];
                        w.x_prime = team.ranges[x][b];
                        w.y = yv;
                        return {true, std::move(w)};
                    }
                }
            }
    } while (detail::next_tuple(team, context, odo));
    return {false, std::nullopt};
}

} // namespace causal
