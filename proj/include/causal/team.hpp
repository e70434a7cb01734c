#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "causal/error.hpp"
#include "causal/value.hpp"

namespace causal {

enum class TeamMode { Set, Multiteam };

// One assignment over the team domain; entries are positional, aligned with
// the team's alphabetically sorted variable list.
using Row = std::vector<ExtendedValue>;

// ---------------------------------------------------------------------------
// Graph

// Directed graph over the variable domain, stored as parent lists. Parent
// indices are kept sorted, which makes parent tuples alphabetical because the
// domain itself is sorted by name.
struct CausalGraph {
    std::vector<std::vector<int>> parents;

    int size() const { return static_cast<int>(parents.size()); }

    std::vector<std::vector<int>> children() const {
        std::vector<std::vector<int>> ch(parents.size());
        for (int v = 0; v < size(); ++v)
            for (int p : parents[v]) ch[p].push_back(v);
        return ch;
    }

    bool has_edge(int from, int to) const {
        const auto& ps = parents[to];
        return std::binary_search(ps.begin(), ps.end(), from);
    }

    bool acyclic() const {
        // Kahn's algorithm on the parent lists.
        std::vector<int> indegree(parents.size());
        auto ch = children();
        for (int v = 0; v < size(); ++v) indegree[v] = static_cast<int>(parents[v].size());
        std::vector<int> queue;
        for (int v = 0; v < size(); ++v)
            if (indegree[v] == 0) queue.push_back(v);
        int seen = 0;
        while (!queue.empty()) {
            int v = queue.back();
            queue.pop_back();
            ++seen;
            for (int c : ch[v])
                if (--indegree[c] == 0) queue.push_back(c);
        }
        return seen == size();
    }

    // Graph surgery for do(X=x): drop every arrow whose head lies in xs.
    CausalGraph without_arrows_into(const std::vector<int>& xs) const {
        CausalGraph g = *this;
        for (int v : xs) g.parents[v].clear();
        return g;
    }

    friend bool operator==(const CausalGraph& a, const CausalGraph& b) {
        return a.parents == b.parents;
    }
};

// ---------------------------------------------------------------------------
// Function component

// Partial invariant function for one endogenous variable: parent tuples (in
// alphabetical variable order) mapped to outputs. Outputs may be formal terms
// once a team has been completed.
struct FunctionTable {
    std::vector<int> parents;  // sorted variable indices; mirrors the graph
    std::map<std::vector<Value>, ExtendedValue> entries;

    friend bool operator==(const FunctionTable& a, const FunctionTable& b) {
        return a.parents == b.parents && a.entries == b.entries;
    }
};

// ---------------------------------------------------------------------------
// Raw components, as they arrive from a document or a builder

struct TeamComponents {
    struct FunctionSpec {
        std::string variable;
        std::vector<std::string> parents;
        std::vector<std::pair<std::vector<Value>, ExtendedValue>> entries;
    };

    TeamMode mode = TeamMode::Set;
    std::vector<std::pair<std::string, std::vector<Value>>> variables;  // name -> range
    std::vector<FunctionSpec> functions;
    std::vector<std::map<std::string, ExtendedValue>> rows;
};

// ---------------------------------------------------------------------------
// Causal team

class CausalTeam {
public:
    std::vector<std::string> vars;              // sorted, unique
    TeamMode mode = TeamMode::Set;
    std::vector<Row> rows;
    std::vector<std::int64_t> keys;             // multiteam only; hidden Key column
    CausalGraph graph;
    std::vector<std::vector<Value>> ranges;     // per variable, declared value order
    std::map<int, FunctionTable> functions;     // keyed by endogenous variable index

    int var_count() const { return static_cast<int>(vars.size()); }

    int index_of(std::string_view name) const {
        auto it = std::lower_bound(vars.begin(), vars.end(), name);
        if (it == vars.end() || *it != name)
            throw Error(ErrorKind::UnknownVariable, "unknown variable: " + std::string(name));
        return static_cast<int>(it - vars.begin());
    }

    bool has_variable(std::string_view name) const {
        auto it = std::lower_bound(vars.begin(), vars.end(), name);
        return it != vars.end() && *it == name;
    }

    bool is_endogenous(int v) const { return functions.count(v) != 0; }

    std::vector<int> endogenous() const {
        std::vector<int> out;
        for (const auto& [v, table] : functions) out.push_back(v);
        return out;
    }

    bool recursive() const { return graph.acyclic(); }

    bool range_contains(int v, const Value& value) const {
        const auto& r = ranges[v];
        return std::find(r.begin(), r.end(), value) != r.end();
    }

    // True when every table is total on the product of its parents' ranges.
    bool fully_defined() const {
        for (const auto& [v, table] : functions) {
            std::size_t product = 1;
            for (int p : table.parents) product *= ranges[p].size();
            if (table.entries.size() != product) return false;
        }
        return true;
    }

    bool has_formal_entry(int v) const {
        for (const Row& r : rows)
            if (r[v].is_term()) return true;
        return false;
    }

    bool has_any_formal_entry() const {
        for (int v = 0; v < var_count(); ++v)
            if (has_formal_entry(v)) return true;
        return false;
    }

    // Causal subteam with the given support rows (indices into rows, in
    // order). Graph, ranges and functions are shared unchanged; multiteam
    // keys travel with their rows.
    CausalTeam subteam(const std::vector<int>& row_indices) const {
        CausalTeam out = *this;
        out.rows.clear();
        out.keys.clear();
        for (int i : row_indices) {
            out.rows.push_back(rows[i]);
            if (mode == TeamMode::Multiteam) out.keys.push_back(keys[i]);
        }
        return out;
    }

    CausalTeam singleton(int row_index) const { return subteam({row_index}); }

    std::string render_row(int i) const {
        std::string out = "(";
        for (int v = 0; v < var_count(); ++v) {
            if (v) out += ",";
            out += causal::to_string(rows[i][v]);
        }
        out += ")";
        return out;
    }
};

// Componentwise team equality. Set-mode supports compare as sets, multiteam
// supports as multisets of rows (hidden keys are identity, not content).
inline bool operator==(const CausalTeam& a, const CausalTeam& b) {
    if (a.vars != b.vars || a.mode != b.mode) return false;
    if (!(a.graph == b.graph) || a.ranges != b.ranges) return false;
    if (a.functions != b.functions) return false;
    std::vector<Row> ra = a.rows, rb = b.rows;
    std::sort(ra.begin(), ra.end());
    std::sort(rb.begin(), rb.end());
    return ra == rb;
}

inline bool operator!=(const CausalTeam& a, const CausalTeam& b) { return !(a == b); }

// ---------------------------------------------------------------------------
// Dependence atoms over raw supports

// =(xs; y) over the given rows: any two rows agreeing on xs agree on y.
// Entries compare syntactically, so formal terms participate as themselves.
inline bool rows_satisfy_dependence(const std::vector<Row>& rows,
                                    const std::vector<int>& xs, int y) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            bool agree = true;
            for (int x : xs)
                if (!(rows[i][x] == rows[j][x])) { agree = false; break; }
            if (agree && !(rows[i][y] == rows[j][y])) return false;
        }
    }
    return true;
}

inline bool satisfies_dependence(const CausalTeam& team,
                                 const std::vector<std::string>& xs,
                                 const std::string& y) {
    std::vector<int> xi;
    for (const auto& x : xs) xi.push_back(team.index_of(x));
    return rows_satisfy_dependence(team.rows, xi, team.index_of(y));
}

inline bool is_recursive(const CausalTeam& team) { return team.graph.acyclic(); }

// ---------------------------------------------------------------------------
// Validation

namespace detail {

inline std::optional<std::pair<std::size_t, std::size_t>>
find_dependence_violation(const std::vector<Row>& rows, const std::vector<int>& xs, int y) {
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            bool agree = true;
            for (int x : xs)
                if (!(rows[i][x] == rows[j][x])) { agree = false; break; }
            if (agree && !(rows[i][y] == rows[j][y])) return std::make_pair(i, j);
        }
    return std::nullopt;
}

} // namespace detail

// Checks the causal-team invariants (a)-(c) and assembles a CausalTeam.
// Violations are reported deterministically: variables alphabetically, rows
// in input order. Set-mode duplicate rows collapse silently.
inline CausalTeam validate(const TeamComponents& c) {
    CausalTeam team;
    team.mode = c.mode;

    // Domain: sorted unique names; "Key" is reserved for multiteam identity.
    for (const auto& [name, range] : c.variables) {
        if (name.empty())
            throw Error(ErrorKind::InvalidComponents, "empty variable name");
        if (name == "Key")
            throw Error(ErrorKind::InvalidComponents, "the variable name 'Key' is reserved");
        if (range.empty())
            throw Error(ErrorKind::InvalidComponents, "empty range for variable " + name);
        team.vars.push_back(name);
    }
    std::vector<std::string> sorted = team.vars;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error(ErrorKind::InvalidComponents, "duplicate variable name");
    team.vars = sorted;

    const int n = team.var_count();
    team.ranges.assign(n, {});
    for (const auto& [name, range] : c.variables) {
        int v = team.index_of(name);
        for (const Value& value : range)
            if (std::count(range.begin(), range.end(), value) != 1)
                throw Error(ErrorKind::InvalidComponents,
                            "duplicate range value for variable " + name);
        team.ranges[v] = range;
    }

    // Graph and function tables from the per-variable parent declarations.
    // Parent tuples are canonicalized to alphabetical order.
    team.graph.parents.assign(n, {});
    for (const auto& fn : c.functions) {
        int v = team.index_of(fn.variable);
        if (team.functions.count(v))
            throw Error(ErrorKind::InvalidComponents,
                        "two function declarations for variable " + fn.variable);
        std::vector<int> ps;
        for (const auto& p : fn.parents) ps.push_back(team.index_of(p));
        std::vector<std::size_t> order(ps.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return ps[a] < ps[b];
        });
        std::vector<int> sorted_ps;
        for (std::size_t i : order) sorted_ps.push_back(ps[i]);
        if (std::adjacent_find(sorted_ps.begin(), sorted_ps.end()) != sorted_ps.end())
            throw Error(ErrorKind::InvalidComponents,
                        "duplicate parent for variable " + fn.variable);

        FunctionTable table;
        table.parents = sorted_ps;
        for (const auto& [args, out] : fn.entries) {
            if (args.size() != sorted_ps.size())
                throw Error(ErrorKind::InvalidComponents,
                            "table arity mismatch for variable " + fn.variable);
            std::vector<Value> key(args.size());
            for (std::size_t i = 0; i < args.size(); ++i) key[i] = args[order[i]];
            for (std::size_t i = 0; i < key.size(); ++i)
                if (!team.range_contains(sorted_ps[i], key[i]))
                    throw Error(ErrorKind::RangeViolation,
                                "table argument " + causal::to_string(key[i]) +
                                    " outside the range of its parent, in the table for " +
                                    fn.variable);
            if (out.is_value() && !team.range_contains(v, out.value()))
                throw Error(ErrorKind::RangeViolation,
                            "table value " + causal::to_string(out.value()) +
                                " outside the range of " + fn.variable);
            if (!table.entries.emplace(std::move(key), out).second)
                throw Error(ErrorKind::InvalidComponents,
                            "duplicate table entry for variable " + fn.variable);
        }
        team.graph.parents[v] = table.parents;
        team.functions.emplace(v, std::move(table));
    }

    // Support rows: total assignments over the domain.
    for (const auto& doc_row : c.rows) {
        Row row(n);
        std::size_t assigned = 0;
        for (const auto& [name, value] : doc_row) {
            if (!team.has_variable(name))
                throw Error(ErrorKind::UnknownVariable, "row assigns unknown variable " + name);
            row[team.index_of(name)] = value;
            ++assigned;
        }
        if (assigned != static_cast<std::size_t>(n))
            throw Error(ErrorKind::InvalidComponents, "row is not total on the domain");
        team.rows.push_back(std::move(row));
    }

    if (team.mode == TeamMode::Set) {
        std::set<Row> seen;
        std::vector<Row> unique;
        for (Row& r : team.rows)
            if (seen.insert(r).second) unique.push_back(std::move(r));
        team.rows = std::move(unique);
    } else {
        team.keys.resize(team.rows.size());
        for (std::size_t i = 0; i < team.keys.size(); ++i)
            team.keys[i] = static_cast<std::int64_t>(i);
    }

    // (a) support values lie in the declared ranges; formal terms are always
    // admissible entries (ranges extend by terms implicitly).
    for (int v = 0; v < n; ++v)
        for (std::size_t i = 0; i < team.rows.size(); ++i) {
            const ExtendedValue& e = team.rows[i][v];
            if (e.is_value() && !team.range_contains(v, e.value()))
                throw Error(ErrorKind::RangeViolation,
                            "row " + std::to_string(i + 1) + " assigns " +
                                causal::to_string(e.value()) + " to " + team.vars[v] +
                                ", outside its range");
        }

    // (b) for every endogenous Y, the support satisfies =(PA_Y; Y).
    for (const auto& [y, table] : team.functions) {
        if (auto pair = detail::find_dependence_violation(team.rows, table.parents, y)) {
            auto [i, j] = *pair;
            throw Error(ErrorKind::DependenceViolation,
                        "rows " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                            " " + team.render_row(static_cast<int>(i)) + " vs " +
                            team.render_row(static_cast<int>(j)) +
                            " agree on the parents of " + team.vars[y] + " but differ on it");
        }
    }

    // (c) rows whose (concrete) parent tuple is in the table must match the
    // table output. Rows carrying formal parent entries are exempt.
    for (const auto& [y, table] : team.functions) {
        for (std::size_t i = 0; i < team.rows.size(); ++i) {
            const Row& row = team.rows[i];
            std::vector<Value> tuple;
            bool concrete = true;
            for (int p : table.parents) {
                if (!row[p].is_value()) { concrete = false; break; }
                tuple.push_back(row[p].value());
            }
            if (!concrete) continue;
            auto it = table.entries.find(tuple);
            if (it != table.entries.end() && !(row[y] == it->second))
                throw Error(ErrorKind::FunctionClash,
                            "row " + std::to_string(i + 1) + " " +
                                team.render_row(static_cast<int>(i)) + " has " + team.vars[y] +
                                " = " + causal::to_string(row[y]) + " but the function gives " +
                                causal::to_string(it->second));
        }
    }

    return team;
}

// ---------------------------------------------------------------------------
// Builder, the ergonomic construction face used by tests and tools

class TeamBuilder {
public:
    TeamBuilder& mode(TeamMode m) {
        components_.mode = m;
        return *this;
    }

    TeamBuilder& variable(std::string name, std::vector<Value> range) {
        components_.variables.emplace_back(std::move(name), std::move(range));
        return *this;
    }

    TeamBuilder& variable(std::string name, std::initializer_list<std::int64_t> range) {
        std::vector<Value> r;
        for (std::int64_t v : range) r.push_back(Value(v));
        return variable(std::move(name), std::move(r));
    }

    TeamBuilder& function(std::string variable, std::vector<std::string> parents,
                          std::vector<std::pair<std::vector<Value>, ExtendedValue>> entries = {}) {
        components_.functions.push_back({std::move(variable), std::move(parents), std::move(entries)});
        return *this;
    }

    TeamBuilder& row(std::map<std::string, ExtendedValue> assignment) {
        components_.rows.push_back(std::move(assignment));
        return *this;
    }

    const TeamComponents& components() const { return components_; }

    CausalTeam build() const { return validate(components_); }

private:
    TeamComponents components_;
};

} // namespace causal
