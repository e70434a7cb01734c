#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "causal/error.hpp"
#include "causal/formula.hpp"
#include "causal/intervention.hpp"
#include "causal/rational.hpp"
#include "causal/team.hpp"

namespace causal {

// A restricted or intervened table produced while deciding a formula;
// collected when the caller asks for an explanation.
struct TraceEntry {
    std::string label;
    CausalTeam team;
};

struct EvalOptions {
    // Policy for counterfactuals; defaults to the staged algorithm on
    // recursive teams and to unique-solutions otherwise.
    std::optional<SolutionPolicy> policy;
    std::vector<TraceEntry>* trace = nullptr;
};

namespace detail {

inline SolutionPolicy effective_policy(const CausalTeam& team, const EvalOptions& opts) {
    if (opts.policy) return *opts.policy;
    return team.recursive() ? SolutionPolicy::Recursive : SolutionPolicy::UniqueSolutions;
}

inline bool contains_dep(const Formula& f) {
    if (f.kind() == Formula::Kind::Dep) return true;
    for (const Formula& c : f.node().children)
        if (contains_dep(c)) return true;
    return false;
}

inline bool contains_probabilistic(const Formula& f) {
    using Kind = Formula::Kind;
    switch (f.kind()) {
        case Kind::BOr:
        case Kind::ContraNeg:
        case Kind::PrCmpConst:
        case Kind::PrCmpPr:
            return true;
        default:
            break;
    }
    for (const Formula& c : f.node().children)
        if (contains_probabilistic(c)) return true;
    return false;
}

// The flat fragment (CO^neg): team satisfaction reduces to satisfaction at
// every singleton. Holds under the recursive and unique-solutions policies.
inline bool in_flat_fragment(const Formula& f) {
    using Kind = Formula::Kind;
    switch (f.kind()) {
        case Kind::Dep:
        case Kind::BOr:
        case Kind::ContraNeg:
        case Kind::PrCmpConst:
        case Kind::PrCmpPr:
            return false;
        default:
            break;
    }
    for (const Formula& c : f.node().children)
        if (!in_flat_fragment(c)) return false;
    return true;
}

bool eval_team(const CausalTeam& team, const Formula& f, SolutionPolicy policy,
               std::vector<TraceEntry>* trace);

// Truth over one team context. Subteams of the context are bitmasks over its
// rows; selections stay inside the context, while counterfactuals rebase into
// a fresh context for the intervened team. Split searches memoize on
// (formula node, mask).
class TruthContext {
public:
    TruthContext(const CausalTeam& team, SolutionPolicy policy, std::vector<TraceEntry>* trace)
        : team_(team), policy_(policy), trace_(trace) {
        full_ = team.rows.size() == 64 ? ~std::uint64_t{0}
                                       : ((std::uint64_t{1} << team.rows.size()) - 1);
    }

    bool eval_full(const Formula& f) { return eval(f, full_); }

private:
    static constexpr int kMaxSplitRows = 16;

    bool eval(const Formula& f, std::uint64_t mask) {
        auto key = std::make_pair(static_cast<const void*>(f.id()), mask);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        bool result = eval_uncached(f, mask);
        memo_.emplace(key, result);
        return result;
    }

    bool eval_uncached(const Formula& f, std::uint64_t mask) {
        using Kind = Formula::Kind;
        const auto& n = f.node();
        switch (n.kind) {
            case Kind::Eq:
            case Kind::Neq: {
                int v = team_.index_of(n.var);
                guard_concrete(v);
                for (std::uint64_t m = mask; m; m &= m - 1) {
                    const Row& row = team_.rows[std::countr_zero(m)];
                    bool equal = row[v] == ExtendedValue(n.value);
                    if (n.kind == Kind::Eq ? !equal : equal) return false;
                }
                return true;
            }
            case Kind::Dep: {
                std::vector<int> xs;
                for (const auto& x : n.dep_args) xs.push_back(team_.index_of(x));
                int y = team_.index_of(n.dep_target);
                for (int x : xs) guard_concrete(x);
                guard_concrete(y);
                std::vector<Row> rows;
                for (std::uint64_t m = mask; m; m &= m - 1)
                    rows.push_back(team_.rows[std::countr_zero(m)]);
                return rows_satisfy_dependence(rows, xs, y);
            }
            case Kind::And:
                return eval(f.child(0), mask) && eval(f.child(1), mask);
            case Kind::BOr:
                return eval(f.child(0), mask) || eval(f.child(1), mask);
            case Kind::ContraNeg:
                return !eval(f.child(0), mask);
            case Kind::DualNeg: {
                for (std::uint64_t m = mask; m; m &= m - 1)
                    if (eval(f.child(0), std::uint64_t{1} << std::countr_zero(m))) return false;
                return true;
            }
            case Kind::Or:
                return eval_tensor(f, mask);
            case Kind::Sel: {
                std::uint64_t selected = 0;
                for (std::uint64_t m = mask; m; m &= m - 1) {
                    int i = std::countr_zero(m);
                    if (eval(f.child(0), std::uint64_t{1} << i)) selected |= std::uint64_t{1} << i;
                }
                if (trace_ && mask == full_)
                    trace_->push_back({"T^{" + print(f.child(0)) + "}", materialize(selected)});
                return eval(f.child(1), selected);
            }
            case Kind::Cf: {
                Intervention iv;
                for (const auto& [name, value] : n.cf_pairs)
                    iv.pairs.emplace_back(team_.index_of(name), value);
                if (!iv.consistent()) return true;
                if (!team_.fully_defined())
                    throw Error(ErrorKind::UnsupportedPolicy,
                                "counterfactual on a partially defined team; run completion first");
                CausalTeam intervened = intervene(materialize(mask), iv, policy_);
                if (trace_ && mask == full_) {
                    std::string label = "T_{";
                    for (std::size_t i = 0; i < n.cf_pairs.size(); ++i) {
                        if (i) label += " & ";
                        label += n.cf_pairs[i].first + "=" + causal::to_string(n.cf_pairs[i].second);
                    }
                    trace_->push_back({label + "}", intervened});
                }
                return eval_team(intervened, f.child(0), policy_, mask == full_ ? trace_ : nullptr);
            }
            case Kind::PrCmpConst: {
                int total = std::popcount(mask);
                if (total == 0) return false;
                Rational p(count_rows(f.child(0), mask), total);
                return n.geq ? p >= n.bound : p <= n.bound;
            }
            case Kind::PrCmpPr: {
                int total = std::popcount(mask);
                if (total == 0) return false;
                Rational pc(count_rows(f.child(0), mask), total);
                Rational pt(count_rows(f.child(1), mask), total);
                return n.geq ? pc >= pt : pc <= pt;
            }
        }
        throw Error(ErrorKind::NotSupported, "unhandled formula node");
    }

    // Tensor disjunction: some pair of subteams covering the support satisfies
    // the two disjuncts. Flat disjuncts reduce to a per-row check; otherwise
    // the cover search is exponential in the support size.
    bool eval_tensor(const Formula& f, std::uint64_t mask) {
        bool flat_ok = policy_ != SolutionPolicy::AtMostUnique && is_flat(f);
        if (flat_ok) {
            for (std::uint64_t m = mask; m; m &= m - 1) {
                std::uint64_t bit = std::uint64_t{1} << std::countr_zero(m);
                if (!eval(f.child(0), bit) && !eval(f.child(1), bit)) return false;
            }
            return true;
        }
        int k = std::popcount(mask);
        if (k > kMaxSplitRows)
            throw Error(ErrorKind::NotSupported,
                        "tensor disjunction over " + std::to_string(k) +
                            " rows exceeds the split-search bound");
        std::vector<std::uint64_t> bits;
        for (std::uint64_t m = mask; m; m &= m - 1)
            bits.push_back(std::uint64_t{1} << std::countr_zero(m));
        // Every row goes left, right, or both.
        std::vector<int> trits(bits.size(), 0);
        while (true) {
            std::uint64_t left = 0, right = 0;
            for (std::size_t i = 0; i < bits.size(); ++i) {
                if (trits[i] != 1) left |= bits[i];
                if (trits[i] != 0) right |= bits[i];
            }
            if (eval(f.child(0), left) && eval(f.child(1), right)) return true;
            std::size_t pos = 0;
            while (pos < trits.size() && trits[pos] == 2) trits[pos++] = 0;
            if (pos == trits.size()) return false;
            ++trits[pos];
        }
    }

    int count_rows(const Formula& chi, std::uint64_t mask) {
        int count = 0;
        for (std::uint64_t m = mask; m; m &= m - 1)
            if (eval(chi, std::uint64_t{1} << std::countr_zero(m))) ++count;
        return count;
    }

    // The truth relation is undefined as soon as it must read a formal entry;
    // the check covers the whole context column so verdicts cannot depend on
    // evaluation order.
    void guard_concrete(int v) {
        if (team_.has_formal_entry(v))
            throw Error(ErrorKind::FormalEntryEncountered,
                        "column " + team_.vars[v] +
                            " carries formal entries; use falsifiability or admissibility");
    }

    CausalTeam materialize(std::uint64_t mask) const {
        std::vector<int> idx;
        for (std::uint64_t m = mask; m; m &= m - 1) idx.push_back(std::countr_zero(m));
        return team_.subteam(idx);
    }

    bool is_flat(const Formula& f) {
        auto it = flat_cache_.find(f.id());
        if (it != flat_cache_.end()) return it->second;
        bool flat = in_flat_fragment(f);
        flat_cache_.emplace(f.id(), flat);
        return flat;
    }

    const CausalTeam& team_;
    SolutionPolicy policy_;
    std::vector<TraceEntry>* trace_;
    std::uint64_t full_;
    std::map<std::pair<const void*, std::uint64_t>, bool> memo_;
    std::map<const void*, bool> flat_cache_;
};

// Entry point shared by the public operations: a masked context for supports
// up to 64 rows, and a structural fallback for larger supports where only the
// flat fragment of tensor disjunction is available.
inline bool eval_team(const CausalTeam& team, const Formula& f, SolutionPolicy policy,
                      std::vector<TraceEntry>* trace) {
    using Kind = Formula::Kind;
    if (team.rows.size() <= 64) return TruthContext(team, policy, trace).eval_full(f);

    const auto& n = f.node();
    switch (n.kind) {
        case Kind::And:
            return eval_team(team, f.child(0), policy, trace) &&
                   eval_team(team, f.child(1), policy, trace);
        case Kind::BOr:
            return eval_team(team, f.child(0), policy, trace) ||
                   eval_team(team, f.child(1), policy, trace);
        case Kind::ContraNeg:
            return !eval_team(team, f.child(0), policy, trace);
        case Kind::Eq:
        case Kind::Neq:
        case Kind::DualNeg: {
            for (std::size_t i = 0; i < team.rows.size(); ++i) {
                CausalTeam single = team.singleton(static_cast<int>(i));
                bool verdict = eval_team(single, n.kind == Kind::DualNeg ? f.child(0) : f, policy,
                                         nullptr);
                if (n.kind == Kind::DualNeg ? verdict : !verdict) return false;
            }
            return true;
        }
        case Kind::Dep: {
            std::vector<int> xs;
            for (const auto& x : n.dep_args) xs.push_back(team.index_of(x));
            int y = team.index_of(n.dep_target);
            for (int v : xs)
                if (team.has_formal_entry(v))
                    throw Error(ErrorKind::FormalEntryEncountered,
                                "column " + team.vars[v] + " carries formal entries");
            if (team.has_formal_entry(y))
                throw Error(ErrorKind::FormalEntryEncountered,
                            "column " + team.vars[y] + " carries formal entries");
            return rows_satisfy_dependence(team.rows, xs, y);
        }
        case Kind::Or: {
            if (policy != SolutionPolicy::AtMostUnique && in_flat_fragment(f)) {
                for (std::size_t i = 0; i < team.rows.size(); ++i) {
                    CausalTeam single = team.singleton(static_cast<int>(i));
                    if (!eval_team(single, f.child(0), policy, nullptr) &&
                        !eval_team(single, f.child(1), policy, nullptr))
                        return false;
                }
                return true;
            }
            throw Error(ErrorKind::NotSupported,
                        "tensor disjunction split search needs a support of at most 64 rows");
        }
        case Kind::Sel: {
            std::vector<int> selected;
            for (std::size_t i = 0; i < team.rows.size(); ++i)
                if (eval_team(team.singleton(static_cast<int>(i)), f.child(0), policy, nullptr))
                    selected.push_back(static_cast<int>(i));
            CausalTeam sub = team.subteam(selected);
            if (trace) trace->push_back({"T^{" + print(f.child(0)) + "}", sub});
            return eval_team(sub, f.child(1), policy, trace);
        }
        case Kind::Cf: {
            Intervention iv = Intervention::over(team, n.cf_pairs);
            if (!iv.consistent()) return true;
            if (!team.fully_defined())
                throw Error(ErrorKind::UnsupportedPolicy,
                            "counterfactual on a partially defined team; run completion first");
            CausalTeam intervened = intervene(team, iv, policy);
            return eval_team(intervened, f.child(0), policy, trace);
        }
        case Kind::PrCmpConst:
        case Kind::PrCmpPr: {
            if (team.rows.empty()) return false;
            auto count = [&](const Formula& chi) {
                std::int64_t c = 0;
                for (std::size_t i = 0; i < team.rows.size(); ++i)
                    if (eval_team(team.singleton(static_cast<int>(i)), chi, policy, nullptr)) ++c;
                return c;
            };
            Rational pc(count(f.child(0)), static_cast<std::int64_t>(team.rows.size()));
            Rational bound = n.kind == Kind::PrCmpConst
                                 ? n.bound
                                 : Rational(count(f.child(1)),
                                            static_cast<std::int64_t>(team.rows.size()));
            return n.geq ? pc >= bound : pc <= bound;
        }
    }
    throw Error(ErrorKind::NotSupported, "unhandled formula node");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Public operations

// Truth: T |= phi.
inline bool satisfies(const CausalTeam& team, const Formula& f, const EvalOptions& opts = {}) {
    classify(f);
    return detail::eval_team(team, f, detail::effective_policy(team, opts), opts.trace);
}

// The causal subteam T^theta: same graph, ranges and functions, support cut
// down to the rows classically satisfying the selector.
inline CausalTeam restricted(const CausalTeam& team, const Formula& selector,
                             const EvalOptions& opts = {}) {
    if (detail::contains_dep(selector))
        throw Error(ErrorKind::IllFormedSelector, "selector contains a dependence atom");
    if (detail::contains_probabilistic(selector))
        throw Error(ErrorKind::IllFormedSelector, "selector contains a probabilistic construct");
    SolutionPolicy policy = detail::effective_policy(team, opts);
    std::vector<int> keep;
    for (std::size_t i = 0; i < team.rows.size(); ++i)
        if (detail::eval_team(team.singleton(static_cast<int>(i)), selector, policy, nullptr))
            keep.push_back(static_cast<int>(i));
    return team.subteam(keep);
}

// Pr_T(chi): the fraction of support rows whose singleton subteam satisfies
// chi. Multiteam rows count with their multiplicity.
inline Probability probability(const CausalTeam& team, const Formula& chi,
                               const EvalOptions& opts = {}) {
    if (classify(chi) != LanguageTag::CO)
        throw Error(ErrorKind::NotCO, "probabilities apply to CO formulas");
    if (team.rows.empty())
        throw Error(ErrorKind::EmptySupport, "probability over an empty support");
    SolutionPolicy policy = detail::effective_policy(team, opts);
    std::int64_t count = 0;
    for (std::size_t i = 0; i < team.rows.size(); ++i)
        if (detail::eval_team(team.singleton(static_cast<int>(i)), chi, policy, nullptr)) ++count;
    return Probability(count, static_cast<std::int64_t>(team.rows.size()));
}

// ---------------------------------------------------------------------------
// Falsifiability

namespace detail {

// |=f over one team context; masks as in TruthContext. The relation is
// monotone in the support, so the universal disjunction clause only needs
// the 2^n two-sided partitions rather than all covers.
class FalsContext {
public:
    FalsContext(const CausalTeam& team, SolutionPolicy policy) : team_(team), policy_(policy) {
        full_ = team.rows.size() == 64 ? ~std::uint64_t{0}
                                       : ((std::uint64_t{1} << team.rows.size()) - 1);
    }

    bool eval_full(const Formula& f) { return eval(f, full_); }

private:
    static constexpr int kMaxPartitionRows = 20;

    bool eval(const Formula& f, std::uint64_t mask) {
        auto key = std::make_pair(static_cast<const void*>(f.id()), mask);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        bool result = eval_uncached(f, mask);
        memo_.emplace(key, result);
        return result;
    }

    bool eval_uncached(const Formula& f, std::uint64_t mask) {
        using Kind = Formula::Kind;
        const auto& n = f.node();
        switch (n.kind) {
            case Kind::Eq:
            case Kind::Neq: {
                int v = team_.index_of(n.var);
                for (std::uint64_t m = mask; m; m &= m - 1) {
                    const Row& row = team_.rows[std::countr_zero(m)];
                    if (!row[v].is_value()) continue;
                    bool equal = row[v].value() == n.value;
                    if (n.kind == Kind::Eq ? !equal : equal) return true;
                }
                return false;
            }
            case Kind::Dep: {
                std::vector<int> xs;
                for (const auto& x : n.dep_args) xs.push_back(team_.index_of(x));
                int y = team_.index_of(n.dep_target);
                std::vector<int> idx;
                for (std::uint64_t m = mask; m; m &= m - 1) idx.push_back(std::countr_zero(m));
                for (std::size_t a = 0; a < idx.size(); ++a)
                    for (std::size_t b = a + 1; b < idx.size(); ++b) {
                        const Row& ra = team_.rows[idx[a]];
                        const Row& rb = team_.rows[idx[b]];
                        if (!ra[y].is_value() || !rb[y].is_value()) continue;
                        bool agree = true;
                        for (int x : xs)
                            if (!(ra[x] == rb[x])) { agree = false; break; }
                        if (agree && !(ra[y].value() == rb[y].value())) return true;
                    }
                return false;
            }
            case Kind::And:
                return eval(f.child(0), mask) || eval(f.child(1), mask);
            case Kind::Or: {
                int k = std::popcount(mask);
                if (k > kMaxPartitionRows)
                    throw Error(ErrorKind::NotSupported,
                                "falsifiability partition search exceeds " +
                                    std::to_string(kMaxPartitionRows) + " rows");
                std::vector<std::uint64_t> bits;
                for (std::uint64_t m = mask; m; m &= m - 1)
                    bits.push_back(std::uint64_t{1} << std::countr_zero(m));
                for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << k); ++pick) {
                    std::uint64_t left = 0;
                    for (int i = 0; i < k; ++i)
                        if (pick & (std::uint64_t{1} << i)) left |= bits[i];
                    if (!eval(f.child(0), left) && !eval(f.child(1), mask & ~left)) return false;
                }
                return true;
            }
            case Kind::Sel: {
                // Cautious selection: only rows that definitely satisfy the
                // antecedent take part; rows whose antecedent touches a formal
                // entry stay out, so no falsification rests on uncertain rows.
                std::vector<std::string> vars;
                f.child(0).collect_variables(vars);
                std::uint64_t selected = 0;
                for (std::uint64_t m = mask; m; m &= m - 1) {
                    int i = std::countr_zero(m);
                    const Row& row = team_.rows[i];
                    bool concrete = true;
                    for (const auto& v : vars)
                        if (!row[team_.index_of(v)].is_value()) { concrete = false; break; }
                    if (!concrete) continue;
                    try {
                        if (eval_team(team_.singleton(i), f.child(0), policy_, nullptr))
                            selected |= std::uint64_t{1} << i;
                    } catch (const Error& e) {
                        if (e.kind() != ErrorKind::FormalEntryEncountered) throw;
                    }
                }
                return eval(f.child(1), selected);
            }
            case Kind::Cf: {
                Intervention iv = Intervention::over(team_, n.cf_pairs);
                if (!iv.consistent()) return false;  // the counterfactual holds by fiat
                CausalTeam intervened = intervene(materialize(mask), iv, policy_);
                return FalsContext(intervened, policy_).eval_full(f.child(0));
            }
            default:
                throw Error(ErrorKind::NotSupported,
                            "falsifiability is defined for CD formulas only");
        }
    }

    CausalTeam materialize(std::uint64_t mask) const {
        std::vector<int> idx;
        for (std::uint64_t m = mask; m; m &= m - 1) idx.push_back(std::countr_zero(m));
        return team_.subteam(idx);
    }

    const CausalTeam& team_;
    SolutionPolicy policy_;
    std::uint64_t full_;
    std::map<std::pair<const void*, std::uint64_t>, bool> memo_;
};

} // namespace detail

// Falsifiability: T |=f phi, for phi in CD. The team may carry formal
// entries; assertions of falsity rest on concrete witnesses only.
inline bool falsifies(const CausalTeam& team, const Formula& f, const EvalOptions& opts = {}) {
    LanguageTag lang = classify(f);
    if (lang == LanguageTag::PCD)
        throw Error(ErrorKind::NotSupported, "falsifiability is not defined for PCD");
    if (lang == LanguageTag::CO_NEG)
        throw Error(ErrorKind::NotSupported, "falsifiability has no dual-negation clause");
    if (team.rows.size() > 64)
        throw Error(ErrorKind::NotSupported, "falsifiability supports up to 64 rows");
    return detail::FalsContext(team, detail::effective_policy(team, opts)).eval_full(f);
}

// ---------------------------------------------------------------------------
// Admissibility

namespace detail {

inline bool row_admits_literal(const CausalTeam& team, const Row& row, const Formula& lit) {
    int v = team.index_of(lit.node().var);
    if (!row[v].is_value()) return true;
    bool equal = row[v].value() == lit.node().value;
    return lit.kind() == Formula::Kind::Eq ? equal : !equal;
}

inline void flatten_disjuncts(const Formula& f, std::vector<Formula>& out) {
    if (f.kind() == Formula::Kind::Or) {
        flatten_disjuncts(f.child(0), out);
        flatten_disjuncts(f.child(1), out);
    } else {
        out.push_back(f);
    }
}

inline void flatten_literals(const Formula& f, std::vector<Formula>& out) {
    if (f.kind() == Formula::Kind::And) {
        flatten_literals(f.child(0), out);
        flatten_literals(f.child(1), out);
    } else if (f.kind() == Formula::Kind::Eq || f.kind() == Formula::Kind::Neq) {
        out.push_back(f);
    } else {
        throw Error(ErrorKind::NotDNF,
                    "admissibility covers atoms and classical DNF formulas only");
    }
}

} // namespace detail

// Admissibility: T |=a phi, for atoms and classical DNF formulas. For DNF,
// the chosen subteams must jointly cover the support; each disjunct's
// subteam is cut by per-row admission of the literals plus the syntactic
// column-disequality conditions on clashing literal pairs.
inline bool admits(const CausalTeam& team, const Formula& f) {
    using Kind = Formula::Kind;
    if (f.kind() == Kind::Eq || f.kind() == Kind::Neq) {
        for (const Row& row : team.rows)
            if (!detail::row_admits_literal(team, row, f)) return false;
        return true;
    }
    if (f.kind() == Kind::Dep) {
        const auto& n = f.node();
        std::vector<int> xs;
        for (const auto& x : n.dep_args) xs.push_back(team.index_of(x));
        int y = team.index_of(n.dep_target);
        for (std::size_t a = 0; a < team.rows.size(); ++a)
            for (std::size_t b = a + 1; b < team.rows.size(); ++b) {
                const Row& ra = team.rows[a];
                const Row& rb = team.rows[b];
                if (!ra[y].is_value() || !rb[y].is_value()) continue;
                bool agree = true;
                for (int x : xs)
                    if (!(ra[x] == rb[x])) { agree = false; break; }
                if (agree && !(ra[y].value() == rb[y].value())) return false;
            }
        return true;
    }

    std::vector<Formula> disjuncts;
    detail::flatten_disjuncts(f, disjuncts);
    std::vector<std::vector<Formula>> clauses;
    for (const Formula& d : disjuncts) {
        std::vector<Formula> lits;
        detail::flatten_literals(d, lits);
        clauses.push_back(std::move(lits));
    }

    for (const Row& row : team.rows) {
        bool covered = false;
        for (const auto& lits : clauses) {
            bool ok = true;
            for (const Formula& lit : lits)
                if (!detail::row_admits_literal(team, row, lit)) { ok = false; break; }
            // Clashing pairs force the two columns apart on every row of the
            // subteam, by syntactic disequality of the entries.
            for (std::size_t j = 0; ok && j < lits.size(); ++j)
                for (std::size_t k = 0; ok && k < lits.size(); ++k) {
                    if (j == k) continue;
                    const auto& a = lits[j].node();
                    const auto& b = lits[k].node();
                    bool clash = false;
                    if (lits[j].kind() == Formula::Kind::Eq && lits[k].kind() == Formula::Kind::Eq)
                        clash = !(a.value == b.value);
                    if (lits[j].kind() == Formula::Kind::Eq && lits[k].kind() == Formula::Kind::Neq)
                        clash = a.value == b.value;
                    if (clash &&
                        row[team.index_of(a.var)] == row[team.index_of(b.var)])
                        ok = false;
                }
            if (ok) { covered = true; break; }
        }
        if (!covered) return false;
    }
    return true;
}

} // namespace causal
