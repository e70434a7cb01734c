#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "causal/error.hpp"
#include "causal/rational.hpp"
#include "causal/value.hpp"

namespace causal {

// The four object languages, ordered by inclusion from CO upward. CO_NEG, CD
// and PCD are pairwise incomparable extensions of CO.
enum class LanguageTag { CO, CO_NEG, CD, PCD };

inline const char* to_string(LanguageTag t) {
    switch (t) {
        case LanguageTag::CO: return "CO";
        case LanguageTag::CO_NEG: return "CO^neg";
        case LanguageTag::CD: return "CD";
        case LanguageTag::PCD: return "PCD";
    }
    return "?";
}

// Immutable formula tree. Nodes are shared; copying a Formula is cheap.
//
//   Eq / Neq        literals Y=y, Y!=y
//   Dep             dependence atom dep(X1,...,Xn; Y)
//   And / Or        conjunction and tensor disjunction
//   BOr             boolean disjunction (global-verdict "or")
//   Sel             selective implication  theta => psi
//   Cf              counterfactual  X1=x1 & ... & Xn=xn ~> psi
//   DualNeg         dual negation  -psi  (every singleton refutes psi)
//   ContraNeg       contradictory negation  !alpha  (verdict complement)
//   PrCmpConst      Pr(chi) <= eps  /  Pr(chi) >= eps
//   PrCmpPr         Pr(chi) <= Pr(theta)  /  Pr(chi) >= Pr(theta)
class Formula {
public:
    enum class Kind {
        Eq, Neq, Dep, And, Or, BOr, Sel, Cf, DualNeg, ContraNeg, PrCmpConst, PrCmpPr
    };

    struct Node {
        Kind kind;
        std::string var;                                    // Eq, Neq
        Value value;                                        // Eq, Neq
        std::vector<std::string> dep_args;                  // Dep
        std::string dep_target;                             // Dep
        std::vector<Formula> children;                      // binary/unary/Pr operands
        std::vector<std::pair<std::string, Value>> cf_pairs;  // Cf antecedent
        Rational bound;                                     // PrCmpConst
        bool geq = false;                                   // Pr comparison direction
    };

    Formula() = default;

    Kind kind() const { return node_->kind; }
    const Node& node() const { return *node_; }
    const Node* id() const { return node_.get(); }
    const Formula& child(std::size_t i) const { return node_->children[i]; }

    static Formula eq(std::string var, Value v) {
        Node n{Kind::Eq};
        n.var = std::move(var);
        n.value = std::move(v);
        return make(std::move(n));
    }
    static Formula neq(std::string var, Value v) {
        Node n{Kind::Neq};
        n.var = std::move(var);
        n.value = std::move(v);
        return make(std::move(n));
    }
    static Formula dep(std::vector<std::string> args, std::string target) {
        if (args.empty())
            throw Error(ErrorKind::IllFormed, "dependence atom needs at least one argument");
        Node n{Kind::Dep};
        n.dep_args = std::move(args);
        n.dep_target = std::move(target);
        return make(std::move(n));
    }
    static Formula conj(Formula l, Formula r) { return binary(Kind::And, std::move(l), std::move(r)); }
    static Formula tensor(Formula l, Formula r) { return binary(Kind::Or, std::move(l), std::move(r)); }
    static Formula bor(Formula l, Formula r) { return binary(Kind::BOr, std::move(l), std::move(r)); }
    static Formula sel(Formula antecedent, Formula consequent) {
        return binary(Kind::Sel, std::move(antecedent), std::move(consequent));
    }
    static Formula cf(std::vector<std::pair<std::string, Value>> pairs, Formula consequent) {
        if (pairs.empty())
            throw Error(ErrorKind::IllFormed, "counterfactual antecedent must not be empty");
        Node n{Kind::Cf};
        n.cf_pairs = std::move(pairs);
        n.children.push_back(std::move(consequent));
        return make(std::move(n));
    }
    static Formula dual_neg(Formula f) { return unary(Kind::DualNeg, std::move(f)); }
    static Formula contra_neg(Formula f) { return unary(Kind::ContraNeg, std::move(f)); }
    static Formula pr_leq(Formula chi, Rational bound) { return pr_const(std::move(chi), bound, false); }
    static Formula pr_geq(Formula chi, Rational bound) { return pr_const(std::move(chi), bound, true); }
    static Formula pr_leq_pr(Formula chi, Formula theta) {
        return pr_pr(std::move(chi), std::move(theta), false);
    }
    static Formula pr_geq_pr(Formula chi, Formula theta) {
        return pr_pr(std::move(chi), std::move(theta), true);
    }

    bool is_probabilistic_literal() const {
        return kind() == Kind::PrCmpConst || kind() == Kind::PrCmpPr;
    }

    friend bool operator==(const Formula& a, const Formula& b) {
        if (a.node_ == b.node_) return true;
        const Node& x = *a.node_;
        const Node& y = *b.node_;
        return x.kind == y.kind && x.var == y.var && x.value == y.value &&
               x.dep_args == y.dep_args && x.dep_target == y.dep_target &&
               x.cf_pairs == y.cf_pairs && x.bound == y.bound && x.geq == y.geq &&
               x.children == y.children;
    }
    friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

    // Variables mentioned anywhere in the formula.
    void collect_variables(std::vector<std::string>& out) const {
        const Node& n = *node_;
        switch (n.kind) {
            case Kind::Eq:
            case Kind::Neq:
                out.push_back(n.var);
                break;
            case Kind::Dep:
                out.insert(out.end(), n.dep_args.begin(), n.dep_args.end());
                out.push_back(n.dep_target);
                break;
            case Kind::Cf:
                for (const auto& [v, x] : n.cf_pairs) out.push_back(v);
                break;
            default:
                break;
        }
        for (const Formula& c : n.children) c.collect_variables(out);
    }

private:
    static Formula make(Node n) {
        Formula f;
        f.node_ = std::make_shared<const Node>(std::move(n));
        return f;
    }
    static Formula binary(Kind k, Formula l, Formula r) {
        Node n{k};
        n.children.push_back(std::move(l));
        n.children.push_back(std::move(r));
        return make(std::move(n));
    }
    static Formula unary(Kind k, Formula f) {
        Node n{k};
        n.children.push_back(std::move(f));
        return make(std::move(n));
    }
    static Formula pr_const(Formula chi, Rational bound, bool geq) {
        if (bound < Rational(0) || Rational(1) < bound)
            throw Error(ErrorKind::IllFormed, "probability bound outside [0,1]: " + bound.str());
        Node n{Kind::PrCmpConst};
        n.children.push_back(std::move(chi));
        n.bound = bound;
        n.geq = geq;
        return make(std::move(n));
    }
    static Formula pr_pr(Formula chi, Formula theta, bool geq) {
        Node n{Kind::PrCmpPr};
        n.children.push_back(std::move(chi));
        n.children.push_back(std::move(theta));
        n.geq = geq;
        return make(std::move(n));
    }

    std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Language classification

namespace detail {

struct Features {
    bool has_dep = false;
    bool has_dual_neg = false;
    bool has_prob = false;  // probabilistic literals, contradictory negation, boolean disjunction
};

inline void classify_walk(const Formula& f, const std::string& path, Features& feats) {
    using Kind = Formula::Kind;
    const auto& n = f.node();
    auto at = [&](const char* step) { return path.empty() ? std::string(step) : path + "." + step; };
    switch (n.kind) {
        case Kind::Eq:
        case Kind::Neq:
            return;
        case Kind::Dep:
            feats.has_dep = true;
            return;
        case Kind::And:
        case Kind::Or:
            classify_walk(f.child(0), at("left"), feats);
            classify_walk(f.child(1), at("right"), feats);
            return;
        case Kind::BOr:
            feats.has_prob = true;
            classify_walk(f.child(0), at("left"), feats);
            classify_walk(f.child(1), at("right"), feats);
            return;
        case Kind::Sel: {
            Features ante;
            classify_walk(f.child(0), at("antecedent"), ante);
            if (ante.has_dep)
                throw Error(ErrorKind::IllFormed,
                            "dependence atom in a selective-implication antecedent at " +
                                at("antecedent"));
            if (ante.has_prob)
                throw Error(ErrorKind::IllFormed,
                            "probabilistic construct in a selective-implication antecedent at " +
                                at("antecedent"));
            feats.has_dual_neg |= ante.has_dual_neg;
            classify_walk(f.child(1), at("consequent"), feats);
            return;
        }
        case Kind::Cf:
            classify_walk(f.child(0), at("consequent"), feats);
            return;
        case Kind::DualNeg:
            feats.has_dual_neg = true;
            classify_walk(f.child(0), at("operand"), feats);
            return;
        case Kind::ContraNeg:
            feats.has_prob = true;
            if (!f.child(0).is_probabilistic_literal())
                throw Error(ErrorKind::IllFormed,
                            "contradictory negation applies to probabilistic literals only, at " +
                                at("operand"));
            classify_walk(f.child(0), at("operand"), feats);
            return;
        case Kind::PrCmpConst:
        case Kind::PrCmpPr: {
            feats.has_prob = true;
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                Features inner;
                classify_walk(n.children[i], at("pr"), inner);
                if (inner.has_dep || inner.has_prob || inner.has_dual_neg)
                    throw Error(ErrorKind::IllFormed,
                                "Pr takes a CO formula, at " + at("pr"));
            }
            return;
        }
    }
}

} // namespace detail

// The least language containing the formula; throws IllFormed when the
// formula fits none (e.g. a dependence atom next to a probabilistic literal,
// or a dependence atom inside a selection antecedent).
inline LanguageTag classify(const Formula& f) {
    detail::Features feats;
    detail::classify_walk(f, "", feats);
    int extensions = (feats.has_dep ? 1 : 0) + (feats.has_dual_neg ? 1 : 0) +
                     (feats.has_prob ? 1 : 0);
    if (extensions > 1)
        throw Error(ErrorKind::IllFormed,
                    "formula mixes extensions that no single language provides");
    if (feats.has_prob) {
        if (feats.has_dual_neg)
            throw Error(ErrorKind::IllFormed, "dual negation is not part of PCD");
        return LanguageTag::PCD;
    }
    if (feats.has_dep) return LanguageTag::CD;
    if (feats.has_dual_neg) return LanguageTag::CO_NEG;
    return LanguageTag::CO;
}

inline bool in_language(const Formula& f, LanguageTag lang) {
    LanguageTag least = classify(f);
    if (least == LanguageTag::CO) return true;
    return least == lang;
}

// ---------------------------------------------------------------------------
// Printing (canonical concrete syntax; parse() inverts it)

namespace detail {

// Precedence levels for parenthesization, loosest first:
// 0 selective/counterfactual, 1 boolean or, 2 tensor or, 3 and, 4 unary/atom.
inline int precedence_of(Formula::Kind k) {
    using Kind = Formula::Kind;
    switch (k) {
        case Kind::Sel:
        case Kind::Cf: return 0;
        case Kind::BOr: return 1;
        case Kind::Or: return 2;
        case Kind::And: return 3;
        default: return 4;
    }
}

inline void print_walk(const Formula& f, int min_level, std::string& out) {
    using Kind = Formula::Kind;
    const auto& n = f.node();
    int level = precedence_of(n.kind);
    bool parens = level < min_level;
    if (parens) out += '(';
    switch (n.kind) {
        case Kind::Eq:
            out += n.var;
            out += '=';
            out += causal::to_string(n.value);
            break;
        case Kind::Neq:
            out += n.var;
            out += "!=";
            out += causal::to_string(n.value);
            break;
        case Kind::Dep:
            out += "dep(";
            for (std::size_t i = 0; i < n.dep_args.size(); ++i) {
                if (i) out += ',';
                out += n.dep_args[i];
            }
            out += "; ";
            out += n.dep_target;
            out += ')';
            break;
        // The three chain connectives parse left-associatively, so the right
        // operand prints one level tighter to keep round-trips structural.
        case Kind::And:
            print_walk(f.child(0), 3, out);
            out += " & ";
            print_walk(f.child(1), 4, out);
            break;
        case Kind::Or:
            print_walk(f.child(0), 2, out);
            out += " | ";
            print_walk(f.child(1), 3, out);
            break;
        case Kind::BOr:
            print_walk(f.child(0), 1, out);
            out += " || ";
            print_walk(f.child(1), 2, out);
            break;
        case Kind::Sel:
            print_walk(f.child(0), 1, out);
            out += " => ";
            print_walk(f.child(1), 0, out);
            break;
        case Kind::Cf:
            for (std::size_t i = 0; i < n.cf_pairs.size(); ++i) {
                if (i) out += " & ";
                out += n.cf_pairs[i].first;
                out += '=';
                out += causal::to_string(n.cf_pairs[i].second);
            }
            out += " ~> ";
            print_walk(f.child(0), 0, out);
            break;
        case Kind::DualNeg:
            out += '-';
            print_walk(f.child(0), 4, out);
            break;
        case Kind::ContraNeg:
            out += '!';
            print_walk(f.child(0), 4, out);
            break;
        case Kind::PrCmpConst:
            out += "Pr(";
            print_walk(f.child(0), 0, out);
            out += n.geq ? ") >= " : ") <= ";
            out += n.bound.str();
            break;
        case Kind::PrCmpPr:
            out += "Pr(";
            print_walk(f.child(0), 0, out);
            out += n.geq ? ") >= Pr(" : ") <= Pr(";
            print_walk(f.child(1), 0, out);
            out += ')';
            break;
    }
    if (parens) out += ')';
}

} // namespace detail

inline std::string print(const Formula& f) {
    std::string out;
    detail::print_walk(f, 0, out);
    return out;
}

} // namespace causal
