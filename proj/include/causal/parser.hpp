#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "causal/error.hpp"
#include "causal/formula.hpp"

namespace causal {

// Recursive-descent parser for the formula language.
//
//   formula := sel
//   sel     := bor ( ("=>" | "~>") sel )?
//   bor     := tor ("||" tor)*
//   tor     := conj ("|" conj)*
//   conj    := unary ("&" unary)*
//   unary   := "-" unary | "!" unary | atom | "(" formula ")"
//   atom    := VAR "=" VAL | VAR "!=" VAL
//            | "dep(" VAR ("," VAR)* ";" VAR ")"
//            | "Pr(" formula ")" CMP (RATIONAL | "Pr(" formula ")")
//   CMP     := "<=" | ">=" | "=" | "<" | ">"
//
// "<", ">" and "=" on probabilities are sugar and expand at parse time:
//   Pr(c) = e   ->  Pr(c) <= e & Pr(c) >= e
//   Pr(c) < e   ->  Pr(c) <= e & !(Pr(c) >= e)
//   Pr(c) > e   ->  Pr(c) >= e & !(Pr(c) <= e)
class Parser {
public:
    static Formula parse(const std::string& text) { return Parser(text).parse_whole(); }

    // A counterfactual antecedent on its own: a conjunction of equalities.
    static std::vector<std::pair<std::string, Value>> parse_intervention(const std::string& text) {
        Parser p(text);
        Formula f = p.parse_whole();
        std::vector<std::pair<std::string, Value>> pairs;
        if (!flatten_equalities(f, pairs))
            throw Error(ErrorKind::ParseError,
                        "expected a conjunction of equalities, got: " + text);
        return pairs;
    }

private:
    explicit Parser(const std::string& text) : text_(text) {}

    Formula parse_whole() {
        Formula f = parse_sel();
        skip_space();
        if (pos_ != text_.size()) fail("end of input");
        return f;
    }

    Formula parse_sel() {
        Formula left = parse_bor();
        skip_space();
        if (try_consume("=>")) return Formula::sel(std::move(left), parse_sel());
        if (try_consume("~>")) {
            std::vector<std::pair<std::string, Value>> pairs;
            if (!flatten_equalities(left, pairs))
                fail("a conjunction of equalities before '~>'");
            return Formula::cf(std::move(pairs), parse_sel());
        }
        return left;
    }

    Formula parse_bor() {
        Formula f = parse_tor();
        while (skip_space(), try_consume("||")) f = Formula::bor(std::move(f), parse_tor());
        return f;
    }

    Formula parse_tor() {
        Formula f = parse_conj();
        while (true) {
            skip_space();
            // single '|' only; "||" belongs to the level above
            if (peek() == '|' && peek(1) != '|') {
                ++pos_;
                f = Formula::tensor(std::move(f), parse_conj());
            } else {
                break;
            }
        }
        return f;
    }

    Formula parse_conj() {
        Formula f = parse_unary();
        while (skip_space(), try_consume("&")) f = Formula::conj(std::move(f), parse_unary());
        return f;
    }

    Formula parse_unary() {
        skip_space();
        if (try_consume("-")) return Formula::dual_neg(parse_unary());
        if (peek() == '!' && peek(1) != '=') {
            ++pos_;
            return Formula::contra_neg(parse_unary());
        }
        if (try_consume("(")) {
            Formula f = parse_sel();
            expect(")");
            return f;
        }
        return parse_atom();
    }

    Formula parse_atom() {
        skip_space();
        std::size_t at = pos_;
        std::string ident = parse_identifier();
        if (ident == "dep") return parse_dep();
        if (ident == "Pr") {
            skip_space();
            if (peek() == '(') return parse_prob_atom();
        }
        skip_space();
        if (try_consume("!=")) return Formula::neq(std::move(ident), parse_value());
        if (try_consume("=")) return Formula::eq(std::move(ident), parse_value());
        pos_ = at;
        fail("'=' or '!=' after a variable");
        return {};
    }

    Formula parse_dep() {
        expect("(");
        std::vector<std::string> args;
        args.push_back((skip_space(), parse_identifier()));
        while (skip_space(), try_consume(",")) args.push_back((skip_space(), parse_identifier()));
        expect(";");
        std::string target = (skip_space(), parse_identifier());
        expect(")");
        return Formula::dep(std::move(args), std::move(target));
    }

    Formula parse_prob_atom() {
        expect("(");
        Formula chi = parse_sel();
        expect(")");
        skip_space();
        std::string cmp;
        for (const char* op : {"<=", ">=", "<", ">", "="})
            if (try_consume(op)) { cmp = op; break; }
        if (cmp.empty()) fail("a comparison after Pr(...)");
        skip_space();

        if (starts_with("Pr") && follows_identifier_boundary(2)) {
            pos_ += 2;
            expect("(");
            Formula theta = parse_sel();
            expect(")");
            auto leq = Formula::pr_leq_pr(chi, theta);
            auto geq = Formula::pr_geq_pr(chi, theta);
            if (cmp == "<=") return leq;
            if (cmp == ">=") return geq;
            if (cmp == "=") return Formula::conj(leq, geq);
            if (cmp == "<") return Formula::conj(leq, Formula::contra_neg(geq));
            return Formula::conj(geq, Formula::contra_neg(leq));
        }

        Rational bound = parse_rational();
        auto leq = Formula::pr_leq(chi, bound);
        auto geq = Formula::pr_geq(chi, bound);
        if (cmp == "<=") return leq;
        if (cmp == ">=") return geq;
        if (cmp == "=") return Formula::conj(leq, geq);
        if (cmp == "<") return Formula::conj(leq, Formula::contra_neg(geq));
        return Formula::conj(geq, Formula::contra_neg(leq));
    }

    // ------------------------------------------------------------------
    // Tokens

    Value parse_value() {
        skip_space();
        if (peek() == '-' || std::isdigit(static_cast<unsigned char>(peek()))) {
            std::size_t start = pos_;
            if (peek() == '-') ++pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("a number");
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            return Value(static_cast<std::int64_t>(std::stoll(text_.substr(start, pos_ - start))));
        }
        if (is_ident_start(peek())) return Value(parse_identifier());
        fail("a value (number or identifier)");
        return {};
    }

    Rational parse_rational() {
        skip_space();
        std::size_t start = pos_;
        if (peek() == '-') ++pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("a rational bound");
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (peek() == '.' || peek() == '/') {
            ++pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("digits in a rational bound");
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        }
        Rational r = Rational::parse(text_.substr(start, pos_ - start));
        if (r < Rational(0) || Rational(1) < r)
            throw Error(ErrorKind::ParseError,
                        "at position " + std::to_string(start) +
                            ": probability bound outside [0,1]: " + r.str());
        return r;
    }

    std::string parse_identifier() {
        skip_space();
        if (!is_ident_start(peek())) fail("an identifier");
        std::size_t start = pos_;
        while (is_ident_char(peek())) ++pos_;
        return text_.substr(start, pos_ - start);
    }

    static bool is_ident_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    static bool is_ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    static bool flatten_equalities(const Formula& f,
                                   std::vector<std::pair<std::string, Value>>& out) {
        if (f.kind() == Formula::Kind::Eq) {
            out.emplace_back(f.node().var, f.node().value);
            return true;
        }
        if (f.kind() == Formula::Kind::And)
            return flatten_equalities(f.child(0), out) && flatten_equalities(f.child(1), out);
        return false;
    }

    // ------------------------------------------------------------------
    // Input plumbing

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    bool starts_with(const std::string& s) const {
        return text_.compare(pos_, s.size(), s) == 0;
    }

    bool follows_identifier_boundary(std::size_t after) const {
        char c = peek(after);
        return !is_ident_char(c);
    }

    bool try_consume(const std::string& token) {
        skip_space();
        // Guard: '=' must not swallow the front of "=>", and '-'/'<'/'>' are
        // unambiguous single chars here.
        if (token == "=" && (starts_with("=>") || starts_with("=="))) return false;
        if (token == "<" && starts_with("<=")) return false;
        if (token == ">" && starts_with(">=")) return false;
        if (!starts_with(token)) return false;
        pos_ += token.size();
        return true;
    }

    void expect(const std::string& token) {
        if (!try_consume(token)) fail("'" + token + "'");
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& expected) const {
        std::string found = pos_ < text_.size() ? "'" + text_.substr(pos_, 8) + "'" : "end of input";
        throw Error(ErrorKind::ParseError, "at position " + std::to_string(pos_) + ": expected " +
                                               expected + ", found " + found);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

inline Formula parse_formula(const std::string& text) { return Parser::parse(text); }

} // namespace causal
