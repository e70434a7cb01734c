#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace causal {

// A concrete value: an integer or an identifier string. Equality is exact;
// there is no coercion between the two payloads.
using Value = std::variant<std::int64_t, std::string>;

inline Value int_value(std::int64_t v) { return Value(v); }
inline Value str_value(std::string s) { return Value(std::move(s)); }

inline std::string to_string(const Value& v) {
    if (std::holds_alternative<std::int64_t>(v))
        return std::to_string(std::get<std::int64_t>(v));
    return std::get<std::string>(v);
}

struct ExtendedValue;

// A formal term f_X(args): a placeholder produced when the invariant function
// for X is unknown at some parent tuple. Terms nest; equality is syntactic.
struct FormalTerm {
    std::string symbol;               // e.g. "f_Z"
    std::vector<ExtendedValue> args;  // arity = number of parents of X

    friend bool operator==(const FormalTerm& a, const FormalTerm& b);
    friend bool operator<(const FormalTerm& a, const FormalTerm& b);
};

// Either a concrete value or a formal term. The paper's predicate
// "down-arrow s(X)" is is_value() here.
struct ExtendedValue {
    std::variant<Value, FormalTerm> node;

    ExtendedValue() : node(Value(std::int64_t{0})) {}
    ExtendedValue(Value v) : node(std::move(v)) {}
    ExtendedValue(std::int64_t v) : node(Value(v)) {}
    ExtendedValue(int v) : node(Value(std::int64_t{v})) {}
    ExtendedValue(const char* s) : node(Value(std::string(s))) {}
    ExtendedValue(std::string s) : node(Value(std::move(s))) {}
    ExtendedValue(FormalTerm t) : node(std::move(t)) {}

    bool is_value() const { return std::holds_alternative<Value>(node); }
    bool is_term() const { return !is_value(); }
    const Value& value() const { return std::get<Value>(node); }
    const FormalTerm& term() const { return std::get<FormalTerm>(node); }

    friend bool operator==(const ExtendedValue& a, const ExtendedValue& b) {
        return a.node == b.node;
    }
    friend bool operator!=(const ExtendedValue& a, const ExtendedValue& b) {
        return !(a == b);
    }
    friend bool operator<(const ExtendedValue& a, const ExtendedValue& b) {
        return a.node < b.node;
    }
};

inline bool operator==(const FormalTerm& a, const FormalTerm& b) {
    return a.symbol == b.symbol && a.args == b.args;
}

inline bool operator<(const FormalTerm& a, const FormalTerm& b) {
    if (a.symbol != b.symbol) return a.symbol < b.symbol;
    return a.args < b.args;
}

inline std::string to_string(const ExtendedValue& v) {
    if (v.is_value()) return to_string(v.value());
    const FormalTerm& t = v.term();
    std::string out = t.symbol;
    out += '(';
    for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += ',';
        out += to_string(t.args[i]);
    }
    out += ')';
    return out;
}

} // namespace causal
