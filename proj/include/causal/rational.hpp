#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "causal/error.hpp"

namespace causal {

// Exact rational arithmetic on 64-bit components. Probabilities and formula
// bounds are tiny (counts of team rows), so no big-integer backend is needed;
// comparisons go through 128-bit intermediates to stay exact.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t value) : num_(value), den_(1) {}

    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
        if (den_ == 0) throw Error(ErrorKind::InvalidComponents, "rational with zero denominator");
        normalize();
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw Error(ErrorKind::InvalidComponents, "rational division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Accepts "3", "-1/2", "0.25". Decimals are read exactly (0.25 -> 1/4).
    static Rational parse(const std::string& text) {
        auto fail = [&] { throw Error(ErrorKind::ParseError, "bad rational literal: " + text); };
        if (text.empty()) fail();
        std::size_t slash = text.find('/');
        if (slash != std::string::npos) {
            std::int64_t n = parse_int(text.substr(0, slash));
            std::int64_t d = parse_int(text.substr(slash + 1));
            if (d == 0) fail();
            return Rational(n, d);
        }
        std::size_t dot = text.find('.');
        if (dot != std::string::npos) {
            std::string head = text.substr(0, dot), tail = text.substr(dot + 1);
            if (tail.empty()) fail();
            bool neg = !head.empty() && head[0] == '-';
            std::int64_t ip = head.empty() || head == "-" ? 0 : parse_int(neg ? head.substr(1) : head);
            std::int64_t den = 1;
            std::int64_t frac = 0;
            for (char c : tail) {
                if (c < '0' || c > '9') fail();
                frac = frac * 10 + (c - '0');
                den *= 10;
            }
            Rational r = Rational(ip) + Rational(frac, den);
            return neg ? Rational(-r.num_, r.den_) : r;
        }
        return Rational(parse_int(text));
    }

private:
    static std::int64_t parse_int(const std::string& s) {
        try {
            std::size_t pos = 0;
            std::int64_t v = std::stoll(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::ParseError, "bad integer literal: " + s);
        }
    }

    void normalize() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    std::int64_t num_;
    std::int64_t den_;
};

// Exact probability of an event: constructed from raw assignment counts.
using Probability = Rational;

} // namespace causal
