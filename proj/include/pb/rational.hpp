#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pb {

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Exact rational number. Always in lowest terms with positive denominator.
/// Construction from floating point is deliberately impossible.
class Rat {
public:
    using Int = boost::multiprecision::cpp_int;

    Rat() : v_(0) {}
    Rat(long long n) : v_(n) {}
    Rat(const Int& n) : v_(n) {}
    Rat(Int num, Int den) {
        if (den == 0) throw std::domain_error("Rat: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        v_ = boost::multiprecision::cpp_rational(num, den);
    }
    Rat(long long num, long long den) : Rat(Int(num), Int(den)) {}

    template <std::floating_point F> Rat(F) = delete;

    /// Accepts "p", "-p", "p/q" and exact decimals like "0.9" or "-2.125".
    static Rat parse(std::string_view text);

    Int numerator() const { return boost::multiprecision::numerator(v_); }
    Int denominator() const { return boost::multiprecision::denominator(v_); }
    bool is_zero() const { return v_.is_zero(); }
    bool is_integer() const { return denominator() == 1; }

    /// Canonical form "p/q", q >= 1, lowest terms; integers print as "p/1".
    std::string str() const {
        return numerator().str() + "/" + denominator().str();
    }

    /// Largest integer <= value.
    Int floor() const {
        Int q = numerator() / denominator();
        if (numerator() < 0 && q * denominator() != numerator()) --q;
        return q;
    }

    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw std::domain_error("Rat: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend Rat operator-(const Rat& a) { Rat r; r.v_ = -a.v_; return r; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

private:
    boost::multiprecision::cpp_rational v_;
};

inline Rat Rat::parse(std::string_view text) {
    auto fail = [&] {
        throw ParseError("not a rational: '" + std::string(text) + "'");
    };
    if (text.empty()) fail();
    std::size_t pos = 0;
    bool negative = false;
    if (text[0] == '+' || text[0] == '-') {
        negative = text[0] == '-';
        pos = 1;
    }
    auto digits = [&](std::string& out) {
        std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9')
            out += text[pos++];
        if (pos == start) fail();
    };
    std::string ipart;
    digits(ipart);
    Int num(ipart), den(1);
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        std::string fpart;
        digits(fpart);
        for (char c : fpart) {
            num = num * 10 + (c - '0');
            den *= 10;
        }
    } else if (pos < text.size() && text[pos] == '/') {
        ++pos;
        std::string qpart;
        digits(qpart);
        den = Int(qpart);
        if (den == 0) fail();
    }
    if (pos != text.size()) fail();
    if (negative) num = -num;
    return Rat(num, den);
}

} // namespace pb
