#include "dilatekit/rational.hpp"

#include <cctype>

#include "dilatekit/errors.hpp"

namespace dilatekit {

namespace {

bool is_decimal_integer(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
    if (!is_decimal_integer(s))
        throw ParseError("not a rational literal: \"" + std::string(whole) + "\"");
    if (s.front() == '+') s.remove_prefix(1);
    return mpz_class(std::string(s), 10);
}

}  // namespace

Rat::Rat(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DenominatorZero("zero denominator in " + num.get_str() + "/0");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rat(parse_integer(text, text), mpz_class(1));
    return Rat(parse_integer(text.substr(0, slash), text), parse_integer(text.substr(slash + 1), text));
}

std::string Rat::to_string() const {
    if (is_integer()) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rat Rat::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    Rat r;
    r.value_ = 1 / value_;
    return r;
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw DivisionByZero("division by zero");
    value_ /= o.value_;
    return *this;
}

Rat Rat::operator-() const {
    Rat r;
    r.value_ = -value_;
    return r;
}

}  // namespace dilatekit
