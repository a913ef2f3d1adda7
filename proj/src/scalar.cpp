// SPDX-License-Identifier: MIT
#include "brank/scalar.hpp"

#include <cctype>

namespace brank {

std::string_view field_name(Field f) {
    return f == Field::rational ? "rational" : "float64";
}

Field parse_field(std::string_view name) {
    if (name == "rational") return Field::rational;
    if (name == "float64") return Field::float64;
    throw DataError("unknown field '" + std::string(name) + "'");
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
    std::string_view body = s;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
    if (!all_digits(body)) throw DataError("malformed rational '" + std::string(whole) + "'");
    std::string str(s);
    if (str.front() == '+') str.erase(0, 1);
    return Integer(str, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    if (text.empty()) throw DataError("empty rational literal");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Integer num = parse_integer(text.substr(0, slash), text);
        std::string_view den_str = text.substr(slash + 1);
        if (!all_digits(den_str)) throw DataError("malformed rational '" + std::string(text) + "'");
        Integer den(std::string(den_str), 10);
        if (den == 0) throw DataError("zero denominator in '" + std::string(text) + "'");
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        Integer whole = parse_integer(text.substr(0, dot), text);
        std::string_view frac = text.substr(dot + 1);
        if (!all_digits(frac)) throw DataError("malformed rational '" + std::string(text) + "'");
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        Integer f(std::string(frac), 10);
        bool negative = !text.empty() && text.front() == '-';
        Rational q(whole * scale + (negative ? -f : f), scale);
        q.canonicalize();
        return q;
    }
    return Rational(parse_integer(text, text));
}

}  // namespace brank
