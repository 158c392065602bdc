#include "rr/rational.hpp"

#include <stdexcept>

namespace rr {

std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

namespace {

mpz_class parse_int(std::string_view s, std::string_view whole) {
    if (s.empty()) throw std::invalid_argument("empty number in '" + std::string(whole) + "'");
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') i = 1;
    if (i == s.size()) throw std::invalid_argument("bad number '" + std::string(whole) + "'");
    for (std::size_t k = i; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9') throw std::invalid_argument("bad number '" + std::string(whole) + "'");
    std::string t(s[0] == '+' ? s.substr(1) : s);
    return mpz_class(t, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        mpz_class num = parse_int(text.substr(0, slash), text);
        mpz_class den = parse_int(text.substr(slash + 1), text);
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    auto dot = text.find('.');
    if (dot != std::string_view::npos) {
        std::string_view ip = text.substr(0, dot), fp = text.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        std::string digits(ip);
        if (digits == "-" || digits == "+" || digits.empty()) digits += "0";
        if (fp.empty()) throw std::invalid_argument("bad number '" + std::string(text) + "'");
        for (char c : fp)
            if (c < '0' || c > '9') throw std::invalid_argument("bad number '" + std::string(text) + "'");
        mpz_class whole = parse_int(digits, text);
        mpz_class frac(std::string(fp), 10);
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
        mpz_class num = abs(whole) * scale + frac;
        if (neg) num = -num;
        Rational q(num, scale);
        q.canonicalize();
        return q;
    }
    return Rational(parse_int(text, text));
}

}  // namespace rr
