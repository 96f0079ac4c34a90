#include "ssc/rational.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace ssc {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::string_view strip_sign(std::string_view s, bool& negative) {
    negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    return s;
}

Rational parse_decimal(std::string_view text) {
    bool negative = false;
    std::string_view s = strip_sign(text, negative);

    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        bool exp_negative = false;
        std::string_view exp_digits = strip_sign(s.substr(e + 1), exp_negative);
        if (!all_digits(exp_digits) || exp_digits.size() > 6)
            throw std::invalid_argument("bad exponent in '" + std::string(text) + "'");
        exponent = std::stol(std::string(exp_digits));
        if (exp_negative) exponent = -exponent;
        s = s.substr(0, e);
    }

    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view whole = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac)))
            throw std::invalid_argument("not a number: '" + std::string(text) + "'");
        digits = std::string(whole) + std::string(frac);
        exponent -= static_cast<long>(frac.size());
    } else {
        if (!all_digits(s)) throw std::invalid_argument("not a number: '" + std::string(text) + "'");
        digits = std::string(s);
    }

    Integer mantissa(digits, 10);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Rational r = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("empty rational literal");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        bool num_negative = false;
        bool den_negative = false;
        std::string_view num = strip_sign(text.substr(0, slash), num_negative);
        std::string_view den = strip_sign(text.substr(slash + 1), den_negative);
        if (!all_digits(num) || !all_digits(den))
            throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
        Integer p(std::string(num), 10);
        Integer q(std::string(den), 10);
        if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        if (num_negative != den_negative) p = -p;
        Rational r(p, q);
        r.canonicalize();
        return r;
    }
    return parse_decimal(text);
}

std::string to_string(const Rational& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

}  // namespace ssc
