#include "capdom/rational.hpp"

#include "capdom/errors.hpp"

#include <cctype>

namespace capdom {

namespace {

bool is_integer_literal(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

} // namespace

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");

    auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::string num = text.substr(0, slash);
        std::string den = text.substr(slash + 1);
        if (!is_integer_literal(num) || !is_integer_literal(den))
            throw ParseError("malformed rational literal: " + text);
        Rational r;
        if (r.set_str(num + "/" + den, 10) != 0)
            throw ParseError("malformed rational literal: " + text);
        if (r.get_den() == 0) throw ParseError("zero denominator: " + text);
        r.canonicalize();
        return r;
    }

    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string intpart = text.substr(0, dot);
        std::string fracpart = text.substr(dot + 1);
        bool neg = !intpart.empty() && intpart[0] == '-';
        if (!intpart.empty() && (intpart[0] == '-' || intpart[0] == '+'))
            intpart = intpart.substr(1);
        if (intpart.empty()) intpart = "0";
        if (fracpart.empty()) fracpart = "0";
        if (!is_integer_literal(intpart) || !is_integer_literal(fracpart))
            throw ParseError("malformed decimal literal: " + text);
        BigInt scale = 1;
        for (std::size_t i = 0; i < fracpart.size(); ++i) scale *= 10;
        BigInt digits(intpart + fracpart);
        Rational r(digits, scale);
        r.canonicalize();
        if (neg) r = -r;
        return r;
    }

    if (!is_integer_literal(text))
        throw ParseError("malformed rational literal: " + text);
    Rational r;
    r.set_str(text, 10);
    r.canonicalize();
    return r;
}

std::string format_rational(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

BigInt ceil_rational(const Rational& r) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

long long ceil_to_ll(const Rational& r) {
    BigInt q = ceil_rational(r);
    if (!q.fits_slong_p())
        throw ValidationError("multiplicity does not fit a machine integer");
    return static_cast<long long>(q.get_si());
}

} // namespace capdom
