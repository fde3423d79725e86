#include "ccnet/rational.hpp"

#include <cctype>

namespace ccnet {

Rat parse_rational(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    std::string s = text;
    // Strip surrounding whitespace.
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError("empty rational literal");
    s = s.substr(b, e - b + 1);

    auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find('/') != std::string::npos)
            throw ParseError("rational literal mixes '.' and '/': " + text);
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        size_t frac_len = s.size() - dot - 1;
        bool neg = false;
        if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
            neg = digits[0] == '-';
            digits.erase(digits.begin());
        }
        if (digits.empty()) throw ParseError("bad decimal literal: " + text);
        for (char c : digits)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw ParseError("bad decimal literal: " + text);
        mpz_class num(digits, 10);
        mpz_class den = 1;
        for (size_t i = 0; i < frac_len; ++i) den *= 10;
        Rat q(neg ? -num : num, den);
        q.canonicalize();
        return q;
    }

    mpq_t raw;
    mpq_init(raw);
    if (mpq_set_str(raw, s.c_str(), 10) != 0) {
        mpq_clear(raw);
        throw ParseError("bad rational literal: " + text);
    }
    Rat q(raw);
    mpq_clear(raw);
    if (q.get_den() == 0) throw ParseError("zero denominator: " + text);
    q.canonicalize();
    return q;
}

std::string rational_str(const Rat& q) {
    return q.get_str();
}

}  // namespace ccnet
