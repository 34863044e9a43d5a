#include "choicelab/rational.hpp"

#include <cctype>

namespace choicelab {

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw parse_error("empty rational literal");
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rat r;
        if (r.set_str(s, 10) != 0) throw parse_error("bad rational literal: " + s);
        if (r.get_den() == 0) throw parse_error("zero denominator: " + s);
        r.canonicalize();
        return r;
    }
    const auto dot = s.find('.');
    if (dot == std::string::npos) {
        Rat r;
        if (r.set_str(s, 10) != 0) throw parse_error("bad integer literal: " + s);
        return r;
    }
    // decimal: sign? digits '.' digits  -> exact scaled integer
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const size_t frac_len = s.size() - dot - 1;
    if (frac_len == 0) throw parse_error("trailing dot: " + s);
    for (size_t i = 0; i < digits.size(); ++i) {
        const char c = digits[i];
        if (i == 0 && (c == '+' || c == '-')) continue;
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw parse_error("bad decimal literal: " + s);
    }
    mpz_class num;
    if (num.set_str(digits, 10) != 0) throw parse_error("bad decimal literal: " + s);
    mpz_class den = 1;
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    Rat r(num, den);
    r.canonicalize();
    return r;
}

std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

} // namespace choicelab
