#ifndef CHOICELAB_RATIONAL_HPP
#define CHOICELAB_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace choicelab {

/// Exact rational scalar used by every predicate and finite-support
/// probability computation. Monte Carlo paths use binary64 instead.
using Rat = mpq_class;

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses "num/den", an integer, or a plain decimal string ("0.25", "-1.5e2"
/// is not accepted; no exponents). Decimal strings parse exactly.
Rat parse_rat(const std::string& s);

/// Canonical text form: "n" or "n/d" with d > 0.
std::string rat_to_string(const Rat& r);

inline double to_double(const Rat& r) { return r.get_d(); }

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline int sign_of(const Rat& r) { return sgn(r); }

} // namespace choicelab

#endif
