#ifndef CHOICELAB_AXIOMS_HPP
#define CHOICELAB_AXIOMS_HPP

#include "choicelab/random_utility.hpp"

#include <string>

namespace choicelab {

struct AxiomViolation {
    std::string detail;
    size_t row = 0;
    size_t other_row = 0;
    std::vector<size_t> subset;
    double lhs = 0, rhs = 0;
};

struct AxiomReport {
    std::string axiom;
    size_t checks = 0;
    size_t skipped = 0;
    std::vector<AxiomViolation> violations;

    bool passed() const { return violations.empty(); }
};

/// rho_D(A) <= rho_{D\B}(A\B) over every nested pair of table menus.
/// Exact rows compare with tol 0; Monte Carlo rows get 4 combined standard
/// errors of slack (plus tol).
AxiomReport check_monotonicity(const RCC& rcc, double tol = 0.0);

/// Every positive-probability subset must be a face of its menu.
AxiomReport check_extremeness(const RCC& rcc);

/// rho_{lambda D + (1-lambda) p}(lambda A + (1-lambda) p) = rho_D(A) over the
/// recorded companion pairs, for subsets containing p.
AxiomReport check_stochastic_betweenness(const RCC& rcc, double tol = 0.0);

/// { lambda x + (1-lambda) y : x in D, y in D' }, deduplicated. lambda in (0,1].
Menu mix_menus(const Menu& D, const Menu& Dprime, const Rat& lambda);

/// lambda D + (1-lambda) p.
Menu mix_menu_point(const Menu& D, const Lottery& p, const Rat& lambda);

/// Checks M(lambda D + (1-lambda) D') = lambda M(D) + (1-lambda) M(D') for
/// one expected-utility preference — the mechanism that closes the EU event
/// class under intersections. Weighted-utility preferences break it.
bool eu_joint_identity_check(const EUPreference& pref, const Menu& D, const Menu& Dprime,
                             const Rat& lambda);
bool eu_joint_identity_check(const Preference& pref, const Menu& D, const Menu& Dprime,
                             const Rat& lambda);

/// Appends companion rows (and metadata) for every (p, lambda) requested, so
/// the stochastic-betweenness checker has discoverable pairs.
void add_companion_rows(RCC& rcc, const RandomPreference& mu, size_t base_row,
                        const std::vector<std::pair<Lottery, Rat>>& mixes,
                        const McOptions& opt = {});

} // namespace choicelab

#endif
