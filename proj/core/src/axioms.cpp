#include "choicelab/axioms.hpp"

#include <algorithm>
#include <cmath>

namespace choicelab {

namespace {

// Slack for comparing two table entries: exact rows are exact, Monte Carlo
// rows get four combined standard errors.
double slack(const ProbValue& a, const ProbValue& b, double tol) {
    if (a.exact && b.exact) return tol;
    return tol + 4.0 * std::sqrt(a.stderr_ * a.stderr_ + b.stderr_ * b.stderr_);
}

// Is `small` a sub-multiset of `big` (as lottery sets)?
bool menu_subset(const Menu& small, const Menu& big) {
    for (const auto& l : small.items())
        if (!big.contains(l)) return false;
    return true;
}

} // namespace

AxiomReport check_monotonicity(const RCC& rcc, double tol) {
    AxiomReport rep{"monotonicity", 0, 0, {}};
    for (size_t di = 0; di < rcc.rows.size(); ++di) {
        for (size_t si = 0; si < rcc.rows.size(); ++si) {
            if (di == si) continue;
            const Menu& D = rcc.rows[di].menu;
            const Menu& Dp = rcc.rows[si].menu;
            if (Dp.size() >= D.size() || !menu_subset(Dp, D)) continue;
            // B = D \ Dp; for each A with A\B nonempty, rho_D(A) <= rho_Dp(A\B)
            for (const auto& entry : rcc.rows[di].entries) {
                std::vector<size_t> a_minus_b;
                for (size_t idx : entry.subset) {
                    const auto pos = Dp.index_of(D[idx]);
                    if (pos) a_minus_b.push_back(*pos);
                }
                if (a_minus_b.empty()) continue;
                std::sort(a_minus_b.begin(), a_minus_b.end());
                const ProbValue* rhs = rcc.rows[si].find(a_minus_b);
                if (!rhs) {
                    ++rep.skipped;
                    continue;
                }
                ++rep.checks;
                bool ok;
                if (entry.prob.exact && rhs->exact)
                    ok = entry.prob.exact_value <= rhs->exact_value;
                else
                    ok = entry.prob.value <= rhs->value + slack(entry.prob, *rhs, tol);
                if (!ok)
                    rep.violations.push_back({"rho_D(A) > rho_{D\\B}(A\\B)", di, si, entry.subset,
                                              entry.prob.value, rhs->value});
            }
        }
    }
    return rep;
}

AxiomReport check_extremeness(const RCC& rcc) {
    AxiomReport rep{"extremeness", 0, 0, {}};
    for (size_t r = 0; r < rcc.rows.size(); ++r) {
        const auto& row = rcc.rows[r];
        for (const auto& entry : row.entries) {
            const bool positive = entry.prob.exact ? entry.prob.exact_value > 0
                                                   : entry.prob.value > 4.0 * entry.prob.stderr_;
            if (!positive) continue;
            ++rep.checks;
            const Menu A = row.menu.subset(entry.subset);
            if (!face_of(A, row.menu))
                rep.violations.push_back({"positive-probability subset is not a face", r, r,
                                          entry.subset, entry.prob.value, 0.0});
        }
    }
    return rep;
}

AxiomReport check_stochastic_betweenness(const RCC& rcc, double tol) {
    AxiomReport rep{"stochastic_betweenness", 0, 0, {}};
    for (const auto& comp : rcc.companions) {
        if (comp.base_row >= rcc.rows.size() || comp.companion_row >= rcc.rows.size()) {
            ++rep.skipped;
            continue;
        }
        const auto& base = rcc.rows[comp.base_row];
        const auto& mixed = rcc.rows[comp.companion_row];
        for (const auto& entry : base.entries) {
            // axiom constrains subsets containing p
            bool has_p = false;
            for (size_t idx : entry.subset)
                if (base.menu[idx] == comp.p) has_p = true;
            if (!has_p) continue;
            // map A -> lambda A + (1-lambda) p inside the companion menu
            std::vector<size_t> mapped;
            bool mapped_ok = true;
            for (size_t idx : entry.subset) {
                const Lottery& q = base.menu[idx];
                const Lottery mix(comp.lambda * q.x + (1 - comp.lambda) * comp.p.x,
                                  comp.lambda * q.y + (1 - comp.lambda) * comp.p.y,
                                  q.chart);
                const auto pos = mixed.menu.index_of(mix);
                if (!pos) {
                    mapped_ok = false;
                    break;
                }
                mapped.push_back(*pos);
            }
            if (!mapped_ok) {
                ++rep.skipped;
                continue;
            }
            std::sort(mapped.begin(), mapped.end());
            const ProbValue* rhs = mixed.find(mapped);
            if (!rhs) {
                ++rep.skipped;
                continue;
            }
            ++rep.checks;
            bool ok;
            if (entry.prob.exact && rhs->exact)
                ok = entry.prob.exact_value == rhs->exact_value;
            else
                ok = std::fabs(entry.prob.value - rhs->value) <= slack(entry.prob, *rhs, tol);
            if (!ok)
                rep.violations.push_back({"mixture companion row differs", comp.base_row,
                                          comp.companion_row, entry.subset, entry.prob.value,
                                          rhs->value});
        }
    }
    return rep;
}

Menu mix_menus(const Menu& D, const Menu& Dprime, const Rat& lambda) {
    if (lambda <= 0 || lambda > 1) throw random_utility_error("lambda must lie in (0,1]");
    if (D.chart() != Dprime.chart()) throw random_utility_error("menus must share a chart");
    std::vector<Lottery> out;
    for (const auto& p : D.items())
        for (const auto& q : Dprime.items()) {
            const Lottery mix(lambda * p.x + (1 - lambda) * q.x,
                              lambda * p.y + (1 - lambda) * q.y, p.chart);
            bool dup = false;
            for (const auto& existing : out)
                if (existing == mix) dup = true;
            if (!dup) out.push_back(mix);
        }
    return Menu(std::move(out));
}

Menu mix_menu_point(const Menu& D, const Lottery& p, const Rat& lambda) {
    return mix_menus(D, Menu({p}), lambda);
}

bool eu_joint_identity_check(const Preference& pref, const Menu& D, const Menu& Dprime,
                             const Rat& lambda) {
    if (lambda <= 0 || lambda >= 1) throw random_utility_error("lambda must lie in (0,1)");
    const Menu A = optimal_set(pref, D);
    const Menu Ap = optimal_set(pref, Dprime);
    const Menu mixed_menu = mix_menus(D, Dprime, lambda);
    const Menu left = optimal_set(pref, mixed_menu);
    const Menu right = mix_menus(A, Ap, lambda);
    if (left.size() != right.size()) return false;
    for (const auto& l : left.items())
        if (!right.contains(l)) return false;
    return true;
}

bool eu_joint_identity_check(const EUPreference& pref, const Menu& D, const Menu& Dprime,
                             const Rat& lambda) {
    return eu_joint_identity_check(Preference(pref), D, Dprime, lambda);
}

void add_companion_rows(RCC& rcc, const RandomPreference& mu, size_t base_row,
                        const std::vector<std::pair<Lottery, Rat>>& mixes, const McOptions& opt) {
    if (base_row >= rcc.rows.size()) throw random_utility_error("companion base row out of range");
    for (const auto& [p, lambda] : mixes) {
        if (!rcc.rows[base_row].menu.contains(p))
            throw random_utility_error("companion point must belong to the base menu");
        const Menu companion = mix_menu_point(rcc.rows[base_row].menu, p, lambda);
        const RCC one = rcc_from(mu, {companion}, opt);
        rcc.rows.push_back(one.rows.front());
        rcc.companions.push_back({base_row, rcc.rows.size() - 1, p, lambda});
    }
}

} // namespace choicelab
