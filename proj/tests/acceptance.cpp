// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned here, not configurable.

#include "choicelab/axioms.hpp"
#include "choicelab/joint_choice.hpp"
#include "choicelab/json_io.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>

using namespace choicelab;
using choicelab::testing::random_event_config;
using choicelab::testing::random_menu;
using choicelab::testing::random_rieu;

namespace {

int g_failures = 0;

void report(int idx, const char* what, bool pass, const std::string& detail = "") {
    std::printf("[%s] criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", idx, what,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Menu> seeded_menus(uint64_t seed, int count, int min_size, int max_size) {
    Rng rng(seed);
    std::vector<Menu> menus;
    while (static_cast<int>(menus.size()) < count)
        menus.push_back(random_menu(rng, min_size + rng.next() % (max_size - min_size + 1)));
    return menus;
}

// 1. exact equality of the two worked-example tables on 1000 menus, < 30 s
void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto menus = seeded_menus(101, 1000, 2, 4);
    const bool equal = rcc_exactly_equal(rcc_from(example1_mu(), menus),
                                         rcc_from(example1_mu_prime(), menus));
    const double secs = seconds_since(t0);
    report(1, "marginal tables coincide exactly on 1000 seeded menus", equal && secs < 30.0,
           "runtime " + std::to_string(secs) + " s");
}

// 2. joint divergence: exactly 0 vs exactly 1/2
void criterion2() {
    const Menu D({Lottery(rat(0), rat(1, 2)), Lottery(rat(1, 4), rat(3, 4))});
    const Menu Dp({Lottery(rat(1, 2), rat(0)), Lottery(rat(3, 4), rat(1, 4))});
    const std::vector<std::pair<Menu, std::vector<size_t>>> events{{D, {0}}, {Dp, {0}}};
    const auto a = joint_choice_prob(example1_mu(), events);
    const auto b = joint_choice_prob(example1_mu_prime(), events);
    report(2, "joint probabilities are exactly 0 and 1/2",
           a.exact && b.exact && a.exact_value == rat(0) && b.exact_value == rat(1, 2),
           rat_to_string(a.exact_value) + " vs " + rat_to_string(b.exact_value));
}

// 3. Monte Carlo ternary probabilities match 1/2 (1 - angle/180) within
//    4 binomial standard errors at N = 10^6, < 60 s
// 4. circle radii 0.8 and 1.5 agree within 4 combined standard errors
void criteria3and4() {
    const auto t0 = std::chrono::steady_clock::now();
    const uint64_t N = 1000000;
    Rng pick(303);
    std::vector<Menu> triples;
    while (triples.size() < 20) {
        const Menu m = random_menu(pick, 3);
        if (orient(m[0].pt(), m[1].pt(), m[2].pt()) != 0) triples.push_back(m);
    }
    McOptions opt;
    opt.n = N;
    opt.mode = McOptions::Mode::monte_carlo;
    bool formula_ok = true, invariance_ok = true;
    double worst_z = 0.0;
    for (size_t ti = 0; ti < triples.size(); ++ti) {
        const Menu& m = triples[ti];
        const double f = ternary_prob_formula(m[0], m[1], m[2]);
        double est[3], se[3];
        const RandomPreference mus[3] = {nu1(0.8), nu1(1.5), nu2()};
        for (int k = 0; k < 3; ++k) {
            opt.seed = 40000 + 16 * ti + k;
            const auto p = choice_prob(mus[k], m, {0}, opt);
            est[k] = p.value;
            se[k] = std::max(p.stderr_, std::sqrt(f * (1.0 - f) / N));
            const double z = std::fabs(p.value - f) / se[k];
            worst_z = std::max(worst_z, z);
            if (z > 4.0) formula_ok = false;
        }
        const double comb = std::sqrt(se[0] * se[0] + se[1] * se[1]);
        if (std::fabs(est[0] - est[1]) > 4.0 * comb) invariance_ok = false;
    }
    const double secs = seconds_since(t0);
    report(3, "ternary estimates match the angle formula within 4 sigma",
           formula_ok && secs < 60.0,
           "worst z " + std::to_string(worst_z) + ", runtime " + std::to_string(secs) + " s");
    report(4, "circle radii 0.8 and 1.5 induce the same ternary choice", invariance_ok);
}

// 5. footnote pattern: exactly zero under uniform EU (with the independence
//    identity verified sample by sample), >= 5 sigma under the circle law
void criterion5() {
    const Lottery p(rat(1, 10), rat(7, 10)), q(rat(1, 20), rat(3, 20)), r(rat(4, 5), rat(1, 10));
    McOptions opt;
    opt.n = 1000000;
    opt.seed = 505;
    const auto eu = footnote_counterexample(nu2(), p, q, r, opt);
    const auto wu = footnote_counterexample(nu1(0.9), p, q, r, opt);
    // per-sample identity: mixing both menu items with the same lottery never
    // flips an expected-utility comparison
    const D2 pd = p.d2(), qd = q.d2();
    const Lottery pp(rat(1, 2) * p.x + rat(1, 2) * r.x, rat(1, 2) * p.y + rat(1, 2) * r.y);
    const Lottery qp(rat(1, 2) * q.x + rat(1, 2) * r.x, rat(1, 2) * q.y + rat(1, 2) * r.y);
    const D2 ppd = pp.d2(), qpd = qp.d2();
    const auto flips = mc_counts(opt.n, opt.seed, 0, 1, [&](Rng& rng, std::vector<uint64_t>& acc) {
        const auto s = sample_parametric(nu2(), rng);
        const bool base = s.score(pd, qd) > 0.0;
        const bool mixed = s.score(ppd, qpd) > 0.0;
        if (base != mixed) ++acc[0];
    });
    report(5, "independence-violating pattern: 0 under uniform EU, positive under circle law",
           eu.value == 0.0 && flips[0] == 0 && wu.value > 0.0 && wu.value >= 5.0 * wu.stderr_,
           "eu " + std::to_string(eu.value) + " (identity flips " + std::to_string(flips[0]) +
               "/1e6), circle " + std::to_string(wu.value) + " (se " +
               std::to_string(wu.stderr_) + ")");
}

// 6. geometric slope of the p_a indifference curve equals a m1 + (1-a) m0
void criterion6() {
    Rng rng(606);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        double m0 = rng.uniform(-1.0, 1.0);
        double m1 = rng.uniform(-1.0, 1.0);
        if (m0 == m1) m1 = m0 + 0.25;
        const double a = rng.uniform(0.02, 0.98);
        worst = std::max(worst,
                         std::fabs(indifference_slope(m0, m1, a) - (a * m1 + (1.0 - a) * m0)));
    }
    report(6, "slope identity on 1000 random draws", worst <= 1e-12,
           "worst |geometric - mixture| = " + std::to_string(worst));
}

// 7. moment recovery from analytic CDF queries on five finite-support laws
void criterion7() {
    const std::vector<SlopeLaw> laws{
        FiniteSlopeLaw({{rat(0), rat(0), rat(1)}}),
        FiniteSlopeLaw({{rat(1), rat(-1), rat(1)}}),
        FiniteSlopeLaw({{rat(-1), rat(-1), rat(1, 2)}, {rat(1), rat(1), rat(1, 2)}}),
        FiniteSlopeLaw({{rat(-1), rat(-1), rat(3, 10)},
                        {rat(3, 5), rat(-3, 5), rat(1, 5)},
                        {rat(-3, 5), rat(9, 10), rat(2, 5)},
                        {rat(1), rat(1), rat(1, 10)}}),
        FiniteSlopeLaw({{rat(-1, 2), rat(1, 2), rat(1, 2)},
                        {rat(1, 4), rat(3, 4), rat(1, 4)},
                        {rat(0), rat(-1), rat(1, 4)}})};
    double worst_err = 0.0, worst_res = 0.0;
    for (const auto& law : laws) {
        const auto rec = recover_joint_moments(analytic_cdf_oracle(law), 4,
                                               default_moment_nodes(), 20000);
        const auto direct = direct_moments(law, 4);
        for (const auto& [ij, v] : rec.entries)
            worst_err = std::max(worst_err, std::fabs(v - direct.at(ij.first, ij.second)));
        worst_res = std::max(worst_res, rec.max_residual);
    }
    report(7, "joint moments (order <= 4) recovered within 1e-3 on five finite laws",
           worst_err <= 1e-3 && worst_res <= 1e-10,
           "worst error " + std::to_string(worst_err) + ", residual " +
               std::to_string(worst_res));
}

// 8. 200 seeded 4-event configurations validate at 1e5 samples each, with all
//    eleven leaf cases exercised (drawing continues until covered)
void criterion8() {
    Rng rng(808);
    std::set<std::string> seen;
    uint64_t mism = 0, dbl = 0;
    int processed = 0;
    const std::set<std::string> leaves(decomposition_leaf_cases().begin(),
                                       decomposition_leaf_cases().end());
    auto covered = [&] {
        for (const auto& c : leaves)
            if (!seen.count(c)) return false;
        return true;
    };
    for (int k = 0; processed < 200 || (!covered() && k < 3000); ++k) {
        const auto cfg = random_event_config(rng);
        const std::vector<BinaryEvent> inputs(cfg.begin(), cfg.end());
        Decomposition d;
        try {
            d = decompose4(cfg);
        } catch (const std::exception& ex) {
            report(8, "decomposition suite", false, std::string("dispatch threw: ") + ex.what());
            return;
        }
        for (const auto& t : d.case_trace) seen.insert(t);
        OracleOptions opt;
        opt.n = 100000;
        opt.seed = 80000 + k;
        // the re-dispatched chain gets double sampling
        if (std::find(d.case_trace.begin(), d.case_trace.end(), "4-3") != d.case_trace.end())
            opt.n *= 2;
        const auto rep = oracle_validate(d, inputs, opt);
        mism += rep.mismatches;
        dbl += rep.double_fires;
        ++processed;
    }
    std::string missing;
    for (const auto& c : leaves)
        if (!seen.count(c)) missing += c + " ";
    report(8, "decomposition oracle on seeded configurations",
           mism == 0 && dbl == 0 && covered(),
           std::to_string(processed) + " configs, " + std::to_string(mism) + " mismatches, " +
               std::to_string(dbl) + " double fires" +
               (missing.empty() ? ", all 11 leaf cases covered" : ", missing: " + missing));
}

// 9. axioms hold exactly on 50 random finite-support mixtures, and each
//    checker flags its planted counterexample
void criterion9() {
    Rng rng(909);
    bool all_pass = true;
    std::string why;
    for (int k = 0; k < 50 && all_pass; ++k) {
        const FiniteMixture mu = random_rieu(rng);
        std::vector<Menu> menus;
        for (int b = 0; b < 3; ++b) {
            const Menu D = random_menu(rng, 3 + rng.next() % 2);
            menus.push_back(D);
            std::vector<size_t> keep;
            const size_t drop = rng.next() % D.size();
            for (size_t i = 0; i < D.size(); ++i)
                if (i != drop) keep.push_back(i);
            menus.push_back(D.subset(keep));
        }
        RCC rcc = rcc_from(mu, menus);
        const size_t base_rows = rcc.rows.size();
        const std::vector<Rat> lambdas{rat(1, 4), rat(1, 2), rat(3, 4)};
        for (size_t r = 0; r < base_rows; ++r) {
            const Lottery p = rcc.rows[r].menu[rng.next() % rcc.rows[r].menu.size()];
            add_companion_rows(rcc, mu, r, {{p, lambdas[r % 3]}});
        }
        const auto mono = check_monotonicity(rcc);
        const auto ext = check_extremeness(rcc);
        const auto sb = check_stochastic_betweenness(rcc);
        if (!mono.passed() || !ext.passed() || !sb.passed()) {
            all_pass = false;
            why = "mixture " + std::to_string(k) + " violated an axiom";
        }
        if (mono.checks == 0 || ext.checks == 0 || sb.checks == 0) {
            all_pass = false;
            why = "vacuous check on mixture " + std::to_string(k);
        }
    }

    // planted violations must be caught
    const Lottery a(rat(0), rat(1, 2)), b(rat(1, 4), rat(3, 4)), c(rat(1, 2), rat(1, 8));
    RCC bad_mono;
    bad_mono.rows.push_back({Menu({a, b, c}), {{{0}, ProbValue::from_exact(rat(1))}}});
    bad_mono.rows.push_back({Menu({a, b}),
                             {{{0}, ProbValue::from_exact(rat(0))},
                              {{1}, ProbValue::from_exact(rat(1))}}});
    const bool caught_mono = !check_monotonicity(bad_mono).passed();

    const Lottery mid(rat(1, 8), rat(5, 8)); // midpoint of a and b
    RCC bad_ext;
    bad_ext.rows.push_back({Menu({a, b, mid}), {{{2}, ProbValue::from_exact(rat(1))}}});
    const bool caught_ext = !check_extremeness(bad_ext).passed();

    RCC bad_sb;
    bad_sb.rows.push_back({Menu({a, b}),
                           {{{0}, ProbValue::from_exact(rat(1))},
                            {{1}, ProbValue::from_exact(rat(0))}}});
    const Menu companion = mix_menu_point(Menu({a, b}), a, rat(1, 2));
    bad_sb.rows.push_back({companion,
                           {{{0}, ProbValue::from_exact(rat(0))},
                            {{1}, ProbValue::from_exact(rat(1))}}});
    bad_sb.companions.push_back({0, 1, a, rat(1, 2)});
    const bool caught_sb = !check_stochastic_betweenness(bad_sb).passed();

    report(9, "axioms hold on 50 random mixtures and checkers catch planted violations",
           all_pass && caught_mono && caught_ext && caught_sb, why);
}

// 10. implicit representation agrees with the weighted-utility functional
void criterion10() {
    const auto rank = PrizeRanking::standard();
    const auto b_wu = ImplicitBetweenness::from_wu(example1_v1(), rank);
    const WUFunctional v1 = example1_v1();
    Rng rng(1010);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const Lottery l = choicelab::testing::random_lottery(rng);
        worst = std::max(worst, std::fabs(implicit_value(b_wu, l) - to_double(v1.value(l))));
    }
    const auto b_eu = ImplicitBetweenness::from_eu({0.0, 1.0, 0.35}, rank);
    double worst_eu = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const Lottery l = choicelab::testing::random_lottery(rng);
        const double lin = to_double(l.y) + 0.35 * to_double(Rat(1) - l.x - l.y);
        worst_eu = std::max(worst_eu, std::fabs(implicit_value(b_eu, l) - lin));
    }
    report(10, "implicit values match the functional (1e-10) and the linear case",
           worst <= 1e-10 && worst_eu <= 1e-10,
           "wu " + std::to_string(worst) + ", eu " + std::to_string(worst_eu));
}

// 11. EU mixture-menu identity over 1e4 sampled preferences; a weighted
//     utility counterexample exists
void criterion11() {
    Rng rng(1111);
    bool identity_ok = true;
    const std::vector<Rat> lambdas{rat(1, 4), rat(1, 2), rat(3, 4)};
    for (int k = 0; k < 10000 && identity_ok; ++k) {
        const double th = rng.uniform(0.0, 2.0 * M_PI);
        // exact rational embedding of the sampled direction
        const EUPreference eu(Rat(std::cos(th)), Rat(std::sin(th)));
        const Menu D = random_menu(rng, 2 + rng.next() % 2);
        const Menu Dp = random_menu(rng, 2 + rng.next() % 2);
        if (!eu_joint_identity_check(eu, D, Dp, lambdas[k % 3])) identity_ok = false;
    }
    const Menu D({Lottery(rat(0), rat(1, 2)), Lottery(rat(1, 4), rat(3, 4))});
    const Menu Dp({Lottery(rat(1, 2), rat(0)), Lottery(rat(3, 4), rat(1, 4))});
    bool wu_breaks = false;
    for (const Rat& lam : lambdas)
        if (!eu_joint_identity_check(Preference(example1_v1()), D, Dp, lam)) wu_breaks = true;
    report(11, "mixture-menu identity: holds for 1e4 EU draws, fails for weighted utility",
           identity_ok && wu_breaks);
}

} // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion1();
    criterion2();
    criteria3and4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    std::printf("acceptance: %s (%.1f s)\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
                seconds_since(t0));
    return g_failures == 0 ? 0 : 1;
}
