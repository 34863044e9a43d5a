#include "choicelab/axioms.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace choicelab;
using choicelab::testing::random_lottery;
using choicelab::testing::random_menu;
using choicelab::testing::random_rieu;

namespace {

// RCC rows + nested removals + mixture companions for one finite mixture.
RCC table_with_family(const FiniteMixture& mu, Rng& rng, int n_base = 3) {
    std::vector<Menu> menus;
    for (int k = 0; k < n_base; ++k) {
        const Menu D = random_menu(rng, 3 + rng.next() % 2);
        menus.push_back(D);
        // a nested removal
        std::vector<size_t> keep;
        for (size_t i = 0; i < D.size(); ++i)
            if (i != rng.next() % D.size()) keep.push_back(i);
        if (keep.size() >= 1 && keep.size() < D.size()) menus.push_back(D.subset(keep));
    }
    RCC rcc = rcc_from(mu, menus);
    // companions for every base menu
    const std::vector<Rat> lambdas{rat(1, 4), rat(1, 2), rat(3, 4)};
    const size_t n_rows = rcc.rows.size();
    for (size_t r = 0; r < n_rows; ++r) {
        const Lottery p = rcc.rows[r].menu[rng.next() % rcc.rows[r].menu.size()];
        add_companion_rows(rcc, mu, r, {{p, lambdas[rng.next() % 3]}});
    }
    return rcc;
}

} // namespace

TEST_SUITE("axioms") {

TEST_CASE("menu mixtures") {
    const Lottery p(rat(0), rat(1, 2));
    const Menu single({p});
    CHECK(mix_menus(single, single, rat(1, 2)) == single);

    const Menu D({Lottery(rat(0), rat(0)), Lottery(rat(1, 2), rat(0))});
    const Menu Dp({Lottery(rat(0), rat(1, 2)), Lottery(rat(1, 4), rat(1, 2))});
    CHECK(mix_menus(D, Dp, rat(1, 2)).size() == 4);

    // collision: p - q == p' - q' makes two mixtures coincide
    const Menu A({Lottery(rat(0), rat(0)), Lottery(rat(1, 2), rat(0))});
    const Menu B({Lottery(rat(0), rat(1, 2)), Lottery(rat(1, 2), rat(1, 2))});
    // lambda a1 + (1-lambda) b2 == lambda a2 + (1-lambda) b1 iff a2-a1 == b2-b1
    CHECK(mix_menus(A, B, rat(1, 2)).size() == 3);
}

TEST_CASE("axioms hold on tables generated by finite mixtures") {
    Rng rng(89);
    for (int k = 0; k < 10; ++k) {
        const FiniteMixture mu = random_rieu(rng);
        const RCC rcc = table_with_family(mu, rng);
        const auto mono = check_monotonicity(rcc);
        CHECK(mono.passed());
        CHECK(mono.checks > 0);
        const auto ext = check_extremeness(rcc);
        CHECK(ext.passed());
        CHECK(ext.checks > 0);
        const auto sb = check_stochastic_betweenness(rcc);
        CHECK(sb.passed());
        CHECK(sb.checks > 0);
    }
}

TEST_CASE("monotonicity checker flags a planted violation") {
    const Lottery a(rat(0), rat(1, 2)), b(rat(1, 4), rat(3, 4)), c(rat(1, 2), rat(1, 8));
    RCC rcc;
    {
        RCCRow big{Menu({a, b, c}), {}};
        big.entries.push_back({{0}, ProbValue::from_exact(rat(1))});
        rcc.rows.push_back(big);
        RCCRow small{Menu({a, b}), {}};
        small.entries.push_back({{0}, ProbValue::from_exact(rat(0))});
        small.entries.push_back({{1}, ProbValue::from_exact(rat(1))});
        rcc.rows.push_back(small);
    }
    const auto rep = check_monotonicity(rcc);
    CHECK_FALSE(rep.passed());
    REQUIRE(rep.violations.size() >= 1);
    CHECK(rep.violations.front().lhs > rep.violations.front().rhs);
    // a table without nested menus passes vacuously
    RCC flat;
    flat.rows.push_back({Menu({a, b}), {{{0}, ProbValue::from_exact(rat(1))}}});
    flat.rows.push_back({Menu({b, c}), {{{1}, ProbValue::from_exact(rat(1))}}});
    const auto rep2 = check_monotonicity(flat);
    CHECK(rep2.passed());
    CHECK(rep2.checks == 0);
}

TEST_CASE("extremeness checker flags interior subsets") {
    const Lottery a(rat(0), rat(0)), b(rat(1, 2), rat(0)), mid(rat(1, 4), rat(0));
    RCC rcc;
    RCCRow row{Menu({a, b, mid}), {}};
    row.entries.push_back({{2}, ProbValue::from_exact(rat(1))}); // the midpoint alone
    rcc.rows.push_back(row);
    const auto rep = check_extremeness(rcc);
    CHECK_FALSE(rep.passed());
}

TEST_CASE("stochastic betweenness flags a non-betweenness toy") {
    // single 'preference' with circular indifference curves around (0.3, 0.4)
    auto toy_value = [](const Lottery& l) {
        const double x = to_double(l.x), y = to_double(l.y);
        return -((x - 0.3) * (x - 0.3) + (y - 0.4) * (y - 0.4));
    };
    auto toy_row = [&](const Menu& D) {
        RCCRow row{D, {}};
        size_t best = 0;
        for (size_t i = 1; i < D.size(); ++i)
            if (toy_value(D[i]) > toy_value(D[best])) best = i;
        for (uint32_t mask = 1; mask < (1u << D.size()); ++mask) {
            std::vector<size_t> subset;
            for (size_t i = 0; i < D.size(); ++i)
                if (mask & (1u << i)) subset.push_back(i);
            row.entries.push_back(
                {subset, ProbValue::from_exact(subset == std::vector<size_t>{best} ? rat(1)
                                                                                   : rat(0))});
        }
        return row;
    };
    Rng rng(97);
    bool caught = false;
    for (int k = 0; k < 40 && !caught; ++k) {
        const Menu D = random_menu(rng, 3);
        for (const Rat& lambda : {rat(1, 4), rat(1, 2)}) {
            for (size_t pi = 0; pi < D.size(); ++pi) {
                RCC rcc;
                rcc.rows.push_back(toy_row(D));
                const Menu companion = mix_menu_point(D, D[pi], lambda);
                rcc.rows.push_back(toy_row(companion));
                rcc.companions.push_back({0, 1, D[pi], lambda});
                if (!check_stochastic_betweenness(rcc).passed()) caught = true;
            }
        }
    }
    CHECK(caught);
}

TEST_CASE("betweenness mixtures pass stochastic betweenness exactly") {
    // lambda -> 1 companion equals the base menu itself
    const Menu D({Lottery(rat(0), rat(1, 2)), Lottery(rat(1, 4), rat(3, 4))});
    RCC rcc = rcc_from(example1_mu(), {D});
    add_companion_rows(rcc, example1_mu(), 0, {{D[0], rat(1)}});
    const auto rep = check_stochastic_betweenness(rcc);
    CHECK(rep.passed());
    CHECK(rep.checks > 0);
}

TEST_CASE("EU mixture identity holds for expected utility") {
    Rng rng(101);
    for (int k = 0; k < 500; ++k) {
        // random rational EU direction (exact arithmetic keeps the test crisp)
        const long dx = static_cast<long>(rng.next() % 17) - 8;
        const long dy = static_cast<long>(rng.next() % 17) - 8;
        if (dx == 0 && dy == 0) continue;
        const EUPreference eu(rat(dx, 8), rat(dy, 8));
        const Menu D = random_menu(rng, 2 + rng.next() % 2);
        const Menu Dp = random_menu(rng, 2 + rng.next() % 2);
        for (const Rat& lambda : {rat(1, 4), rat(1, 2), rat(3, 4)})
            CHECK(eu_joint_identity_check(eu, D, Dp, lambda));
    }
}

TEST_CASE("EU mixture identity fails for some weighted-utility preference") {
    const Preference wu = example1_v1();
    const Menu D({Lottery(rat(0), rat(1, 2)), Lottery(rat(1, 4), rat(3, 4))});
    const Menu Dp({Lottery(rat(1, 2), rat(0)), Lottery(rat(3, 4), rat(1, 4))});
    bool failed_somewhere = false;
    for (const Rat& lambda : {rat(1, 4), rat(1, 2), rat(3, 4)})
        if (!eu_joint_identity_check(wu, D, Dp, lambda)) failed_somewhere = true;
    CHECK(failed_somewhere);
    // and trivially holds when both menus coincide
    CHECK(eu_joint_identity_check(wu, D, D, rat(1, 2)));
}

} // TEST_SUITE
