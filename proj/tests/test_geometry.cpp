#include "choicelab/geometry.hpp"
#include "choicelab/region.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace choicelab;
using choicelab::testing::random_lottery;
using choicelab::testing::random_menu;

namespace {

// Independent face oracle: supporting-line search over all menu-point pairs.
// A is a face of D iff A == D, or A is exactly the point set of a supporting
// line's touching segment, or A is a single endpoint of such a segment.
bool face_of_oracle(const Menu& A, const Menu& D) {
    auto same_set = [](const Menu& x, const Menu& y) {
        if (x.size() != y.size()) return false;
        for (const auto& l : x.items())
            if (!y.contains(l)) return false;
        return true;
    };
    if (same_set(A, D)) return true;
    if (D.size() == 1) return false; // only face of a point is itself

    for (size_t i = 0; i < D.size(); ++i) {
        for (size_t j = 0; j < D.size(); ++j) {
            if (i == j || D[i] == D[j]) continue;
            const RatPt u = D[i].pt(), v = D[j].pt();
            int lo = 2, hi = -2;
            for (const auto& l : D.items()) {
                const int o = orient(u, v, l.pt());
                lo = std::min(lo, o);
                hi = std::max(hi, o);
            }
            if (lo < 0 && hi > 0) continue; // not supporting
            // touching set and its extremes along the line
            const Rat dx = v.x - u.x, dy = v.y - u.y;
            std::vector<std::pair<Rat, Lottery>> on_line;
            for (const auto& l : D.items())
                if (orient(u, v, l.pt()) == 0)
                    on_line.emplace_back(dx * (l.x - u.x) + dy * (l.y - u.y), l);
            Rat tmin = on_line.front().first, tmax = tmin;
            for (const auto& [t, l] : on_line) {
                tmin = std::min(tmin, t);
                tmax = std::max(tmax, t);
            }
            // candidate: whole edge
            {
                std::vector<Lottery> edge;
                for (const auto& [t, l] : on_line) edge.push_back(l);
                const Menu edge_menu(edge);
                if (same_set(A, edge_menu)) return true;
            }
            // candidates: the two endpoint singletons
            if (A.size() == 1)
                for (const auto& [t, l] : on_line)
                    if ((t == tmin || t == tmax) && A[0] == l) return true;
        }
    }
    return false;
}

} // namespace

TEST_SUITE("geometry") {

TEST_CASE("orient on canonical inputs") {
    CHECK(orient(RatPt{rat(0), rat(0)}, RatPt{rat(1), rat(0)}, RatPt{rat(0), rat(1)}) == 1);
    CHECK(orient(RatPt{rat(0), rat(0)}, RatPt{rat(1), rat(1)}, RatPt{rat(2), rat(2)}) == 0);
    // hand cross product: (1/2)(1/2) - (3/2)(3/2) = -2
    CHECK(orient(RatPt{rat(-1, 2), rat(-1, 2)}, RatPt{rat(0), rat(1)}, RatPt{rat(1), rat(0)}) ==
          -1);
}

TEST_CASE("orient is antisymmetric and translation invariant") {
    Rng rng(7);
    for (int k = 0; k < 400; ++k) {
        auto pt = [&] {
            return RatPt{rat(static_cast<long>(rng.next() % 41) - 20, 8),
                         rat(static_cast<long>(rng.next() % 41) - 20, 8)};
        };
        const RatPt a = pt(), b = pt(), c = pt(), t = pt();
        CHECK(orient(a, b, c) == -orient(a, c, b));
        const RatPt at{a.x + t.x, a.y + t.y}, bt{b.x + t.x, b.y + t.y}, ct{c.x + t.x, c.y + t.y};
        CHECK(orient(a, b, c) == orient(at, bt, ct));
    }
}

TEST_CASE("angle_at on canonical inputs") {
    const Lottery p(rat(0), rat(0)), q(rat(1), rat(0));
    CHECK(angle_at(p, q, Lottery(rat(0), rat(1))) == doctest::Approx(90.0));
    CHECK(angle_at(p, q, Lottery(rat(-1), rat(0))) == doctest::Approx(180.0));
    CHECK(angle_at(p, q, Lottery(rat(1), rat(1))) == doctest::Approx(45.0));
    CHECK_THROWS_AS(angle_at(p, p, q), geometry_error);
}

TEST_CASE("angle_at symmetry and ray-scaling invariance") {
    Rng rng(11);
    for (int k = 0; k < 100; ++k) {
        const Lottery p = random_lottery(rng), q = random_lottery(rng), r = random_lottery(rng);
        if (q == p || r == p) continue;
        CHECK(angle_at(p, q, r) == doctest::Approx(angle_at(p, r, q)));
        const Lottery q3(p.x + 3 * (q.x - p.x), p.y + 3 * (q.y - p.y));
        CHECK(angle_at(p, q, r) == doctest::Approx(angle_at(p, q3, r)).epsilon(1e-12));
    }
}

TEST_CASE("chart conversion pins the ranked vertices") {
    const auto rank = PrizeRanking::standard();
    const Lottery w2(rat(0), rat(1)); // best
    const Lottery w3(rat(0), rat(0)); // middle
    const Lottery w1(rat(1), rat(0)); // worst
    CHECK(chart_convert(w2, Chart::SLOPE, rank) == Lottery(rat(0), rat(1), Chart::SLOPE));
    CHECK(chart_convert(w3, Chart::SLOPE, rank) == Lottery(rat(-1), rat(0), Chart::SLOPE));
    CHECK(chart_convert(w1, Chart::SLOPE, rank) == Lottery(rat(0), rat(-1), Chart::SLOPE));
}

TEST_CASE("chart conversion round-trips and preserves mixtures exactly") {
    const auto rank = PrizeRanking::standard();
    Rng rng(13);
    for (int k = 0; k < 200; ++k) {
        const Lottery p = random_lottery(rng), q = random_lottery(rng);
        const Lottery ps = chart_convert(p, Chart::SLOPE, rank);
        CHECK(chart_convert(ps, Chart::MM, rank) == p);
        const Rat lam = rat(static_cast<long>(rng.next() % 7) + 1, 8);
        const Lottery mix(lam * p.x + (1 - lam) * q.x, lam * p.y + (1 - lam) * q.y);
        const Lottery qs = chart_convert(q, Chart::SLOPE, rank);
        const Lottery mixed_then(chart_convert(mix, Chart::SLOPE, rank));
        CHECK(mixed_then.x == lam * ps.x + (1 - lam) * qs.x);
        CHECK(mixed_then.y == lam * ps.y + (1 - lam) * qs.y);
    }
}

TEST_CASE("face_of on canonical inputs") {
    const Lottery a(rat(0), rat(0)), b(rat(1), rat(0)), c(rat(0), rat(1));
    const Lottery mid(rat(1, 2), rat(0));
    const Menu D({a, b, c, mid});
    CHECK(face_of(Menu({c}), D));                    // extreme vertex
    CHECK_FALSE(face_of(Menu({mid}), D));            // interior point of an edge
    CHECK(face_of(Menu({a, b, mid}), D));            // the full bottom edge
    CHECK_FALSE(face_of(Menu({a, mid}), D));         // half an edge
    const Lottery inner(rat(1, 4), rat(1, 4));
    const Menu D2({a, b, c, inner});
    CHECK_FALSE(face_of(Menu({inner}), D2)); // strictly inside the hull
    CHECK_THROWS_AS(face_of(Menu({Lottery(rat(1, 8), rat(1, 8))}), D), geometry_error);
}

TEST_CASE("face_of agrees with the supporting-line oracle") {
    Rng rng(17);
    int checked = 0;
    for (int k = 0; k < 90; ++k) {
        const size_t n = 2 + rng.next() % 5; // menus of size 2..6
        // the coarse grid makes collinear and fully degenerate menus common
        const Menu D = random_menu(rng, n, k % 3 == 0 ? 3 : 8);
        for (uint32_t mask = 1; mask < (1u << n); ++mask) {
            std::vector<size_t> idx;
            for (size_t i = 0; i < n; ++i)
                if (mask & (1u << i)) idx.push_back(i);
            const Menu A = D.subset(idx);
            CHECK(face_of(A, D) == face_of_oracle(A, D));
            ++checked;
        }
    }
    CHECK(checked > 1000);
    // four collinear points: endpoints are faces, interior points are not
    const Menu line({Lottery(rat(1, 32), rat(22, 32)), Lottery(rat(6, 32), rat(17, 32)),
                     Lottery(rat(9, 32), rat(14, 32)), Lottery(rat(19, 32), rat(4, 32))});
    CHECK(face_of(line.subset({0}), line));
    CHECK(face_of(line.subset({3}), line));
    CHECK_FALSE(face_of(line.subset({1}), line));
    CHECK_FALSE(face_of(line.subset({2}), line));
    CHECK(face_of(line.subset({0, 1, 2, 3}), line));
    CHECK_FALSE(face_of(line.subset({0, 1}), line));
}

TEST_CASE("half-plane intersections and their one-dimensional faces") {
    auto hp = [](long ax, long ay, long bx, long by, int side) {
        return HalfPlane(RatPt{rat(ax), rat(ay)}, RatPt{rat(bx), rat(by)}, side);
    };
    SUBCASE("nested parallel half-planes form a half space") {
        // left of upward lines x=0 and x=1
        const auto s = halfplane_intersection_faces({hp(0, 0, 0, 1, 1), hp(1, 0, 1, 1, 1)});
        CHECK_FALSE(s.empty);
        CHECK(s.one_dim_faces == 1);
        CHECK_FALSE(s.bounded);
    }
    SUBCASE("two non-parallel half-planes form a wedge") {
        const auto s = halfplane_intersection_faces({hp(0, 0, 0, 1, 1), hp(0, 0, 1, 0, -1)});
        CHECK_FALSE(s.empty);
        CHECK(s.one_dim_faces == 2);
        CHECK_FALSE(s.bounded);
    }
    SUBCASE("four half-planes cut the unit square") {
        const auto s = halfplane_intersection_faces(
            {hp(0, 0, 0, 1, -1), hp(1, 0, 1, 1, 1), hp(0, 0, 1, 0, 1), hp(0, 1, 1, 1, -1)});
        CHECK_FALSE(s.empty);
        CHECK(s.one_dim_faces == 4);
        CHECK(s.bounded);
        CHECK(s.vertices.size() == 4);
    }
    SUBCASE("empty intersection reports an empty region with no faces") {
        // {x <= -1} and {x >= 1}
        const auto s = halfplane_intersection_faces({hp(-1, 0, -1, 1, 1), hp(1, 0, 1, 1, -1)});
        CHECK(s.empty);
        CHECK(s.one_dim_faces == 0);
    }
}

TEST_CASE("menu invariants") {
    CHECK_THROWS_AS(Menu({}), geometry_error);
    const Lottery a(rat(0), rat(0));
    CHECK_THROWS_AS(Menu({a, a}), geometry_error);
    CHECK_THROWS_AS(Menu({a, Lottery(rat(0), rat(0), Chart::SLOPE)}), geometry_error);
}

TEST_CASE("lottery simplex membership by chart") {
    CHECK(Lottery(rat(1, 2), rat(1, 2)).in_simplex());
    CHECK_FALSE(Lottery(rat(3, 4), rat(1, 2)).in_simplex());
    CHECK(Lottery(rat(-1, 2), rat(0), Chart::SLOPE).in_simplex());
    CHECK_FALSE(Lottery(rat(1, 2), rat(0), Chart::SLOPE).in_simplex());
}

} // TEST_SUITE
