#include "choicelab/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace choicelab {

PrizeRanking::PrizeRanking(Prize b, Prize m, Prize w) : best(b), middle(m), worst(w) {
    if (b == m || m == w || b == w)
        throw geometry_error("prize ranking must be a permutation of the three prizes");
}

Rat Lottery::prob(Prize w) const {
    if (chart != Chart::MM) throw geometry_error("prize probabilities live in the MM chart");
    switch (w) {
        case Prize::w1: return x;
        case Prize::w2: return y;
        case Prize::w3: return Rat(1) - x - y;
    }
    throw geometry_error("bad prize");
}

bool Lottery::in_simplex() const { return point_in_simplex(pt(), chart); }

int orient(const RatPt& a, const RatPt& b, const RatPt& c) {
    const Rat z = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return sign_of(z);
}

int orient(const D2& a, const D2& b, const D2& c) {
    const double z = cross_d(a, b, c);
    return z > 0 ? 1 : (z < 0 ? -1 : 0);
}

double angle_at(const Lottery& p, const Lottery& q, const Lottery& r) {
    if (q.chart != p.chart || r.chart != p.chart)
        throw geometry_error("angle_at: mixed charts");
    if (q == p || r == p) throw geometry_error("angle_at: degenerate ray");
    const D2 pp = p.d2(), qq = q.d2(), rr = r.d2();
    const double ux = qq.x - pp.x, uy = qq.y - pp.y;
    const double vx = rr.x - pp.x, vy = rr.y - pp.y;
    const double dot = ux * vx + uy * vy;
    const double crs = ux * vy - uy * vx;
    const double ang = std::atan2(std::fabs(crs), dot); // in [0, pi]
    return ang * 180.0 / M_PI;
}

RatPt mm_vertex(Prize w) {
    switch (w) {
        case Prize::w1: return {Rat(1), Rat(0)};
        case Prize::w2: return {Rat(0), Rat(1)};
        case Prize::w3: return {Rat(0), Rat(0)};
    }
    throw geometry_error("bad prize");
}

RatPt slope_vertex_best() { return {Rat(0), Rat(1)}; }
RatPt slope_vertex_worst() { return {Rat(0), Rat(-1)}; }
RatPt slope_vertex_middle() { return {Rat(-1), Rat(0)}; }

namespace {

// Affine map z -> M z + t with exact rational entries.
struct Affine {
    Rat m00, m01, m10, m11, t0, t1;
    RatPt operator()(const RatPt& p) const {
        return {m00 * p.x + m01 * p.y + t0, m10 * p.x + m11 * p.y + t1};
    }
    Rat det() const { return m00 * m11 - m01 * m10; }
};

// MM -> SLOPE map sending the ranked vertices to the slope-chart vertices.
Affine mm_to_slope(const PrizeRanking& rank) {
    // Columns of M are images of e1, e2 relative to the image of w3's vertex.
    // MM vertices: w1 = (1,0), w2 = (0,1), w3 = (0,0).
    auto image = [&](Prize w) -> RatPt {
        if (w == rank.best) return slope_vertex_best();
        if (w == rank.worst) return slope_vertex_worst();
        return slope_vertex_middle();
    };
    const RatPt i3 = image(Prize::w3);
    const RatPt i1 = image(Prize::w1);
    const RatPt i2 = image(Prize::w2);
    Affine A;
    A.t0 = i3.x;
    A.t1 = i3.y;
    A.m00 = i1.x - i3.x;
    A.m10 = i1.y - i3.y;
    A.m01 = i2.x - i3.x;
    A.m11 = i2.y - i3.y;
    return A;
}

Affine inverse(const Affine& A) {
    const Rat d = A.det();
    if (d == 0) throw geometry_error("singular chart map");
    Affine B;
    B.m00 = A.m11 / d;
    B.m01 = -A.m01 / d;
    B.m10 = -A.m10 / d;
    B.m11 = A.m00 / d;
    B.t0 = -(B.m00 * A.t0 + B.m01 * A.t1);
    B.t1 = -(B.m10 * A.t0 + B.m11 * A.t1);
    return B;
}

} // namespace

RatPt chart_convert_pt(const RatPt& p, Chart from, Chart target, const PrizeRanking& rank) {
    if (from == target) return p;
    const Affine A = mm_to_slope(rank);
    if (from == Chart::MM) return A(p);
    return inverse(A)(p);
}

Lottery chart_convert(const Lottery& p, Chart target, const PrizeRanking& rank) {
    const RatPt q = chart_convert_pt(p.pt(), p.chart, target, rank);
    return Lottery(q.x, q.y, target);
}

bool chart_map_orientation_preserving(const PrizeRanking& rank) {
    return sign_of(mm_to_slope(rank).det()) > 0;
}

Menu::Menu(std::vector<Lottery> ls) : items_(std::move(ls)) {
    if (items_.empty()) throw geometry_error("menu must be nonempty");
    for (size_t i = 0; i < items_.size(); ++i) {
        if (items_[i].chart != items_.front().chart)
            throw geometry_error("menu lotteries must share a chart");
        for (size_t j = i + 1; j < items_.size(); ++j)
            if (items_[i] == items_[j]) throw geometry_error("duplicate lottery in menu");
    }
}

bool Menu::contains(const Lottery& l) const { return index_of(l).has_value(); }

std::optional<size_t> Menu::index_of(const Lottery& l) const {
    for (size_t i = 0; i < items_.size(); ++i)
        if (items_[i] == l) return i;
    return std::nullopt;
}

Menu Menu::subset(const std::vector<size_t>& idx) const {
    std::vector<Lottery> out;
    for (size_t i : idx) {
        if (i >= items_.size()) throw geometry_error("subset index out of range");
        out.push_back(items_[i]);
    }
    return Menu(std::move(out));
}

HalfPlane::HalfPlane(RatPt pa, RatPt pb, int s) : a(std::move(pa)), b(std::move(pb)), side(s) {
    if (a == b) throw geometry_error("half-plane needs two distinct points");
    if (s != 1 && s != -1) throw geometry_error("half-plane side must be +1 or -1");
}

bool HalfPlane::contains(const RatPt& z) const { return side * orient(a, b, z) >= 0; }
bool HalfPlane::strictly_contains(const RatPt& z) const { return side * orient(a, b, z) > 0; }

namespace {

// Extreme-point test: v is a vertex of conv(pts) iff it is not in the convex
// hull of the others. In 2-D: no pair/triple of the others covers it.
bool is_extreme(const RatPt& v, const std::vector<RatPt>& pts) {
    std::vector<RatPt> others;
    for (const auto& p : pts)
        if (!(p == v)) others.push_back(p);
    // inside a segment?
    for (size_t i = 0; i < others.size(); ++i)
        for (size_t j = i + 1; j < others.size(); ++j) {
            if (orient(others[i], others[j], v) != 0) continue;
            // collinear: between?
            const Rat dx = others[j].x - others[i].x, dy = others[j].y - others[i].y;
            const Rat t = dx * (v.x - others[i].x) + dy * (v.y - others[i].y);
            const Rat len = dx * dx + dy * dy;
            if (t >= 0 && t <= len) return false;
        }
    // inside a triangle? (collinear triples reduce to the segment checks)
    for (size_t i = 0; i < others.size(); ++i)
        for (size_t j = i + 1; j < others.size(); ++j)
            for (size_t k = j + 1; k < others.size(); ++k) {
                if (orient(others[i], others[j], others[k]) == 0) continue;
                const int o1 = orient(others[i], others[j], v);
                const int o2 = orient(others[j], others[k], v);
                const int o3 = orient(others[k], others[i], v);
                if ((o1 >= 0 && o2 >= 0 && o3 >= 0) || (o1 <= 0 && o2 <= 0 && o3 <= 0))
                    return false;
            }
    return true;
}

int affine_dim(const std::vector<RatPt>& pts) {
    if (pts.empty()) return -1;
    bool all_equal = true;
    for (const auto& p : pts)
        if (!(p == pts.front())) all_equal = false;
    if (all_equal) return 0;
    // find two distinct, then test a third off the line
    size_t j = 1;
    while (pts[j] == pts[0]) ++j;
    for (size_t k = 0; k < pts.size(); ++k)
        if (orient(pts[0], pts[j], pts[k]) != 0) return 2;
    return 1;
}

} // namespace

bool face_of(const Menu& A, const Menu& D) {
    for (const auto& a : A.items())
        if (!D.contains(a)) throw geometry_error("face_of requires A to be a subset of D");

    std::vector<RatPt> apts, dpts;
    for (const auto& l : A.items()) apts.push_back(l.pt());
    for (const auto& l : D.items()) dpts.push_back(l.pt());

    const int ad = affine_dim(apts);
    const int dd = affine_dim(dpts);

    if (ad == dd) {
        // A full-dimensional face of conv(D) is conv(D) itself, so we need
        // conv(A) = conv(D) and conv(A) ∩ D = D = A. With A ⊆ D and no
        // duplicates this reduces to set equality.
        return A.size() == D.size();
    }

    if (ad == 0) {
        // single point: face iff extreme in D (conv(A) ∩ D = {a} automatically).
        return is_extreme(apts.front(), dpts);
    }

    if (ad == 1) {
        // all of A on one line; need that line to support conv(D)
        const RatPt u = apts[0];
        const RatPt v = apts[1];
        int lo = 2, hi = -2;
        for (const auto& p : dpts) {
            const int o = orient(u, v, p);
            lo = std::min(lo, o);
            hi = std::max(hi, o);
        }
        const bool supports = (lo >= 0) || (hi <= 0);
        if (!supports) return false;
        // conv(A) must equal the whole edge conv(D ∩ line), and every D-point
        // on that edge must belong to A.
        const Rat dx = v.x - u.x, dy = v.y - u.y;
        auto param = [&](const RatPt& p) -> Rat { return dx * (p.x - u.x) + dy * (p.y - u.y); };
        Rat amin = param(apts[0]), amax = amin;
        for (const auto& p : apts) {
            const Rat t = param(p);
            amin = std::min(amin, t);
            amax = std::max(amax, t);
        }
        for (size_t i = 0; i < dpts.size(); ++i) {
            if (orient(u, v, dpts[i]) != 0) continue;
            const Rat t = param(dpts[i]);
            if (t < amin || t > amax) return false; // edge extends past conv(A)
            bool in_a = false;
            for (const auto& q : apts)
                if (q == dpts[i]) in_a = true;
            if (!in_a) return false; // conv(A) ∩ D gained a point outside A
        }
        return true;
    }

    return false; // 2-D conv(A) inside higher count handled above; otherwise not a face
}

RatLine RatLine::through(const RatPt& p, const RatPt& q) {
    if (p == q) throw geometry_error("line through equal points");
    RatLine l;
    l.a = q.y - p.y;
    l.b = p.x - q.x;
    l.c = l.a * p.x + l.b * p.y;
    return l;
}

bool RatLine::parallel_to(const RatLine& o) const { return a * o.b - b * o.a == 0; }

bool RatLine::same_line(const RatLine& o) const {
    return parallel_to(o) && a * o.c - c * o.a == 0 && b * o.c - c * o.b == 0;
}

std::optional<RatPt> RatLine::intersect(const RatLine& o) const {
    const Rat det = a * o.b - b * o.a;
    if (det == 0) return std::nullopt;
    return RatPt{(c * o.b - b * o.c) / det, (a * o.c - c * o.a) / det};
}

bool point_in_simplex(const RatPt& p, Chart chart) {
    if (chart == Chart::MM) return p.x >= 0 && p.y >= 0 && p.x + p.y <= 1;
    // SLOPE triangle: vertices (0,1), (0,-1), (-1,0)
    return p.x <= 0 && p.y <= p.x + 1 && p.y >= -p.x - 1;
}

bool point_in_simplex_interior(const RatPt& p, Chart chart) {
    if (chart == Chart::MM) return p.x > 0 && p.y > 0 && p.x + p.y < 1;
    return p.x < 0 && p.y < p.x + 1 && p.y > -p.x - 1;
}

std::vector<RatPt> line_simplex_chord(const RatLine& line, Chart chart) {
    std::array<RatPt, 3> vs;
    if (chart == Chart::MM)
        vs = {RatPt{Rat(1), Rat(0)}, RatPt{Rat(0), Rat(1)}, RatPt{Rat(0), Rat(0)}};
    else
        vs = {slope_vertex_best(), slope_vertex_worst(), slope_vertex_middle()};

    std::vector<RatPt> hits;
    auto push_unique = [&](const RatPt& p) {
        for (const auto& q : hits)
            if (q == p) return;
        hits.push_back(p);
    };
    for (int i = 0; i < 3; ++i) {
        const RatPt& u = vs[i];
        const RatPt& v = vs[(i + 1) % 3];
        const RatLine edge = RatLine::through(u, v);
        if (line.same_line(edge)) {
            push_unique(u);
            push_unique(v);
            continue;
        }
        const auto z = line.intersect(edge);
        if (!z) continue;
        // on the closed edge segment?
        const Rat dx = v.x - u.x, dy = v.y - u.y;
        const Rat t = dx * (z->x - u.x) + dy * (z->y - u.y);
        const Rat len = dx * dx + dy * dy;
        if (t >= 0 && t <= len) push_unique(*z);
    }
    // order along the line so chord endpoints come out sorted
    if (hits.size() > 1) {
        const RatPt dir{-line.b, line.a};
        std::sort(hits.begin(), hits.end(), [&](const RatPt& p, const RatPt& q) {
            const Rat tp = dir.x * p.x + dir.y * p.y;
            const Rat tq = dir.x * q.x + dir.y * q.y;
            if (tp != tq) return tp < tq;
            return false;
        });
        // keep extremes only
        if (hits.size() > 2) hits = {hits.front(), hits.back()};
    }
    return hits;
}

} // namespace choicelab
