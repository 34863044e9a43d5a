#include "choicelab/region.hpp"

#include <algorithm>
#include <optional>

namespace choicelab {

LinCon left_of(const RatPt& p, const RatPt& q, bool strict) {
    // orient(p,q,z) = (q.x-p.x)(z.y-p.y) - (q.y-p.y)(z.x-p.x) > 0
    // rewritten as a*z.x + b*z.y < c with the sign flipped to <= / < form.
    const Rat A = q.y - p.y;       // coefficient of z.x with positive orient on the "<" side
    const Rat B = -(q.x - p.x);    // coefficient of z.y
    const Rat C = A * p.x + B * p.y;
    // orient > 0  <=>  A*z.x + B*z.y < C
    return LinCon(A, B, C, strict);
}

namespace {

// One-variable system: u*t <= v (or <). Feasibility with exact bounds.
struct Bound1D {
    bool infeasible = false;
    bool has_lo = false, has_hi = false;
    Rat lo, hi;
    bool lo_strict = false, hi_strict = false;

    void add(const Rat& u, const Rat& v, bool strict) {
        if (u == 0) {
            if (strict ? !(0 < v) : !(0 <= v)) infeasible = true;
            return;
        }
        const Rat bound = v / u;
        if (u > 0) { // t <= bound
            if (!has_hi) { hi = bound; hi_strict = strict; has_hi = true; }
            else if (bound < hi) { hi = bound; hi_strict = strict; }
            else if (bound == hi) hi_strict = hi_strict || strict;
        } else { // t >= bound
            if (!has_lo) { lo = bound; lo_strict = strict; has_lo = true; }
            else if (bound > lo) { lo = bound; lo_strict = strict; }
            else if (bound == lo) lo_strict = lo_strict || strict;
        }
    }

    bool feasible() const {
        if (infeasible) return false;
        if (!has_lo || !has_hi) return true;
        if (lo < hi) return true;
        if (lo > hi) return false;
        return !lo_strict && !hi_strict;
    }

    // interval has more than one point
    bool positive_length() const {
        if (infeasible) return false;
        if (!has_lo || !has_hi) return true;
        return lo < hi;
    }
};

// Fourier–Motzkin feasibility of {a x + b y (<=|<) c}.
bool fm_feasible(const std::vector<LinCon>& cons) {
    // eliminate x
    struct Norm { Rat beta, gamma; bool strict; }; // x <= gamma - beta*y  /  x >= ...
    std::vector<Norm> uppers, lowers;
    std::vector<LinCon> y_cons;
    for (const auto& c : cons) {
        if (c.is_trivial()) {
            if (c.strict ? !(0 < c.c) : !(0 <= c.c)) return false;
            continue;
        }
        if (c.a == 0) {
            y_cons.push_back(c);
            continue;
        }
        Norm n{c.b / c.a, c.c / c.a, c.strict};
        if (c.a > 0) uppers.push_back(n);
        else lowers.push_back(n);
    }
    // combine lower <= x <= upper: gammaL - betaL y <= gammaU - betaU y
    // => (betaU - betaL) y <= gammaU - gammaL
    Bound1D yb;
    for (const auto& c : y_cons) yb.add(c.b, c.c, c.strict);
    for (const auto& l : lowers)
        for (const auto& u : uppers)
            yb.add(u.beta - l.beta, u.gamma - l.gamma, l.strict || u.strict);
    return yb.feasible();
}

} // namespace

bool ConvexRegion::empty() const { return !fm_feasible(cons_); }

bool ConvexRegion::has_interior() const {
    std::vector<LinCon> strictified = cons_;
    for (auto& c : strictified) c.strict = true;
    return fm_feasible(strictified);
}

bool ConvexRegion::contains(const RatPt& p) const {
    for (const auto& c : cons_)
        if (!c.satisfied(p)) return false;
    return true;
}

bool ConvexRegion::subset_of(const LinCon& h) const {
    std::vector<LinCon> sys = cons_;
    sys.push_back(h.complement());
    return !fm_feasible(sys);
}

std::vector<size_t> ConvexRegion::face_constraints() const {
    std::vector<size_t> out;
    if (empty()) return out;
    for (size_t i = 0; i < cons_.size(); ++i) {
        const LinCon& ci = cons_[i];
        if (ci.is_trivial()) continue;
        // parameterize the boundary line of ci: p0 + t*d
        RatPt p0 = (ci.b != 0) ? RatPt{Rat(0), ci.c / ci.b} : RatPt{ci.c / ci.a, Rat(0)};
        const RatPt d{-ci.b, ci.a};
        Bound1D tb;
        bool dead = false;
        for (size_t j = 0; j < cons_.size() && !dead; ++j) {
            if (j == i) continue;
            const LinCon& cj = cons_[j];
            const Rat k = cj.a * d.x + cj.b * d.y;
            const Rat m = cj.c - cj.a * p0.x - cj.b * p0.y;
            tb.add(k, m, cj.strict);
            if (tb.infeasible) dead = true;
        }
        if (!dead && tb.positive_length()) out.push_back(i);
    }
    return out;
}

ConvexRegion::EdgeInterval ConvexRegion::edge_interval(size_t i) const {
    EdgeInterval out;
    const LinCon& ci = cons_.at(i);
    if (ci.is_trivial()) return out;
    const RatPt p0 = (ci.b != 0) ? RatPt{Rat(0), ci.c / ci.b} : RatPt{ci.c / ci.a, Rat(0)};
    const RatPt d{-ci.b, ci.a};
    Bound1D tb;
    for (size_t j = 0; j < cons_.size(); ++j) {
        if (j == i) continue;
        const LinCon& cj = cons_[j];
        const Rat k = cj.a * d.x + cj.b * d.y;
        const Rat m = cj.c - cj.a * p0.x - cj.b * p0.y;
        tb.add(k, m, cj.strict);
        if (tb.infeasible) return out;
    }
    if (!tb.positive_length()) return out;
    out.is_face = true;
    if (tb.has_lo) out.lo = RatPt{p0.x + tb.lo * d.x, p0.y + tb.lo * d.y};
    if (tb.has_hi) out.hi = RatPt{p0.x + tb.hi * d.x, p0.y + tb.hi * d.y};
    return out;
}

std::vector<RatPt> ConvexRegion::vertices() const {
    std::vector<RatPt> vs;
    for (size_t i = 0; i < cons_.size(); ++i) {
        if (cons_[i].is_trivial()) continue;
        for (size_t j = i + 1; j < cons_.size(); ++j) {
            if (cons_[j].is_trivial()) continue;
            const auto z = cons_[i].line().intersect(cons_[j].line());
            if (!z) continue;
            bool ok = true;
            for (const auto& c : cons_) {
                // vertices live on the closed region
                const Rat v = c.a * z->x + c.b * z->y;
                if (v > c.c) { ok = false; break; }
            }
            if (!ok) continue;
            bool dup = false;
            for (const auto& w : vs)
                if (w == *z) dup = true;
            if (!dup) vs.push_back(*z);
        }
    }
    return vs;
}

bool ConvexRegion::bounded() const {
    if (empty()) return true;
    // unbounded iff the recession cone {d != 0 : a.d <= 0 for all constraints}
    // is nonzero; probe the four unit-sup-norm slices of direction space.
    auto slice_feasible = [&](int fixed_axis, int sign) {
        Bound1D b;
        for (const auto& c : cons_) {
            if (c.is_trivial()) continue;
            Rat coef, rhs;
            if (fixed_axis == 0) { // dx = sign, free dy
                coef = c.b;
                rhs = -c.a * sign;
            } else { // dy = sign, free dx
                coef = c.a;
                rhs = -c.b * sign;
            }
            b.add(coef, rhs, false);
            if (b.infeasible) return false;
        }
        return b.feasible();
    };
    if (slice_feasible(0, 1) || slice_feasible(0, -1) || slice_feasible(1, 1) ||
        slice_feasible(1, -1))
        return false;
    return true;
}

RegionSummary halfplane_intersection_faces(const std::vector<HalfPlane>& hs) {
    if (hs.empty()) throw geometry_error("need at least one half-plane");
    ConvexRegion r;
    for (const auto& h : hs) {
        // h.contains(z): side * orient(a, b, z) >= 0
        LinCon strict_left = left_of(h.a, h.b, /*strict=*/true);
        LinCon weak;
        if (h.side > 0) {
            weak = strict_left;
            weak.strict = false;
        } else {
            weak = strict_left.complement();
            weak.strict = false;
        }
        r.add(weak);
    }
    RegionSummary s;
    s.region = r;
    if (r.empty()) return s;
    s.empty = false;
    s.bounded = r.bounded();
    s.face_halfplanes = r.face_constraints();
    s.vertices = r.vertices();
    // faces on coincident lines count once
    std::vector<RatLine> lines;
    for (size_t idx : s.face_halfplanes) {
        const RatLine l = r.constraints()[idx].line();
        bool seen = false;
        for (const auto& m : lines)
            if (m.same_line(l)) seen = true;
        if (!seen) lines.push_back(l);
    }
    s.one_dim_faces = static_cast<int>(lines.size());
    return s;
}

} // namespace choicelab
