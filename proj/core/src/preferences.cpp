#include "choicelab/preferences.hpp"

#include <algorithm>
#include <cmath>

namespace choicelab {

WUPreference::WUPreference(RatPt piv, Orientation d, Chart c)
    : pivot(std::move(piv)), dir(d), chart(c) {
    if (point_in_simplex(pivot, chart))
        throw preference_error("weighted-utility pivot must lie outside the closed simplex");
}

WUFunctional::WUFunctional(std::array<Rat, 3> u_, std::array<Rat, 3> g_)
    : u(std::move(u_)), g(std::move(g_)) {
    bool any_pos = false, any_neg = false, all_zero = true;
    for (const Rat& x : g) {
        if (x > 0) any_pos = true;
        if (x < 0) any_neg = true;
        if (x != 0) all_zero = false;
    }
    if (all_zero || (any_pos && any_neg))
        throw preference_error("weight function g must be nonzero and of constant sign");
}

Rat WUFunctional::value(const Lottery& p) const {
    if (p.chart != Chart::MM) throw preference_error("weighted utility evaluates in the MM chart");
    const Rat p1 = p.x, p2 = p.y, p3 = Rat(1) - p.x - p.y;
    const Rat den = p1 * g[0] + p2 * g[1] + p3 * g[2];
    if (den == 0) throw preference_error("zero denominator: functional invalid at this lottery");
    const Rat num = p1 * g[0] * u[0] + p2 * g[1] * u[1] + p3 * g[2] * u[2];
    return num / den;
}

Rat weighted_value(const WUFunctional& f, const Lottery& p) { return f.value(p); }

RatLine WUFunctional::indifference_line(const Rat& v) const {
    // sum_i p^i g_i (u_i - v) = 0 over MM coordinates, p3 = 1 - x - y
    RatLine l;
    l.a = g[0] * (u[0] - v) - g[2] * (u[2] - v);
    l.b = g[1] * (u[1] - v) - g[2] * (u[2] - v);
    l.c = -(g[2] * (u[2] - v));
    if (l.a == 0 && l.b == 0) throw preference_error("degenerate indifference set");
    return l;
}

std::optional<RatPt> WUFunctional::pivot() const {
    // The line family a(v) x + b(v) y + c(v) = 0 is affine in v; its common
    // point solves the constant and linear parts simultaneously.
    const Rat A0 = g[0] * u[0] - g[2] * u[2], A1 = -(g[0] - g[2]);
    const Rat B0 = g[1] * u[1] - g[2] * u[2], B1 = -(g[1] - g[2]);
    const Rat C0 = g[2] * u[2], C1 = -g[2];
    const Rat D = A0 * B1 - A1 * B0;
    if (D == 0) return std::nullopt;
    return RatPt{(-C0 * B1 + C1 * B0) / D, (-A0 * C1 + A1 * C0) / D};
}

WUPreference WUFunctional::to_pivot_preference() const {
    const auto piv = pivot();
    if (!piv)
        throw preference_error("no finite pivot: functional is expected utility or degenerate");
    if (point_in_simplex(*piv, Chart::MM))
        throw preference_error("pivot inside the simplex: not strict weighted utility");
    // Orientation from any strictly ranked vertex pair.
    const std::array<Prize, 3> ws{Prize::w1, Prize::w2, Prize::w3};
    for (Prize hi : ws)
        for (Prize lo : ws) {
            if (hi == lo) continue;
            const RatPt vh = mm_vertex(hi), vl = mm_vertex(lo);
            if (g[static_cast<int>(hi)] == 0 || g[static_cast<int>(lo)] == 0) continue;
            const Lottery lh(vh.x, vh.y), ll(vl.x, vl.y);
            if (value(lh) <= value(ll)) continue;
            const int o = orient(*piv, vh, vl);
            if (o == 0) continue;
            return WUPreference(*piv, o > 0 ? Orientation::clockwise : Orientation::counterclockwise,
                                Chart::MM);
        }
    throw preference_error("could not calibrate orientation (functional is constant?)");
}

SemiWeightedPreference::SemiWeightedPreference(WUFunctional up, WUFunctional low, Rat v_star)
    : upper(std::move(up)), lower(std::move(low)), threshold(std::move(v_star)) {
    const RatLine lu = upper.indifference_line(threshold);
    const RatLine ll = lower.indifference_line(threshold);
    if (!lu.same_line(ll))
        throw representation_invalid(
            "semi-weighted pieces must share the threshold indifference line");
    // Both pieces must call the same side of the shared line "above threshold";
    // check at the vertices (skipping zero denominators).
    for (Prize w : {Prize::w1, Prize::w2, Prize::w3}) {
        const RatPt v = mm_vertex(w);
        const Lottery lv(v.x, v.y);
        try {
            const int su = sign_of(upper.value(lv) - threshold);
            const int sl = sign_of(lower.value(lv) - threshold);
            if (su * sl < 0)
                throw representation_invalid("semi-weighted pieces disagree across the threshold");
        } catch (const preference_error&) {
            continue;
        }
    }
}

Rat SemiWeightedPreference::value(const Lottery& p) const {
    const Rat vu = upper.value(p);
    if (vu >= threshold) return vu;
    return lower.value(p);
}

ImplicitBetweenness::ImplicitBetweenness(LocalUtility u, PrizeRanking rank)
    : u_(std::move(u)), rank_(rank) {
    if (!u_) throw preference_error("missing local utility");
    validate();
}

ImplicitBetweenness ImplicitBetweenness::from_eu(std::array<double, 3> uvals, PrizeRanking rank) {
    return ImplicitBetweenness(
        [uvals](Prize w, double) { return uvals[static_cast<int>(w)]; }, rank);
}

ImplicitBetweenness ImplicitBetweenness::from_wu(const WUFunctional& f, PrizeRanking rank) {
    std::array<double, 3> ud{}, gd{};
    for (int i = 0; i < 3; ++i) {
        ud[i] = to_double(f.u[i]);
        gd[i] = to_double(f.g[i]);
    }
    const int ib = static_cast<int>(rank.best);
    const int iw = static_cast<int>(rank.worst);
    auto raw = [ud, gd](int i, double v) { return gd[i] * (ud[i] - v) + v; };
    // v-dependent positive affine normalization to u(worst,.)=0, u(best,.)=1
    return ImplicitBetweenness(
        [raw, ib, iw](Prize w, double v) {
            const double lo = raw(iw, v);
            const double hi = raw(ib, v);
            return (raw(static_cast<int>(w), v) - lo) / (hi - lo);
        },
        rank);
}

void ImplicitBetweenness::validate() const {
    const int grid_v = 256;
    // normalization rows
    for (int k = 0; k <= 16; ++k) {
        const double v = k / 16.0;
        if (std::fabs(u_(rank_.worst, v)) > 1e-9 || std::fabs(u_(rank_.best, v) - 1.0) > 1e-9)
            throw representation_invalid("local utility is not normalized to u(worst)=0, u(best)=1");
    }
    // uniqueness of the root on a 66-point lottery grid
    for (int a = 0; a <= 10; ++a) {
        for (int b = 0; a + b <= 10; ++b) {
            const double p1 = a / 10.0, p2 = b / 10.0, p3 = 1.0 - p1 - p2;
            auto phi = [&](double v) {
                return p1 * u_(Prize::w1, v) + p2 * u_(Prize::w2, v) + p3 * u_(Prize::w3, v) - v;
            };
            int crossings = 0;
            bool touched = false;
            double prev = phi(0.0);
            if (std::fabs(prev) <= 1e-12) touched = true;
            for (int k = 1; k <= grid_v; ++k) {
                const double cur = phi(static_cast<double>(k) / grid_v);
                if (std::fabs(cur) <= 1e-12) touched = true;
                if ((prev > 1e-12 && cur < -1e-12) || (prev < -1e-12 && cur > 1e-12)) ++crossings;
                prev = cur;
            }
            if (crossings > 1)
                throw representation_invalid("defining equation has multiple roots on [0,1]");
            if (crossings == 0 && !touched)
                throw representation_invalid("defining equation has no root on [0,1]");
        }
    }
}

double ImplicitBetweenness::value(const Lottery& p, double tol) const {
    if (p.chart != Chart::MM) throw preference_error("implicit value evaluates in the MM chart");
    const double p1 = to_double(p.x), p2 = to_double(p.y);
    const double p3 = 1.0 - p1 - p2;
    auto phi = [&](double v) {
        return p1 * u_(Prize::w1, v) + p2 * u_(Prize::w2, v) + p3 * u_(Prize::w3, v) - v;
    };
    // bracket the unique root on a coarse grid, then bisect
    const int grid_v = 256;
    double lo = 0.0, hi = 1.0;
    double flo = phi(lo);
    if (std::fabs(flo) <= tol) return lo;
    bool bracketed = false;
    double prev_v = 0.0, prev_f = flo;
    for (int k = 1; k <= grid_v; ++k) {
        const double v = static_cast<double>(k) / grid_v;
        const double f = phi(v);
        if (std::fabs(f) <= tol) return v;
        if ((prev_f > 0 && f < 0) || (prev_f < 0 && f > 0)) {
            lo = prev_v;
            hi = v;
            flo = prev_f;
            bracketed = true;
            break;
        }
        prev_v = v;
        prev_f = f;
    }
    if (!bracketed) throw representation_invalid("no sign change on [0,1]");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = phi(mid);
        if (std::fabs(fm) <= tol || hi - lo <= 1e-15) return mid;
        if ((flo > 0) == (fm > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double implicit_value(const ImplicitBetweenness& b, const Lottery& p, double tol) {
    return b.value(p, tol);
}

namespace {

Cmp from_sign(int s) {
    if (s > 0) return Cmp::greater;
    if (s < 0) return Cmp::less;
    return Cmp::equivalent;
}

struct CompareVisitor {
    const Lottery& p;
    const Lottery& q;

    Cmp operator()(const EUPreference& eu) const {
        if (p.chart != Chart::MM || q.chart != Chart::MM)
            throw preference_error("EU comparison expects MM-chart lotteries");
        return from_sign(sign_of(eu.dx * (p.x - q.x) + eu.dy * (p.y - q.y)));
    }
    Cmp operator()(const WUPreference& w) const {
        if (p.chart != w.chart || q.chart != w.chart)
            throw preference_error("lottery chart does not match the preference chart");
        return from_sign(orientation_sign(w.dir) * orient(w.pivot, p.pt(), q.pt()));
    }
    Cmp operator()(const WUFunctional& f) const { return from_sign(sign_of(f.value(p) - f.value(q))); }
    Cmp operator()(const SemiWeightedPreference& s) const {
        return from_sign(sign_of(s.value(p) - s.value(q)));
    }
    Cmp operator()(const ImplicitBetweenness& b) const {
        const double vp = b.value(p), vq = b.value(q);
        if (vp > vq) return Cmp::greater;
        if (vp < vq) return Cmp::less;
        return Cmp::equivalent;
    }
};

} // namespace

Cmp compare(const Preference& pref, const Lottery& p, const Lottery& q) {
    return std::visit(CompareVisitor{p, q}, pref);
}

std::vector<size_t> optimal_indices(const Preference& pref, const Menu& D) {
    std::vector<size_t> out;
    for (size_t i = 0; i < D.size(); ++i) {
        bool maximal = true;
        for (size_t j = 0; j < D.size() && maximal; ++j) {
            if (i == j) continue;
            if (compare(pref, D[i], D[j]) == Cmp::less) maximal = false;
        }
        if (maximal) out.push_back(i);
    }
    return out;
}

Menu optimal_set(const Preference& pref, const Menu& D) {
    return D.subset(optimal_indices(pref, D));
}

bool fosd(const Lottery& p, const Lottery& q, const PrizeRanking& rank) {
    if (p.chart != Chart::MM || q.chart != Chart::MM)
        throw preference_error("FOSD is defined on MM-chart lotteries");
    return p.prob(rank.best) >= q.prob(rank.best) && p.prob(rank.worst) <= q.prob(rank.worst);
}

namespace {

// Admissible pivot regions in the SLOPE chart (Figure-6 geometry):
// left fan with counterclockwise rotation, right fan with clockwise rotation.
bool slope_pivot_monotone(const RatPt& piv, Orientation dir) {
    if (piv.x <= -1) {
        const bool in_left = piv.y >= piv.x + 1 && piv.y <= -piv.x - 1;
        return in_left && dir == Orientation::counterclockwise;
    }
    if (piv.x >= 1) {
        const bool in_right = piv.y >= -piv.x + 1 && piv.y <= piv.x - 1;
        return in_right && dir == Orientation::clockwise;
    }
    return false;
}

// Deterministic stream of FOSD-ordered rational pairs for the grid check.
std::vector<std::pair<Lottery, Lottery>> dominating_pairs(int n, const PrizeRanking& rank,
                                                          unsigned seed) {
    std::vector<std::pair<Lottery, Lottery>> out;
    unsigned long long s = seed * 6364136223846793005ull + 1442695040888963407ull;
    auto next = [&]() {
        s ^= s >> 13;
        s *= 0x2545F4914F6CDD1Dull;
        s ^= s >> 31;
        return s;
    };
    const long den = 24;
    auto lottery_from_masses = [&](long mw, long mm, long mb) {
        long probs[3];
        probs[static_cast<int>(rank.worst)] = mw;
        probs[static_cast<int>(rank.middle)] = mm;
        probs[static_cast<int>(rank.best)] = mb;
        return Lottery(rat(probs[0], den), rat(probs[1], den));
    };
    while (static_cast<int>(out.size()) < n) {
        const long mw = static_cast<long>(next() % (den + 1));
        const long mm = static_cast<long>(next() % (den + 1 - mw));
        const long mb = den - mw - mm;
        const long d1 = static_cast<long>(next() % (mw + 1));      // worst -> middle
        const long d2 = static_cast<long>(next() % (mm + d1 + 1)); // middle -> best
        const Lottery q = lottery_from_masses(mw, mm, mb);
        const Lottery p = lottery_from_masses(mw - d1, mm + d1 - d2, mb + d2);
        if (p == q) continue;
        out.emplace_back(p, q);
    }
    return out;
}

} // namespace

bool is_fosd_monotone(const Preference& pref, const PrizeRanking& rank, int grid) {
    if (const auto* w = std::get_if<WUPreference>(&pref)) {
        RatPt piv = w->pivot;
        Orientation dir = w->dir;
        if (w->chart == Chart::MM) {
            piv = chart_convert_pt(piv, Chart::MM, Chart::SLOPE, rank);
            if (!chart_map_orientation_preserving(rank)) dir = flip(dir);
        }
        return slope_pivot_monotone(piv, dir);
    }
    if (const auto* f = std::get_if<WUFunctional>(&pref)) {
        try {
            const Preference geo = f->to_pivot_preference();
            return is_fosd_monotone(geo, rank, grid);
        } catch (const preference_error&) {
            // fall through to the sampled check (EU-like functional)
        }
    }
    // grid check only makes sense in the MM chart, where FOSD pairs live
    const auto pairs = dominating_pairs(grid, rank, 0xC0FFEEu);
    for (const auto& [p, q] : pairs) {
        if (compare(pref, p, q) == Cmp::less) return false;
    }
    return true;
}

} // namespace choicelab
