#include "choicelab/joint_choice.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace choicelab {

BinaryEvent::BinaryEvent(Lottery p_, Lottery q_, Rel r) : p(std::move(p_)), q(std::move(q_)), rel(r) {
    if (p.chart != q.chart) throw joint_choice_error("event lotteries must share a chart");
    if (p == q) throw joint_choice_error("event lotteries must be distinct");
}

namespace {

// Pivot half-plane paired with clockwise rotation: {z : orient(p,q,z) >= 0}.
LinCon cw_halfplane(const BinaryEvent& e) {
    LinCon l = left_of(e.p.pt(), e.q.pt(), true);
    l.strict = false;
    return l;
}

LinCon closed_opp(const LinCon& h) { return LinCon(-h.a, -h.b, -h.c, false); }

LinCon side_of(const RatLine& l, int sgn) {
    return sgn > 0 ? LinCon(l.a, l.b, l.c, false) : LinCon(-l.a, -l.b, -l.c, false);
}

bool strictly_inside(const LinCon& h, const RatPt& z) { return h.a * z.x + h.b * z.y < h.c; }

// Inclusion up to lower-dimensional slivers: region \ target has no interior.
// All the Appendix-C identities hold modulo tie sets, so this is the right
// predicate for the dispatch and for the soundness gates.
bool ess_subset(std::vector<LinCon> cons, const LinCon& target) {
    cons.push_back(target.complement());
    return !ConvexRegion(std::move(cons)).has_interior();
}

bool has_interior(const std::vector<LinCon>& cons) { return ConvexRegion(cons).has_interior(); }

RatPt midpoint(const RatPt& a, const RatPt& b) {
    return {(a.x + b.x) / 2, (a.y + b.y) / 2};
}

// Point of the line's simplex chord distinct from `exclude` (midpoint rule).
RatPt aux_point_on_line(const RatLine& L, Chart chart, const std::optional<RatPt>& exclude) {
    const auto chord = line_simplex_chord(L, chart);
    if (chord.empty()) throw joint_choice_error("auxiliary line misses the simplex");
    if (chord.size() == 1) {
        if (!exclude || !(chord[0] == *exclude)) return chord[0];
        throw joint_choice_error("auxiliary line touches the simplex in a single point");
    }
    const RatPt m = midpoint(chord[0], chord[1]);
    if (!exclude || !(m == *exclude)) return m;
    return midpoint(chord[0], m);
}

// Orders (r, s) so that the event "r >= s" pairs clockwise rotation with the
// requested absolute half-plane.
BinaryEvent make_aux_event(const RatPt& r, const RatPt& s, LinCon frame_cw_side, bool flipped,
                           Chart chart) {
    const LinCon target = flipped ? closed_opp(frame_cw_side) : frame_cw_side;
    const Lottery lr(r.x, r.y, chart), ls(s.x, s.y, chart);
    if (!point_in_simplex(r, chart) || !point_in_simplex(s, chart))
        throw joint_choice_error("auxiliary lottery fell outside the simplex");
    const LinCon cand = [&] {
        LinCon l = left_of(r, s, true);
        l.strict = false;
        return l;
    }();
    const Rat align = cand.a * target.a + cand.b * target.b;
    if (align == 0) throw joint_choice_error("auxiliary event not on the target line");
    if (align > 0) return BinaryEvent(lr, ls, Rel::weak);
    return BinaryEvent(ls, lr, Rel::weak);
}

Cell weak_cell(std::vector<BinaryEvent> evs) {
    for (auto& e : evs) e.rel = Rel::weak;
    return Cell{std::move(evs)};
}

struct Dispatcher {
    std::array<BinaryEvent, 4> ev;
    Chart chart;
    int budget;
    Decomposition out;

    std::array<LinCon, 4> h;
    bool flipped = false;

    explicit Dispatcher(std::array<BinaryEvent, 4> events, int budget_)
        : ev(std::move(events)), chart(ev[0].p.chart), budget(budget_) {
        for (const auto& e : ev)
            if (e.p.chart != chart) throw joint_choice_error("events must share a chart");
    }

    RatLine line(size_t i) const { return RatLine::through(ev[i].p.pt(), ev[i].q.pt()); }

    void set_frame(bool flip_to) {
        flipped = flip_to;
        for (size_t i = 0; i < 4; ++i) {
            h[i] = cw_halfplane(ev[i]);
            if (flipped) h[i] = closed_opp(h[i]);
        }
    }

    std::vector<LinCon> all_h() const { return {h[0], h[1], h[2], h[3]}; }

    void emit(std::vector<BinaryEvent> events, const char* tag) {
        out.cells.push_back(weak_cell(std::move(events)));
        note(tag);
    }
    void note(const char* tag) {
        if (std::find(out.case_trace.begin(), out.case_trace.end(), tag) == out.case_trace.end())
            out.case_trace.push_back(tag);
    }
    void merge(Decomposition sub) {
        for (auto& c : sub.cells) out.cells.push_back(std::move(c));
        for (auto& t : sub.case_trace)
            if (std::find(out.case_trace.begin(), out.case_trace.end(), t) ==
                out.case_trace.end())
                out.case_trace.push_back(std::move(t));
    }

    BinaryEvent aux(const RatPt& r, const RatPt& s, const LinCon& frame_cw) const {
        return make_aux_event(r, s, frame_cw, flipped, chart);
    }

    // ---- case handlers; return true when cells were emitted ----

    bool handle_coincident() {
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = i + 1; j < 4; ++j) {
                if (!line(i).same_line(line(j))) continue;
                const LinCon hi = cw_halfplane(ev[i]);
                const LinCon hj = cw_halfplane(ev[j]);
                const Rat align = hi.a * hj.a + hi.b * hj.b;
                if (align > 0) {
                    std::vector<BinaryEvent> rest;
                    for (size_t k = 0; k < 4; ++k)
                        if (k != j) rest.push_back(ev[k]);
                    emit(std::move(rest), "coincident");
                } else {
                    note("coincident-empty");
                }
                return true;
            }
        return false;
    }

    void case1(const std::vector<size_t>& faces) {
        const size_t smallest = faces.front();
        size_t largest = smallest;
        for (size_t x = 0; x < 4; ++x) {
            bool contains_all = true;
            for (size_t i = 0; i < 4 && contains_all; ++i)
                if (!ess_subset({h[i]}, h[x])) contains_all = false;
            if (contains_all) {
                largest = x;
                break;
            }
        }
        if (largest == smallest) throw joint_choice_error("nested half-planes without a largest");
        emit({ev[smallest], ev[largest]}, "1");
    }

    bool case2(const std::vector<size_t>& faces) {
        const size_t a = faces[0], b = faces[1];
        std::vector<size_t> rest;
        for (size_t i = 0; i < 4; ++i)
            if (i != a && i != b) rest.push_back(i);
        const size_t c = rest[0], d = rest[1];

        if (line(a).parallel_to(line(b))) {
            emit({ev[a], ev[b]}, "2-1");
            return true;
        }
        const bool cd_parallel = line(c).parallel_to(line(d));
        const auto apex = line(a).intersect(line(b));
        const char* tag = cd_parallel ? "2-2"
                          : (apex && point_in_simplex(*apex, chart)) ? "2-3"
                                                                     : "2-4";
        // one of c,d redundant on the rotated side?
        if (ess_subset({closed_opp(h[a]), closed_opp(h[b]), closed_opp(h[c])}, closed_opp(h[d]))) {
            emit({ev[a], ev[b], ev[c]}, tag);
            return true;
        }
        if (ess_subset({closed_opp(h[a]), closed_opp(h[b]), closed_opp(h[d])}, closed_opp(h[c]))) {
            emit({ev[a], ev[b], ev[d]}, tag);
            return true;
        }
        if (cd_parallel) throw joint_choice_error("parallel non-face pair escaped reduction");
        const auto z = line(c).intersect(line(d));
        if (!z) throw joint_choice_error("expected crossing of the non-face lines");
        if (apex && point_in_simplex(*apex, chart)) {
            if (case23(a, b, c, d, *apex, *z)) return true;
            return case24(a, b, c, d, *z);
        }
        if (case24(a, b, c, d, *z)) return true;
        // The mixture-point construction needs an event chord inside one of the
        // face half-planes; when both chords sit on the rotated side, the fan
        // split through the (outside) apex still applies as long as its line
        // crosses the simplex.
        if (apex && !(*apex == *z)) return case23(a, b, c, d, *apex, *z);
        return false;
    }

    bool case23(size_t a, size_t b, size_t c, size_t d, const RatPt& r, const RatPt& z) {
        if (r == z) return false; // concurrent lines; let the other routes try
        const RatLine L5 = RatLine::through(r, z);
        RatPt pr, ps;
        if (point_in_simplex(r, chart)) {
            pr = r;
            try {
                ps = aux_point_on_line(L5, chart, r);
            } catch (const joint_choice_error&) {
                return false;
            }
        } else {
            const auto chord = line_simplex_chord(L5, chart);
            if (chord.size() < 2 || chord[0] == chord[1]) return false;
            pr = chord[0];
            ps = chord[1];
        }
        std::optional<LinCon> sigma;
        for (int sg : {+1, -1}) {
            const LinCon cand = side_of(L5, sg);
            if (ess_subset({h[a], cand}, h[b]) && ess_subset({closed_opp(cand), h[b]}, h[a]))
                if (!sigma) sigma = cand;
        }
        if (!sigma) return false;

        auto pairing_ok = [&](size_t g, size_t dl) {
            const std::vector<LinCon> ccw1{closed_opp(h[a]), closed_opp(*sigma), closed_opp(h[g])};
            const std::vector<LinCon> ccw2{closed_opp(h[b]), *sigma, closed_opp(h[dl])};
            return ess_subset(ccw1, closed_opp(h[dl])) && ess_subset(ccw1, closed_opp(h[b])) &&
                   ess_subset(ccw2, closed_opp(h[g])) && ess_subset(ccw2, closed_opp(h[a])) &&
                   ess_subset({h[a], *sigma, h[g]}, h[dl]) &&
                   ess_subset({h[b], closed_opp(*sigma), h[dl]}, h[g]);
        };
        size_t gamma, delta;
        if (pairing_ok(c, d)) {
            gamma = c;
            delta = d;
        } else if (pairing_ok(d, c)) {
            gamma = d;
            delta = c;
        } else {
            return false;
        }
        emit({ev[a], ev[gamma], aux(pr, ps, *sigma)}, "2-3");
        out.cells.push_back(weak_cell({ev[b], ev[delta], aux(pr, ps, closed_opp(*sigma))}));
        return true;
    }

    bool case24(size_t a, size_t b, size_t c, size_t d, const RatPt& z) {
        auto chord_in = [&](size_t whose, const LinCon& hh) {
            return hh.satisfied(ev[whose].p.pt()) && hh.satisfied(ev[whose].q.pt());
        };
        if (!chord_in(b, h[a])) {
            if (chord_in(a, h[b]))
                std::swap(a, b);
            else
                return false; // mirrored frame will look different
        }
        const RatPt r = midpoint(ev[b].p.pt(), ev[b].q.pt());
        const LinCon sigma5(h[a].a, h[a].b, h[a].a * r.x + h[a].b * r.y, false);
        if (!strictly_inside(h[a], r)) throw joint_choice_error("midpoint landed on the face line");
        const RatLine L5 = sigma5.line();
        const RatPt s1 = aux_point_on_line(L5, chart, r);
        if (r == z) throw joint_choice_error("degenerate crossing at the mixture point");
        const RatLine L6 = RatLine::through(r, z);
        const RatPt s2 = aux_point_on_line(L6, chart, r);

        std::optional<LinCon> sigma6;
        for (int sg : {+1, -1}) {
            const LinCon cand = side_of(L6, sg);
            if (ess_subset({sigma5, cand}, h[b]) && ess_subset({closed_opp(cand), h[b]}, sigma5))
                if (!sigma6) sigma6 = cand;
        }
        if (!sigma6) return false;

        auto delta_ok = [&](size_t dl, size_t g) {
            const std::vector<LinCon> ccw{closed_opp(h[b]), closed_opp(h[dl]), *sigma6};
            return ess_subset(ccw, closed_opp(h[a])) && ess_subset(ccw, closed_opp(h[g])) &&
                   ess_subset({h[b], h[dl], closed_opp(*sigma6)}, h[a]) &&
                   ess_subset({h[b], h[dl], closed_opp(*sigma6)}, h[g]);
        };
        size_t delta, gamma;
        if (delta_ok(c, d)) {
            delta = c;
            gamma = d;
        } else if (delta_ok(d, c)) {
            delta = d;
            gamma = c;
        } else {
            return false;
        }
        // first slab: between the face line and its parallel through r
        if (!ess_subset({h[a], h[b], closed_opp(sigma5)}, h[c]) ||
            !ess_subset({h[a], h[b], closed_opp(sigma5)}, h[d]))
            return false;
        if (has_interior({closed_opp(h[a]), closed_opp(h[b]), sigma5}))
            throw joint_choice_error("slab cell unexpectedly active counterclockwise");

        emit({ev[a], ev[b], aux(r, s1, closed_opp(sigma5))}, "2-4");
        out.cells.push_back(weak_cell({ev[b], ev[delta], aux(r, s2, closed_opp(*sigma6))}));

        const std::array<BinaryEvent, 4> sub{ev[a], ev[gamma], aux(r, s1, sigma5),
                                             aux(r, s2, *sigma6)};
        Dispatcher rec(sub, budget - 1);
        merge(rec.run());
        return true;
    }

    bool case3(const std::vector<size_t>& faces, const ConvexRegion& R) {
        size_t other = 0;
        for (size_t i = 0; i < 4; ++i)
            if (std::find(faces.begin(), faces.end(), i) == faces.end()) other = i;

        if (R.bounded()) {
            emit({ev[faces[0]], ev[faces[1]], ev[faces[2]]}, "3-1");
            return true;
        }
        // adjacency order: the middle edge has two endpoints
        std::array<size_t, 3> order{};
        {
            std::optional<size_t> mid;
            std::vector<size_t> ends;
            for (size_t f : faces) {
                const auto e = R.edge_interval(f);
                const int n_end = (e.lo ? 1 : 0) + (e.hi ? 1 : 0);
                if (n_end == 2)
                    mid = f;
                else
                    ends.push_back(f);
            }
            if (!mid || ends.size() != 2)
                throw joint_choice_error("unexpected three-face boundary structure");
            order = {ends[0], *mid, ends[1]};
        }
        if (line(order[0]).parallel_to(line(order[2]))) {
            emit({ev[order[0]], ev[order[1]], ev[order[2]]}, "3-1");
            return true;
        }
        if (ess_subset({closed_opp(h[order[0]]), closed_opp(h[order[1]]), closed_opp(h[order[2]])},
                       closed_opp(h[other]))) {
            emit({ev[order[0]], ev[order[1]], ev[order[2]]}, "3-2");
            return true;
        }

        // 3-3: an apex of the face chain inside the simplex (the paper's
        // construction), then the same split with the apex outside whenever
        // the auxiliary line still crosses the simplex.
        for (int pass = 0; pass < 2; ++pass) {
            for (int rev = 0; rev < 2; ++rev) {
                const size_t e1 = rev ? order[2] : order[0];
                const size_t e2 = order[1];
                const size_t e3 = rev ? order[0] : order[2];
                const auto r = line(e2).intersect(line(e3));
                if (!r) continue;
                const bool r_inside = point_in_simplex(*r, chart);
                if ((pass == 0) != r_inside) continue;
                const auto z14 = line(e1).intersect(line(other));
                const RatLine L5 = (z14 && !(*z14 == *r))
                                       ? RatLine::through(*r, *z14)
                                       : LinCon(h[e1].a, h[e1].b,
                                                h[e1].a * r->x + h[e1].b * r->y, false)
                                             .line();
                RatPt pr, ps;
                if (r_inside) {
                    pr = *r;
                    try {
                        ps = aux_point_on_line(L5, chart, *r);
                    } catch (const joint_choice_error&) {
                        continue;
                    }
                } else {
                    const auto chord = line_simplex_chord(L5, chart);
                    if (chord.size() < 2 || chord[0] == chord[1]) continue;
                    pr = chord[0];
                    ps = chord[1];
                }
                const auto sigma = split_side(L5, e1, e2, e3);
                if (!sigma) continue;
                if (!split_sound(*sigma, e1, e2, e3, other)) continue;
                emit({ev[e1], ev[e2], aux(pr, ps, *sigma)}, "3-3");
                out.cells.push_back(
                    weak_cell({ev[e3], ev[other], aux(pr, ps, closed_opp(*sigma))}));
                return true;
            }
            if (pass == 0 && case34(order, other)) return true;
        }
        return false;
    }

    bool case34(const std::array<size_t, 3>& order, size_t other) {
        // parallel cut through the outer apex, then recurse
        for (int rev = 0; rev < 2; ++rev) {
            const size_t e1 = rev ? order[2] : order[0];
            const size_t e2 = order[1];
            const size_t e3 = rev ? order[0] : order[2];
            const auto r23 = line(e2).intersect(line(e3));
            if (!r23) continue;
            const LinCon sigma5(h[e1].a, h[e1].b, h[e1].a * r23->x + h[e1].b * r23->y, false);
            const RatLine L5 = sigma5.line();
            const auto chord = line_simplex_chord(L5, chart);
            if (chord.size() < 2 || chord[0] == chord[1]) continue;
            const RatPt r = chord[0], s = chord[1];
            const auto sigma = split_side(L5, e1, e2, e3);
            if (!sigma) continue;
            // only the near cell is emitted; the far side recurses
            if (!ess_subset({h[e1], h[e2], *sigma}, h[e3]) ||
                !ess_subset({h[e1], h[e2], *sigma}, h[other]))
                continue;
            const std::vector<LinCon> ccw1{closed_opp(h[e1]), closed_opp(h[e2]),
                                           closed_opp(*sigma)};
            if (!ess_subset(ccw1, closed_opp(h[e3])) || !ess_subset(ccw1, closed_opp(h[other])))
                continue;
            emit({ev[e1], ev[e2], aux(r, s, *sigma)}, "3-4");
            const std::array<BinaryEvent, 4> sub{ev[e1], ev[e3], ev[other],
                                                 aux(r, s, closed_opp(*sigma))};
            Dispatcher rec(sub, budget - 1);
            merge(rec.run());
            return true;
        }
        return false;
    }

    // side of L5 with region(h1,h2,side) inside h3 and the complement side of
    // the chain landing back in h1,h2 — the fan split of the three-face chain
    std::optional<LinCon> split_side(const RatLine& L5, size_t e1, size_t e2, size_t e3) {
        std::optional<LinCon> sigma;
        for (int sg : {+1, -1}) {
            const LinCon cand = side_of(L5, sg);
            if (ess_subset({h[e1], h[e2], cand}, h[e3]) &&
                ess_subset({closed_opp(cand), h[e3]}, h[e1]) &&
                ess_subset({closed_opp(cand), h[e3]}, h[e2]))
                if (!sigma) sigma = cand;
        }
        return sigma;
    }

    bool split_sound(const LinCon& sigma, size_t e1, size_t e2, size_t e3, size_t e4) {
        const std::vector<LinCon> cw1{h[e1], h[e2], sigma};
        const std::vector<LinCon> cw2{h[e3], h[e4], closed_opp(sigma)};
        const std::vector<LinCon> ccw1{closed_opp(h[e1]), closed_opp(h[e2]), closed_opp(sigma)};
        const std::vector<LinCon> ccw2{closed_opp(h[e3]), closed_opp(h[e4]), sigma};
        return ess_subset(cw1, h[e3]) && ess_subset(cw1, h[e4]) && ess_subset(cw2, h[e1]) &&
               ess_subset(cw2, h[e2]) && ess_subset(ccw1, closed_opp(h[e3])) &&
               ess_subset(ccw1, closed_opp(h[e4])) && ess_subset(ccw2, closed_opp(h[e1])) &&
               ess_subset(ccw2, closed_opp(h[e2]));
    }

    bool case4(const std::vector<size_t>& faces, const ConvexRegion& R) {
        // adjacency order along the boundary
        std::array<ConvexRegion::EdgeInterval, 4> edges;
        for (size_t k = 0; k < 4; ++k) edges[k] = R.edge_interval(faces[k]);
        auto shares_endpoint = [&](size_t i, size_t j) -> std::optional<RatPt> {
            for (const auto& a : {edges[i].lo, edges[i].hi}) {
                if (!a) continue;
                for (const auto& b : {edges[j].lo, edges[j].hi})
                    if (b && *a == *b) return *a;
            }
            return std::nullopt;
        };

        if (R.bounded()) {
            // cyclic walk
            std::vector<size_t> ord{0};
            std::vector<bool> used(4, false);
            used[0] = true;
            while (ord.size() < 4) {
                bool advanced = false;
                for (size_t j = 0; j < 4 && !advanced; ++j) {
                    if (used[j]) continue;
                    if (shares_endpoint(ord.back(), j)) {
                        ord.push_back(j);
                        used[j] = true;
                        advanced = true;
                    }
                }
                if (!advanced) throw joint_choice_error("quad boundary walk failed");
            }
            for (int rot = 0; rot < 4; ++rot) {
                const size_t f1 = faces[ord[rot % 4]], f2 = faces[ord[(rot + 1) % 4]],
                             f3 = faces[ord[(rot + 2) % 4]], f4 = faces[ord[(rot + 3) % 4]];
                const auto v23 = line_meet(f2, f3);
                const auto v41 = line_meet(f4, f1);
                const auto v34 = line_meet(f3, f4);
                if (!v23 || !v41 || !v34 || *v23 == *v41) continue;
                const RatLine L5 = RatLine::through(*v23, *v41);
                const auto chord = line_simplex_chord(L5, chart);
                if (chord.size() < 2 || chord[0] == chord[1]) continue;
                const LinCon plus = side_of(L5, +1);
                const int side34 = strictly_inside(plus, *v34) ? +1
                                   : strictly_inside(closed_opp(plus), *v34) ? -1
                                                                             : 0;
                if (side34 == 0) continue;
                const LinCon sigma = side_of(L5, side34);
                if (!quad_sound(sigma, f1, f2, f3, f4)) continue;
                emit({ev[f1], ev[f2], aux(chord[0], chord[1], closed_opp(sigma))}, "4-1");
                out.cells.push_back(
                    weak_cell({ev[f3], ev[f4], aux(chord[0], chord[1], sigma)}));
                return true;
            }
            return false;
        }

        // unbounded: chain ends have one endpoint, middles two
        std::vector<size_t> ends, mids;
        for (size_t k = 0; k < 4; ++k) {
            const int n_end = (edges[k].lo ? 1 : 0) + (edges[k].hi ? 1 : 0);
            (n_end == 2 ? mids : ends).push_back(k);
        }
        if (ends.size() != 2 || mids.size() != 2)
            throw joint_choice_error("unexpected four-face boundary structure");
        // order: end, its neighbor mid, the other mid, other end
        size_t i1 = ends[0], i2, i3, i4 = ends[1];
        if (shares_endpoint(i1, mids[0])) {
            i2 = mids[0];
            i3 = mids[1];
        } else {
            i2 = mids[1];
            i3 = mids[0];
        }
        const size_t f1 = faces[i1], f2 = faces[i2], f3 = faces[i3], f4 = faces[i4];

        if (line(f1).parallel_to(line(f4))) {
            const auto v23 = line_meet(f2, f3);
            const auto v34 = line_meet(f3, f4);
            if (!v23 || !v34) throw joint_choice_error("chain corners missing");
            const LinCon sigma_base(h[f1].a, h[f1].b, h[f1].a * v23->x + h[f1].b * v23->y, false);
            const RatLine L5 = sigma_base.line();
            const auto chord = line_simplex_chord(L5, chart);
            if (chord.size() < 2 || chord[0] == chord[1]) return false;
            const LinCon plus = side_of(L5, +1);
            const int side34 = strictly_inside(plus, *v34) ? +1
                               : strictly_inside(closed_opp(plus), *v34) ? -1
                                                                         : 0;
            if (side34 == 0) return false;
            const LinCon sigma = side_of(L5, side34);
            if (!quad_sound(sigma, f1, f2, f3, f4)) return false;
            emit({ev[f1], ev[f2], aux(chord[0], chord[1], closed_opp(sigma))}, "4-2");
            out.cells.push_back(weak_cell({ev[f3], ev[f4], aux(chord[0], chord[1], sigma)}));
            return true;
        }
        note("4-3"); // the rotated frame has two faces; redo there
        return false;
    }

    std::optional<RatPt> line_meet(size_t i, size_t j) { return line(i).intersect(line(j)); }

    bool quad_sound(const LinCon& sigma, size_t f1, size_t f2, size_t f3, size_t f4) {
        const std::vector<LinCon> cw1{h[f1], h[f2], closed_opp(sigma)};
        const std::vector<LinCon> cw2{h[f3], h[f4], sigma};
        const std::vector<LinCon> ccw1{closed_opp(h[f1]), closed_opp(h[f2]), sigma};
        const std::vector<LinCon> ccw2{closed_opp(h[f3]), closed_opp(h[f4]), closed_opp(sigma)};
        return ess_subset(cw1, h[f3]) && ess_subset(cw1, h[f4]) && ess_subset(cw2, h[f1]) &&
               ess_subset(cw2, h[f2]) && ess_subset(ccw1, closed_opp(h[f3])) &&
               ess_subset(ccw1, closed_opp(h[f4])) && ess_subset(ccw2, closed_opp(h[f1])) &&
               ess_subset(ccw2, closed_opp(h[f2]));
    }

    Decomposition run() {
        if (budget <= 0) throw joint_choice_error("decomposition recursion budget exhausted");
        if (handle_coincident()) return std::move(out);

        set_frame(false);
        if (!has_interior(all_h())) {
            set_frame(true);
            if (!has_interior(all_h())) {
                note("empty");
                return std::move(out);
            }
        }
        for (int attempt = 0; attempt < 3; ++attempt) {
            const ConvexRegion R(all_h());
            const auto faces = R.face_constraints();
            bool done = false;
            switch (faces.size()) {
                case 1:
                    case1(faces);
                    done = true;
                    break;
                case 2:
                    done = case2(faces);
                    break;
                case 3:
                    done = case3(faces, R);
                    break;
                case 4:
                    done = case4(faces, R);
                    break;
                default:
                    throw joint_choice_error("unexpected face count in dispatch");
            }
            if (done) return std::move(out);
            // mirrored frame; only useful when the other side has interior
            set_frame(!flipped);
            if (!has_interior(all_h()))
                throw joint_choice_error("dispatch stuck: mirrored side is empty");
        }
        throw joint_choice_error("dispatch did not settle after frame flips");
    }
};

void verify_against_inputs(const Decomposition& d, const std::array<BinaryEvent, 4>& ev) {
    for (const auto& cell : d.cells) {
        if (cell.events.empty() || cell.events.size() > 3)
            throw joint_choice_error("cell size out of contract");
        std::vector<LinCon> cw, ccw;
        for (const auto& e : cell.events) {
            const LinCon hc = cw_halfplane(e);
            cw.push_back(hc);
            ccw.push_back(closed_opp(hc));
        }
        for (const auto& orig : ev) {
            const LinCon ho = cw_halfplane(orig);
            if (!ess_subset(cw, ho) || !ess_subset(ccw, closed_opp(ho)))
                throw joint_choice_error("decomposition soundness check failed");
        }
    }
}

} // namespace

Decomposition decompose4(const std::array<BinaryEvent, 4>& events) {
    Dispatcher d(events, 16);
    Decomposition out = d.run();
    verify_against_inputs(out, events);
    // every event pair of every cell can witness a tie overlap
    for (const auto& cell : out.cells)
        for (const auto& e : cell.events) {
            bool seen = false;
            for (const auto& w : out.tie_witnesses)
                if ((w.first == e.p && w.second == e.q) || (w.first == e.q && w.second == e.p))
                    seen = true;
            if (!seen) out.tie_witnesses.emplace_back(e.p, e.q);
        }
    return out;
}

const std::vector<std::string>& decomposition_leaf_cases() {
    static const std::vector<std::string> cases{"1",   "2-1", "2-2", "2-3", "2-4", "3-1",
                                                "3-2", "3-3", "3-4", "4-1", "4-2"};
    return cases;
}

Decomposition reduce_joint_event(const std::vector<BinaryEvent>& events, int max_depth) {
    if (events.empty()) throw joint_choice_error("need at least one event");
    if (max_depth <= 0) throw joint_choice_error("reduction depth exhausted (dispatch bug?)");
    Decomposition out;
    if (events.size() <= 3) {
        out.cells.push_back(Cell{events});
        for (const auto& e : events) out.tie_witnesses.emplace_back(e.p, e.q);
        return out;
    }
    const std::array<BinaryEvent, 4> head{events[0], events[1], events[2], events[3]};
    const Decomposition first = decompose4(head);
    for (const auto& t : first.case_trace) out.case_trace.push_back(t);
    for (const auto& cell : first.cells) {
        std::vector<BinaryEvent> rest = cell.events;
        rest.insert(rest.end(), events.begin() + 4, events.end());
        Decomposition sub = reduce_joint_event(rest, max_depth - 1);
        for (auto& c : sub.cells) out.cells.push_back(std::move(c));
        for (auto& t : sub.case_trace)
            if (std::find(out.case_trace.begin(), out.case_trace.end(), t) ==
                out.case_trace.end())
                out.case_trace.push_back(std::move(t));
        for (auto& w : sub.tie_witnesses) out.tie_witnesses.push_back(std::move(w));
    }
    // dedupe witnesses
    std::vector<std::pair<Lottery, Lottery>> uniq;
    for (const auto& w : out.tie_witnesses) {
        bool seen = false;
        for (const auto& u : uniq)
            if ((u.first == w.first && u.second == w.second) ||
                (u.first == w.second && u.second == w.first))
                seen = true;
        if (!seen) uniq.push_back(w);
    }
    out.tie_witnesses = std::move(uniq);
    return out;
}

OracleReport oracle_validate(const Decomposition& d, const std::vector<BinaryEvent>& events,
                             const OracleOptions& opt) {
    struct Ev {
        D2 p, q;
        bool strict;
    };
    std::vector<Ev> inputs;
    for (const auto& e : events) inputs.push_back({e.p.d2(), e.q.d2(), e.rel != Rel::weak});
    std::vector<std::vector<Ev>> cells;
    for (const auto& c : d.cells) {
        std::vector<Ev> cell;
        for (const auto& e : c.events) cell.push_back({e.p.d2(), e.q.d2(), false});
        cells.push_back(std::move(cell));
    }

    enum { TIES = 0, MISMATCH = 1, DOUBLE = 2 };
    const auto counts = mc_counts(
        opt.n, opt.seed, opt.threads, 3, [&](Rng& rng, std::vector<uint64_t>& acc) {
            const double radius = rng.coin() ? opt.radius_a : opt.radius_b;
            const double th = rng.uniform(0.0, 2.0 * M_PI);
            const D2 piv{opt.center.x + radius * std::cos(th),
                         opt.center.y + radius * std::sin(th)};
            const int osign = rng.coin() ? +1 : -1;
            bool tie = false;
            auto holds = [&](const Ev& e, bool weak) {
                const double cr = osign * cross_d(e.p, e.q, piv);
                if (cr == 0.0) {
                    tie = true;
                    return weak;
                }
                return cr > 0.0;
            };
            bool input_all = true;
            for (const auto& e : inputs)
                if (!holds(e, !e.strict)) input_all = false;
            int fired = 0;
            for (const auto& cell : cells) {
                bool all = true;
                for (const auto& e : cell)
                    if (!holds(e, true)) all = false;
                if (all) ++fired;
            }
            if (tie) {
                ++acc[TIES];
                return;
            }
            if (input_all != (fired >= 1)) ++acc[MISMATCH];
            if (fired >= 2) ++acc[DOUBLE];
        });
    OracleReport rep;
    rep.samples = opt.n;
    rep.ties_skipped = counts[TIES];
    rep.mismatches = counts[MISMATCH];
    rep.double_fires = counts[DOUBLE];
    return rep;
}

ProbValue joint_choice_prob(const RandomPreference& mu,
                            const std::vector<std::pair<Menu, std::vector<size_t>>>& events,
                            const McOptions& opt) {
    if (events.empty()) throw joint_choice_error("need at least one event");
    for (const auto& [menu, subset] : events) {
        if (subset.empty()) throw joint_choice_error("chosen subset must be nonempty");
        for (size_t i : subset)
            if (i >= menu.size()) throw joint_choice_error("subset index out of range");
    }

    if (const auto* fm = std::get_if<FiniteMixture>(&mu)) {
        Rat acc(0);
        for (const auto& [pref, w] : fm->components) {
            bool all = true;
            for (const auto& [menu, subset] : events) {
                auto sorted = subset;
                std::sort(sorted.begin(), sorted.end());
                if (optimal_indices(pref, menu) != sorted) {
                    all = false;
                    break;
                }
            }
            if (all) acc += w;
        }
        return ProbValue::from_exact(acc);
    }

    const Chart expected =
        std::holds_alternative<SlopePairDist>(mu) ? Chart::SLOPE : Chart::MM;
    struct Ev {
        std::vector<D2> menu;
        uint32_t want;
    };
    std::vector<Ev> evs;
    for (const auto& [menu, subset] : events) {
        if (menu.chart() != expected)
            throw joint_choice_error("menu chart does not match the distribution's chart");
        Ev e;
        for (const auto& l : menu.items()) e.menu.push_back(l.d2());
        e.want = 0;
        for (size_t i : subset) e.want |= (1u << i);
        evs.push_back(std::move(e));
    }
    const auto counts =
        mc_counts(opt.n, opt.seed, opt.threads, 1, [&](Rng& rng, std::vector<uint64_t>& acc) {
            const auto s = sample_parametric(mu, rng);
            for (const auto& e : evs) {
                uint32_t mask = 0;
                for (size_t i = 0; i < e.menu.size(); ++i) {
                    bool maximal = true;
                    for (size_t j = 0; j < e.menu.size() && maximal; ++j) {
                        if (i == j) continue;
                        if (s.score(e.menu[i], e.menu[j]) < 0) maximal = false;
                    }
                    if (maximal) mask |= (1u << i);
                }
                if (mask != e.want) return;
            }
            ++acc[0];
        });
    return ProbValue::from_counts(counts[0], opt.n);
}

ProbValue footnote_counterexample(const RandomPreference& mu, const Lottery& p, const Lottery& q,
                                  const Lottery& r, const McOptions& opt) {
    const Rat half = rat(1, 2);
    const Lottery pp(half * p.x + half * r.x, half * p.y + half * r.y, p.chart);
    const Lottery qp(half * q.x + half * r.x, half * q.y + half * r.y, p.chart);
    const Menu first({p, q});
    const Menu second({pp, qp});
    return joint_choice_prob(mu, {{first, {0}}, {second, {1}}}, opt);
}

} // namespace choicelab
