#include "choicelab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

namespace choicelab {

namespace {

struct Box {
    double x0, y0, x1, y1;
    void include(double x, double y) {
        x0 = std::min(x0, x);
        y0 = std::min(y0, y);
        x1 = std::max(x1, x);
        y1 = std::max(y1, y);
    }
};

struct Mapper {
    Box world;
    int w, h;
    double sx(double x) const { return (x - world.x0) / (world.x1 - world.x0) * w; }
    double sy(double y) const { return h - (y - world.y0) / (world.y1 - world.y0) * h; }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

void svg_line(std::ostream& os, const Mapper& m, D2 a, D2 b, const char* style) {
    os << "<line x1=\"" << fmt(m.sx(a.x)) << "\" y1=\"" << fmt(m.sy(a.y)) << "\" x2=\""
       << fmt(m.sx(b.x)) << "\" y2=\"" << fmt(m.sy(b.y)) << "\" style=\"" << style << "\"/>\n";
}

void svg_circle(std::ostream& os, const Mapper& m, D2 c, double r_world, const char* style) {
    const double r = r_world / (m.world.x1 - m.world.x0) * m.w;
    os << "<circle cx=\"" << fmt(m.sx(c.x)) << "\" cy=\"" << fmt(m.sy(c.y)) << "\" r=\"" << fmt(r)
       << "\" style=\"" << style << "\"/>\n";
}

void svg_dot(std::ostream& os, const Mapper& m, D2 c, const char* fill) {
    os << "<circle cx=\"" << fmt(m.sx(c.x)) << "\" cy=\"" << fmt(m.sy(c.y))
       << "\" r=\"3\" fill=\"" << fill << "\"/>\n";
}

std::array<D2, 3> triangle_vertices(Chart chart) {
    if (chart == Chart::MM) return {D2{1, 0}, D2{0, 1}, D2{0, 0}};
    return {D2{0, 1}, D2{0, -1}, D2{-1, 0}};
}

// keep the part of segment [a,b] inside the chart triangle
bool clip_to_triangle(Chart chart, D2& a, D2& b) {
    auto clip_half = [&](double nx, double ny, double c) {
        const double fa = nx * a.x + ny * a.y - c;
        const double fb = nx * b.x + ny * b.y - c;
        if (fa > 0 && fb > 0) return false;
        if (fa > 0) {
            const double t = fa / (fa - fb);
            a = {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
        } else if (fb > 0) {
            const double t = fb / (fb - fa);
            b = {b.x + t * (a.x - b.x), b.y + t * (a.y - b.y)};
        }
        return true;
    };
    if (chart == Chart::MM)
        return clip_half(-1, 0, 0) && clip_half(0, -1, 0) && clip_half(1, 1, 1);
    return clip_half(1, 0, 0) && clip_half(-1, 1, 1) && clip_half(-1, -1, 1);
}

// Continuous utility proxy used for contouring. Every supported kind has
// straight-line level sets, so marching on a fine grid draws honest lines.
struct ValueField {
    std::function<double(double, double)> value;
    Chart chart = Chart::MM;
};

ValueField value_field(const Preference& pref) {
    if (const auto* eu = std::get_if<EUPreference>(&pref)) {
        const double dx = to_double(eu->dx), dy = to_double(eu->dy);
        return {[dx, dy](double x, double y) { return dx * x + dy * y; }, Chart::MM};
    }
    if (const auto* w = std::get_if<WUPreference>(&pref)) {
        const double px = to_double(w->pivot.x), py = to_double(w->pivot.y);
        const double sgn = orientation_sign(w->dir);
        return {[px, py, sgn](double x, double y) { return -sgn * std::atan2(y - py, x - px); },
                w->chart};
    }
    if (const auto* f = std::get_if<WUFunctional>(&pref)) {
        std::array<double, 3> u{}, g{};
        for (int i = 0; i < 3; ++i) {
            u[i] = to_double(f->u[i]);
            g[i] = to_double(f->g[i]);
        }
        return {[u, g](double x, double y) {
                    const double p3 = 1.0 - x - y;
                    const double den = x * g[0] + y * g[1] + p3 * g[2];
                    return (x * g[0] * u[0] + y * g[1] * u[1] + p3 * g[2] * u[2]) / den;
                },
                Chart::MM};
    }
    if (const auto* s = std::get_if<SemiWeightedPreference>(&pref)) {
        const auto up = value_field(Preference(s->upper)).value;
        const auto low = value_field(Preference(s->lower)).value;
        const double thr = to_double(s->threshold);
        return {[up, low, thr](double x, double y) {
                    const double v = up(x, y);
                    return v >= thr ? v : low(x, y);
                },
                Chart::MM};
    }
    const auto b = std::get<ImplicitBetweenness>(pref);
    return {[b](double x, double y) {
                return b.value(Lottery(Rat(x), Rat(y)), 1e-9);
            },
            Chart::MM};
}

void draw_contours(std::ostream& os, const Mapper& m, const ValueField& vf, int n_curves,
                   const char* style) {
    const auto tri = triangle_vertices(vf.chart);
    Box bb{tri[0].x, tri[0].y, tri[0].x, tri[0].y};
    for (const auto& v : tri) bb.include(v.x, v.y);
    const int N = 56;
    std::vector<double> vals((N + 1) * (N + 1));
    auto at = [&](int i, int j) -> double& { return vals[j * (N + 1) + i]; };
    double vmin = 1e300, vmax = -1e300;
    for (int j = 0; j <= N; ++j)
        for (int i = 0; i <= N; ++i) {
            const double x = bb.x0 + (bb.x1 - bb.x0) * i / N;
            const double y = bb.y0 + (bb.y1 - bb.y0) * j / N;
            const double v = vf.value(x, y);
            at(i, j) = v;
            // only triangle-interior samples set the level range
            D2 p{x, y}, q{x, y};
            if (clip_to_triangle(vf.chart, p, q)) {
                vmin = std::min(vmin, v);
                vmax = std::max(vmax, v);
            }
        }
    for (int k = 1; k <= n_curves; ++k) {
        const double level = vmin + (vmax - vmin) * k / (n_curves + 1);
        for (int j = 0; j < N; ++j)
            for (int i = 0; i < N; ++i) {
                const double x0 = bb.x0 + (bb.x1 - bb.x0) * i / N;
                const double x1 = bb.x0 + (bb.x1 - bb.x0) * (i + 1) / N;
                const double y0 = bb.y0 + (bb.y1 - bb.y0) * j / N;
                const double y1 = bb.y0 + (bb.y1 - bb.y0) * (j + 1) / N;
                const D2 corners[4] = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
                const double cv[4] = {at(i, j) - level, at(i + 1, j) - level,
                                      at(i + 1, j + 1) - level, at(i, j + 1) - level};
                std::vector<D2> hits;
                for (int e = 0; e < 4; ++e) {
                    const double a = cv[e], b = cv[(e + 1) % 4];
                    if ((a > 0 && b > 0) || (a < 0 && b < 0)) continue;
                    if (a == b) continue;
                    const double t = a / (a - b);
                    const D2 pa = corners[e], pb = corners[(e + 1) % 4];
                    hits.push_back({pa.x + t * (pb.x - pa.x), pa.y + t * (pb.y - pa.y)});
                }
                if (hits.size() >= 2) {
                    D2 a = hits[0], b = hits[1];
                    if (clip_to_triangle(vf.chart, a, b)) svg_line(os, m, a, b, style);
                }
            }
    }
}

void draw_triangle(std::ostream& os, const Mapper& m, Chart chart) {
    const auto tri = triangle_vertices(chart);
    for (int i = 0; i < 3; ++i)
        svg_line(os, m, tri[i], tri[(i + 1) % 3], "stroke:#333;stroke-width:2");
}

void draw_arrow(std::ostream& os, const Mapper& m, const ValueField& vf) {
    const auto tri = triangle_vertices(vf.chart);
    const D2 c{(tri[0].x + tri[1].x + tri[2].x) / 3.0, (tri[0].y + tri[1].y + tri[2].y) / 3.0};
    const double eps = 1e-4;
    double gx = (vf.value(c.x + eps, c.y) - vf.value(c.x - eps, c.y)) / (2 * eps);
    double gy = (vf.value(c.x, c.y + eps) - vf.value(c.x, c.y - eps)) / (2 * eps);
    const double n = std::hypot(gx, gy);
    if (n == 0) return;
    gx /= n;
    gy /= n;
    const D2 tip{c.x + 0.18 * gx, c.y + 0.18 * gy};
    svg_line(os, m, c, tip, "stroke:#666;stroke-width:2");
    // arrow head
    const double hx = -0.05 * gx, hy = -0.05 * gy;
    svg_line(os, m, tip, {tip.x + hx - 0.03 * gy, tip.y + hy + 0.03 * gx},
             "stroke:#666;stroke-width:2");
    svg_line(os, m, tip, {tip.x + hx + 0.03 * gy, tip.y + hy - 0.03 * gx},
             "stroke:#666;stroke-width:2");
}

Mapper make_mapper(Chart chart, const std::vector<D2>& extra, int w, int h) {
    const auto tri = triangle_vertices(chart);
    Box bb{tri[0].x, tri[0].y, tri[0].x, tri[0].y};
    for (const auto& v : tri) bb.include(v.x, v.y);
    for (const auto& p : extra) bb.include(p.x, p.y);
    const double mx = 0.12 * (bb.x1 - bb.x0 + 1e-9), my = 0.12 * (bb.y1 - bb.y0 + 1e-9);
    bb.x0 -= mx;
    bb.x1 += mx;
    bb.y0 -= my;
    bb.y1 += my;
    return Mapper{bb, w, h};
}

void svg_header(std::ostream& os, int w, int h) {
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg width=\"" << w << "\" height=\"" << h
       << "\" xmlns=\"http://www.w3.org/2000/svg\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::vector<D2> preference_marks(const Preference& pref) {
    std::vector<D2> marks;
    if (const auto* w = std::get_if<WUPreference>(&pref))
        marks.push_back({to_double(w->pivot.x), to_double(w->pivot.y)});
    if (const auto* f = std::get_if<WUFunctional>(&pref)) {
        if (const auto piv = f->pivot()) marks.push_back({to_double(piv->x), to_double(piv->y)});
    }
    if (const auto* s = std::get_if<SemiWeightedPreference>(&pref)) {
        for (const auto& piece : {s->upper, s->lower})
            if (const auto piv = piece.pivot())
                marks.push_back({to_double(piv->x), to_double(piv->y)});
    }
    return marks;
}

} // namespace

void render_preference_svg(std::ostream& os, const Preference& pref, const RenderOptions& opt) {
    const ValueField vf = value_field(pref);
    const auto marks = preference_marks(pref);
    const Mapper m = make_mapper(vf.chart, marks, opt.width, opt.height);
    svg_header(os, opt.width, opt.height);
    draw_contours(os, m, vf, opt.n_curves, "stroke:#c22;stroke-width:1");
    draw_triangle(os, m, vf.chart);
    draw_arrow(os, m, vf);
    for (const auto& p : marks) svg_dot(os, m, p, "#555");
    os << "</svg>\n";
}

void render_distribution_svg(std::ostream& os, const RandomPreference& mu,
                             const RenderOptions& opt) {
    if (const auto* fm = std::get_if<FiniteMixture>(&mu)) {
        std::vector<D2> marks;
        for (const auto& [pref, w] : fm->components) {
            (void)w;
            for (const auto& p : preference_marks(pref)) marks.push_back(p);
        }
        const Mapper m = make_mapper(Chart::MM, marks, opt.width, opt.height);
        svg_header(os, opt.width, opt.height);
        const char* styles[4] = {"stroke:#c22;stroke-width:1", "stroke:#26a;stroke-width:1",
                                 "stroke:#282;stroke-width:1", "stroke:#a2a;stroke-width:1"};
        size_t k = 0;
        for (const auto& [pref, w] : fm->components) {
            (void)w;
            draw_contours(os, m, value_field(pref), opt.n_curves, styles[k % 4]);
            ++k;
        }
        draw_triangle(os, m, Chart::MM);
        for (const auto& p : marks) svg_dot(os, m, p, "#555");
        os << "</svg>\n";
        return;
    }

    Rng rng(opt.seed);
    if (const auto* c = std::get_if<CircleRWU>(&mu)) {
        std::vector<D2> extent{{c->center.x - c->radius, c->center.y - c->radius},
                               {c->center.x + c->radius, c->center.y + c->radius}};
        const Mapper m = make_mapper(Chart::MM, extent, opt.width, opt.height);
        svg_header(os, opt.width, opt.height);
        svg_circle(os, m, c->center, c->radius,
                   "fill:none;stroke:#282;stroke-width:1;stroke-dasharray:4 3");
        std::vector<SampledPreference> samples;
        for (int i = 0; i < opt.n_samples; ++i) samples.push_back(sample_parametric(mu, rng));
        // fan lines for the first two pivots
        for (int k = 0; k < 2 && k < static_cast<int>(samples.size()); ++k)
            draw_contours(os, m, value_field(samples[k].to_preference()), opt.n_curves,
                          k == 0 ? "stroke:#c22;stroke-width:1" : "stroke:#26a;stroke-width:1");
        draw_triangle(os, m, Chart::MM);
        for (const auto& s : samples) svg_dot(os, m, {s.px, s.py}, "#555");
        os << "</svg>\n";
        return;
    }
    if (std::holds_alternative<UniformEU>(mu)) {
        const Mapper m = make_mapper(Chart::MM, {}, opt.width, opt.height);
        svg_header(os, opt.width, opt.height);
        const char* styles[3] = {"stroke:#c22;stroke-width:1", "stroke:#26a;stroke-width:1",
                                 "stroke:#282;stroke-width:1"};
        for (int k = 0; k < 3; ++k) {
            const auto s = sample_parametric(mu, rng);
            draw_contours(os, m, value_field(s.to_preference()), opt.n_curves, styles[k]);
        }
        draw_triangle(os, m, Chart::MM);
        os << "</svg>\n";
        return;
    }
    // slope-pair law: slope chart with sampled pivots
    const auto& sp = std::get<SlopePairDist>(mu);
    (void)sp;
    std::vector<SampledPreference> samples;
    for (int i = 0; i < opt.n_samples; ++i) samples.push_back(sample_parametric(mu, rng));
    std::vector<D2> marks;
    for (const auto& s : samples) marks.push_back({s.px, s.py});
    const Mapper m = make_mapper(Chart::SLOPE, marks, opt.width, opt.height);
    svg_header(os, opt.width, opt.height);
    for (int k = 0; k < 2 && k < static_cast<int>(samples.size()); ++k)
        draw_contours(os, m, value_field(samples[k].to_preference()), opt.n_curves,
                      k == 0 ? "stroke:#c22;stroke-width:1" : "stroke:#26a;stroke-width:1");
    draw_triangle(os, m, Chart::SLOPE);
    for (const auto& p : marks) svg_dot(os, m, p, "#555");
    os << "</svg>\n";
}

} // namespace choicelab
