#include "choicelab/random_utility.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace choicelab {

FiniteMixture::FiniteMixture(std::vector<std::pair<Preference, Rat>> comps)
    : components(std::move(comps)) {
    if (components.empty()) throw random_utility_error("mixture needs at least one component");
    Rat total(0);
    for (const auto& [pref, w] : components) {
        (void)pref;
        if (w <= 0) throw random_utility_error("mixture weights must be positive");
        total += w;
    }
    if (total != 1) throw random_utility_error("mixture weights must sum to exactly one");
}

void CircleRWU::validate() const {
    if (radius <= 0) throw random_utility_error("circle radius must be positive");
    const D2 vs[3] = {{1, 0}, {0, 1}, {0, 0}};
    for (const auto& v : vs) {
        const double d = std::hypot(v.x - center.x, v.y - center.y);
        if (d >= radius)
            throw random_utility_error("circle must strictly enclose the MM triangle");
    }
}

SlopePairDist::SlopePairDist(SlopeLaw l) : law(std::move(l)) {
    if (const auto* f = std::get_if<FiniteSlopeLaw>(&law)) {
        for (const auto& at : f->atoms)
            if (at.m0 == at.m1)
                throw random_utility_error(
                    "slope-pair atoms with m0 == m1 have no pivot; law rejected for sampling");
    }
}

Preference SampledPreference::to_preference() const {
    if (kind == Kind::eu) return EUPreference(Rat(dx), Rat(dy));
    return WUPreference({Rat(px), Rat(py)},
                        osign > 0 ? Orientation::clockwise : Orientation::counterclockwise, chart);
}

SampledPreference sample_parametric(const RandomPreference& mu, Rng& rng) {
    SampledPreference s;
    if (const auto* c = std::get_if<CircleRWU>(&mu)) {
        const double th = rng.uniform(0.0, 2.0 * M_PI);
        s.kind = SampledPreference::Kind::wu;
        s.px = c->center.x + c->radius * std::cos(th);
        s.py = c->center.y + c->radius * std::sin(th);
        s.osign = rng.coin() ? +1 : -1;
        s.chart = Chart::MM;
        return s;
    }
    if (std::get_if<UniformEU>(&mu)) {
        const double th = rng.uniform(0.0, 2.0 * M_PI);
        s.kind = SampledPreference::Kind::eu;
        s.dx = std::cos(th);
        s.dy = std::sin(th);
        s.chart = Chart::MM;
        return s;
    }
    if (const auto* sp = std::get_if<SlopePairDist>(&mu)) {
        double m0, m1;
        if (const auto* f = std::get_if<FiniteSlopeLaw>(&sp->law)) {
            const double u = rng.uniform();
            double acc = 0.0;
            size_t k = 0;
            for (; k + 1 < f->atoms.size(); ++k) {
                acc += to_double(f->atoms[k].w);
                if (u < acc) break;
            }
            m0 = to_double(f->atoms[k].m0);
            m1 = to_double(f->atoms[k].m1);
        } else {
            do {
                m0 = rng.uniform(-1.0, 1.0);
                m1 = rng.uniform(-1.0, 1.0);
            } while (m0 == m1); // probability-zero EU limit is resampled
        }
        s.kind = SampledPreference::Kind::wu;
        s.px = 2.0 / (m0 - m1);
        s.py = m0 * s.px - 1.0;
        s.osign = (m0 > m1) ? +1 : -1;
        s.chart = Chart::SLOPE;
        return s;
    }
    throw random_utility_error("sample_parametric expects a parametric kind");
}

Preference sample_preference(const RandomPreference& mu, Rng& rng) {
    if (const auto* fm = std::get_if<FiniteMixture>(&mu)) {
        const double u = rng.uniform();
        double acc = 0.0;
        size_t k = 0;
        for (; k + 1 < fm->components.size(); ++k) {
            acc += to_double(fm->components[k].second);
            if (u < acc) break;
        }
        return fm->components[k].first;
    }
    return sample_parametric(mu, rng).to_preference();
}

namespace {

uint32_t sampled_optimal_mask(const SampledPreference& s, const std::vector<D2>& menu) {
    uint32_t mask = 0;
    for (size_t i = 0; i < menu.size(); ++i) {
        bool maximal = true;
        for (size_t j = 0; j < menu.size() && maximal; ++j) {
            if (i == j) continue;
            if (s.score(menu[i], menu[j]) < 0) maximal = false;
        }
        if (maximal) mask |= (1u << i);
    }
    return mask;
}

uint32_t subset_mask(const std::vector<size_t>& subset) {
    uint32_t m = 0;
    for (size_t i : subset) m |= (1u << i);
    return m;
}

std::vector<D2> menu_d2(const Menu& D) {
    std::vector<D2> out;
    out.reserve(D.size());
    for (const auto& l : D.items()) out.push_back(l.d2());
    return out;
}

std::vector<size_t> sorted_subset(std::vector<size_t> s) {
    std::sort(s.begin(), s.end());
    return s;
}

} // namespace

std::optional<double> closed_form_choice_prob(const RandomPreference& mu, const Menu& D,
                                              const std::vector<size_t>& A) {
    const bool rotation_invariant =
        std::holds_alternative<CircleRWU>(mu) || std::holds_alternative<UniformEU>(mu);
    if (!rotation_invariant) return std::nullopt;
    if (D.size() == 1) return A.size() == 1 ? 1.0 : 0.0;
    if (A.size() != 1) return 0.0; // ties are null events for these kinds
    const size_t i = A.front();
    const D2 p = D[i].d2();
    // angular width of the cone spanned by the difference vectors x - p
    std::vector<double> angles;
    for (size_t j = 0; j < D.size(); ++j) {
        if (j == i) continue;
        const D2 x = D[j].d2();
        angles.push_back(std::atan2(x.y - p.y, x.x - p.x));
    }
    std::sort(angles.begin(), angles.end());
    double max_gap = 2.0 * M_PI - (angles.back() - angles.front());
    for (size_t k = 1; k < angles.size(); ++k)
        max_gap = std::max(max_gap, angles[k] - angles[k - 1]);
    const double width = 2.0 * M_PI - max_gap;
    if (width >= M_PI) return 0.0;
    return 0.5 * (1.0 - width / M_PI);
}

double ternary_prob_formula(const Lottery& p, const Lottery& q, const Lottery& r) {
    if (p == q || p == r || q == r)
        throw random_utility_error("ternary formula needs three distinct lotteries");
    if (orient(p.pt(), q.pt(), r.pt()) == 0)
        throw random_utility_error("ternary formula undefined for collinear lotteries");
    return 0.5 * (1.0 - angle_at(p, q, r) / 180.0);
}

ProbValue choice_prob(const RandomPreference& mu, const Menu& D, const std::vector<size_t>& A,
                      const McOptions& opt) {
    if (A.empty()) throw random_utility_error("chosen subset must be nonempty");
    for (size_t i : A)
        if (i >= D.size()) throw random_utility_error("chosen subset must index into the menu");
    const auto A_sorted = sorted_subset(A);

    if (const auto* fm = std::get_if<FiniteMixture>(&mu)) {
        Rat acc(0);
        for (const auto& [pref, w] : fm->components)
            if (optimal_indices(pref, D) == A_sorted) acc += w;
        return ProbValue::from_exact(acc);
    }

    if (opt.mode != McOptions::Mode::monte_carlo) {
        if (const auto cf = closed_form_choice_prob(mu, D, A_sorted)) {
            ProbValue p;
            p.value = *cf;
            return p;
        }
        if (opt.mode == McOptions::Mode::closed_form)
            throw random_utility_error("no closed form for this distribution kind");
    }

    const auto dmenu = menu_d2(D);
    const uint32_t want = subset_mask(A_sorted);
    const auto counts = mc_counts(opt.n, opt.seed, opt.threads, 1,
                                  [&](Rng& rng, std::vector<uint64_t>& acc) {
                                      const auto s = sample_parametric(mu, rng);
                                      if (sampled_optimal_mask(s, dmenu) == want) ++acc[0];
                                  });
    return ProbValue::from_counts(counts[0], opt.n);
}

const ProbValue* RCCRow::find(const std::vector<size_t>& subset) const {
    const auto key = sorted_subset(subset);
    for (const auto& e : entries)
        if (e.subset == key) return &e.prob;
    return nullptr;
}

std::optional<size_t> RCC::find_row(const Menu& m) const {
    for (size_t i = 0; i < rows.size(); ++i)
        if (rows[i].menu == m) return i;
    return std::nullopt;
}

RCC rcc_from(const RandomPreference& mu, const std::vector<Menu>& menus, const McOptions& opt) {
    if (menus.empty()) throw random_utility_error("need at least one menu");
    RCC table;
    for (const Menu& D : menus) {
        RCCRow row{D, {}};
        if (const auto* fm = std::get_if<FiniteMixture>(&mu)) {
            std::map<std::vector<size_t>, Rat> acc;
            for (const auto& [pref, w] : fm->components) acc[optimal_indices(pref, D)] += w;
            // all nonempty subsets, zero rows included (menus are small)
            const size_t n = D.size();
            for (uint32_t mask = 1; mask < (1u << n); ++mask) {
                std::vector<size_t> subset;
                for (size_t i = 0; i < n; ++i)
                    if (mask & (1u << i)) subset.push_back(i);
                const auto it = acc.find(subset);
                row.entries.push_back(
                    {subset, ProbValue::from_exact(it == acc.end() ? Rat(0) : it->second)});
            }
        } else {
            const auto dmenu = menu_d2(D);
            const size_t n = D.size();
            if (n > 16) throw random_utility_error("menu too large for subset enumeration");
            std::vector<uint64_t> counts;
            if (n <= 6) {
                counts = mc_counts(opt.n, opt.seed, opt.threads, (1u << n),
                                   [&](Rng& rng, std::vector<uint64_t>& acc) {
                                       const auto s = sample_parametric(mu, rng);
                                       ++acc[sampled_optimal_mask(s, dmenu)];
                                   });
            } else {
                throw random_utility_error("menu too large for Monte Carlo subset table");
            }
            for (uint32_t mask = 1; mask < (1u << n); ++mask) {
                std::vector<size_t> subset;
                for (size_t i = 0; i < n; ++i)
                    if (mask & (1u << i)) subset.push_back(i);
                row.entries.push_back({subset, ProbValue::from_counts(counts[mask], opt.n)});
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

bool rcc_exactly_equal(const RCC& a, const RCC& b) {
    if (a.rows.size() != b.rows.size()) return false;
    for (size_t r = 0; r < a.rows.size(); ++r) {
        if (!(a.rows[r].menu == b.rows[r].menu)) return false;
        if (a.rows[r].entries.size() != b.rows[r].entries.size()) return false;
        for (size_t e = 0; e < a.rows[r].entries.size(); ++e) {
            const auto& ea = a.rows[r].entries[e];
            const auto& eb = b.rows[r].entries[e];
            if (ea.subset != eb.subset) return false;
            if (!ea.prob.exact || !eb.prob.exact) return false;
            if (ea.prob.exact_value != eb.prob.exact_value) return false;
        }
    }
    return true;
}

WUFunctional example1_v1() {
    return WUFunctional({rat(0), rat(1), rat(1, 2)}, {rat(1), rat(1), rat(1, 2)});
}
WUFunctional example1_v2() {
    return WUFunctional({rat(0), rat(1), rat(1, 2)}, {rat(1), rat(1), rat(2)});
}
SemiWeightedPreference example1_v1_prime() {
    return SemiWeightedPreference(example1_v1(), example1_v2(), rat(1, 2));
}
SemiWeightedPreference example1_v2_prime() {
    return SemiWeightedPreference(example1_v2(), example1_v1(), rat(1, 2));
}
FiniteMixture example1_mu() {
    return FiniteMixture({{example1_v1(), rat(1, 2)}, {example1_v2(), rat(1, 2)}});
}
FiniteMixture example1_mu_prime(Rat w1) {
    return FiniteMixture({{example1_v1_prime(), w1}, {example1_v2_prime(), Rat(1) - w1}});
}

} // namespace choicelab
