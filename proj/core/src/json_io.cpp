#include "choicelab/json_io.hpp"

namespace choicelab {

namespace {

Rat rat_from_json(const json& j) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (j.is_number_float()) return Rat(j.get<double>()); // exact binary64 embedding
    throw io_error("expected a rational (string or number)");
}

Chart chart_from_json(const json& j) {
    const auto s = j.get<std::string>();
    if (s == "MM") return Chart::MM;
    if (s == "SLOPE") return Chart::SLOPE;
    throw io_error("unknown chart: " + s);
}

std::string chart_name(Chart c) { return c == Chart::MM ? "MM" : "SLOPE"; }

std::array<Rat, 3> rat3_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw io_error("expected an array of three rationals");
    return {rat_from_json(j[0]), rat_from_json(j[1]), rat_from_json(j[2])};
}

json rat3_to_json(const std::array<Rat, 3>& a) {
    return json::array({rat_to_string(a[0]), rat_to_string(a[1]), rat_to_string(a[2])});
}

PrizeRanking ranking_from_json(const json& j) {
    if (!j.is_object()) return PrizeRanking::standard();
    auto prize = [](const std::string& s) {
        if (s == "w1") return Prize::w1;
        if (s == "w2") return Prize::w2;
        if (s == "w3") return Prize::w3;
        throw io_error("unknown prize: " + s);
    };
    return PrizeRanking(prize(j.at("best").get<std::string>()),
                        prize(j.at("middle").get<std::string>()),
                        prize(j.at("worst").get<std::string>()));
}

WUFunctional functional_from_json(const json& j) {
    return WUFunctional(rat3_from_json(j.at("u")), rat3_from_json(j.at("g")));
}

json functional_to_json(const WUFunctional& f) {
    return json{{"u", rat3_to_json(f.u)}, {"g", rat3_to_json(f.g)}};
}

} // namespace

json lottery_to_json(const Lottery& l) {
    return json{{"x", rat_to_string(l.x)}, {"y", rat_to_string(l.y)}, {"chart", chart_name(l.chart)}};
}

Lottery lottery_from_json(const json& j) {
    const Chart c = j.contains("chart") ? chart_from_json(j.at("chart")) : Chart::MM;
    Lottery l(rat_from_json(j.at("x")), rat_from_json(j.at("y")), c);
    if (!l.in_simplex())
        throw io_error("lottery (" + rat_to_string(l.x) + ", " + rat_to_string(l.y) +
                       ") lies outside its chart's simplex");
    return l;
}

json menu_to_json(const Menu& m) {
    json out = json::array();
    for (const auto& l : m.items()) out.push_back(lottery_to_json(l));
    return out;
}

Menu menu_from_json(const json& j) {
    if (!j.is_array()) throw io_error("menu must be an array of lotteries");
    std::vector<Lottery> ls;
    for (const auto& e : j) ls.push_back(lottery_from_json(e));
    return Menu(std::move(ls));
}

std::vector<Menu> menus_from_json(const json& j) {
    if (!j.is_array()) throw io_error("expected an array of menus");
    std::vector<Menu> out;
    for (const auto& e : j) out.push_back(menu_from_json(e));
    return out;
}

json preference_to_json(const Preference& p) {
    if (const auto* eu = std::get_if<EUPreference>(&p))
        return json{{"kind", "eu"},
                    {"direction", json::array({rat_to_string(eu->dx), rat_to_string(eu->dy)})}};
    if (const auto* w = std::get_if<WUPreference>(&p))
        return json{{"kind", "wu_pivot"},
                    {"pivot", json::array({rat_to_string(w->pivot.x), rat_to_string(w->pivot.y)})},
                    {"orientation", w->dir == Orientation::clockwise ? "cw" : "ccw"},
                    {"chart", chart_name(w->chart)}};
    if (const auto* f = std::get_if<WUFunctional>(&p)) {
        json out = functional_to_json(*f);
        out["kind"] = "wu_functional";
        return out;
    }
    if (const auto* s = std::get_if<SemiWeightedPreference>(&p))
        return json{{"kind", "semi_weighted"},
                    {"upper", functional_to_json(s->upper)},
                    {"lower", functional_to_json(s->lower)},
                    {"threshold", rat_to_string(s->threshold)}};
    throw io_error("implicit preferences are parse-only");
}

Preference preference_from_json(const json& j) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "eu") {
        const auto& d = j.at("direction");
        return EUPreference(rat_from_json(d.at(0)), rat_from_json(d.at(1)));
    }
    if (kind == "wu_pivot") {
        const auto& piv = j.at("pivot");
        const auto o = j.at("orientation").get<std::string>();
        if (o != "cw" && o != "ccw") throw io_error("orientation must be cw or ccw");
        const Chart c = j.contains("chart") ? chart_from_json(j.at("chart")) : Chart::MM;
        return WUPreference({rat_from_json(piv.at(0)), rat_from_json(piv.at(1))},
                            o == "cw" ? Orientation::clockwise : Orientation::counterclockwise, c);
    }
    if (kind == "wu_functional") return functional_from_json(j);
    if (kind == "semi_weighted")
        return SemiWeightedPreference(functional_from_json(j.at("upper")),
                                      functional_from_json(j.at("lower")),
                                      rat_from_json(j.at("threshold")));
    if (kind == "implicit") {
        const auto family = j.at("family").get<std::string>();
        const PrizeRanking rank =
            j.contains("ranking") ? ranking_from_json(j.at("ranking")) : PrizeRanking::standard();
        if (family == "eu") {
            const auto u = rat3_from_json(j.at("u"));
            return ImplicitBetweenness::from_eu(
                {to_double(u[0]), to_double(u[1]), to_double(u[2])}, rank);
        }
        if (family == "wu") return ImplicitBetweenness::from_wu(functional_from_json(j), rank);
        throw io_error("unknown implicit family: " + family);
    }
    throw io_error("unknown preference kind: " + kind);
}

json slope_law_to_json(const SlopeLaw& law) {
    if (const auto* f = std::get_if<FiniteSlopeLaw>(&law)) {
        json atoms = json::array();
        for (const auto& a : f->atoms)
            atoms.push_back(json{{"m0", rat_to_string(a.m0)},
                                 {"m1", rat_to_string(a.m1)},
                                 {"w", rat_to_string(a.w)}});
        return json{{"kind", "finite_support"}, {"atoms", atoms}};
    }
    return json{{"kind", "uniform_independent"}};
}

SlopeLaw slope_law_from_json(const json& j) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "finite_support") {
        std::vector<SlopeAtom> atoms;
        for (const auto& a : j.at("atoms"))
            atoms.push_back(
                {rat_from_json(a.at("m0")), rat_from_json(a.at("m1")), rat_from_json(a.at("w"))});
        return FiniteSlopeLaw(std::move(atoms));
    }
    if (kind == "uniform_independent") return IndependentUniformLaw{};
    throw io_error("unknown slope-law kind: " + kind);
}

json random_preference_to_json(const RandomPreference& mu) {
    if (const auto* fm = std::get_if<FiniteMixture>(&mu)) {
        json comps = json::array();
        for (const auto& [pref, w] : fm->components)
            comps.push_back(json{{"weight", rat_to_string(w)}, {"preference", preference_to_json(pref)}});
        return json{{"kind", "finite_mixture"}, {"components", comps}};
    }
    if (const auto* c = std::get_if<CircleRWU>(&mu))
        return json{{"kind", "circle_rwu"},
                    {"center", json::array({c->center.x, c->center.y})},
                    {"radius", c->radius}};
    if (std::holds_alternative<UniformEU>(mu)) return json{{"kind", "uniform_eu"}};
    const auto& sp = std::get<SlopePairDist>(mu);
    return json{{"kind", "slope_pair"}, {"law", slope_law_to_json(sp.law)}};
}

RandomPreference random_preference_from_json(const json& j) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "finite_mixture") {
        std::vector<std::pair<Preference, Rat>> comps;
        for (const auto& c : j.at("components"))
            comps.emplace_back(preference_from_json(c.at("preference")),
                               rat_from_json(c.at("weight")));
        return FiniteMixture(std::move(comps));
    }
    if (kind == "circle_rwu") {
        D2 center{0.5, 0.5};
        if (j.contains("center"))
            center = {j.at("center").at(0).get<double>(), j.at("center").at(1).get<double>()};
        const double radius = j.value("radius", 0.9);
        return CircleRWU(center, radius);
    }
    if (kind == "uniform_eu") return UniformEU{};
    if (kind == "slope_pair") return SlopePairDist(slope_law_from_json(j.at("law")));
    throw io_error("unknown distribution kind: " + kind);
}

json prob_value_to_json(const ProbValue& p) {
    if (p.exact) return json(rat_to_string(p.exact_value));
    return json{{"prob", p.value}, {"stderr", p.stderr_}};
}

json rcc_to_json(const RCC& rcc) {
    json rows = json::array();
    for (const auto& row : rcc.rows) {
        json entries = json::array();
        for (const auto& e : row.entries) {
            json entry{{"subset", e.subset}};
            if (e.prob.exact) {
                entry["prob"] = rat_to_string(e.prob.exact_value);
            } else {
                entry["prob"] = e.prob.value;
                entry["stderr"] = e.prob.stderr_;
            }
            entries.push_back(std::move(entry));
        }
        rows.push_back(json{{"menu", menu_to_json(row.menu)}, {"rows", entries}});
    }
    if (rcc.companions.empty()) return rows;
    json comps = json::array();
    for (const auto& c : rcc.companions)
        comps.push_back(json{{"base", c.base_row},
                             {"companion", c.companion_row},
                             {"p", lottery_to_json(c.p)},
                             {"lambda", rat_to_string(c.lambda)}});
    return json{{"menus", rows}, {"companions", comps}};
}

RCC rcc_from_json(const json& j) {
    RCC out;
    const json& rows = j.is_array() ? j : j.at("menus");
    for (const auto& r : rows) {
        RCCRow row{menu_from_json(r.at("menu")), {}};
        for (const auto& e : r.at("rows")) {
            RCCSubsetProb sp;
            sp.subset = e.at("subset").get<std::vector<size_t>>();
            std::sort(sp.subset.begin(), sp.subset.end());
            const auto& pr = e.at("prob");
            if (pr.is_string()) {
                sp.prob = ProbValue::from_exact(parse_rat(pr.get<std::string>()));
            } else {
                sp.prob.value = pr.get<double>();
                sp.prob.stderr_ = e.value("stderr", 0.0);
                sp.prob.exact = false;
            }
            row.entries.push_back(std::move(sp));
        }
        out.rows.push_back(std::move(row));
    }
    if (j.is_object() && j.contains("companions")) {
        for (const auto& c : j.at("companions"))
            out.companions.push_back({c.at("base").get<size_t>(),
                                      c.at("companion").get<size_t>(),
                                      lottery_from_json(c.at("p")),
                                      rat_from_json(c.at("lambda"))});
    }
    return out;
}

json binary_events_to_json(const std::vector<BinaryEvent>& events) {
    json out = json::array();
    for (const auto& e : events) {
        const char* rel = e.rel == Rel::strict ? "strict" : (e.rel == Rel::weak ? "weak" : "indiff");
        out.push_back(
            json{{"p", lottery_to_json(e.p)}, {"q", lottery_to_json(e.q)}, {"relation", rel}});
    }
    return out;
}

std::vector<BinaryEvent> binary_events_from_json(const json& j) {
    if (!j.is_array()) throw io_error("expected an array of events");
    std::vector<BinaryEvent> out;
    for (const auto& e : j) {
        Rel rel = Rel::strict;
        if (e.contains("relation")) {
            const auto s = e.at("relation").get<std::string>();
            if (s == "strict") rel = Rel::strict;
            else if (s == "weak") rel = Rel::weak;
            else if (s == "indiff") rel = Rel::indiff;
            else throw io_error("unknown relation: " + s);
        }
        out.emplace_back(lottery_from_json(e.at("p")), lottery_from_json(e.at("q")), rel);
    }
    return out;
}

json joint_table_to_json(const std::vector<JointTableRow>& rows) {
    json out = json::array();
    for (const auto& row : rows) {
        json events = json::array();
        for (const auto& [menu, chosen] : row.events)
            events.push_back(json{{"menu", menu_to_json(menu)}, {"chosen", chosen}});
        json entry{{"events", events}};
        if (row.prob.exact) {
            entry["prob"] = rat_to_string(row.prob.exact_value);
        } else {
            entry["prob"] = row.prob.value;
            entry["stderr"] = row.prob.stderr_;
        }
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<JointTableRow> joint_table_from_json(const json& j) {
    if (!j.is_array()) throw io_error("expected an array of joint-table rows");
    std::vector<JointTableRow> out;
    for (const auto& r : j) {
        JointTableRow row;
        for (const auto& e : r.at("events"))
            row.events.emplace_back(menu_from_json(e.at("menu")),
                                    e.at("chosen").get<std::vector<size_t>>());
        const auto& pr = r.at("prob");
        if (pr.is_string()) {
            row.prob = ProbValue::from_exact(parse_rat(pr.get<std::string>()));
        } else {
            row.prob.value = pr.get<double>();
            row.prob.stderr_ = r.value("stderr", 0.0);
        }
        out.push_back(std::move(row));
    }
    return out;
}

json decomposition_to_json(const Decomposition& d) {
    json cells = json::array();
    for (const auto& c : d.cells) cells.push_back(binary_events_to_json(c.events));
    json witnesses = json::array();
    for (const auto& [a, b] : d.tie_witnesses)
        witnesses.push_back(json::array({lottery_to_json(a), lottery_to_json(b)}));
    return json{{"cells", cells}, {"tie_witnesses", witnesses}, {"cases", d.case_trace}};
}

json axiom_report_to_json(const AxiomReport& r) {
    json violations = json::array();
    for (const auto& v : r.violations)
        violations.push_back(json{{"detail", v.detail},
                                  {"row", v.row},
                                  {"other_row", v.other_row},
                                  {"subset", v.subset},
                                  {"lhs", v.lhs},
                                  {"rhs", v.rhs}});
    return json{{"axiom", r.axiom},
                {"passed", r.passed()},
                {"checks", r.checks},
                {"skipped", r.skipped},
                {"violations", violations}};
}

} // namespace choicelab
