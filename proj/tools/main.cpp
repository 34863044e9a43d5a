// choice-lab: random non-expected-utility choice laboratory.
//
// Subcommands reproduce the library's worked artifacts end to end: the
// two-mixture equivalence tables, the circle-vs-EU simulations, the
// moment-recovery pipeline, behavioral axiom checks, joint-event
// decompositions, RCC sampling, and SVG figures.

#include "choicelab/axioms.hpp"
#include "choicelab/joint_choice.hpp"
#include "choicelab/json_io.hpp"
#include "choicelab/svg.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

using namespace choicelab;

namespace {

struct Global {
    uint64_t seed = 20250807;
    unsigned threads = 0;
    std::string out;
};

void add_global(CLI::App* cmd, Global& g) {
    cmd->add_option("--seed", g.seed, "PRNG seed (runs are deterministic per seed)");
    cmd->add_option("--threads", g.threads,
                    "worker threads (0: CHOICE_LAB_THREADS or hardware)");
    cmd->add_option("--out", g.out, "output path or prefix");
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path);
    out << text;
}

void write_reports(const Global& g, const json& machine, const std::string& markdown) {
    if (g.out.empty()) return;
    write_text(g.out + ".json", machine.dump(2) + "\n");
    write_text(g.out + ".md", markdown);
}

std::vector<Menu> seeded_menus(uint64_t seed, int count, int min_size, int max_size) {
    Rng rng(seed);
    const long den = 32;
    std::vector<Menu> menus;
    while (static_cast<int>(menus.size()) < count) {
        const size_t size = min_size + rng.next() % (max_size - min_size + 1);
        std::vector<Lottery> ls;
        while (ls.size() < size) {
            const long x = static_cast<long>(rng.next() % (den + 1));
            const long y = static_cast<long>(rng.next() % (den + 1));
            if (x + y > den) continue;
            const Lottery cand(rat(x, den), rat(y, den));
            bool dup = false;
            for (const auto& l : ls)
                if (l == cand) dup = true;
            if (!dup) ls.push_back(cand);
        }
        menus.emplace_back(std::move(ls));
    }
    return menus;
}

// ---------------------------------------------------------------- example1

int cmd_example1(const Global& g, int n_menus, const std::string& tamper) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();

    const FiniteMixture mu = example1_mu();
    const FiniteMixture mu_prime =
        tamper.empty() ? example1_mu_prime() : example1_mu_prime(parse_rat(tamper));

    const auto menus = seeded_menus(g.seed, n_menus, 2, 4);
    const RCC t1 = rcc_from(mu, menus);
    const RCC t2 = rcc_from(mu_prime, menus);
    const bool marginals_equal = rcc_exactly_equal(t1, t2);

    const Lottery p(rat(0), rat(1, 2)), q(rat(1, 4), rat(3, 4));
    const Lottery pp(rat(1, 2), rat(0)), qp(rat(3, 4), rat(1, 4));
    const Menu D({p, q}), Dp({pp, qp});
    const auto joint_mu = joint_choice_prob(mu, {{D, {0}}, {Dp, {0}}});
    const auto joint_mu_prime = joint_choice_prob(mu_prime, {{D, {0}}, {Dp, {0}}});
    const bool joint_ok =
        joint_mu.exact_value == rat(0) && joint_mu_prime.exact_value == rat(1, 2);

    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    const bool pass = marginals_equal && joint_ok;

    std::cout << "marginals: " << (marginals_equal ? "EQUAL (exact)" : "DIFFER") << " on "
              << n_menus << " menus; joint({p,q},{p',q'}): "
              << rat_to_string(joint_mu.exact_value) << " vs "
              << rat_to_string(joint_mu_prime.exact_value) << "\n";

    const std::vector<JointTableRow> joint_mu_table{{{{D, {0}}, {Dp, {0}}}, joint_mu}};
    const std::vector<JointTableRow> joint_mu_prime_table{{{{D, {0}}, {Dp, {0}}}, joint_mu_prime}};
    json machine{{"command", "example1"},
                 {"seed", g.seed},
                 {"menus", n_menus},
                 {"marginals_equal", marginals_equal},
                 {"joint_mu", rat_to_string(joint_mu.exact_value)},
                 {"joint_mu_prime", rat_to_string(joint_mu_prime.exact_value)},
                 {"joint_table_mu", joint_table_to_json(joint_mu_table)},
                 {"joint_table_mu_prime", joint_table_to_json(joint_mu_prime_table)},
                 {"pass", pass}};
    std::string md = "# example1\n\n";
    md += "- menus compared: " + std::to_string(n_menus) + "\n";
    md += std::string("- marginal tables: ") + (marginals_equal ? "equal (exact)" : "DIFFER") +
          "\n";
    md += "- joint probability of (p over q) and (p' over q'): " +
          rat_to_string(joint_mu.exact_value) + " under the two-pivot mixture vs " +
          rat_to_string(joint_mu_prime.exact_value) + " under the glued mixture\n";
    md += "- runtime: " + std::to_string(secs) + " s\n";
    write_reports(g, machine, md);
    return pass ? 0 : 1;
}

// ---------------------------------------------------------------- example2

int cmd_example2(const Global& g, uint64_t n, std::vector<double> radii, int n_triples) {
    if (n < 10000) {
        std::cerr << "example2 needs --n >= 10000\n";
        return 2;
    }
    if (radii.empty()) radii = {0.8, 1.5};

    Rng rng(g.seed);
    std::vector<Menu> triples;
    while (static_cast<int>(triples.size()) < n_triples) {
        const auto menus = seeded_menus(rng.next(), 1, 3, 3);
        const Menu& m = menus.front();
        if (orient(m[0].pt(), m[1].pt(), m[2].pt()) == 0) continue;
        triples.push_back(m);
    }

    McOptions opt;
    opt.n = n;
    opt.threads = g.threads;
    opt.mode = McOptions::Mode::monte_carlo;

    bool pass = true;
    json rows = json::array();
    std::vector<std::vector<double>> estimates(radii.size() + 1,
                                               std::vector<double>(triples.size()));
    int failed_z = 0;
    for (size_t ti = 0; ti < triples.size(); ++ti) {
        const Menu& m = triples[ti];
        const double formula = ternary_prob_formula(m[0], m[1], m[2]);
        json row{{"triple", menu_to_json(m)}, {"formula", formula}};
        for (size_t ri = 0; ri <= radii.size(); ++ri) {
            const RandomPreference mu = (ri < radii.size())
                                            ? RandomPreference(nu1(radii[ri]))
                                            : RandomPreference(nu2());
            opt.seed = g.seed ^ (0x9E37ull * (ti * 16 + ri + 1));
            const auto est = choice_prob(mu, m, {0}, opt);
            estimates[ri][ti] = est.value;
            const double se = std::max(est.stderr_, 1e-12);
            const double z = std::fabs(est.value - formula) / se;
            const std::string label =
                ri < radii.size() ? "circle_r" + std::to_string(radii[ri]) : "uniform_eu";
            row[label] = est.value;
            row[label + "_z"] = z;
            if (z > 4.0) {
                pass = false;
                ++failed_z;
            }
        }
        rows.push_back(std::move(row));
    }

    // circle-invariance: the first two radii agree within combined error
    bool invariance_ok = true;
    if (radii.size() >= 2) {
        for (size_t ti = 0; ti < triples.size(); ++ti) {
            const double pa = estimates[0][ti], pb = estimates[1][ti];
            const double se = std::sqrt(pa * (1 - pa) / n + pb * (1 - pb) / n);
            if (std::fabs(pa - pb) > 4.0 * std::max(se, 1e-12)) invariance_ok = false;
        }
    }
    pass = pass && invariance_ok;

    // footnote pattern: zero under uniform EU, positive under the circle law
    const Lottery fp(rat(1, 10), rat(7, 10)), fq(rat(1, 20), rat(3, 20)), fr(rat(4, 5), rat(1, 10));
    opt.seed = g.seed ^ 0xF007ull;
    const auto foot_eu = footnote_counterexample(nu2(), fp, fq, fr, opt);
    const auto foot_wu = footnote_counterexample(nu1(radii.front()), fp, fq, fr, opt);
    const bool foot_ok = foot_eu.value == 0.0 && foot_wu.value >= 5.0 * foot_wu.stderr_ &&
                         foot_wu.value > 0.0;
    pass = pass && foot_ok;

    std::cout << "triples within 4 sigma: " << (n_triples * (radii.size() + 1) - failed_z) << "/"
              << n_triples * (radii.size() + 1) << "; circle invariance: "
              << (invariance_ok ? "ok" : "FAIL") << "; footnote: eu=" << foot_eu.value
              << " circle=" << foot_wu.value << " (" << (foot_ok ? "ok" : "FAIL") << ")\n";

    json machine{{"command", "example2"}, {"seed", g.seed},   {"n", n},
                 {"triples", rows},       {"pass", pass},     {"invariance_ok", invariance_ok},
                 {"footnote_eu", foot_eu.value}, {"footnote_circle", foot_wu.value},
                 {"footnote_circle_stderr", foot_wu.stderr_}};
    std::string md = "# example2\n\n";
    md += "- samples per estimate: " + std::to_string(n) + "\n";
    md += "- ternary triples: " + std::to_string(n_triples) + ", all estimators within 4 sigma: " +
          (failed_z == 0 ? "yes" : "NO") + "\n";
    md += std::string("- circle radii agree: ") + (invariance_ok ? "yes" : "NO") + "\n";
    md += "- footnote pattern: uniform-EU probability " + std::to_string(foot_eu.value) +
          ", circle probability " + std::to_string(foot_wu.value) + "\n";
    write_reports(g, machine, md);
    return pass ? 0 : 1;
}

// ---------------------------------------------------------------- identify-moments

int cmd_identify(const Global& g, const std::string& law_path, int order, int grid,
                 const std::string& mode, const std::string& nodes_csv, uint64_t sim_n) {
    const SlopeLaw law = slope_law_from_json(load_json(law_path));

    std::vector<Rat> nodes = default_moment_nodes();
    if (!nodes_csv.empty()) {
        nodes.clear();
        std::stringstream ss(nodes_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) nodes.push_back(parse_rat(tok));
    }

    CdfOracle oracle;
    if (mode == "analytic") {
        oracle = analytic_cdf_oracle(law);
    } else if (mode == "simulated") {
        const uint64_t seed = g.seed;
        const unsigned threads = g.threads;
        oracle = [law, seed, sim_n, threads](double a, double t) {
            return slope_cdf_simulated(law, CDFQuery(Rat(a), Rat(t)), sim_n,
                                       seed ^ static_cast<uint64_t>(a * 1e9) ^
                                           static_cast<uint64_t>((t + 2.0) * 1e9),
                                       threads);
        };
    } else {
        std::cerr << "--mode must be analytic or simulated\n";
        return 2;
    }

    const MomentTable rec = recover_joint_moments(oracle, order, nodes, grid);
    const MomentTable direct = direct_moments(law, order);

    std::ostringstream csv;
    csv << "i,j,recovered,direct,abs_err\n";
    double worst = 0.0;
    for (const auto& [ij, v] : rec.entries) {
        const double d = direct.at(ij.first, ij.second);
        const double err = std::fabs(v - d);
        worst = std::max(worst, err);
        csv << ij.first << "," << ij.second << "," << v << "," << d << "," << err << "\n";
    }
    if (!g.out.empty())
        write_text(g.out, csv.str());
    else
        std::cout << csv.str();
    std::cout << "max |recovered - direct| = " << worst
              << ", solver residual = " << rec.max_residual << "\n";
    if (rec.max_residual > 1e-10)
        std::cerr << "warning: Vandermonde solve is ill-conditioned at this order "
                     "(residual above 1e-10); consider fewer orders or better-spread nodes\n";
    return 0;
}

// ---------------------------------------------------------------- check-axioms

int cmd_check_axioms(const Global& g, const std::string& rcc_path, const std::string& report_path,
                     double tol) {
    const RCC rcc = rcc_from_json(load_json(rcc_path));
    const auto mono = check_monotonicity(rcc, tol);
    const auto ext = check_extremeness(rcc);
    const auto sb = check_stochastic_betweenness(rcc, tol);
    const bool pass = mono.passed() && ext.passed() && sb.passed();
    const json report{{"pass", pass},
                      {"monotonicity", axiom_report_to_json(mono)},
                      {"extremeness", axiom_report_to_json(ext)},
                      {"stochastic_betweenness", axiom_report_to_json(sb)}};
    const std::string path = !report_path.empty() ? report_path
                             : !g.out.empty()     ? g.out
                                                  : "";
    if (!path.empty()) write_text(path, report.dump(2) + "\n");
    for (const auto* r : {&mono, &ext, &sb})
        std::cout << r->axiom << ": " << (r->passed() ? "pass" : "FAIL") << " (" << r->checks
                  << " checks, " << r->violations.size() << " violations)\n";
    return pass ? 0 : 1;
}

// ---------------------------------------------------------------- decompose-joint

int cmd_decompose(const Global& g, const std::string& events_path, uint64_t validate_n) {
    const auto events = binary_events_from_json(load_json(events_path));
    const Decomposition d = reduce_joint_event(events);
    json out = decomposition_to_json(d);
    bool pass = true;
    if (validate_n > 0) {
        OracleOptions opt;
        opt.n = validate_n;
        opt.seed = g.seed;
        opt.threads = g.threads;
        const auto rep = oracle_validate(d, events, opt);
        pass = rep.passed();
        out["validation"] = json{{"samples", rep.samples},
                                 {"ties_skipped", rep.ties_skipped},
                                 {"mismatches", rep.mismatches},
                                 {"double_fires", rep.double_fires}};
        std::cout << "oracle: " << rep.mismatches << " mismatches, " << rep.double_fires
                  << " double fires over " << rep.samples << " samples\n";
    }
    std::cout << "cells: " << d.cells.size() << "; cases:";
    for (const auto& t : d.case_trace) std::cout << " " << t;
    std::cout << "\n";
    if (!g.out.empty()) write_text(g.out, out.dump(2) + "\n");
    return pass ? 0 : 1;
}

// ---------------------------------------------------------------- sample-rcc

int cmd_sample_rcc(const Global& g, const std::string& dist_path, const std::string& menus_path,
                   uint64_t n) {
    const RandomPreference mu = random_preference_from_json(load_json(dist_path));
    const auto menus = menus_from_json(load_json(menus_path));
    McOptions opt;
    opt.n = n;
    opt.seed = g.seed;
    opt.threads = g.threads;
    opt.mode = McOptions::Mode::monte_carlo;
    const RCC rcc = rcc_from(mu, menus, opt);
    const json out = rcc_to_json(rcc);
    if (!g.out.empty())
        write_text(g.out, out.dump(2) + "\n");
    else
        std::cout << out.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------- render

int cmd_render(const Global& g, const std::string& spec_path, int curves, int samples) {
    const json spec = load_json(spec_path);
    RenderOptions opt;
    opt.seed = g.seed;
    if (curves > 0) opt.n_curves = curves;
    if (samples > 0) opt.n_samples = samples;
    std::ostringstream svg;
    const auto kind = spec.at("kind").get<std::string>();
    if (kind == "finite_mixture" || kind == "circle_rwu" || kind == "uniform_eu" ||
        kind == "slope_pair")
        render_distribution_svg(svg, random_preference_from_json(spec), opt);
    else
        render_preference_svg(svg, preference_from_json(spec), opt);
    if (g.out.empty()) {
        std::cout << svg.str();
    } else {
        write_text(g.out, svg.str());
        std::cout << "wrote " << g.out << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"choice-lab: stochastic choice over three-prize lotteries"};
    app.require_subcommand(1);

    Global g;

    auto* ex1 = app.add_subcommand("example1", "exact two-mixture equivalence and joint divergence");
    int ex1_menus = 1000;
    std::string ex1_tamper;
    ex1->add_option("--menus", ex1_menus, "number of seeded menus to compare");
    ex1->add_option("--tamper-weight", ex1_tamper,
                    "first component weight of the glued mixture (breaks the pairing)");
    add_global(ex1, g);

    auto* ex2 = app.add_subcommand("example2", "circle-law vs uniform-EU simulations");
    uint64_t ex2_n = 1000000;
    std::vector<double> ex2_radii;
    int ex2_triples = 20;
    ex2->add_option("--n", ex2_n, "Monte Carlo samples per estimate (>= 10^4)");
    ex2->add_option("--radii", ex2_radii, "circle radii (default 0.8 1.5)");
    ex2->add_option("--triples", ex2_triples, "number of seeded ternary menus");
    add_global(ex2, g);

    auto* idm = app.add_subcommand("identify-moments", "recover joint slope moments from CDF queries");
    std::string idm_law, idm_mode = "analytic", idm_nodes;
    int idm_order = 4, idm_grid = 20000;
    uint64_t idm_simn = 20000;
    idm->add_option("--law", idm_law, "slope-law JSON")->required();
    idm->add_option("--order", idm_order, "max total moment order (1..6)");
    idm->add_option("--grid", idm_grid, "quadrature grid cells");
    idm->add_option("--mode", idm_mode, "analytic | simulated");
    idm->add_option("--nodes", idm_nodes, "comma-separated positive rational nodes");
    idm->add_option("--sim-n", idm_simn, "samples per simulated CDF query");
    add_global(idm, g);

    auto* chk = app.add_subcommand("check-axioms", "monotonicity, extremeness, stochastic betweenness");
    std::string chk_rcc, chk_report;
    double chk_tol = 0.0;
    chk->add_option("--rcc", chk_rcc, "RCC table JSON")->required();
    chk->add_option("--report", chk_report, "report JSON path");
    chk->add_option("--tol", chk_tol, "extra tolerance on top of 4 combined standard errors");
    add_global(chk, g);

    auto* dec = app.add_subcommand("decompose-joint", "decompose a joint binary-menu event");
    std::string dec_events;
    uint64_t dec_validate = 0;
    dec->add_option("--events", dec_events, "events JSON")->required();
    dec->add_option("--validate", dec_validate, "oracle samples (0: skip validation)");
    add_global(dec, g);

    auto* smp = app.add_subcommand("sample-rcc", "tabulate a random choice correspondence");
    std::string smp_dist, smp_menus;
    uint64_t smp_n = 1000000;
    smp->add_option("--dist", smp_dist, "distribution JSON")->required();
    smp->add_option("--menus", smp_menus, "menus JSON")->required();
    smp->add_option("--n", smp_n, "Monte Carlo samples per menu");
    add_global(smp, g);

    auto* ren = app.add_subcommand("render", "SVG of an indifference map or a distribution");
    std::string ren_spec;
    int ren_curves = 0, ren_samples = 0;
    ren->add_option("--spec", ren_spec, "preference or distribution JSON")->required();
    ren->add_option("--curves", ren_curves, "indifference curves per map");
    ren->add_option("--samples", ren_samples, "sampled pivots in distribution figures");
    add_global(ren, g);

    CLI11_PARSE(app, argc, argv);

    try {
        if (ex1->parsed()) return cmd_example1(g, ex1_menus, ex1_tamper);
        if (ex2->parsed()) return cmd_example2(g, ex2_n, ex2_radii, ex2_triples);
        if (idm->parsed())
            return cmd_identify(g, idm_law, idm_order, idm_grid, idm_mode, idm_nodes, idm_simn);
        if (chk->parsed()) return cmd_check_axioms(g, chk_rcc, chk_report, chk_tol);
        if (dec->parsed()) return cmd_decompose(g, dec_events, dec_validate);
        if (smp->parsed()) return cmd_sample_rcc(g, smp_dist, smp_menus, smp_n);
        if (ren->parsed()) return cmd_render(g, ren_spec, ren_curves, ren_samples);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 2;
}
