#include "choicelab/identification.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace choicelab {

FiniteSlopeLaw::FiniteSlopeLaw(std::vector<SlopeAtom> a) : atoms(std::move(a)) {
    if (atoms.empty()) throw identification_error("finite slope law needs at least one atom");
    Rat total(0);
    for (const auto& at : atoms) {
        if (at.w <= 0) throw identification_error("slope-law weights must be positive");
        if (abs(at.m0) > 1 || abs(at.m1) > 1)
            throw identification_error("slope-law support must lie in [-1,1]^2");
        total += at.w;
    }
    if (total != 1) throw identification_error("slope-law weights must sum to one");
}

CDFQuery::CDFQuery(Rat a_, Rat t_) : a(std::move(a_)), t(std::move(t_)) {
    if (a <= 0 || a >= 1) throw identification_error("mixing weight a must lie strictly in (0,1)");
    if (t < -1 || t > 1) throw identification_error("slope threshold t must lie in [-1,1]");
}

RatPt slope_pair_pivot(const Rat& m0, const Rat& m1) {
    if (m0 == m1) throw identification_error("m0 == m1: construction lines are parallel");
    const Rat x = Rat(2) / (m0 - m1);
    return {x, m0 * x - 1};
}

WUPreference slope_pair_preference(const Rat& m0, const Rat& m1) {
    const RatPt piv = slope_pair_pivot(m0, m1);
    const Orientation dir = (m0 > m1) ? Orientation::clockwise : Orientation::counterclockwise;
    return WUPreference(piv, dir, Chart::SLOPE);
}

Rat indifference_slope_exact(const Rat& m0, const Rat& m1, const Rat& a) {
    if (a <= 0 || a >= 1) throw identification_error("a must lie strictly in (0,1)");
    const RatPt piv = slope_pair_pivot(m0, m1);
    const Rat pa_y = 2 * a - 1; // p_a = (0, 2a-1)
    const Rat slope = (piv.y - pa_y) / piv.x;
    assert(slope == a * m1 + (1 - a) * m0);
    return slope;
}

double indifference_slope(double m0, double m1, double a) {
    if (m0 == m1) throw identification_error("m0 == m1: construction lines are parallel");
    if (a <= 0 || a >= 1) throw identification_error("a must lie strictly in (0,1)");
    const double px = 2.0 / (m0 - m1);
    const double py = m0 * px - 1.0;
    const double slope = (py - (2.0 * a - 1.0)) / px;
    assert(std::fabs(slope - (a * m1 + (1.0 - a) * m0)) <= 1e-9 * (1.0 + std::fabs(slope)));
    return slope;
}

double slope_cdf(const SlopeLaw& law, const CDFQuery& q) {
    if (const auto* f = std::get_if<FiniteSlopeLaw>(&law)) {
        Rat p(0);
        for (const auto& at : f->atoms) {
            const Rat s = q.a * at.m1 + (1 - q.a) * at.m0;
            if (s <= q.t) p += at.w;
        }
        return to_double(p);
    }
    // independent uniforms: S = U[-c,c] + U[-d,d] with c = min(a,1-a), d = max.
    const double a = to_double(q.a);
    const double t = to_double(q.t);
    const double c = std::min(a, 1.0 - a);
    const double d = std::max(a, 1.0 - a);
    if (t <= -1.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double knee = d - c;
    if (t <= -knee) {
        const double z = t + 1.0;
        return z * z / (8.0 * c * d);
    }
    if (t < knee) return 0.5 + t / (2.0 * d);
    const double z = 1.0 - t;
    return 1.0 - z * z / (8.0 * c * d);
}

CdfOracle analytic_cdf_oracle(const SlopeLaw& law) {
    return [law](double a, double t) {
        return slope_cdf(law, CDFQuery(Rat(a), Rat(t)));
    };
}

double slope_cdf_simulated(const SlopeLaw& law, const CDFQuery& q, uint64_t n, uint64_t seed,
                           unsigned threads) {
    const double a = to_double(q.a);
    const double t = to_double(q.t);
    const double pax = 0.0, pay = 2.0 * a - 1.0;
    // probe on the slope-t line through p_a, pointing into the triangle
    const double eps = 1e-3;
    const double nrm = std::sqrt(1.0 + t * t);
    const double qx = pax - eps / nrm;
    const double qy = pay - eps * t / nrm;
    if (!(qx <= 0.0 && qy <= qx + 1.0 && qy >= -qx - 1.0))
        throw identification_error("probe lottery left the simplex; a too extreme for eps");

    const FiniteSlopeLaw* fin = std::get_if<FiniteSlopeLaw>(&law);
    std::vector<double> cm0, cm1, cw; // cumulative categorical table
    if (fin) {
        double acc = 0.0;
        for (const auto& at : fin->atoms) {
            acc += to_double(at.w);
            cw.push_back(acc);
            cm0.push_back(to_double(at.m0));
            cm1.push_back(to_double(at.m1));
        }
        cw.back() = 1.0;
    }

    auto counts = mc_counts(n, seed, threads, 1, [&](Rng& rng, std::vector<uint64_t>& acc) {
        double m0, m1;
        if (fin) {
            const double u = rng.uniform();
            size_t k = 0;
            while (k + 1 < cw.size() && u >= cw[k]) ++k;
            m0 = cm0[k];
            m1 = cm1[k];
        } else {
            do {
                m0 = rng.uniform(-1.0, 1.0);
                m1 = rng.uniform(-1.0, 1.0);
            } while (m0 == m1);
        }
        if (m0 == m1) {
            // degenerate atom: slope is exactly m0; resolve by the <= convention
            if (m0 <= t) ++acc[0];
            return;
        }
        const double px = 2.0 / (m0 - m1);
        const double py = m0 * px - 1.0;
        const int osign = (m0 > m1) ? +1 : -1;
        const double cr = (pax - px) * (qy - py) - (pay - py) * (qx - px);
        if (osign * cr >= 0.0) ++acc[0]; // p_a among the chosen
    });
    return static_cast<double>(counts[0]) / static_cast<double>(n);
}

namespace {

// ∫ g(t) F(t) dt over [t0,t1] with endpoint values F0, F1; cells where the
// CDF jumps get bisected so atoms are localized. The threshold sits above
// the noise floor of simulated oracles, and the shared budget bounds the
// extra calls either way.
double integrate_cell(const std::function<double(double)>& cdf, const std::function<double(double)>& g,
                      double t0, double t1, double f0, double f1, double jump_tol, int depth,
                      long& budget) {
    const double width = t1 - t0;
    if (depth <= 0 || budget <= 0 || std::fabs(f1 - f0) <= jump_tol || width <= 1e-13)
        return 0.5 * width * (g(t0) * f0 + g(t1) * f1);
    const double tm = 0.5 * (t0 + t1);
    const double fm = cdf(tm);
    --budget;
    return integrate_cell(cdf, g, t0, tm, f0, fm, jump_tol, depth - 1, budget) +
           integrate_cell(cdf, g, tm, t1, fm, f1, jump_tol, depth - 1, budget);
}

} // namespace

double power_moment(const std::function<double(double)>& cdf_at_t, int n, int grid) {
    if (n < 1) throw identification_error("moment order must be >= 1");
    if (grid < 2) throw identification_error("grid must have at least 2 cells");
    auto g = [n](double t) { return n * std::pow(t, n - 1); };
    std::vector<double> fs(grid + 1);
    for (int k = 0; k <= grid; ++k)
        fs[k] = cdf_at_t(-1.0 + 2.0 * static_cast<double>(k) / grid);
    std::vector<double> deltas(grid);
    for (int k = 0; k < grid; ++k) deltas[k] = std::fabs(fs[k + 1] - fs[k]);
    std::nth_element(deltas.begin(), deltas.begin() + grid / 2, deltas.end());
    const double jump_tol = std::max(2e-3, 8.0 * deltas[grid / 2]);
    double integral = 0.0;
    long budget = 4 * static_cast<long>(grid) + 4096;
    for (int k = 0; k < grid; ++k) {
        const double t0 = -1.0 + 2.0 * static_cast<double>(k) / grid;
        const double t1 = -1.0 + 2.0 * static_cast<double>(k + 1) / grid;
        integral += integrate_cell(cdf_at_t, g, t0, t1, fs[k], fs[k + 1], jump_tol, 48, budget);
    }
    return 1.0 - integral;
}

double power_moment(const CdfOracle& oracle, double a, int n, int grid) {
    return power_moment([&](double t) { return oracle(a, t); }, n, grid);
}

double MomentTable::at(int i, int j) const {
    const auto it = entries.find({i, j});
    if (it == entries.end()) throw identification_error("moment not in table");
    return it->second;
}

namespace {

std::vector<Rat> binomial_row(int n) {
    std::vector<Rat> row(n + 1);
    row[0] = 1;
    for (int j = 1; j <= n; ++j) row[j] = row[j - 1] * (n - j + 1) / j;
    return row;
}

// Exact Gauss-Jordan inverse of the (n+1)x(n+1) matrix M[k][j] = C(n,j) b_k^j.
std::vector<std::vector<Rat>> scaled_vandermonde_inverse(const std::vector<Rat>& nodes, int n) {
    const int m = n + 1;
    if (static_cast<int>(nodes.size()) < m)
        throw identification_error("not enough nodes for the requested order");
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (nodes[i] == nodes[j])
                throw identification_error("duplicate nodes make the system singular");
    const auto binom = binomial_row(n);
    std::vector<std::vector<Rat>> a(m, std::vector<Rat>(2 * m, Rat(0)));
    for (int k = 0; k < m; ++k) {
        Rat pw(1);
        for (int j = 0; j <= n; ++j) {
            a[k][j] = binom[j] * pw;
            pw *= nodes[k];
        }
        a[k][m + k] = 1;
    }
    for (int col = 0; col < m; ++col) {
        int piv = -1;
        for (int r = col; r < m; ++r)
            if (a[r][col] != 0) { piv = r; break; }
        if (piv < 0) throw identification_error("singular system");
        std::swap(a[col], a[piv]);
        const Rat d = a[col][col];
        for (int j = 0; j < 2 * m; ++j) a[col][j] /= d;
        for (int r = 0; r < m; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const Rat f = a[r][col];
            for (int j = 0; j < 2 * m; ++j) a[r][j] -= f * a[col][j];
        }
    }
    std::vector<std::vector<Rat>> inv(m, std::vector<Rat>(m));
    for (int r = 0; r < m; ++r)
        for (int j = 0; j < m; ++j) inv[r][j] = a[r][m + j];
    return inv;
}

} // namespace

Rat scaled_vandermonde_det(const std::vector<Rat>& nodes, int n) {
    const int m = n + 1;
    if (static_cast<int>(nodes.size()) < m)
        throw identification_error("not enough nodes for the requested order");
    const auto binom = binomial_row(n);
    std::vector<std::vector<Rat>> a(m, std::vector<Rat>(m));
    for (int k = 0; k < m; ++k) {
        Rat pw(1);
        for (int j = 0; j <= n; ++j) {
            a[k][j] = binom[j] * pw;
            pw *= nodes[k];
        }
    }
    Rat det(1);
    for (int col = 0; col < m; ++col) {
        int piv = -1;
        for (int r = col; r < m; ++r)
            if (a[r][col] != 0) { piv = r; break; }
        if (piv < 0) return Rat(0);
        if (piv != col) {
            std::swap(a[col], a[piv]);
            det = -det;
        }
        det *= a[col][col];
        for (int r = col + 1; r < m; ++r) {
            if (a[r][col] == 0) continue;
            const Rat f = a[r][col] / a[col][col];
            for (int j = col; j < m; ++j) a[r][j] -= f * a[col][j];
        }
    }
    return det;
}

std::vector<double> solve_scaled_vandermonde(const std::vector<Rat>& nodes, int n,
                                             const std::vector<double>& rhs, double* residual) {
    const int m = n + 1;
    if (static_cast<int>(rhs.size()) != m) throw identification_error("rhs size mismatch");
    const auto inv = scaled_vandermonde_inverse(nodes, n);
    std::vector<double> x(m, 0.0);
    for (int r = 0; r < m; ++r)
        for (int j = 0; j < m; ++j) x[r] += to_double(inv[r][j]) * rhs[j];
    if (residual) {
        const auto binom = binomial_row(n);
        double worst = 0.0;
        for (int k = 0; k < m; ++k) {
            double acc = 0.0;
            double pw = 1.0;
            const double bk = to_double(nodes[k]);
            for (int j = 0; j <= n; ++j) {
                acc += to_double(binom[j]) * pw * x[j];
                pw *= bk;
            }
            worst = std::max(worst, std::fabs(acc - rhs[k]));
        }
        *residual = worst;
    }
    return x;
}

std::vector<Rat> default_moment_nodes() {
    return {rat(1, 3), rat(1, 2), rat(1), rat(2), rat(3)};
}

MomentTable recover_joint_moments(const CdfOracle& oracle, int n, const std::vector<Rat>& nodes,
                                  int grid) {
    if (n < 1 || n > 6) throw identification_error("order must be in 1..6");
    MomentTable table;
    table.max_order = n;
    table.entries[{0, 0}] = 1.0;
    for (int order = 1; order <= n; ++order) {
        const int m = order + 1;
        if (static_cast<int>(nodes.size()) < m)
            throw identification_error("not enough nodes for the requested order");
        std::vector<double> rhs(m);
        for (int k = 0; k < m; ++k) {
            const Rat& b = nodes[k];
            if (b <= 0) throw identification_error("nodes must be positive");
            const Rat a = Rat(1) / (Rat(1) + b);
            const double ea = power_moment(oracle, to_double(a), order, grid);
            rhs[k] = ea * std::pow(to_double(Rat(1) + b), order); // E[S^n]/a^n
        }
        double res = 0.0;
        const auto x = solve_scaled_vandermonde(nodes, order, rhs, &res);
        table.max_residual = std::max(table.max_residual, res);
        for (int j = 0; j <= order; ++j) table.entries[{order - j, j}] = x[j];
    }
    return table;
}

MomentTable direct_moments(const SlopeLaw& law, int n) {
    MomentTable table;
    table.max_order = n;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j) {
            double v;
            if (const auto* f = std::get_if<FiniteSlopeLaw>(&law)) {
                Rat acc(0);
                for (const auto& at : f->atoms) {
                    Rat term = at.w;
                    for (int k = 0; k < i; ++k) term *= at.m1;
                    for (int k = 0; k < j; ++k) term *= at.m0;
                    acc += term;
                }
                v = to_double(acc);
            } else {
                auto umoment = [](int k) { return k % 2 == 0 ? 1.0 / (k + 1) : 0.0; };
                v = umoment(i) * umoment(j);
            }
            table.entries[{i, j}] = v;
        }
    return table;
}

} // namespace choicelab
