#ifndef CHOICELAB_IDENTIFICATION_HPP
#define CHOICELAB_IDENTIFICATION_HPP

#include "choicelab/preferences.hpp"
#include "choicelab/rng.hpp"

#include <functional>
#include <map>
#include <variant>

namespace choicelab {

struct identification_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One atom of a finite slope law: the slopes (m0 through the worst vertex,
/// m1 through the best vertex) and a positive weight.
struct SlopeAtom {
    Rat m0, m1, w;
};

/// Law of (m0, m1) with support in [-1,1]^2.
struct FiniteSlopeLaw {
    std::vector<SlopeAtom> atoms;
    explicit FiniteSlopeLaw(std::vector<SlopeAtom> a);
};
struct IndependentUniformLaw {}; // m0, m1 i.i.d. uniform on [-1,1]

using SlopeLaw = std::variant<FiniteSlopeLaw, IndependentUniformLaw>;

/// p_a = a*best + (1-a)*worst on the slope-chart spine, and the threshold
/// event {a m1 + (1-a) m0 <= t}.
struct CDFQuery {
    Rat a; // strictly inside (0,1)
    Rat t;
    CDFQuery(Rat a_, Rat t_);
};

/// The slope-chart weighted-utility preference with construction lines of
/// slope m0 (through the worst vertex) and m1 (through the best vertex).
/// Throws on m0 == m1 (parallel lines, the expected-utility limit).
WUPreference slope_pair_preference(const Rat& m0, const Rat& m1);

/// Pivot of the construction above, exact.
RatPt slope_pair_pivot(const Rat& m0, const Rat& m1);

/// Slope of the indifference curve of p_a, computed geometrically through the
/// pivot. Agrees with a*m1 + (1-a)*m0.
double indifference_slope(double m0, double m1, double a);
Rat indifference_slope_exact(const Rat& m0, const Rat& m1, const Rat& a);

/// Direct-law evaluation of P(a m1 + (1-a) m0 <= t).
double slope_cdf(const SlopeLaw& law, const CDFQuery& q);

/// Binary-choice route: place a probe lottery q' so that the line p_a q' has
/// slope t and count the samples where p_a is among the chosen. Must agree
/// with the direct route (ties at t count toward the lower event).
double slope_cdf_simulated(const SlopeLaw& law, const CDFQuery& q, uint64_t n, uint64_t seed,
                           unsigned threads = 0);

/// CDF oracle: (a, t) -> P(a m1 + (1-a) m0 <= t).
using CdfOracle = std::function<double(double, double)>;
CdfOracle analytic_cdf_oracle(const SlopeLaw& law);

/// E[S_a^n] for S_a supported in [-1,1], via integration by parts
/// (1 - n ∫ t^{n-1} F(t) dt) on a composite-trapezoid grid. Cells where the
/// CDF jumps are refined by bisection so atoms cost no accuracy.
double power_moment(const std::function<double(double)>& cdf_at_t, int n, int grid);
double power_moment(const CdfOracle& oracle, double a, int n, int grid);

/// Joint moments E[m1^i m0^j], i+j <= max order.
struct MomentTable {
    int max_order = 0;
    std::map<std::pair<int, int>, double> entries; // (i, j) -> E[m1^i m0^j]
    double max_residual = 0.0;

    double at(int i, int j) const;
};

/// Recovers all joint moments of total order <= n from CDF queries alone:
/// per order, E[(m1 + b_k m0)^n'] = E[S_{a_k}^{n'}] / a_k^{n'} with
/// a_k = 1/(1+b_k), then the binomially scaled Vandermonde solve.
/// Nodes must be distinct positives; the first n'+1 nodes serve order n'.
MomentTable recover_joint_moments(const CdfOracle& oracle, int n, const std::vector<Rat>& nodes,
                                  int grid);

/// Ground truth for the pipeline: exact finite sums or the analytic values
/// of the independent-uniform law.
MomentTable direct_moments(const SlopeLaw& law, int n);

/// Determinant of the order-n scaled Vandermonde system matrix, exact.
Rat scaled_vandermonde_det(const std::vector<Rat>& nodes, int n);

/// Solves the order-n system with an exactly computed rational inverse
/// applied to the right-hand side. Throws on duplicate nodes. Writes the
/// max-norm residual if requested.
std::vector<double> solve_scaled_vandermonde(const std::vector<Rat>& nodes, int n,
                                             const std::vector<double>& rhs,
                                             double* residual = nullptr);

/// Default node ladder from the moment-recovery design: b in {1/3, 1/2, 1, 2, 3}.
std::vector<Rat> default_moment_nodes();

} // namespace choicelab

#endif
