#ifndef CHOICELAB_RANDOM_UTILITY_HPP
#define CHOICELAB_RANDOM_UTILITY_HPP

#include "choicelab/identification.hpp"
#include "choicelab/preferences.hpp"
#include "choicelab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <variant>

namespace choicelab {

struct random_utility_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite mixture of preferences with positive rational weights summing to 1.
struct FiniteMixture {
    std::vector<std::pair<Preference, Rat>> components;
    explicit FiniteMixture(std::vector<std::pair<Preference, Rat>> comps);
};

/// Weighted-utility pivots uniform on a circle that strictly encloses the MM
/// triangle; rotation direction is a fair coin, independent of the pivot.
struct CircleRWU {
    D2 center{0.5, 0.5};
    double radius = 0.9;
    CircleRWU() { validate(); }
    CircleRWU(D2 c, double r) : center(c), radius(r) { validate(); }

  private:
    void validate() const;
};

/// Expected-utility gradients with uniform direction angle on [0, 2pi).
struct UniformEU {};

/// FOSD-monotone random weighted utility parameterized by a slope law.
struct SlopePairDist {
    SlopeLaw law;
    explicit SlopePairDist(SlopeLaw l);
};

using RandomPreference = std::variant<FiniteMixture, CircleRWU, UniformEU, SlopePairDist>;

/// Cheap double-precision preference draw for Monte Carlo loops.
struct SampledPreference {
    enum class Kind { wu, eu } kind = Kind::wu;
    double px = 0, py = 0; // pivot (wu)
    double dx = 0, dy = 0; // gradient (eu)
    int osign = 1;         // +1 clockwise, -1 counterclockwise
    Chart chart = Chart::MM;

    /// >0 if p is strictly preferred to q, 0 on a tie, <0 otherwise.
    double score(const D2& p, const D2& q) const {
        if (kind == Kind::eu) return dx * (p.x - q.x) + dy * (p.y - q.y);
        return osign * cross_d({px, py}, p, q);
    }

    Preference to_preference() const;
};

/// Draws from a parametric kind (finite mixtures are drawn categorically and
/// returned via to_preference on the component).
SampledPreference sample_parametric(const RandomPreference& mu, Rng& rng);
Preference sample_preference(const RandomPreference& mu, Rng& rng);

struct ProbValue {
    double value = 0.0;
    double stderr_ = 0.0;
    bool exact = false;
    Rat exact_value;

    static ProbValue from_exact(Rat v) {
        ProbValue p;
        p.exact = true;
        p.value = to_double(v);
        p.exact_value = std::move(v);
        return p;
    }
    static ProbValue from_counts(uint64_t hits, uint64_t n) {
        ProbValue p;
        p.value = static_cast<double>(hits) / static_cast<double>(n);
        p.stderr_ = std::sqrt(std::max(p.value * (1.0 - p.value), 0.0) / static_cast<double>(n));
        return p;
    }
};

struct McOptions {
    uint64_t n = 1'000'000;
    uint64_t seed = 20250807;
    unsigned threads = 0; // 0: CHOICE_LAB_THREADS or hardware
    enum class Mode { auto_mode, closed_form, monte_carlo } mode = Mode::auto_mode;
};

/// rho_D(A) = mu(N(D, A)). Exact for finite mixtures; closed form or Monte
/// Carlo for the parametric kinds.
ProbValue choice_prob(const RandomPreference& mu, const Menu& D, const std::vector<size_t>& A,
                      const McOptions& opt = {});

/// Closed-form choice probability for the rotation-invariant parametric kinds
/// (circle pivots or uniform EU): 1/2 (1 - width/180) with width the angular
/// span of the difference cone at the candidate. Empty for finite mixtures.
std::optional<double> closed_form_choice_prob(const RandomPreference& mu, const Menu& D,
                                              const std::vector<size_t>& A);

/// rho_{p,q,r}(p) for the rotation-invariant kinds: 1/2 (1 - angle/180).
/// Throws when the triple is collinear or degenerate.
double ternary_prob_formula(const Lottery& p, const Lottery& q, const Lottery& r);

struct RCCSubsetProb {
    std::vector<size_t> subset; // sorted indices into the menu
    ProbValue prob;
};
struct RCCRow {
    Menu menu;
    std::vector<RCCSubsetProb> entries;

    const ProbValue* find(const std::vector<size_t>& subset) const;
};
struct RCCCompanion {
    size_t base_row = 0;
    size_t companion_row = 0;
    Lottery p;
    Rat lambda;
};

/// Finite table of a random choice correspondence, with optional
/// mixture-companion metadata for the stochastic-betweenness checker.
struct RCC {
    std::vector<RCCRow> rows;
    std::vector<RCCCompanion> companions;

    std::optional<size_t> find_row(const Menu& m) const;
};

RCC rcc_from(const RandomPreference& mu, const std::vector<Menu>& menus,
             const McOptions& opt = {});

/// Exact equality of two exact tables over identical menus.
bool rcc_exactly_equal(const RCC& a, const RCC& b);

// ---- the named distributions of the worked examples ----

WUFunctional example1_v1();
WUFunctional example1_v2();
SemiWeightedPreference example1_v1_prime();
SemiWeightedPreference example1_v2_prime();
/// mu = { >=_1 : 1/2, >=_2 : 1/2 } as weighted-utility functionals.
FiniteMixture example1_mu();
/// mu' = { >='_1 : 1/2, >='_2 : 1/2 } as semi-weighted preferences.
FiniteMixture example1_mu_prime(Rat w1 = rat(1, 2));

inline CircleRWU nu1(double radius = 0.9) { return CircleRWU({0.5, 0.5}, radius); }
inline UniformEU nu2() { return UniformEU{}; }

} // namespace choicelab

#endif
