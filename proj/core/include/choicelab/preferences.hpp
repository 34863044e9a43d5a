#ifndef CHOICELAB_PREFERENCES_HPP
#define CHOICELAB_PREFERENCES_HPP

#include "choicelab/geometry.hpp"

#include <array>
#include <functional>
#include <optional>
#include <variant>

namespace choicelab {

struct preference_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct representation_invalid : preference_error {
    using preference_error::preference_error;
};

/// Direction of increasing preference around a weighted-utility pivot.
/// Calibrated against Example-1 data: pivot (-1/2,-1/2) with w2 > w1 is
/// counterclockwise, and counterclockwise carries sign -1 in the comparison
/// p >= q  <=>  sign * orient(pivot, p, q) >= 0.
enum class Orientation { clockwise, counterclockwise };

inline int orientation_sign(Orientation o) {
    return o == Orientation::clockwise ? +1 : -1;
}
inline Orientation flip(Orientation o) {
    return o == Orientation::clockwise ? Orientation::counterclockwise : Orientation::clockwise;
}

enum class Cmp { less, equivalent, greater };

/// Expected utility: linear utility with gradient `direction` in the MM chart.
struct EUPreference {
    Rat dx, dy;

    EUPreference(Rat dx_, Rat dy_) : dx(std::move(dx_)), dy(std::move(dy_)) {
        if (dx == 0 && dy == 0) throw preference_error("EU direction must be nonzero");
    }
};

/// Strict weighted utility as geometry: all indifference lines meet at a
/// pivot outside the simplex; preference rotates in the given direction.
struct WUPreference {
    RatPt pivot;
    Orientation dir;
    Chart chart;

    WUPreference(RatPt piv, Orientation d, Chart c = Chart::MM);
};

/// Weighted utility as a functional V(p) = sum p g u / sum p g on the three
/// prizes, with g of constant sign and not identically zero.
struct WUFunctional {
    std::array<Rat, 3> u; // indexed by Prize
    std::array<Rat, 3> g;

    WUFunctional(std::array<Rat, 3> u_, std::array<Rat, 3> g_);

    Rat value(const Lottery& p) const; // throws on zero denominator
    /// Indifference line {V = v} in MM coordinates.
    RatLine indifference_line(const Rat& v) const;
    /// Common intersection point of all indifference lines, if any (absent for
    /// the expected-utility case where the lines are parallel).
    std::optional<RatPt> pivot() const;
    /// Geometric form; refuses functionals whose pivot is missing or inside
    /// the closed simplex.
    WUPreference to_pivot_preference() const;
};

Rat weighted_value(const WUFunctional& f, const Lottery& p);

/// Two weighted-utility pieces glued along a shared indifference line at
/// value `threshold`; the upper branch is used when its value >= threshold.
struct SemiWeightedPreference {
    WUFunctional upper, lower;
    Rat threshold;

    SemiWeightedPreference(WUFunctional up, WUFunctional low, Rat v_star);

    Rat value(const Lottery& p) const;
};

/// Implicit (betweenness) representation: V(p) is the unique v in [0,1] with
/// sum_i u(w_i, v) p^i = v under the normalization u(worst,.)=0, u(best,.)=1.
class ImplicitBetweenness {
  public:
    using LocalUtility = std::function<double(Prize, double)>;

    ImplicitBetweenness(LocalUtility u, PrizeRanking rank);

    /// EU special case: u(w, v) = u(w), constant in v.
    static ImplicitBetweenness from_eu(std::array<double, 3> uvals, PrizeRanking rank);
    /// Weighted-utility reduction u(w,v) = g(w)(u(w)-v)+v, normalized so the
    /// best/worst rows are 1 and 0.
    static ImplicitBetweenness from_wu(const WUFunctional& f, PrizeRanking rank);

    double local_u(Prize w, double v) const { return u_(w, v); }
    const PrizeRanking& ranking() const { return rank_; }

    /// Root of the defining equation; |residual| <= tol.
    double value(const Lottery& p, double tol = 1e-12) const;

  private:
    void validate() const;

    LocalUtility u_;
    PrizeRanking rank_;
};

double implicit_value(const ImplicitBetweenness& b, const Lottery& p, double tol = 1e-12);

using Preference =
    std::variant<EUPreference, WUPreference, WUFunctional, SemiWeightedPreference,
                 ImplicitBetweenness>;

/// Trichotomous comparison. Exact (rational) for all kinds except the
/// implicit representation, which compares binary64 root values.
Cmp compare(const Preference& pref, const Lottery& p, const Lottery& q);

/// M(D, pref): the nonempty set of maximal elements, in menu order.
Menu optimal_set(const Preference& pref, const Menu& D);
std::vector<size_t> optimal_indices(const Preference& pref, const Menu& D);

/// First-order stochastic dominance of p over q under the given ranking
/// (weak; MM chart).
bool fosd(const Lottery& p, const Lottery& q, const PrizeRanking& rank);

/// Weighted-utility pivots get the exact admissible-region test; all other
/// kinds are checked on a seeded grid of dominating pairs.
bool is_fosd_monotone(const Preference& pref, const PrizeRanking& rank, int grid = 200);

} // namespace choicelab

#endif
