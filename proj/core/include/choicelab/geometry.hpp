#ifndef CHOICELAB_GEOMETRY_HPP
#define CHOICELAB_GEOMETRY_HPP

#include "choicelab/rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace choicelab {

struct geometry_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Coordinate charts for the three-prize simplex.
///
/// MM    — Marschak-Machina right triangle: x = P(w1), y = P(w2), so the
///         vertices are w1=(1,0), w2=(0,1), w3=(0,0).
/// SLOPE — the slope parameterization: best prize at (0,1), worst at (0,-1),
///         middle at (-1,0).
enum class Chart { MM, SLOPE };

enum class Prize { w1 = 0, w2 = 1, w3 = 2 };

/// Exogenous prize ranking (a permutation of the three prizes).
struct PrizeRanking {
    Prize best;
    Prize middle;
    Prize worst;

    PrizeRanking(Prize b, Prize m, Prize w);

    /// Example-1 ranking: best w2, middle w3, worst w1.
    static PrizeRanking standard() { return {Prize::w2, Prize::w3, Prize::w1}; }
};

template <class T>
struct P2 {
    T x{}, y{};
    friend bool operator==(const P2& a, const P2& b) { return a.x == b.x && a.y == b.y; }
};
using RatPt = P2<Rat>;
using D2 = P2<double>;

inline D2 to_d2(const RatPt& p) { return {to_double(p.x), to_double(p.y)}; }

/// A lottery is a point of the simplex in a named chart.
struct Lottery {
    Rat x, y;
    Chart chart = Chart::MM;

    Lottery() = default;
    Lottery(Rat px, Rat py, Chart c = Chart::MM) : x(std::move(px)), y(std::move(py)), chart(c) {}

    RatPt pt() const { return {x, y}; }
    D2 d2() const { return {to_double(x), to_double(y)}; }

    /// Probability of a prize; only meaningful in the MM chart.
    Rat prob(Prize w) const;

    bool in_simplex() const;

    friend bool operator==(const Lottery& a, const Lottery& b) {
        return a.chart == b.chart && a.x == b.x && a.y == b.y;
    }
};

/// Sign of the z-component of (b-a) x (c-a). Exact for rational points.
int orient(const RatPt& a, const RatPt& b, const RatPt& c);
int orient(const D2& a, const D2& b, const D2& c);

/// Fused cross product (b-a) x (c-a) as a double, for Monte Carlo paths.
inline double cross_d(const D2& a, const D2& b, const D2& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

/// Interior angle ∠qpr in degrees, in [0, 180]. Throws on q == p or r == p.
double angle_at(const Lottery& p, const Lottery& q, const Lottery& r);

/// Exact affine bijection between charts for a given prize ranking.
/// Round trips are identities and convex combinations are preserved exactly.
Lottery chart_convert(const Lottery& p, Chart target, const PrizeRanking& rank);
RatPt chart_convert_pt(const RatPt& p, Chart from, Chart target, const PrizeRanking& rank);

/// True when the MM->SLOPE map for this ranking preserves plane orientation.
bool chart_map_orientation_preserving(const PrizeRanking& rank);

/// MM-chart vertex of a prize.
RatPt mm_vertex(Prize w);
/// SLOPE-chart vertex of a prize role.
RatPt slope_vertex_best();
RatPt slope_vertex_worst();
RatPt slope_vertex_middle();

/// A finite ordered set of lotteries in a common chart. Nonempty, no
/// duplicates (construction throws otherwise).
class Menu {
  public:
    explicit Menu(std::vector<Lottery> ls);

    const std::vector<Lottery>& items() const { return items_; }
    size_t size() const { return items_.size(); }
    const Lottery& operator[](size_t i) const { return items_[i]; }
    Chart chart() const { return items_.front().chart; }

    bool contains(const Lottery& l) const;
    std::optional<size_t> index_of(const Lottery& l) const;

    /// Subset by (sorted, deduplicated) positions.
    Menu subset(const std::vector<size_t>& idx) const;

    friend bool operator==(const Menu& a, const Menu& b) { return a.items_ == b.items_; }

  private:
    std::vector<Lottery> items_;
};

/// Oriented line through two distinct rational points plus a side flag.
/// Membership of z in the '+' half-plane is orient(a, b, z) >= 0 (boundary
/// included); strict interior is orient > 0.
struct HalfPlane {
    RatPt a, b;
    int side = +1; // +1 or -1

    HalfPlane(RatPt pa, RatPt pb, int s);

    bool contains(const RatPt& z) const;
    bool strictly_contains(const RatPt& z) const;
};

/// True iff conv(A) is a face of conv(D) and conv(A) ∩ D = A.
/// Requires A ⊆ D (throws otherwise).
bool face_of(const Menu& A, const Menu& D);

// --- exact line utilities (shared by regions, preferences, decompositions) ---

/// a*x + b*y = c with (a,b) != (0,0).
struct RatLine {
    Rat a, b, c;

    static RatLine through(const RatPt& p, const RatPt& q);
    bool parallel_to(const RatLine& o) const;
    bool same_line(const RatLine& o) const;
    std::optional<RatPt> intersect(const RatLine& o) const;
    Rat eval(const RatPt& p) const { return a * p.x + b * p.y - c; }
};

/// Intersection of a line with the closed MM simplex, as a chord (possibly a
/// single point or empty).
std::vector<RatPt> line_simplex_chord(const RatLine& line, Chart chart);

bool point_in_simplex(const RatPt& p, Chart chart);
bool point_in_simplex_interior(const RatPt& p, Chart chart);

} // namespace choicelab

#endif
