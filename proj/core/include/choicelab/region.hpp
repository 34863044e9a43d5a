#ifndef CHOICELAB_REGION_HPP
#define CHOICELAB_REGION_HPP

#include "choicelab/geometry.hpp"

#include <vector>

namespace choicelab {

/// One linear constraint: a*x + b*y <= c (weak) or < c (strict).
struct LinCon {
    Rat a, b, c;
    bool strict = false;

    LinCon() = default;
    LinCon(Rat a_, Rat b_, Rat c_, bool s = false)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), strict(s) {}

    bool satisfied(const RatPt& p) const {
        const Rat v = a * p.x + b * p.y;
        return strict ? v < c : v <= c;
    }
    LinCon complement() const { return LinCon(-a, -b, -c, !strict); }
    RatLine line() const { return RatLine{a, b, c}; }
    bool is_trivial() const { return a == 0 && b == 0; }
};

/// Half-plane of pivots z with orient(p, q, z) > 0 (left of the directed line
/// p -> q), as a strict constraint. The weak version includes the line.
LinCon left_of(const RatPt& p, const RatPt& q, bool strict);

/// Intersection of finitely many half-planes in the plane, with exact
/// feasibility, inclusion, face and boundedness queries (Fourier–Motzkin).
class ConvexRegion {
  public:
    ConvexRegion() = default;
    explicit ConvexRegion(std::vector<LinCon> cons) : cons_(std::move(cons)) {}

    void add(LinCon c) { cons_.push_back(std::move(c)); }
    const std::vector<LinCon>& constraints() const { return cons_; }

    bool empty() const;
    bool has_interior() const;
    bool contains(const RatPt& p) const;

    /// Region ⊆ {h} (h taken as written, weak or strict)?
    bool subset_of(const LinCon& h) const;

    /// Indices of constraints whose boundary line carries a one-dimensional
    /// face of the region. Coincident lines are both reported.
    std::vector<size_t> face_constraints() const;

    /// Endpoints of the face carried by constraint i (empty optionals for
    /// directions where the face is an unbounded ray).
    struct EdgeInterval {
        bool is_face = false;
        std::optional<RatPt> lo, hi;
    };
    EdgeInterval edge_interval(size_t i) const;

    /// Vertices (0-dimensional faces), deduplicated, in no particular order.
    std::vector<RatPt> vertices() const;

    bool bounded() const;

    ConvexRegion intersected_with(const LinCon& h) const {
        ConvexRegion r = *this;
        r.add(h);
        return r;
    }

  private:
    std::vector<LinCon> cons_;
};

/// Summary used by the half-plane arrangement entry point.
struct RegionSummary {
    bool empty = true;
    bool bounded = false;
    int one_dim_faces = 0;
    std::vector<size_t> face_halfplanes; // indices into the input list
    std::vector<RatPt> vertices;
    ConvexRegion region;
};

/// Intersects the given half-planes and reports the region together with its
/// number of one-dimensional faces (distinct boundary lines carrying an edge).
RegionSummary halfplane_intersection_faces(const std::vector<HalfPlane>& hs);

} // namespace choicelab

#endif
