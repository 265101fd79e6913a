#pragma once

#include <optional>
#include <string>
#include <vector>

#include "microloc/rational.hpp"
#include "microloc/weyl.hpp"

namespace microloc {

struct PolygonPoint {
    Rational x;
    Rational y;
    friend bool operator==(const PolygonPoint&, const PolygonPoint&) = default;
};

struct PolygonEdge {
    PolygonPoint from;
    PolygonPoint to;
    Rational slope() const { return (to.y - from.y) / (to.x - from.x); }
    Rational length() const { return to.x - from.x; }
};

/// Lower convex hull of a finite point set, vertices sorted by abscissa and strictly convex.
/// For each abscissa only the lowest point matters.
std::vector<PolygonPoint> lower_hull(std::vector<PolygonPoint> pts);

struct NewtonPolygon {
    std::vector<PolygonPoint> points;
    std::vector<PolygonPoint> hull;

    std::vector<PolygonEdge> edges() const;
};

NewtonPolygon make_polygon(std::vector<PolygonPoint> pts);

struct SlopeEntry {
    Rational slope;
    long multiplicity = 0;
    friend bool operator==(const SlopeEntry&, const SlopeEntry&) = default;
};

/// Slopes in increasing order. Slope 0 appears only with positive multiplicity.
struct SlopeMultiset {
    std::vector<SlopeEntry> entries;

    long total() const;
    long count_below(const Rational& s) const;
    long count_equal(const Rational& s) const;
    long count_above(const Rational& s) const;
    std::string to_string() const;
    friend bool operator==(const SlopeMultiset&, const SlopeMultiset&) = default;
};

/// Formal slopes read from a polygon with points (i, ord a_i - i).
///
/// Slope 0 is counted up to the rightmost abscissa where the minimal ordinate is
/// attained; positive slopes are the hull edges to the right of it, weighted by
/// horizontal length. The counts always add up to the operator order.
SlopeMultiset slopes_of_polygon(const NewtonPolygon& poly);

/// Points (i, ord_0 a_i - i) for the operator in its own coordinate.
template <Scalar K>
NewtonPolygon polygon_at_zero(const WeylOp<K>& P) {
    if (P.is_zero()) throw std::invalid_argument("polygon of the zero operator");
    std::vector<PolygonPoint> pts;
    for (long i = 0; i <= P.order(); ++i) {
        const auto& a = P.coeff(i);
        if (a.is_zero()) continue;
        pts.push_back({Rational(i), Rational(a.low() - i)});
    }
    return make_polygon(std::move(pts));
}

/// Slopes at a finite point c (translate, then read at 0).
SlopeMultiset slopes_at(const WeylQ& P, const Rational& c);
/// Slopes at infinity (invert the coordinate, then read at 0).
SlopeMultiset slopes_at_infinity(const WeylQ& P);
/// Slopes in the operator's own coordinate at 0.
SlopeMultiset slopes_at_zero(const WeylQ& P);

}  // namespace microloc
