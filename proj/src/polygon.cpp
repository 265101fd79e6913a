#include "microloc/polygon.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace microloc {

namespace {

// Cross product sign of (b - a) x (c - a).
Rational cross(const PolygonPoint& a, const PolygonPoint& b, const PolygonPoint& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

}  // namespace

std::vector<PolygonPoint> lower_hull(std::vector<PolygonPoint> pts) {
    std::map<Rational, Rational> lowest;
    for (const auto& p : pts) {
        auto it = lowest.find(p.x);
        if (it == lowest.end() || p.y < it->second) lowest[p.x] = p.y;
    }
    std::vector<PolygonPoint> hull;
    for (const auto& [x, y] : lowest) {
        const PolygonPoint p{x, y};
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= Rational(0)) hull.pop_back();
        hull.push_back(p);
    }
    return hull;
}

std::vector<PolygonEdge> NewtonPolygon::edges() const {
    std::vector<PolygonEdge> out;
    for (std::size_t i = 1; i < hull.size(); ++i) out.push_back({hull[i - 1], hull[i]});
    return out;
}

NewtonPolygon make_polygon(std::vector<PolygonPoint> pts) {
    NewtonPolygon poly;
    poly.hull = lower_hull(pts);
    poly.points = std::move(pts);
    return poly;
}

long SlopeMultiset::total() const {
    long n = 0;
    for (const auto& e : entries) n += e.multiplicity;
    return n;
}

long SlopeMultiset::count_below(const Rational& s) const {
    long n = 0;
    for (const auto& e : entries)
        if (e.slope < s) n += e.multiplicity;
    return n;
}

long SlopeMultiset::count_equal(const Rational& s) const {
    long n = 0;
    for (const auto& e : entries)
        if (e.slope == s) n += e.multiplicity;
    return n;
}

long SlopeMultiset::count_above(const Rational& s) const {
    long n = 0;
    for (const auto& e : entries)
        if (e.slope > s) n += e.multiplicity;
    return n;
}

std::string SlopeMultiset::to_string() const {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) os << ", ";
        os << entries[i].slope << " x" << entries[i].multiplicity;
    }
    os << "}";
    return os.str();
}

SlopeMultiset slopes_of_polygon(const NewtonPolygon& poly) {
    SlopeMultiset out;
    if (poly.hull.empty()) return out;
    // rightmost hull vertex with minimal ordinate
    std::size_t star = 0;
    for (std::size_t i = 1; i < poly.hull.size(); ++i)
        if (poly.hull[i].y <= poly.hull[star].y) star = i;
    const Rational x_star = poly.hull[star].x;
    if (x_star > Rational(0)) {
        if (!x_star.is_integer()) throw std::logic_error("non-integral slope-0 length");
        out.entries.push_back({Rational(0), x_star.num().get_si()});
    }
    for (std::size_t i = star + 1; i < poly.hull.size(); ++i) {
        const PolygonEdge e{poly.hull[i - 1], poly.hull[i]};
        const Rational len = e.length();
        if (!len.is_integer()) throw std::logic_error("non-integral edge length");
        out.entries.push_back({e.slope(), len.num().get_si()});
    }
    return out;
}

SlopeMultiset slopes_at_zero(const WeylQ& P) { return slopes_of_polygon(polygon_at_zero(P)); }

SlopeMultiset slopes_at(const WeylQ& P, const Rational& c) { return slopes_at_zero(translate(P, c)); }

SlopeMultiset slopes_at_infinity(const WeylQ& P) { return slopes_at_zero(invert_coordinate(P).second); }

}  // namespace microloc
