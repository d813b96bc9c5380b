#pragma once

#include <cstdint>
#include <string>

namespace slising {

/// Exact point in the plane with dyadic rational coordinates:
/// (xn/den, yn/den) where den is a power of two. All geometric predicates
/// on these points are exact integer computations after clearing
/// denominators, so equality and ordering behave like the mathematical
/// rationals they represent.
struct Coord {
    std::int64_t xn = 0;
    std::int64_t yn = 0;
    std::int64_t den = 1; // power of two, >= 1

    Coord() = default;
    Coord(std::int64_t x, std::int64_t y) : xn(x), yn(y), den(1) {}
    Coord(std::int64_t x, std::int64_t y, std::int64_t d);

    static Coord half(std::int64_t two_x, std::int64_t two_y) { return Coord(two_x, two_y, 2); }

    std::string str() const;
};

bool operator==(const Coord& a, const Coord& b);
bool operator!=(const Coord& a, const Coord& b);
/// Lexicographic order: x-coordinate first, then y.
bool operator<(const Coord& a, const Coord& b);
bool operator<=(const Coord& a, const Coord& b);

Coord operator+(const Coord& a, const Coord& b);
Coord operator-(const Coord& a, const Coord& b);

/// Sign of the cross product (b-a) x (c-a): +1 left turn, -1 right turn,
/// 0 collinear. Exact.
int orientation(const Coord& a, const Coord& b, const Coord& c);

/// True iff p lies strictly inside the open segment (a,b). Exact.
bool point_in_segment_interior(const Coord& p, const Coord& a, const Coord& b);

/// Proper crossing test: the open segments (p1,p2) and (q1,q2) intersect in
/// a single point that is interior to both. Segments sharing an endpoint do
/// not cross. Exact.
bool segments_cross(const Coord& p1, const Coord& p2, const Coord& q1, const Coord& q2);

/// Signed turning angle in (-pi, pi) from the vector v-u to the vector w-v,
/// positive for counterclockwise turns. Directions on the 8 compass
/// headings of the lattice are resolved through an exact octant table;
/// anything else falls back to atan2. Throws InputError on backtracking
/// (w-v opposite to v-u, angle would be +-pi) and on zero vectors.
double turning_angle(const Coord& u, const Coord& v, const Coord& w);

/// Comparator for sorting direction vectors (dx, dy as exact rationals
/// relative to a common apex) in clockwise order starting from straight up.
/// Used to order edge endpoints around a vertex the way the pairing
/// construction requires. Ties cannot occur for distinct edge directions.
struct ClockwiseFromNorth {
    bool operator()(const Coord& d1, const Coord& d2) const;
};

} // namespace slising
