#include "geometry.hpp"

#include "errors.hpp"

#include <cmath>
#include <numeric>

namespace slising {

namespace {

using i128 = __int128;

// Scale the coordinates of p to the common denominator D (a power of two
// that every p.den divides).
inline i128 scaled(std::int64_t num, std::int64_t den, std::int64_t D) {
    return static_cast<i128>(num) * (D / den);
}

inline std::int64_t common_den(std::int64_t a, std::int64_t b) { return a > b ? a : b; }
inline std::int64_t common_den(std::int64_t a, std::int64_t b, std::int64_t c) {
    return common_den(common_den(a, b), c);
}

inline int sgn(i128 v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

inline double to_double(i128 v) {
    return static_cast<double>(static_cast<long double>(v));
}

} // namespace

Coord::Coord(std::int64_t x, std::int64_t y, std::int64_t d) : xn(x), yn(y), den(d) {
    if (den <= 0 || (den & (den - 1)) != 0)
        throw InputError("coordinate denominator must be a positive power of two");
    while (den > 1 && xn % 2 == 0 && yn % 2 == 0) {
        xn /= 2;
        yn /= 2;
        den /= 2;
    }
}

std::string Coord::str() const {
    auto one = [&](std::int64_t n) {
        if (den == 1) return std::to_string(n);
        return std::to_string(n) + "/" + std::to_string(den);
    };
    return "(" + one(xn) + "," + one(yn) + ")";
}

bool operator==(const Coord& a, const Coord& b) {
    return a.xn == b.xn && a.yn == b.yn && a.den == b.den;
}
bool operator!=(const Coord& a, const Coord& b) { return !(a == b); }

bool operator<(const Coord& a, const Coord& b) {
    const std::int64_t D = common_den(a.den, b.den);
    const i128 ax = scaled(a.xn, a.den, D), bx = scaled(b.xn, b.den, D);
    if (ax != bx) return ax < bx;
    return scaled(a.yn, a.den, D) < scaled(b.yn, b.den, D);
}
bool operator<=(const Coord& a, const Coord& b) { return a == b || a < b; }

Coord operator+(const Coord& a, const Coord& b) {
    const std::int64_t D = common_den(a.den, b.den);
    return Coord(a.xn * (D / a.den) + b.xn * (D / b.den),
                 a.yn * (D / a.den) + b.yn * (D / b.den), D);
}

Coord operator-(const Coord& a, const Coord& b) {
    const std::int64_t D = common_den(a.den, b.den);
    return Coord(a.xn * (D / a.den) - b.xn * (D / b.den),
                 a.yn * (D / a.den) - b.yn * (D / b.den), D);
}

int orientation(const Coord& a, const Coord& b, const Coord& c) {
    const std::int64_t D = common_den(a.den, b.den, c.den);
    const i128 abx = scaled(b.xn, b.den, D) - scaled(a.xn, a.den, D);
    const i128 aby = scaled(b.yn, b.den, D) - scaled(a.yn, a.den, D);
    const i128 acx = scaled(c.xn, c.den, D) - scaled(a.xn, a.den, D);
    const i128 acy = scaled(c.yn, c.den, D) - scaled(a.yn, a.den, D);
    return sgn(abx * acy - aby * acx);
}

bool point_in_segment_interior(const Coord& p, const Coord& a, const Coord& b) {
    if (orientation(a, b, p) != 0) return false;
    // Collinear points are lexicographically monotone along the line.
    return (a < p && p < b) || (b < p && p < a);
}

bool segments_cross(const Coord& p1, const Coord& p2, const Coord& q1, const Coord& q2) {
    const int o1 = orientation(p1, p2, q1);
    const int o2 = orientation(p1, p2, q2);
    const int o3 = orientation(q1, q2, p1);
    const int o4 = orientation(q1, q2, p2);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

namespace {

struct Dir {
    i128 x, y;
};

Dir direction(const Coord& from, const Coord& to) {
    const std::int64_t D = common_den(from.den, to.den);
    Dir d{scaled(to.xn, to.den, D) - scaled(from.xn, from.den, D),
          scaled(to.yn, to.den, D) - scaled(from.yn, from.den, D)};
    return d;
}

// Octant index 0..7 counterclockwise from east for the 8 compass headings,
// -1 for anything else.
int octant(const Dir& d) {
    const int sx = sgn(d.x), sy = sgn(d.y);
    if (sx != 0 && sy != 0) {
        i128 ax = d.x < 0 ? -d.x : d.x;
        i128 ay = d.y < 0 ? -d.y : d.y;
        if (ax != ay) return -1; // non-45-degree diagonal
    }
    static const int table[3][3] = {
        // sx = -1        0        1     (sy rows: -1, 0, 1)
        {5, 6, 7}, // sy = -1
        {4, -1, 0}, // sy = 0
        {3, 2, 1}, // sy = 1
    };
    return table[sy + 1][sx + 1];
}

} // namespace

double turning_angle(const Coord& u, const Coord& v, const Coord& w) {
    const Dir d1 = direction(u, v);
    const Dir d2 = direction(v, w);
    if ((d1.x == 0 && d1.y == 0) || (d2.x == 0 && d2.y == 0))
        throw InputError("turning angle requires distinct consecutive points");

    const i128 cross = d1.x * d2.y - d1.y * d2.x;
    const i128 dot = d1.x * d2.x + d1.y * d2.y;
    if (cross == 0 && dot < 0)
        throw InputError("backtracking step: turning angle would be +-pi");
    if (cross == 0) return 0.0;

    const int o1 = octant(d1), o2 = octant(d2);
    if (o1 >= 0 && o2 >= 0) {
        int delta = ((o2 - o1) % 8 + 8) % 8;
        if (delta > 4) delta -= 8; // map to (-4, 4), delta == 4 handled above
        return delta * (M_PI / 4.0);
    }
    return std::atan2(to_double(cross), to_double(dot));
}

bool ClockwiseFromNorth::operator()(const Coord& d1, const Coord& d2) const {
    auto sector = [](const Coord& d) {
        const int sx = d.xn > 0 ? 1 : (d.xn < 0 ? -1 : 0);
        const int sy = d.yn > 0 ? 1 : (d.yn < 0 ? -1 : 0);
        // Right half-plane including north comes first in clockwise order
        // starting from straight up.
        return (sx > 0 || (sx == 0 && sy > 0)) ? 0 : 1;
    };
    const int s1 = sector(d1), s2 = sector(d2);
    if (s1 != s2) return s1 < s2;
    const std::int64_t D = common_den(d1.den, d2.den);
    const i128 cross = scaled(d1.xn, d1.den, D) * scaled(d2.yn, d2.den, D) -
                       scaled(d1.yn, d1.den, D) * scaled(d2.xn, d2.den, D);
    return cross < 0;
}

} // namespace slising
