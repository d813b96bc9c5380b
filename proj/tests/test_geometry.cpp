#include "geometry.hpp"

#include "errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace slising;

TEST_CASE("dyadic coordinates normalize and compare exactly") {
    CHECK(Coord(1, 1) == Coord(2, 2, 2));
    CHECK(Coord(1, 3, 2) != Coord(1, 3, 4));
    CHECK(Coord(1, 3, 2) == Coord(2, 6, 4));
    CHECK_THROWS_AS(Coord(1, 1, 3), InputError);
    CHECK_THROWS_AS(Coord(1, 1, 0), InputError);
}

TEST_CASE("lexicographic order is x first, then y") {
    CHECK(Coord(0, 5) < Coord(1, 0));
    CHECK(Coord(1, 0) < Coord(1, 1));
    CHECK(Coord(1, 1, 2) < Coord(1, 0)); // 1/2 < 1
    CHECK_FALSE(Coord(1, 0) < Coord(1, 0));

    std::vector<Coord> pts{Coord(1, 0), Coord(0, 1), Coord(0, 0), Coord(1, 1, 2)};
    std::sort(pts.begin(), pts.end());
    CHECK(pts[0] == Coord(0, 0));
    CHECK(pts[1] == Coord(0, 1));
    CHECK(pts[2] == Coord(1, 1, 2));
    CHECK(pts[3] == Coord(1, 0));
}

TEST_CASE("orientation predicate") {
    CHECK(orientation(Coord(0, 0), Coord(1, 0), Coord(1, 1)) == 1);
    CHECK(orientation(Coord(0, 0), Coord(1, 0), Coord(1, -1)) == -1);
    CHECK(orientation(Coord(0, 0), Coord(1, 0), Coord(2, 0)) == 0);
    // Half-integer points resolve exactly.
    CHECK(orientation(Coord(0, 0), Coord(2, 1), Coord(1, 1, 2)) == 0);
}

TEST_CASE("segment crossing is proper intersection only") {
    const Coord a(0, 0), b(1, 1), c(0, 1), d(1, 0);
    CHECK(segments_cross(a, b, c, d));
    CHECK(segments_cross(c, d, a, b));
    // Shared endpoint is not a crossing.
    CHECK_FALSE(segments_cross(a, b, a, d));
    // Disjoint parallels.
    CHECK_FALSE(segments_cross(a, Coord(0, 2), Coord(1, 0), Coord(1, 2)));
    // Touching at an interior point of one segment only.
    CHECK_FALSE(segments_cross(a, Coord(2, 0), Coord(1, 0), Coord(1, 2)));
}

TEST_CASE("crossing predicate is translation invariant") {
    const Coord a(0, 0), b(1, 1), c(0, 1), d(1, 0), t(7, -3);
    CHECK(segments_cross(a + t, b + t, c + t, d + t) == segments_cross(a, b, c, d));
}

TEST_CASE("point in segment interior") {
    CHECK(point_in_segment_interior(Coord(1, 0), Coord(0, 0), Coord(2, 0)));
    CHECK(point_in_segment_interior(Coord(1, 1), Coord(0, 0), Coord(2, 2)));
    CHECK_FALSE(point_in_segment_interior(Coord(0, 0), Coord(0, 0), Coord(2, 0)));
    CHECK_FALSE(point_in_segment_interior(Coord(3, 0), Coord(0, 0), Coord(2, 0)));
    CHECK_FALSE(point_in_segment_interior(Coord(1, 2), Coord(0, 0), Coord(2, 0)));
}

TEST_CASE("turning angles on the lattice") {
    CHECK(turning_angle(Coord(0, 0), Coord(1, 0), Coord(1, 1)) == doctest::Approx(M_PI / 2));
    CHECK(turning_angle(Coord(0, 0), Coord(1, 0), Coord(2, 0)) == doctest::Approx(0.0));
    CHECK(turning_angle(Coord(0, 0), Coord(1, 0), Coord(1, -1)) == doctest::Approx(-M_PI / 2));
    // Diagonal steps land on the octant table too.
    CHECK(turning_angle(Coord(0, 0), Coord(1, 0), Coord(2, 1)) == doctest::Approx(M_PI / 4));
    CHECK(turning_angle(Coord(0, 0), Coord(1, 1), Coord(2, 1)) == doctest::Approx(-M_PI / 4));
    // Backtracking is rejected.
    CHECK_THROWS_AS(turning_angle(Coord(0, 0), Coord(1, 0), Coord(0, 0)), InputError);
    CHECK_THROWS_AS(turning_angle(Coord(0, 0), Coord(2, 0), Coord(1, 0)), InputError);
}

TEST_CASE("turning angle falls back to atan2 off the compass") {
    const double a = turning_angle(Coord(0, 0), Coord(1, 0), Coord(2, 3));
    CHECK(a == doctest::Approx(std::atan2(3.0, 1.0)));
}

TEST_CASE("clockwise-from-north direction order") {
    std::vector<Coord> dirs{Coord(0, -1), Coord(-1, 0), Coord(1, 0), Coord(0, 1),
                            Coord(1, 1),  Coord(-1, -1)};
    std::sort(dirs.begin(), dirs.end(), ClockwiseFromNorth{});
    CHECK(dirs[0] == Coord(0, 1));   // N
    CHECK(dirs[1] == Coord(1, 1));   // NE
    CHECK(dirs[2] == Coord(1, 0));   // E
    CHECK(dirs[3] == Coord(0, -1));  // S
    CHECK(dirs[4] == Coord(-1, -1)); // SW
    CHECK(dirs[5] == Coord(-1, 0));  // W
}
