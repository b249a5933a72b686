#include <doctest.h>

#include <cmath>

#include "pi1/homotopy.hpp"
#include "pi1/representation.hpp"
#include "pi1/sampling.hpp"
#include "support/oracles.hpp"

using namespace pi1;
using doctest::Approx;

namespace {
const PuncturedPlane kOrigin = origin_punctured_plane();
}

TEST_CASE("radial motion sweeps no angle")
{
    const Polyline segment({{1.0, 0.0}, {2.0, 0.0}});
    CHECK(angle_lift(kOrigin, segment, 0) == Approx(0.0).epsilon(0).scale(1));
}

TEST_CASE("CCW unit semicircle lifts pi")
{
    const Polyline half = ccw_half_circle({0.0, 0.0}, 1.0, 0.0, 64);
    CHECK(std::fabs(angle_lift(kOrigin, half, 0) - kPi) < 1e-9);
}

TEST_CASE("clearance violation is detected")
{
    const Polyline through({{-1.0, 0.0}, {1.0, 0.0}}); // straight through the puncture
    CHECK_THROWS_AS(angle_lift(kOrigin, through, 0), Error);
    try {
        angle_lift(kOrigin, through, 0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ClearanceViolation);
    }
}

TEST_CASE("winding numbers of canonical loops")
{
    SUBCASE("CCW unit square about the puncture")
    {
        const Polyline square(
            {{1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}, {-1.0, -1.0}, {1.0, -1.0}});
        CHECK(winding_number(kOrigin, square, 0) == 1);
    }
    SUBCASE("triangle away from the puncture")
    {
        const Polyline triangle({{2.0, 1.0}, {3.0, 1.0}, {2.5, 2.0}, {2.0, 1.0}});
        CHECK(winding_number(kOrigin, triangle, 0) == 0);
    }
    SUBCASE("circle traversed twice")
    {
        const Polyline once = ccw_circle({0.0, 0.0}, 1.0, 0.0, 64);
        const Polyline twice = concat(once, once);
        CHECK(winding_number(kOrigin, twice, 0) == 2);
    }
    SUBCASE("open polyline is rejected")
    {
        const Polyline open({{1.0, 0.0}, {2.0, 0.0}});
        CHECK_THROWS_AS(winding_numbers(kOrigin, open), Error);
    }
}

TEST_CASE("concatenation")
{
    const Polyline first = ccw_half_circle({0.0, 0.0}, 1.0, 0.0, 32);
    const Polyline second = ccw_half_circle({0.0, 0.0}, 1.0, kPi, 32);

    SUBCASE("two semicircles close into a full turn")
    {
        const Polyline full = concat(first, second);
        CHECK(std::fabs(angle_lift(kOrigin, full, 0) - kTwoPi) < 1e-9);
        CHECK(winding_number(kOrigin, full, 0) == 1);
    }
    SUBCASE("path then its reverse is the identity class")
    {
        const Polyline back_and_forth = concat(first, reverse(first));
        CHECK(angle_lift(kOrigin, back_and_forth, 0) == 0.0); // exact cancellation
        const HomotopyClass cls = homotopy_class(kOrigin, back_and_forth);
        CHECK(close(cls.source, cls.target));
    }
    SUBCASE("endpoint mismatch")
    {
        CHECK_THROWS_AS(concat(first, first), Error);
        try {
            concat(first, first);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::EndpointMismatch);
        }
    }
}

TEST_CASE("reversal")
{
    const Polyline segment({{1.0, 0.0}, {2.0, 0.0}});
    const Polyline back = reverse(segment);
    CHECK(back.source() == Vec2{2.0, 0.0});
    CHECK(back.target() == Vec2{1.0, 0.0});

    const Polyline half = ccw_half_circle({0.0, 0.0}, 1.0, 0.0, 64);
    CHECK(angle_lift(kOrigin, reverse(half), 0) == -angle_lift(kOrigin, half, 0));

    CHECK(reverse(reverse(half)).vertices() == half.vertices());
}

TEST_CASE("homotopy classes and the identity")
{
    SUBCASE("near-constant path has swept about zero")
    {
        const Polyline wiggle({{1.0, 0.0}, {1.0, 1e-7}, {1.0 + 1e-7, 1e-7}});
        const HomotopyClass cls = homotopy_class(kOrigin, wiggle);
        CHECK(std::fabs(cls.swept[0]) < 1e-6);
    }
    SUBCASE("degenerate repeated vertex is rejected")
    {
        CHECK_THROWS_AS(Polyline({{1.0, 0.0}, {1.0, 0.0}}), Error);
    }
    SUBCASE("semicircle class")
    {
        const Polyline half = ccw_half_circle({0.0, 0.0}, 1.0, 0.0, 64);
        const HomotopyClass cls = homotopy_class(kOrigin, half);
        CHECK(close(cls.source, {1.0, 0.0}));
        CHECK(close(cls.target, {-1.0, 0.0}));
        CHECK(std::fabs(cls.swept[0] - kPi) < 1e-9);
    }
}

TEST_CASE("homotopic paths on the same side, non-homotopic across the puncture")
{
    // two routes from (-2, 1) to (2, 1), both above the puncture
    const Polyline high({{-2.0, 1.0}, {0.0, 2.0}, {2.0, 1.0}});
    const Polyline higher({{-2.0, 1.0}, {-1.0, 3.0}, {1.0, 2.5}, {2.0, 1.0}});
    CHECK(homotopic(kOrigin, high, higher));

    // same endpoints but passing below the puncture
    const Polyline low({{-2.0, 1.0}, {-1.5, -2.0}, {1.5, -2.0}, {2.0, 1.0}});
    CHECK(!homotopic(kOrigin, high, low));

    // appending a full loop at the target changes the class by one turn
    const Polyline loop = ccw_circle({0.0, 0.0}, distance({2.0, 1.0}, {0.0, 0.0}),
                                     polar_angle({2.0, 1.0}), 64);
    CHECK(!homotopic(kOrigin, high, concat(high, loop)));
}

TEST_CASE("point inversion")
{
    const Polyline half = ccw_half_circle({0.0, 0.0}, 1.0, 0.0, 64);
    const Polyline inverted = invert_point(kOrigin, half);

    CHECK(close(inverted.source(), {-1.0, 0.0}));
    // the inverted half-circle is the CCW half-circle starting at pi
    CHECK(homotopic(kOrigin, inverted, ccw_half_circle({0.0, 0.0}, 1.0, kPi, 64)));
    // central symmetry preserves the lift about the origin
    CHECK(angle_lift(kOrigin, inverted, 0) ==
          Approx(angle_lift(kOrigin, half, 0)).epsilon(1e-12));
    // involution
    CHECK(invert_point(invert_point(half)).vertices() == half.vertices());

    const PuncturedPlane off_center({{1.5, 0.0}}, 0.05);
    const Polyline near_it({{1.0, 0.1}, {2.0, 0.1}});
    CHECK_THROWS_AS(invert_point(off_center, invert_point(near_it)), Error);
}

TEST_CASE("lift additivity, antisymmetry and associativity on random paths")
{
    std::mt19937_64 rng(777);
    const PuncturedPlane two({{0.0, 0.0}, {1.1, 0.4}}, 0.05);
    for (int trial = 0; trial < 1000; ++trial) {
        const Polyline p = random_polyline(two, rng);
        const Polyline q = random_polyline_from(two, rng, p.target());
        const Polyline pq = concat(p, q);
        for (std::size_t k = 0; k < two.puncture_count(); ++k) {
            const double sum = angle_lift(two, p, k) + angle_lift(two, q, k);
            CHECK(std::fabs(angle_lift(two, pq, k) - sum) < 1e-9);
            CHECK(angle_lift(two, reverse(p), k) == -angle_lift(two, p, k));
        }
    }

    for (int trial = 0; trial < 50; ++trial) {
        const Polyline p = random_polyline(two, rng);
        const Polyline q = random_polyline_from(two, rng, p.target());
        const Polyline r = random_polyline_from(two, rng, q.target());
        CHECK(homotopic(two, concat(concat(p, q), r), concat(p, concat(q, r))));
    }
}

TEST_CASE("winding agrees with the ray-crossing oracle on random loops")
{
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 1000; ++trial) {
        const Polyline loop = random_loop(kOrigin, rng);
        CHECK(winding_number(kOrigin, loop, 0) ==
              testing::crossing_winding_number(loop, {0.0, 0.0}));
    }
}

TEST_CASE("closed-loop lifts are integral turns")
{
    std::mt19937_64 rng(99);
    for (int segments : {16, 33, 64}) {
        std::uniform_real_distribution<double> angle(0.0, kTwoPi);
        const Polyline loop = ccw_circle({0.0, 0.0}, 1.7, angle(rng), segments);
        const double turns = angle_lift(kOrigin, loop, 0) / kTwoPi;
        CHECK(std::fabs(turns - std::round(turns)) < 1e-6);
    }
}
