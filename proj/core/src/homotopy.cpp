#include "pi1/homotopy.hpp"

#include <cmath>
#include <string>

namespace pi1 {

namespace {

std::string point_str(Vec2 p)
{
    return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
}

bool lex_less(Vec2 a, Vec2 b)
{
    return a.x < b.x || (a.x == b.x && a.y < b.y);
}

// True when the reversed vertex order is lexicographically smaller. Lifts are
// summed in the canonical direction so that reversing a polyline negates the
// total bitwise, independent of summation rounding.
bool reversed_is_canonical(const std::vector<Vec2>& v)
{
    for (std::size_t i = 0, j = v.size() - 1; i < j; ++i, --j) {
        if (lex_less(v[i], v[j]))
            return false;
        if (lex_less(v[j], v[i]))
            return true;
    }
    return false;
}

} // namespace

PuncturedPlane::PuncturedPlane(std::vector<Vec2> punctures_, double clearance_)
    : punctures(std::move(punctures_)), clearance(clearance_)
{
    if (!(clearance > 0.0))
        fail(ErrorKind::Parse, "clearance must be positive");
    for (std::size_t i = 0; i < punctures.size(); ++i)
        for (std::size_t j = i + 1; j < punctures.size(); ++j)
            if (punctures[i] == punctures[j])
                fail(ErrorKind::Parse, "punctures must be pairwise distinct");
}

PuncturedPlane origin_punctured_plane(double clearance)
{
    return PuncturedPlane({Vec2{0.0, 0.0}}, clearance);
}

bool PuncturedPlane::is_clear(const Polyline& path) const
{
    const auto& v = path.vertices();
    for (const Vec2& p : punctures)
        for (std::size_t i = 0; i + 1 < v.size(); ++i)
            if (segment_distance(v[i], v[i + 1], p) < clearance)
                return false;
    return true;
}

void PuncturedPlane::require_clear(const Polyline& path) const
{
    const auto& v = path.vertices();
    for (std::size_t k = 0; k < punctures.size(); ++k)
        for (std::size_t i = 0; i + 1 < v.size(); ++i)
            if (segment_distance(v[i], v[i + 1], punctures[k]) < clearance)
                fail(ErrorKind::ClearanceViolation,
                     "segment " + std::to_string(i) + " passes within clearance of puncture " +
                         std::to_string(k) + " at " + point_str(punctures[k]));
}

Polyline::Polyline(std::vector<Vec2> vertices) : vertices_(std::move(vertices))
{
    if (vertices_.size() < 2)
        fail(ErrorKind::Parse, "a polyline needs at least two vertices");
    for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
        if (vertices_[i] == vertices_[i + 1])
            fail(ErrorKind::Parse,
                 "consecutive polyline vertices must be distinct (index " + std::to_string(i) +
                     ")");
    }
    for (const Vec2& p : vertices_)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            fail(ErrorKind::Parse, "polyline vertices must be finite");
}

double angle_lift(const PuncturedPlane& space, const Polyline& path,
                  std::size_t puncture_index)
{
    if (puncture_index >= space.punctures.size())
        fail(ErrorKind::UnknownElement, "puncture index out of range");
    const Vec2 c = space.punctures[puncture_index];
    const auto& v = path.vertices();

    double lift = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (segment_distance(v[i], v[i + 1], c) < space.clearance)
            fail(ErrorKind::ClearanceViolation,
                 "segment " + std::to_string(i) + " passes within clearance of puncture " +
                     std::to_string(puncture_index));
        // Clearance keeps the puncture off the segment, so each step sweeps
        // strictly less than half a turn and the wrapped angle is exact.
        lift += turn_angle(v[i] - c, v[i + 1] - c);
    }
    return lift;
}

std::vector<double> angle_lifts(const PuncturedPlane& space, const Polyline& path)
{
    std::vector<double> lifts(space.punctures.size());
    for (std::size_t k = 0; k < lifts.size(); ++k)
        lifts[k] = angle_lift(space, path, k);
    return lifts;
}

std::vector<int> winding_numbers(const PuncturedPlane& space, const Polyline& loop)
{
    if (!close(loop.source(), loop.target()))
        fail(ErrorKind::NotClosed, "winding numbers need a closed polyline; endpoints are " +
                                       point_str(loop.source()) + " and " +
                                       point_str(loop.target()));
    std::vector<int> winding(space.punctures.size());
    for (std::size_t k = 0; k < winding.size(); ++k) {
        const double turns = angle_lift(space, loop, k) / kTwoPi;
        const double nearest = std::round(turns);
        if (std::fabs(turns - nearest) >= kWindingResidualTol)
            fail(ErrorKind::Domain,
                 "winding residual " + std::to_string(std::fabs(turns - nearest)) +
                     " exceeds tolerance; the loop is too coarse");
        winding[k] = static_cast<int>(nearest);
    }
    return winding;
}

int winding_number(const PuncturedPlane& space, const Polyline& loop,
                   std::size_t puncture_index)
{
    if (puncture_index >= space.punctures.size())
        fail(ErrorKind::UnknownElement, "puncture index out of range");
    return winding_numbers(space, loop)[puncture_index];
}

Polyline concat(const Polyline& a, const Polyline& b)
{
    if (!close(a.target(), b.source()))
        fail(ErrorKind::EndpointMismatch,
             "cannot concatenate: target " + point_str(a.target()) + " does not meet source " +
                 point_str(b.source()));
    std::vector<Vec2> joined = a.vertices();
    for (std::size_t i = 1; i < b.vertices().size(); ++i) {
        const Vec2 v = b.vertices()[i];
        if (v == joined.back())
            continue; // collapse zero-length steps introduced by the join
        joined.push_back(v);
    }
    return Polyline(std::move(joined));
}

Polyline reverse(const Polyline& p)
{
    std::vector<Vec2> v(p.vertices().rbegin(), p.vertices().rend());
    return Polyline(std::move(v));
}

HomotopyClass homotopy_class(const PuncturedPlane& space, const Polyline& path)
{
    return HomotopyClass{path.source(), path.target(), angle_lifts(space, path)};
}

bool homotopic(const PuncturedPlane& space, const Polyline& p, const Polyline& q)
{
    const HomotopyClass cp = homotopy_class(space, p);
    const HomotopyClass cq = homotopy_class(space, q);
    if (!close(cp.source, cq.source) || !close(cp.target, cq.target))
        return false;
    for (std::size_t k = 0; k < cp.swept.size(); ++k)
        if (std::fabs(cp.swept[k] - cq.swept[k]) > kAngleTol)
            return false;
    return true;
}

Polyline invert_point(const Polyline& p)
{
    std::vector<Vec2> v;
    v.reserve(p.size());
    for (const Vec2& q : p.vertices())
        v.push_back(-q);
    return Polyline(std::move(v));
}

Polyline invert_point(const PuncturedPlane& space, const Polyline& p)
{
    Polyline inverted = invert_point(p);
    space.require_clear(inverted);
    return inverted;
}

} // namespace pi1
