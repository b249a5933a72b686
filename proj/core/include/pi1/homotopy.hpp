#pragma once

#include <cstddef>
#include <vector>

#include "pi1/error.hpp"
#include "pi1/geometry.hpp"

namespace pi1 {

class Polyline;

// The plane with a finite set of excluded points. `clearance` is the minimum
// distance any path segment must keep from every puncture.
struct PuncturedPlane {
    std::vector<Vec2> punctures;
    double clearance = 1e-3;

    PuncturedPlane(std::vector<Vec2> punctures_, double clearance_);

    std::size_t puncture_count() const { return punctures.size(); }

    bool is_clear(const Polyline& path) const;
    // Throws ClearanceViolation naming the offending puncture.
    void require_clear(const Polyline& path) const;
};

PuncturedPlane origin_punctured_plane(double clearance = 0.05);

// An ordered vertex chain, the computational stand-in for a path. At least
// two vertices, consecutive vertices distinct.
class Polyline {
  public:
    explicit Polyline(std::vector<Vec2> vertices);

    const std::vector<Vec2>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    Vec2 source() const { return vertices_.front(); }
    Vec2 target() const { return vertices_.back(); }

  private:
    std::vector<Vec2> vertices_;
};

// Endpoints plus the accumulated signed angle about each puncture: a complete
// homotopy invariant for a single puncture, the abelianized invariant beyond.
struct HomotopyClass {
    Vec2 source;
    Vec2 target;
    std::vector<double> swept;
};

// Accumulated signed angle of `path` as seen from one puncture. Additive
// under concatenation, negated under reversal.
double angle_lift(const PuncturedPlane& space, const Polyline& path,
                  std::size_t puncture_index);
std::vector<double> angle_lifts(const PuncturedPlane& space, const Polyline& path);

// Per-puncture winding numbers of a closed polyline. The residual of
// lift/2pi against the nearest integer must stay below kWindingResidualTol.
std::vector<int> winding_numbers(const PuncturedPlane& space, const Polyline& loop);
int winding_number(const PuncturedPlane& space, const Polyline& loop,
                   std::size_t puncture_index);

// Joins two polylines whose endpoints meet within kCoincidenceTol, dropping
// the duplicated vertex.
Polyline concat(const Polyline& a, const Polyline& b);

Polyline reverse(const Polyline& p);

HomotopyClass homotopy_class(const PuncturedPlane& space, const Polyline& path);

// True iff endpoints match and all swept angles agree within kAngleTol.
bool homotopic(const PuncturedPlane& space, const Polyline& p, const Polyline& q);

// Point inversion x -> -x, applied vertexwise.
Polyline invert_point(const Polyline& p);
// Same, but validates the result against `space`.
Polyline invert_point(const PuncturedPlane& space, const Polyline& p);

} // namespace pi1
