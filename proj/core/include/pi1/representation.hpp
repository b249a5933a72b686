#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "pi1/homotopy.hpp"

namespace pi1 {

using Complex = std::complex<double>;

// The U(1) representation n -> e^{i phi n} of the integer winding group.
// phi is the flux parameter.
struct GroupRepZ {
    double phi = 0.0;

    Complex value(long n) const
    {
        return std::polar(1.0, phi * static_cast<double>(n));
    }
};

// A choice of path from a fixed base-point to every admissible point.
class Mesh {
  public:
    virtual ~Mesh() = default;

    virtual Vec2 basepoint() const = 0;

    // Path from the base-point to `a`. Undefined for the base-point itself:
    // that path is the identity class and is handled analytically by callers
    // (see is_basepoint).
    virtual Polyline path_to(const Vec2& a) const = 0;

    bool is_basepoint(const Vec2& a) const { return close(a, basepoint()); }
};

// The rotationally symmetric mesh: from the base-point, interpolate radius
// geometrically and polar angle linearly (both measured about `center`,
// with angles taken in [0, 2pi)). For base-point center + (1, 0) the path to
// (r, theta) is t -> (r^t, t*theta) in polar form.
class SpiralMesh final : public Mesh {
  public:
    SpiralMesh(PuncturedPlane space, Vec2 basepoint, int min_segments = 64);
    // Base-point one unit along the positive x-axis from the first puncture.
    explicit SpiralMesh(PuncturedPlane space, int min_segments = 64);

    Vec2 basepoint() const override { return basepoint_; }
    Polyline path_to(const Vec2& a) const override;

    // Polyline sampling of the spiral with exactly `segments` segments and no
    // refinement, exposed for direct inspection of the construction.
    Polyline sample(const Vec2& a, int segments) const;

  private:
    PuncturedPlane space_;
    Vec2 center_;
    Vec2 basepoint_;
    int min_segments_;
};

// Straight segments from the base-point. Fails with a clearance violation
// for targets whose segment would cross a puncture's clearance disc.
class StraightMesh final : public Mesh {
  public:
    StraightMesh(PuncturedPlane space, Vec2 basepoint);

    Vec2 basepoint() const override { return basepoint_; }
    Polyline path_to(const Vec2& a) const override;

  private:
    PuncturedPlane space_;
    Vec2 basepoint_;
};

// An explicit table of mesh paths for a finite set of points.
class TableMesh final : public Mesh {
  public:
    TableMesh(Vec2 basepoint, std::vector<Polyline> paths);

    Vec2 basepoint() const override { return basepoint_; }
    Polyline path_to(const Vec2& a) const override;

  private:
    Vec2 basepoint_;
    std::vector<Polyline> paths_;
};

// Unit phases attached to mesh paths, keyed by their endpoint. The gauge
// freedom of a groupoid representation lives here.
class MeshWeights {
  public:
    static MeshWeights unity();
    // weight(p) = e^{i phi theta(p) / 2pi}, theta measured about `center`
    // in [0, 2pi).
    static MeshWeights symmetric(double phi, Vec2 center = {});
    static MeshWeights from_function(std::function<Complex(const Vec2&)> f);
    static MeshWeights from_table(std::vector<std::pair<Vec2, Complex>> entries);

    // Unit-modulus phase at p. Throws on a zero-modulus raw value.
    Complex at(const Vec2& p) const;

    // Same weights rescaled by a constant so that at(base) == 1.
    MeshWeights normalized_at(const Vec2& base) const;

  private:
    explicit MeshWeights(std::function<Complex(const Vec2&)> f) : f_(std::move(f)) {}
    std::function<Complex(const Vec2&)> f_;
};

// A fundamental-groupoid representation assembled from a base-point, mesh,
// mesh weights and a flux per puncture: chi of a path is
//   conj(weight(source)) * prod_k e^{i phi_k n_k} * weight(target)
// where n_k is the winding of the mesh-closed loop about puncture k.
class GroupoidRep {
  public:
    GroupoidRep(PuncturedPlane space, std::shared_ptr<const Mesh> mesh,
                MeshWeights weights, double phi);
    GroupoidRep(PuncturedPlane space, std::shared_ptr<const Mesh> mesh,
                MeshWeights weights, std::vector<double> phis);

    const PuncturedPlane& space() const { return space_; }
    const Mesh& mesh() const { return *mesh_; }
    std::shared_ptr<const Mesh> mesh_ptr() const { return mesh_; }
    const MeshWeights& weights() const { return weights_; }
    double phi() const { return phis_.front(); }
    const std::vector<double>& phis() const { return phis_; }

    Complex chi(const Polyline& path) const;
    Complex chi(const HomotopyClass& cls) const;

    // Winding of the mesh-closed loop about each puncture.
    std::vector<int> mesh_windings(const HomotopyClass& cls) const;
    std::vector<int> mesh_windings(const Polyline& path) const;

    // Single-puncture projection onto the winding group.
    int loop_projection(const Polyline& path) const;
    int loop_projection(const HomotopyClass& cls) const;

    // The class from a to b whose mesh-closed loop winds n times (single
    // puncture), or n_k times about puncture k.
    HomotopyClass class_transport(Vec2 a, Vec2 b, long n) const;
    HomotopyClass class_transport(Vec2 a, Vec2 b, std::span<const long> ns) const;

    GroupoidRep with_weights(MeshWeights weights) const;

  private:
    struct Anchor {
        std::vector<double> mesh_lift; // per puncture, 0 at the base-point
        Complex weight;
    };
    Anchor anchor(const Vec2& p) const;
    void require_single_puncture(const char* what) const;

    PuncturedPlane space_;
    std::shared_ptr<const Mesh> mesh_;
    MeshWeights weights_;
    std::vector<double> phis_;
};

// Weights identically one: chi reduces to the flux representation of the
// mesh-closed winding.
GroupoidRep ldw_rep(PuncturedPlane space, std::shared_ptr<const Mesh> mesh, double phi);

// Spiral mesh with the matching e^{i phi theta / 2pi} weights about the
// single puncture: every counter-clockwise half-circle gets phase e^{i phi/2}.
GroupoidRep symmetric_rep(double phi, PuncturedPlane space);
GroupoidRep symmetric_rep(double phi);

// True iff chi2/chi1 is constant (within tol) across `classes_per_pair`
// distinct homotopy classes for every endpoint pair.
bool compatible(const GroupoidRep& r1, const GroupoidRep& r2,
                std::span<const std::pair<Vec2, Vec2>> endpoints,
                int classes_per_pair, double tol = kPhaseTol);

GroupoidRep gauge_transform(const GroupoidRep& rep, MeshWeights new_weights);

// Max over samples (r, omega) of |chi(q) - chi(-q)| where q is the CCW
// half-circle of radius r starting at angle omega. Requires the single
// puncture at the origin.
double inversion_defect(const GroupoidRep& rep,
                        std::span<const std::pair<double, double>> samples);

// Circle-arc polylines used throughout: counter-clockwise from angle omega.
Polyline ccw_half_circle(Vec2 center, double r, double omega, int segments = 64);
Polyline ccw_circle(Vec2 center, double r, double omega = 0.0, int segments = 128);

// Per-puncture angle lifts of the mesh path to p (zero at the base-point).
std::vector<double> mesh_lifts(const PuncturedPlane& space, const Mesh& mesh,
                               const Vec2& p);

// Rounds a mesh-closed lift to its winding, rejecting large residuals.
int closed_lift_winding(double lift);

} // namespace pi1
