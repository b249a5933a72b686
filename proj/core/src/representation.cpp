#include "pi1/representation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pi1 {

namespace {

constexpr int kMaxSpiralSegments = 1 << 20;

std::string point_str(Vec2 p)
{
    return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
}

} // namespace

// ---------------------------------------------------------------------------
// Meshes

SpiralMesh::SpiralMesh(PuncturedPlane space, Vec2 basepoint, int min_segments)
    : space_(std::move(space)), basepoint_(basepoint), min_segments_(std::max(16, min_segments))
{
    if (space_.punctures.empty())
        fail(ErrorKind::Parse, "a spiral mesh needs a puncture to wind about");
    center_ = space_.punctures.front();
    if (polar_radius(basepoint_, center_) <= space_.clearance)
        fail(ErrorKind::ClearanceViolation, "mesh base-point violates clearance");
}

SpiralMesh::SpiralMesh(PuncturedPlane space, int min_segments)
    : SpiralMesh(space, space.punctures.empty()
                            ? Vec2{1.0, 0.0}
                            : space.punctures.front() + Vec2{1.0, 0.0},
                 min_segments)
{
}

Polyline SpiralMesh::sample(const Vec2& a, int segments) const
{
    const double r0 = polar_radius(basepoint_, center_);
    const double t0 = polar_angle(basepoint_, center_);
    const double r1 = polar_radius(a, center_);
    const double t1 = polar_angle(a, center_);

    std::vector<Vec2> v;
    v.reserve(segments + 1);
    v.push_back(basepoint_);
    for (int k = 1; k < segments; ++k) {
        const double t = static_cast<double>(k) / segments;
        const double r = std::exp((1.0 - t) * std::log(r0) + t * std::log(r1));
        v.push_back(from_polar(r, (1.0 - t) * t0 + t * t1, center_));
    }
    v.push_back(a);
    return Polyline(std::move(v));
}

Polyline SpiralMesh::path_to(const Vec2& a) const
{
    const double r = polar_radius(a, center_);
    if (r <= space_.clearance)
        fail(ErrorKind::ClearanceViolation,
             "mesh target " + point_str(a) + " is within clearance of the puncture");
    // The polar sweep the true spiral accumulates; refinement stops once the
    // sampled lift matches it.
    const double sweep = polar_angle(a, center_) - polar_angle(basepoint_, center_);

    for (int segments = min_segments_; segments <= kMaxSpiralSegments; segments *= 2) {
        Polyline candidate = sample(a, segments);
        if (!space_.is_clear(candidate))
            continue;
        PuncturedPlane center_only({center_}, space_.clearance);
        if (std::fabs(angle_lift(center_only, candidate, 0) - sweep) <= 1e-9)
            return candidate;
    }
    fail(ErrorKind::ClearanceViolation,
         "no clearance-respecting spiral reaches " + point_str(a));
}

StraightMesh::StraightMesh(PuncturedPlane space, Vec2 basepoint)
    : space_(std::move(space)), basepoint_(basepoint)
{
    for (const Vec2& p : space_.punctures)
        if (distance(basepoint_, p) <= space_.clearance)
            fail(ErrorKind::ClearanceViolation, "mesh base-point violates clearance");
}

Polyline StraightMesh::path_to(const Vec2& a) const
{
    Polyline segment({basepoint_, a});
    space_.require_clear(segment);
    return segment;
}

TableMesh::TableMesh(Vec2 basepoint, std::vector<Polyline> paths)
    : basepoint_(basepoint), paths_(std::move(paths))
{
    for (const Polyline& p : paths_)
        if (!close(p.source(), basepoint_))
            fail(ErrorKind::EndpointMismatch, "table mesh path does not start at the base-point");
}

Polyline TableMesh::path_to(const Vec2& a) const
{
    for (const Polyline& p : paths_)
        if (close(p.target(), a))
            return p;
    fail(ErrorKind::UnknownElement, "table mesh has no path to " + point_str(a));
}

// ---------------------------------------------------------------------------
// Weights

MeshWeights MeshWeights::unity()
{
    return MeshWeights([](const Vec2&) { return Complex{1.0, 0.0}; });
}

MeshWeights MeshWeights::symmetric(double phi, Vec2 center)
{
    return MeshWeights([phi, center](const Vec2& p) {
        return std::polar(1.0, phi * polar_angle(p, center) / kTwoPi);
    });
}

MeshWeights MeshWeights::from_function(std::function<Complex(const Vec2&)> f)
{
    return MeshWeights(std::move(f));
}

MeshWeights MeshWeights::from_table(std::vector<std::pair<Vec2, Complex>> entries)
{
    return MeshWeights([entries = std::move(entries)](const Vec2& p) -> Complex {
        for (const auto& [point, value] : entries)
            if (close(point, p))
                return value;
        fail(ErrorKind::UnknownElement, "weight table has no entry for " + point_str(p));
    });
}

Complex MeshWeights::at(const Vec2& p) const
{
    const Complex raw = f_(p);
    const double mag = std::abs(raw);
    if (!(mag > 0.0))
        fail(ErrorKind::Domain, "mesh weight has zero modulus at " + point_str(p));
    return raw / mag;
}

MeshWeights MeshWeights::normalized_at(const Vec2& base) const
{
    const Complex scale = std::conj(at(base));
    auto f = f_;
    return MeshWeights([f = std::move(f), scale](const Vec2& p) { return scale * f(p); });
}

// ---------------------------------------------------------------------------
// GroupoidRep

GroupoidRep::GroupoidRep(PuncturedPlane space, std::shared_ptr<const Mesh> mesh,
                         MeshWeights weights, double phi)
    : GroupoidRep(std::move(space), std::move(mesh), std::move(weights),
                  std::vector<double>{phi})
{
}

GroupoidRep::GroupoidRep(PuncturedPlane space, std::shared_ptr<const Mesh> mesh,
                         MeshWeights weights, std::vector<double> phis)
    : space_(std::move(space)),
      mesh_(std::move(mesh)),
      weights_(weights.normalized_at(mesh_->basepoint())),
      phis_(std::move(phis))
{
    if (space_.punctures.empty())
        fail(ErrorKind::Parse, "a groupoid representation needs at least one puncture");
    if (phis_.size() != space_.punctures.size())
        fail(ErrorKind::Parse, "need exactly one flux parameter per puncture");
}

void GroupoidRep::require_single_puncture(const char* what) const
{
    if (space_.punctures.size() != 1)
        fail(ErrorKind::Domain,
             std::string(what) + " is defined for single-puncture spaces; use the "
                                 "per-puncture variant instead");
}

std::vector<double> mesh_lifts(const PuncturedPlane& space, const Mesh& mesh,
                               const Vec2& p)
{
    if (mesh.is_basepoint(p))
        return std::vector<double>(space.punctures.size(), 0.0);
    return angle_lifts(space, mesh.path_to(p));
}

int closed_lift_winding(double lift)
{
    const double turns = lift / kTwoPi;
    const double nearest = std::round(turns);
    if (std::fabs(turns - nearest) >= kWindingResidualTol)
        fail(ErrorKind::Domain, "mesh-closed lift is not an integer number of turns");
    return static_cast<int>(nearest);
}

GroupoidRep::Anchor GroupoidRep::anchor(const Vec2& p) const
{
    Anchor a;
    a.mesh_lift = mesh_lifts(space_, *mesh_, p);
    // The identity class at the base-point carries weight 1.
    a.weight = mesh_->is_basepoint(p) ? Complex{1.0, 0.0} : weights_.at(p);
    return a;
}

std::vector<int> GroupoidRep::mesh_windings(const HomotopyClass& cls) const
{
    if (cls.swept.size() != space_.punctures.size())
        fail(ErrorKind::Parse, "homotopy class has the wrong number of swept angles");
    const Anchor from = anchor(cls.source);
    const Anchor to = anchor(cls.target);
    std::vector<int> winding(space_.punctures.size());
    for (std::size_t k = 0; k < winding.size(); ++k) {
        // Lift of the loop mesh(source) . path . reverse(mesh(target)).
        winding[k] = closed_lift_winding(from.mesh_lift[k] + cls.swept[k] - to.mesh_lift[k]);
    }
    return winding;
}

std::vector<int> GroupoidRep::mesh_windings(const Polyline& path) const
{
    return mesh_windings(homotopy_class(space_, path));
}

int GroupoidRep::loop_projection(const HomotopyClass& cls) const
{
    require_single_puncture("loop_projection");
    return mesh_windings(cls)[0];
}

int GroupoidRep::loop_projection(const Polyline& path) const
{
    return loop_projection(homotopy_class(space_, path));
}

Complex GroupoidRep::chi(const HomotopyClass& cls) const
{
    if (cls.swept.size() != space_.punctures.size())
        fail(ErrorKind::Parse, "homotopy class has the wrong number of swept angles");
    const Anchor from = anchor(cls.source);
    const Anchor to = anchor(cls.target);
    Complex flux{1.0, 0.0};
    for (std::size_t k = 0; k < phis_.size(); ++k) {
        const int n = closed_lift_winding(from.mesh_lift[k] + cls.swept[k] - to.mesh_lift[k]);
        flux *= GroupRepZ{phis_[k]}.value(n);
    }
    return std::conj(from.weight) * flux * to.weight;
}

Complex GroupoidRep::chi(const Polyline& path) const
{
    return chi(homotopy_class(space_, path));
}

HomotopyClass GroupoidRep::class_transport(Vec2 a, Vec2 b, long n) const
{
    require_single_puncture("class_transport");
    const long ns[] = {n};
    return class_transport(a, b, std::span<const long>(ns));
}

HomotopyClass GroupoidRep::class_transport(Vec2 a, Vec2 b,
                                           std::span<const long> ns) const
{
    if (ns.size() != space_.punctures.size())
        fail(ErrorKind::Parse, "need one winding per puncture");
    const Anchor from = anchor(a);
    const Anchor to = anchor(b);
    HomotopyClass cls{a, b, {}};
    cls.swept.resize(ns.size());
    for (std::size_t k = 0; k < ns.size(); ++k)
        cls.swept[k] = to.mesh_lift[k] - from.mesh_lift[k] +
                       kTwoPi * static_cast<double>(ns[k]);
    return cls;
}

GroupoidRep GroupoidRep::with_weights(MeshWeights weights) const
{
    return GroupoidRep(space_, mesh_, std::move(weights), phis_);
}

// ---------------------------------------------------------------------------
// Constructions and checks

GroupoidRep ldw_rep(PuncturedPlane space, std::shared_ptr<const Mesh> mesh, double phi)
{
    return GroupoidRep(std::move(space), std::move(mesh), MeshWeights::unity(), phi);
}

GroupoidRep symmetric_rep(double phi, PuncturedPlane space)
{
    if (space.punctures.size() != 1)
        fail(ErrorKind::Parse, "the symmetric representation needs a single puncture");
    const Vec2 center = space.punctures.front();
    auto mesh = std::make_shared<SpiralMesh>(space);
    return GroupoidRep(std::move(space), std::move(mesh),
                       MeshWeights::symmetric(phi, center), phi);
}

GroupoidRep symmetric_rep(double phi)
{
    return symmetric_rep(phi, origin_punctured_plane());
}

bool compatible(const GroupoidRep& r1, const GroupoidRep& r2,
                std::span<const std::pair<Vec2, Vec2>> endpoints,
                int classes_per_pair, double tol)
{
    for (const auto& [a, b] : endpoints) {
        Complex ratio0{0.0, 0.0};
        for (int n = 0; n < classes_per_pair; ++n) {
            const HomotopyClass cls = r1.class_transport(a, b, n);
            const Complex ratio = r2.chi(cls) / r1.chi(cls);
            if (n == 0) {
                ratio0 = ratio;
            } else if (std::abs(ratio - ratio0) > tol) {
                return false;
            }
        }
    }
    return true;
}

GroupoidRep gauge_transform(const GroupoidRep& rep, MeshWeights new_weights)
{
    return rep.with_weights(std::move(new_weights));
}

double inversion_defect(const GroupoidRep& rep,
                        std::span<const std::pair<double, double>> samples)
{
    if (rep.space().punctures.size() != 1 ||
        norm(rep.space().punctures.front()) > kCoincidenceTol)
        fail(ErrorKind::Domain, "inversion defect needs the single puncture at the origin");

    double defect = 0.0;
    for (const auto& [r, omega] : samples) {
        const Polyline q = ccw_half_circle({0.0, 0.0}, r, omega);
        const Polyline minus_q = invert_point(rep.space(), q);
        defect = std::max(defect, std::abs(rep.chi(q) - rep.chi(minus_q)));
    }
    return defect;
}

Polyline ccw_half_circle(Vec2 center, double r, double omega, int segments)
{
    std::vector<Vec2> v;
    v.reserve(segments + 1);
    for (int k = 0; k < segments; ++k)
        v.push_back(from_polar(r, omega + kPi * k / segments, center));
    // The endpoint of a half-circle is the point inversion of its start;
    // negating keeps it exact even where sin/cos round across the branch cut.
    v.push_back(center - (v.front() - center));
    return Polyline(std::move(v));
}

Polyline ccw_circle(Vec2 center, double r, double omega, int segments)
{
    std::vector<Vec2> v;
    v.reserve(segments + 1);
    v.push_back(from_polar(r, omega, center));
    for (int k = 1; k < segments; ++k)
        v.push_back(from_polar(r, omega + kTwoPi * k / segments, center));
    v.push_back(v.front()); // close exactly
    return Polyline(std::move(v));
}

} // namespace pi1
