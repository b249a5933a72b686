#include "pi1/sampling.hpp"

#include <array>
#include <cmath>

namespace pi1 {

namespace {

constexpr int kMaxAttempts = 10000;

bool segment_clear(const PuncturedPlane& space, Vec2 a, Vec2 b)
{
    for (const Vec2& p : space.punctures)
        if (segment_distance(a, b, p) < space.clearance)
            return false;
    return true;
}

Vec2 draw_point(Rng& rng, const SamplerOptions& options)
{
    std::uniform_real_distribution<double> radius(options.r_min, options.r_max);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    return from_polar(radius(rng), angle(rng), options.center);
}

} // namespace

Vec2 random_clear_point(const PuncturedPlane& space, Rng& rng,
                        const SamplerOptions& options)
{
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const Vec2 p = draw_point(rng, options);
        bool clear = true;
        for (const Vec2& q : space.punctures)
            if (distance(p, q) < space.clearance) {
                clear = false;
                break;
            }
        if (clear)
            return p;
    }
    fail(ErrorKind::Domain, "could not sample a clearance-respecting point");
}

Polyline random_polyline_from(const PuncturedPlane& space, Rng& rng, Vec2 from,
                              const SamplerOptions& options)
{
    std::uniform_int_distribution<int> count(options.min_vertices, options.max_vertices);
    const int n = count(rng);
    std::vector<Vec2> vertices{from};
    while (static_cast<int>(vertices.size()) < n) {
        bool extended = false;
        for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
            const Vec2 next = draw_point(rng, options);
            if (next == vertices.back())
                continue;
            if (segment_clear(space, vertices.back(), next)) {
                vertices.push_back(next);
                extended = true;
                break;
            }
        }
        if (!extended)
            fail(ErrorKind::Domain, "could not extend polyline within clearance");
    }
    return Polyline(std::move(vertices));
}

Polyline random_polyline(const PuncturedPlane& space, Rng& rng,
                         const SamplerOptions& options)
{
    return random_polyline_from(space, rng, random_clear_point(space, rng, options),
                                options);
}

Polyline random_loop(const PuncturedPlane& space, Rng& rng,
                     const SamplerOptions& options)
{
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Polyline open = random_polyline(space, rng, options);
        if (!segment_clear(space, open.target(), open.source()))
            continue;
        std::vector<Vec2> vertices = open.vertices();
        vertices.push_back(vertices.front()); // close bitwise
        return Polyline(std::move(vertices));
    }
    fail(ErrorKind::Domain, "could not close a random loop within clearance");
}

MeshWeights random_smooth_weights(Rng& rng)
{
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::array<double, 12> c{};
    for (double& x : c)
        x = coeff(rng);
    return MeshWeights::from_function([c](const Vec2& p) {
        double phase = 0.0;
        for (int k = 1; k <= 3; ++k) {
            phase += c[4 * (k - 1) + 0] / k * std::sin(k * p.x + c[4 * (k - 1) + 1]);
            phase += c[4 * (k - 1) + 2] / k * std::cos(k * p.y + c[4 * (k - 1) + 3]);
        }
        return std::polar(1.0, phase);
    });
}

} // namespace pi1
