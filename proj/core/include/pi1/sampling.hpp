#pragma once

#include <cstdint>
#include <random>

#include "pi1/homotopy.hpp"
#include "pi1/representation.hpp"

namespace pi1 {

using Rng = std::mt19937_64;

struct SamplerOptions {
    Vec2 center{0.0, 0.0};
    double r_min = 0.3;
    double r_max = 3.0;
    int min_vertices = 4;
    int max_vertices = 12;
};

// A clearance-respecting point in the annulus around options.center.
Vec2 random_clear_point(const PuncturedPlane& space, Rng& rng,
                        const SamplerOptions& options = {});

// A random clearance-respecting polyline; every segment is re-sampled until
// it clears the punctures, so the draw always succeeds for sane options.
Polyline random_polyline(const PuncturedPlane& space, Rng& rng,
                         const SamplerOptions& options = {});

// A random polyline starting exactly at `from` (used to build composable
// pairs whose shared endpoint matches bitwise).
Polyline random_polyline_from(const PuncturedPlane& space, Rng& rng, Vec2 from,
                              const SamplerOptions& options = {});

// A random closed polyline (last vertex equals the first bitwise).
Polyline random_loop(const PuncturedPlane& space, Rng& rng,
                     const SamplerOptions& options = {});

// Smooth random unit-modulus weights: the phase is a low-order trigonometric
// polynomial in the coordinates with coefficients drawn from `rng`.
MeshWeights random_smooth_weights(Rng& rng);

} // namespace pi1
