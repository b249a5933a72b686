#pragma once

#include "pi1/homotopy.hpp"

namespace pi1::testing {

// Signed ray-crossing winding count: cast a ray from p in the +x direction
// and count signed crossings of the loop. Independent of the angle-lift
// route through the library; used as the winding oracle.
inline int crossing_winding_number(const Polyline& loop, Vec2 p)
{
    const auto& v = loop.vertices();
    auto is_left = [](Vec2 a, Vec2 b, Vec2 q) {
        return (b.x - a.x) * (q.y - a.y) - (q.x - a.x) * (b.y - a.y);
    };
    int winding = 0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const Vec2 a = v[i];
        const Vec2 b = v[i + 1];
        if (a.y <= p.y) {
            if (b.y > p.y && is_left(a, b, p) > 0.0)
                ++winding;
        } else {
            if (b.y <= p.y && is_left(a, b, p) < 0.0)
                --winding;
        }
    }
    return winding;
}

} // namespace pi1::testing
