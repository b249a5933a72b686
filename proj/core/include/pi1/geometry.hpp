#pragma once

#include <cmath>
#include <numbers>

namespace pi1 {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Endpoint coincidence tolerance, in plane units. Exact equality is never
// required anywhere in the library.
inline constexpr double kCoincidenceTol = 1e-9;

// Tolerance for comparing accumulated angles of two paths. Distinct classes
// with shared endpoints differ by a full turn, so anything well below 2*pi
// is a safe separator.
inline constexpr double kAngleTol = 1e-6;

// Maximum allowed |lift/2pi - round(lift/2pi)| when a loop winding is read
// off an angle lift.
inline constexpr double kWindingResidualTol = 1e-6;

// Absolute tolerance for unit-modulus phase comparisons.
inline constexpr double kPhaseTol = 1e-9;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
    friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

inline bool close(Vec2 a, Vec2 b, double tol = kCoincidenceTol)
{
    return distance(a, b) <= tol;
}

// Signed angle from u to v in (-pi, pi]. Exactly antisymmetric under
// swapping the arguments as long as u and v are not anti-parallel.
inline double turn_angle(Vec2 u, Vec2 v)
{
    return std::atan2(cross(u, v), dot(u, v));
}

inline Vec2 from_polar(double r, double theta, Vec2 center = {})
{
    return {center.x + r * std::cos(theta), center.y + r * std::sin(theta)};
}

// Polar angle of p about center, in [0, 2pi). The positive x-axis is the
// branch cut.
inline double polar_angle(Vec2 p, Vec2 center = {})
{
    double theta = std::atan2(p.y - center.y, p.x - center.x);
    if (theta < 0.0)
        theta += kTwoPi;
    return theta;
}

inline double polar_radius(Vec2 p, Vec2 center = {})
{
    return distance(p, center);
}

// Distance from point p to the closed segment [a, b].
inline double segment_distance(Vec2 a, Vec2 b, Vec2 p)
{
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0)
        return distance(p, a);
    double t = dot(p - a, ab) / len2;
    t = std::fmin(1.0, std::fmax(0.0, t));
    return distance(p, a + t * ab);
}

} // namespace pi1
