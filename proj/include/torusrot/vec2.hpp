#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace torusrot {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    constexpr bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
};

constexpr Vec2 operator*(double s, const Vec2& v) { return {s * v.x, s * v.y}; }

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

// Counterclockwise rotation by a quarter turn: v_perp = (-v.y, v.x).
constexpr Vec2 perp(const Vec2& v) { return {-v.y, v.x}; }

inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }
constexpr double norm_sq(const Vec2& v) { return v.x * v.x + v.y * v.y; }
inline double norm_inf(const Vec2& v) { return std::max(std::fabs(v.x), std::fabs(v.y)); }

inline double distance(const Vec2& a, const Vec2& b) { return norm(a - b); }

inline bool is_finite(const Vec2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }

// Representative of the plane point in the fundamental domain [0,1)^2.
inline Vec2 wrap_unit(const Vec2& z) {
    double fx = z.x - std::floor(z.x);
    double fy = z.y - std::floor(z.y);
    if (fx >= 1.0) fx = 0.0;
    if (fy >= 1.0) fy = 0.0;
    return {fx, fy};
}

// Distance between the torus points covered by a and b: minimum over the
// nine integer translates of the difference.
inline double torus_distance(const Vec2& a, const Vec2& b) {
    const Vec2 d = wrap_unit(a) - wrap_unit(b);
    double best = std::numeric_limits<double>::infinity();
    for (int m = -1; m <= 1; ++m)
        for (int k = -1; k <= 1; ++k)
            best = std::min(best, norm(d + Vec2(double(m), double(k))));
    return best;
}

// Domain aliases: points on the plane (lifts of torus points) and rotation
// vectors share the arithmetic but not the meaning.
using PlanePoint = Vec2;
using RotationVector = Vec2;

// Round disk on the torus, given by a lifted center and a radius < 1/2.
struct Disk {
    Vec2 center;
    double radius = 0.0;
};

}  // namespace torusrot
