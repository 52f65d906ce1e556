#include "torusrot/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "torusrot/errors.hpp"

namespace torusrot {

namespace {

double coordinate_scale(std::span<const Vec2> pts) {
    double m = 0.0;
    for (const Vec2& p : pts) m = std::max({m, std::fabs(p.x), std::fabs(p.y)});
    return m;
}

double collinear_tol(std::span<const Vec2> pts) {
    const double m = coordinate_scale(pts);
    return 1e-12 * std::max(1.0, m * m);
}

double membership_tol(std::span<const Vec2> pts) {
    return 1e-9 * std::max(1.0, coordinate_scale(pts));
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    const Vec2 ab = b - a;
    const double len2 = norm_sq(ab);
    if (len2 == 0.0) return distance(p, a);
    double t = dot(p - a, ab) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, a + ab * t);
}

}  // namespace

ConvexPolygon convex_hull(std::span<const Vec2> points) {
    std::vector<Vec2> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    ConvexPolygon hull;
    if (pts.empty()) return hull;
    if (pts.size() == 1) {
        hull.vertices = pts;
        return hull;
    }

    const double tol = collinear_tol(pts);
    const std::size_t n = pts.size();
    std::vector<Vec2> h(2 * n);
    std::size_t k = 0;

    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= tol) --k;
        h[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= tol) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);

    hull.vertices = std::move(h);
    return hull;
}

double hull_area(const ConvexPolygon& p) {
    const auto& v = p.vertices;
    if (v.size() < 3) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % v.size()];
        s += cross(a, b);
    }
    return 0.5 * s;
}

double hull_diameter(const ConvexPolygon& p) {
    const auto& v = p.vertices;
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            d = std::max(d, distance(v[i], v[j]));
    return d;
}

bool contains_point(const ConvexPolygon& p, const Vec2& z) {
    const auto& v = p.vertices;
    if (v.empty()) return false;
    const double tol = collinear_tol(v);
    if (v.size() == 1) return distance(v[0], z) <= membership_tol(v);
    if (v.size() == 2) return point_segment_distance(z, v[0], v[1]) <= membership_tol(v);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % v.size()];
        if (cross(b - a, z - a) < -tol) return false;
    }
    return true;
}

double distance_to_hull(const ConvexPolygon& p, const Vec2& z) {
    const auto& v = p.vertices;
    if (v.empty()) return std::numeric_limits<double>::infinity();
    if (v.size() == 1) return distance(v[0], z);
    if (v.size() >= 3 && contains_point(p, z)) return 0.0;
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i)
        d = std::min(d, point_segment_distance(z, v[i], v[(i + 1) % v.size()]));
    return d;
}

bool contains(const ConvexPolygon& p, const ConvexPolygon& q, double margin) {
    if (q.empty()) return true;
    if (p.empty()) return false;

    Vec2 c{0.0, 0.0};
    for (const Vec2& v : q.vertices) c += v;
    c = c / double(q.vertices.size());

    for (const Vec2& v : q.vertices) {
        Vec2 w = v;
        if (margin > 0.0) {
            const Vec2 r = v - c;
            const double len = norm(r);
            w = (len <= margin) ? c : v - r * (margin / len);
        }
        if (!contains_point(p, w)) return false;
    }
    return true;
}

double hausdorff_distance(std::span<const Vec2> a, std::span<const Vec2> b) {
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    auto directed = [](std::span<const Vec2> from, std::span<const Vec2> to) {
        double worst = 0.0;
        for (const Vec2& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const Vec2& q : to) best = std::min(best, distance(p, q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

double polygon_hausdorff(const ConvexPolygon& a, const ConvexPolygon& b) {
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (const Vec2& v : a.vertices) worst = std::max(worst, distance_to_hull(b, v));
    for (const Vec2& v : b.vertices) worst = std::max(worst, distance_to_hull(a, v));
    return worst;
}

DirectionalFrame DirectionalFrame::make(Vec2 v, double lambda, double a, double b) {
    const double len = norm(v);
    if (len == 0.0) throw ConfigError("direction vector must be nonzero");
    if (a > b) throw ConfigError("cone slopes require a <= b");
    DirectionalFrame f;
    f.v = v / len;
    f.lambda = lambda;
    f.a = a;
    f.b = b;
    return f;
}

bool DirectionalFrame::line_contains(const Vec2& z, double tol) const {
    return std::fabs(dot(z, v) - lambda) <= tol;
}

bool cone_membership(const DirectionalFrame& f, const Vec2& z) {
    const double along = dot(z, f.v);
    const double across = dot(z, f.v_perp());
    return f.a * along <= across && across <= f.b * along;
}

bool slab_membership(const Vec2& v, double lo, double hi, const Vec2& z) {
    const double t = dot(z, v);
    return lo <= t && t <= hi;
}

}  // namespace torusrot
