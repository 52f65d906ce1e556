#pragma once

#include <span>
#include <vector>

#include "torusrot/vec2.hpp"

namespace torusrot {

// Convex hull of a finite point cloud. Degenerate clouds are first-class:
// zero vertices (empty input), one vertex (all points coincide), two
// vertices (collinear cloud, the extreme endpoints). With three or more
// vertices the polygon is strictly convex and ordered counterclockwise.
struct ConvexPolygon {
    std::vector<Vec2> vertices;

    bool empty() const { return vertices.empty(); }
    bool is_point() const { return vertices.size() == 1; }
    bool is_segment() const { return vertices.size() == 2; }
    std::size_t size() const { return vertices.size(); }
};

// Andrew monotone chain. Cross products with magnitude below
// 1e-12 * max(1, L^2), where L is the largest input coordinate magnitude,
// count as collinear, so no three retained vertices are collinear.
ConvexPolygon convex_hull(std::span<const Vec2> points);

// Shoelace area; 0 for empty/point/segment hulls.
double hull_area(const ConvexPolygon& p);

// Largest pairwise vertex distance; 0 for empty and single-point hulls.
double hull_diameter(const ConvexPolygon& p);

// True when q, shrunk toward its centroid by `margin` (an absolute
// distance), lies inside p. Degenerate p contains only points on itself.
bool contains(const ConvexPolygon& p, const ConvexPolygon& q, double margin = 0.0);

// Point-in-hull test, boundary inclusive up to an internal tolerance.
bool contains_point(const ConvexPolygon& p, const Vec2& z);

// Distance from a point to a hull (0 inside).
double distance_to_hull(const ConvexPolygon& p, const Vec2& z);

// Hausdorff distance between finite point clouds (symmetric, brute force).
double hausdorff_distance(std::span<const Vec2> a, std::span<const Vec2> b);

// Hausdorff distance between the convex regions bounded by two hulls.
// For convex sets the supremum of d(x, B) over A is attained at a vertex,
// so vertices against edges suffice.
double polygon_hausdorff(const ConvexPolygon& a, const ConvexPolygon& b);

// Direction frame: unit vector v, its counterclockwise perpendicular,
// a line offset lambda and cone slopes a <= b. The line is
// L = { z : <z,v> = lambda } (i.e. lambda*v + {v}-perp for unit v); the
// cone is C = { z : a<z,v> <= <z,v_perp> <= b<z,v> }, both inequalities
// taken literally as written.
struct DirectionalFrame {
    Vec2 v{1.0, 0.0};
    double lambda = 0.0;
    double a = 0.0;
    double b = 0.0;

    // Normalizes v; throws ConfigError on a zero vector or a > b.
    static DirectionalFrame make(Vec2 v, double lambda, double a, double b);

    Vec2 v_perp() const { return perp(v); }
    bool line_contains(const Vec2& z, double tol = 1e-9) const;
};

bool cone_membership(const DirectionalFrame& f, const Vec2& z);

// Slab S = { z : lo <= <z,v> <= hi }.
bool slab_membership(const Vec2& v, double lo, double hi, const Vec2& z);

}  // namespace torusrot
