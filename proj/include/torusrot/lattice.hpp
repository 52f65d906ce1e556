#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "torusrot/geometry.hpp"
#include "torusrot/lift.hpp"

namespace torusrot {

// Integer 2x2 matrix with determinant +1, rows (a, b) and (c, d).
struct UnimodularMatrix {
    long a = 1, b = 0;
    long c = 0, d = 1;

    UnimodularMatrix() = default;
    UnimodularMatrix(long a_, long b_, long c_, long d_);

    long det() const { return a * d - b * c; }
    UnimodularMatrix inverse() const { return {d, -b, -c, a}; }
    UnimodularMatrix transpose() const { return {a, c, b, d}; }
    UnimodularMatrix operator*(const UnimodularMatrix& o) const;

    Vec2 apply(const Vec2& z) const {
        return {double(a) * z.x + double(b) * z.y, double(c) * z.x + double(d) * z.y};
    }

    std::string to_string() const;
};

// Completes an integer vector w with gcd(w1, w2) = 1 to the matrix with
// columns (w, t) and determinant +1. The Bezout cofactor is canonicalized
// (0 <= u < |w2| when w2 != 0), so the result is unique.
UnimodularMatrix complete_to_unimodular(long w1, long w2);

// Lift of the conjugated torus map: z -> M^{-1} F(M z). Iterating the
// result never multiplies matrices more than once per step, and the
// inverse (when F has one) is conjugated the same way.
LiftMap conjugate_lift(const LiftMap& f, const UnimodularMatrix& m);

// Rotation data transforms by M^{-1} (points, clouds, hulls). Hulls are
// rebuilt so the vertex order stays counterclockwise and canonical.
Vec2 transform_rotation_data(const Vec2& rho, const UnimodularMatrix& m);
std::vector<Vec2> transform_rotation_data(std::span<const Vec2> cloud, const UnimodularMatrix& m);
ConvexPolygon transform_rotation_data(const ConvexPolygon& hull, const UnimodularMatrix& m);

// Direction/line data transform: v -> M^t v (then renormalized), with the
// line offset rescaled so that z on the old line iff M^{-1} z on the new
// one. Cone slopes are carried over unchanged; they are expressed in the
// frame of v and have no canonical image under a general M.
DirectionalFrame line_frame_transform(const DirectionalFrame& frame, const UnimodularMatrix& m);

// Affine map z -> L z + shift with integer linear part of determinant +-1.
// Conjugating by such a map sends lifts of torus maps to lifts again.
struct AffineSymmetry {
    long l11 = 1, l12 = 0;
    long l21 = 0, l22 = 1;
    Vec2 shift{0.0, 0.0};
    std::string name = "identity";

    AffineSymmetry() = default;
    AffineSymmetry(long l11_, long l12_, long l21_, long l22_, const Vec2& shift_,
                   std::string name_);

    // (x, y) -> (-y, x): quarter turn about the origin.
    static AffineSymmetry quarter_turn();
    // (x, y) -> (-x, -y): point reflection about the origin.
    static AffineSymmetry point_reflection();
    // (x, y) -> (x + 1/2, -y + 1/2): half shift combined with a vertical flip.
    static AffineSymmetry shift_flip();

    long det() const { return l11 * l22 - l12 * l21; }
    Vec2 apply(const Vec2& z) const;
    Vec2 apply_inverse(const Vec2& z) const;
};

enum class ConjugacyTarget { Self, Inverse };

// Largest torus distance between sym^{-1}(F(sym(z))) and the target map's
// image of z over seeded sample points. A held symmetry scores at noise
// level (<= 1e-9 comfortably); a broken one scores at the size of the
// defect. Target Inverse requires an invertible F.
double check_conjugacy(const LiftMap& f, const AffineSymmetry& sym, ConjugacyTarget target,
                       int samples = 1000, std::uint64_t seed = kDefaultSeed);

}  // namespace torusrot
