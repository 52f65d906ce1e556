#include "torusrot/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "torusrot/errors.hpp"
#include "torusrot/rng.hpp"

namespace torusrot {

UnimodularMatrix::UnimodularMatrix(long a_, long b_, long c_, long d_)
    : a(a_), b(b_), c(c_), d(d_) {
    if (det() != 1)
        throw ConfigError("matrix " + to_string() + " is not unimodular (det != 1)");
}

UnimodularMatrix UnimodularMatrix::operator*(const UnimodularMatrix& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

std::string UnimodularMatrix::to_string() const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "[[%ld,%ld],[%ld,%ld]]", a, b, c, d);
    return buf;
}

UnimodularMatrix complete_to_unimodular(long w1, long w2) {
    if (w1 == 0 && w2 == 0) throw ConfigError("cannot complete the zero vector");
    if (std::gcd(w1, w2) != 1)
        throw ConfigError("vector (" + std::to_string(w1) + "," + std::to_string(w2) +
                          ") has gcd != 1");

    // Extended Euclid: u*w1 + v*w2 = 1.
    long old_r = w1, r = w2;
    long old_u = 1, u = 0;
    long old_v = 0, v = 1;
    while (r != 0) {
        const long q = old_r / r;
        long tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_u - q * u; old_u = u; u = tmp;
        tmp = old_v - q * v; old_v = v; v = tmp;
    }
    if (old_r < 0) { old_u = -old_u; old_v = -old_v; }

    // The cofactor pair is unique modulo (w2, -w1); pin 0 <= u < |w2|.
    if (w2 != 0) {
        const long mod = w2 < 0 ? -w2 : w2;
        long shift = old_u % mod;
        if (shift < 0) shift += mod;
        const long k = (shift - old_u) / mod * (w2 > 0 ? 1 : -1);
        old_u += k * w2;
        old_v -= k * w1;
    }

    // Columns (w, t) with t = (-v, u): det = w1*u + w2*v = 1.
    return {w1, -old_v, w2, old_u};
}

LiftMap conjugate_lift(const LiftMap& f, const UnimodularMatrix& m) {
    const UnimodularMatrix mi = m.inverse();
    const double fwd[4] = {double(m.a), double(m.b), double(m.c), double(m.d)};
    const double back[4] = {double(mi.a), double(mi.b), double(mi.c), double(mi.d)};
    return LiftMap::conjugated(f, fwd, back,
                               "conj(" + f.description() + ", M=" + m.to_string() + ")");
}

Vec2 transform_rotation_data(const Vec2& rho, const UnimodularMatrix& m) {
    return m.inverse().apply(rho);
}

std::vector<Vec2> transform_rotation_data(std::span<const Vec2> cloud,
                                          const UnimodularMatrix& m) {
    const UnimodularMatrix mi = m.inverse();
    std::vector<Vec2> out;
    out.reserve(cloud.size());
    for (const Vec2& p : cloud) out.push_back(mi.apply(p));
    return out;
}

ConvexPolygon transform_rotation_data(const ConvexPolygon& hull, const UnimodularMatrix& m) {
    const std::vector<Vec2> moved = transform_rotation_data(std::span(hull.vertices), m);
    return convex_hull(moved);
}

DirectionalFrame line_frame_transform(const DirectionalFrame& frame, const UnimodularMatrix& m) {
    const Vec2 vt = m.transpose().apply(frame.v);
    const double len = norm(vt);
    if (len == 0.0) throw ConfigError("transformed direction collapsed to zero");
    // With unit input v, the raw transform is (vt, lambda/|vt|^2); rescaling
    // vt to unit length scales the offset by |vt|.
    DirectionalFrame out;
    out.v = vt / len;
    out.lambda = frame.lambda / len;
    out.a = frame.a;
    out.b = frame.b;
    return out;
}

AffineSymmetry::AffineSymmetry(long l11_, long l12_, long l21_, long l22_, const Vec2& shift_,
                               std::string name_)
    : l11(l11_), l12(l12_), l21(l21_), l22(l22_), shift(shift_), name(std::move(name_)) {
    if (det() != 1 && det() != -1)
        throw ConfigError("affine symmetry requires an integer linear part with det +-1");
}

AffineSymmetry AffineSymmetry::quarter_turn() {
    return {0, -1, 1, 0, Vec2{0.0, 0.0}, "quarter_turn"};
}

AffineSymmetry AffineSymmetry::point_reflection() {
    return {-1, 0, 0, -1, Vec2{0.0, 0.0}, "point_reflection"};
}

AffineSymmetry AffineSymmetry::shift_flip() {
    return {1, 0, 0, -1, Vec2{0.5, 0.5}, "shift_flip"};
}

Vec2 AffineSymmetry::apply(const Vec2& z) const {
    return {double(l11) * z.x + double(l12) * z.y + shift.x,
            double(l21) * z.x + double(l22) * z.y + shift.y};
}

Vec2 AffineSymmetry::apply_inverse(const Vec2& z) const {
    const Vec2 w = z - shift;
    const double dt = double(det());
    return {(double(l22) * w.x - double(l12) * w.y) / dt,
            (-double(l21) * w.x + double(l11) * w.y) / dt};
}

double check_conjugacy(const LiftMap& f, const AffineSymmetry& sym, ConjugacyTarget target,
                       int samples, std::uint64_t seed) {
    if (target == ConjugacyTarget::Inverse && !f.has_inverse())
        throw ConfigError("conjugacy target 'inverse' needs an invertible map");

    CounterRng rng(seed, {0x53594D4Dull});
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        CounterRng point_rng = rng.split(std::uint64_t(i));
        const Vec2 z{point_rng.next_double(), point_rng.next_double()};
        const Vec2 lhs = sym.apply_inverse(f(sym.apply(z)));
        const Vec2 rhs = target == ConjugacyTarget::Self ? f(z) : f.inverse(z);
        worst = std::max(worst, torus_distance(lhs, rhs));
    }
    return worst;
}

}  // namespace torusrot
