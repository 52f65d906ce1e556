#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <string>
#include <utility>

#include "torusrot/errors.hpp"
#include "torusrot/rng.hpp"
#include "torusrot/vec2.hpp"

namespace torusrot {

// Two-parameter standard-like family on the torus, lifted to the plane:
//   F(x, y) = (x + beta*sin(2*pi*(y + alpha*sin(2*pi*x))), y + alpha*sin(2*pi*x)).
// The inner shear moves y first, the outer shear then moves x, so the map
// factors into two commuting-with-translations steps and is invertible in
// closed form. It is area preserving for every (alpha, beta).
inline Vec2 eval_mz(double alpha, double beta, const Vec2& z) {
    const double two_pi = 2.0 * std::numbers::pi;
    const double y1 = z.y + alpha * std::sin(two_pi * z.x);
    const double x1 = z.x + beta * std::sin(two_pi * y1);
    return {x1, y1};
}

// Exact inverse: undo the outer shear, then the inner one.
inline Vec2 eval_mz_inverse(double alpha, double beta, const Vec2& z) {
    const double two_pi = 2.0 * std::numbers::pi;
    const double x0 = z.x - beta * std::sin(two_pi * z.y);
    const double y0 = z.y - alpha * std::sin(two_pi * x0);
    return {x0, y0};
}

// Lift of a torus homeomorphism homotopic to the identity: a plane map F
// with F(z + w) = F(z) + w for all integer w. Value type; copies share
// immutable internals and are safe to use from many threads at once.
class LiftMap {
public:
    LiftMap() : kind_(Kind::Translation) {}

    static LiftMap mz(double alpha, double beta);
    static LiftMap translation(const Vec2& rho);

    // Arbitrary user map. `inv` may be empty when no inverse is available.
    static LiftMap custom(std::string description,
                          std::function<Vec2(const Vec2&)> fwd,
                          std::function<Vec2(const Vec2&)> inv = {});

    // z -> Minv * F(M * z), matrices row-major. Used by the lattice module;
    // callers are responsible for passing a matrix pair that are exact
    // integer inverses of each other.
    static LiftMap conjugated(LiftMap inner, const double m[4], const double minv[4],
                              std::string description);

    Vec2 operator()(const Vec2& z) const {
        switch (kind_) {
            case Kind::Mz: return eval_mz(alpha_, beta_, z);
            case Kind::Translation: return z + delta_;
            case Kind::Conjugated: return conj_eval(z, false);
            case Kind::Custom: return custom_->fwd(z);
        }
        return z;
    }

    // Throws ConfigError when has_inverse() is false.
    Vec2 inverse(const Vec2& z) const;

    bool has_inverse() const;
    const std::string& description() const { return description_; }

private:
    enum class Kind { Mz, Translation, Conjugated, Custom };

    struct CustomCore {
        std::function<Vec2(const Vec2&)> fwd;
        std::function<Vec2(const Vec2&)> inv;
    };
    // Holds the inner map plus the row-major matrix pair; needs a complete
    // LiftMap, so it lives in the implementation file.
    struct ConjugatedCore;

    Vec2 conj_eval(const Vec2& z, bool backward) const;

    Kind kind_;
    double alpha_ = 0.0;
    double beta_ = 0.0;
    Vec2 delta_{0.0, 0.0};
    std::shared_ptr<const CustomCore> custom_;
    std::shared_ptr<const ConjugatedCore> conj_;
    std::string description_ = "translation(0,0)";
};

// Largest violation of F(z + w) = F(z) + w over `samples` seeded points in
// [0,1)^2 and all nonzero integer offsets w in {-1,0,1}^2. A genuine lift
// of a torus map scores at machine-noise level; anything above `tol` in
// validation paths is a hard rejection.
double translate_commutation_check(const LiftMap& f, int samples = 1000,
                                   std::uint64_t seed = kDefaultSeed);

}  // namespace torusrot
