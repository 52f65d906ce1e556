#include "torusrot/lift.hpp"

#include <algorithm>
#include <cstdio>

namespace torusrot {

struct LiftMap::ConjugatedCore {
    LiftMap inner;
    double m[4];
    double minv[4];
};

namespace {

std::string format_params(double alpha, double beta) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "mz(alpha=%.17g,beta=%.17g)", alpha, beta);
    return buf;
}

}  // namespace

LiftMap LiftMap::mz(double alpha, double beta) {
    LiftMap f;
    f.kind_ = Kind::Mz;
    f.alpha_ = alpha;
    f.beta_ = beta;
    f.description_ = format_params(alpha, beta);
    return f;
}

LiftMap LiftMap::translation(const Vec2& rho) {
    LiftMap f;
    f.kind_ = Kind::Translation;
    f.delta_ = rho;
    char buf[96];
    std::snprintf(buf, sizeof buf, "translation(%.17g,%.17g)", rho.x, rho.y);
    f.description_ = buf;
    return f;
}

LiftMap LiftMap::custom(std::string description, std::function<Vec2(const Vec2&)> fwd,
                        std::function<Vec2(const Vec2&)> inv) {
    if (!fwd) throw ConfigError("custom lift requires a forward map");
    LiftMap f;
    f.kind_ = Kind::Custom;
    f.custom_ = std::make_shared<CustomCore>(CustomCore{std::move(fwd), std::move(inv)});
    f.description_ = std::move(description);
    return f;
}

LiftMap LiftMap::conjugated(LiftMap inner, const double m[4], const double minv[4],
                            std::string description) {
    LiftMap f;
    f.kind_ = Kind::Conjugated;
    ConjugatedCore core{std::move(inner), {}, {}};
    std::copy(m, m + 4, core.m);
    std::copy(minv, minv + 4, core.minv);
    f.conj_ = std::make_shared<ConjugatedCore>(std::move(core));
    f.description_ = std::move(description);
    return f;
}

Vec2 LiftMap::conj_eval(const Vec2& z, bool backward) const {
    const ConjugatedCore& c = *conj_;
    const Vec2 w{c.m[0] * z.x + c.m[1] * z.y, c.m[2] * z.x + c.m[3] * z.y};
    const Vec2 u = backward ? c.inner.inverse(w) : c.inner(w);
    return {c.minv[0] * u.x + c.minv[1] * u.y, c.minv[2] * u.x + c.minv[3] * u.y};
}

Vec2 LiftMap::inverse(const Vec2& z) const {
    switch (kind_) {
        case Kind::Mz: return eval_mz_inverse(alpha_, beta_, z);
        case Kind::Translation: return z - delta_;
        case Kind::Conjugated: return conj_eval(z, true);
        case Kind::Custom:
            if (!custom_->inv) throw ConfigError("map has no inverse: " + description_);
            return custom_->inv(z);
    }
    return z;
}

bool LiftMap::has_inverse() const {
    switch (kind_) {
        case Kind::Mz:
        case Kind::Translation: return true;
        case Kind::Conjugated: return conj_->inner.has_inverse();
        case Kind::Custom: return bool(custom_->inv);
    }
    return false;
}

double translate_commutation_check(const LiftMap& f, int samples, std::uint64_t seed) {
    CounterRng rng(seed, {0x434F4D4Dull});
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        CounterRng point_rng = rng.split(std::uint64_t(i));
        const Vec2 z{point_rng.next_double(), point_rng.next_double()};
        const Vec2 fz = f(z);
        for (int m = -1; m <= 1; ++m) {
            for (int k = -1; k <= 1; ++k) {
                if (m == 0 && k == 0) continue;
                const Vec2 w{double(m), double(k)};
                const Vec2 shifted = f(z + w);
                worst = std::max(worst, norm(shifted - fz - w));
            }
        }
    }
    return worst;
}

}  // namespace torusrot
