// Release gate: eleven checks, one printed line each, exit status = number
// of failures. Checks 1-8 run twice (1 and 4 workers) so the determinism
// check can compare their serialized outputs byte for byte.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "torusrot/classify.hpp"
#include "torusrot/engine.hpp"
#include "torusrot/geometry.hpp"
#include "torusrot/io.hpp"
#include "torusrot/lattice.hpp"
#include "torusrot/lift.hpp"
#include "torusrot/rng.hpp"
#include "torusrot/rotation.hpp"

namespace {

using namespace torusrot;
using Clock = std::chrono::steady_clock;

std::string fmt(const char* f, ...) {
    va_list args;
    va_start(args, f);
    char buf[512];
    std::vsnprintf(buf, sizeof buf, f, args);
    va_end(args);
    return buf;
}

double secs(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Run {
    bool pass = false;
    std::string detail;
    std::string bytes;
};

int failures = 0;

void report(int number, const char* name, const Run& r) {
    std::printf("[%s] criterion %2d: %s (%s)\n", r.pass ? "PASS" : "FAIL", number, name,
                r.detail.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failures;
}

// 1: the four period-2 orbits with axis-aligned displacement vectors sit
// exactly on the half-integer axes.
Run run_axis_periodic(int threads) {
    const auto t0 = Clock::now();
    const LiftMap f = LiftMap::mz(0.5, 0.5);
    const GridSpec grid{128, 128, {0.0, 0.0}};
    struct Case {
        long wx, wy;
        Vec2 expect;
    };
    const Case cases[] = {
        {0, 1, {0.25, 0.0}},
        {1, 0, {0.0, 0.25}},
        {0, -1, {0.75, 0.0}},
        {-1, 0, {0.0, 0.75}},
    };
    Run r;
    double worst = 0.0;
    bool found_all = true;
    for (const Case& c : cases) {
        const PeriodicSearchReport rep = find_periodic_points(f, 2, c.wx, c.wy, grid, 50, threads);
        double best = 1e9;
        for (const PeriodicPoint& p : rep.points) best = std::min(best, torus_distance(p.z, c.expect));
        worst = std::max(worst, best);
        found_all = found_all && best <= 1e-10;
        r.bytes += fmt("# period=2 w=(%ld,%ld)\n", c.wx, c.wy);
        r.bytes += io::periodic_csv(rep);
    }
    const double dt = secs(t0);
    r.pass = found_all && dt < 5.0;
    r.detail = fmt("worst point error %.3g, %.2f s", worst, dt);
    return r;
}

// 2: period 2 with zero displacement is degenerate (the Jacobian of the
// return map is singular at every root); the quarter-lattice centers must
// still come back exactly, through the derivative-free fallback.
Run run_degenerate_periodic(int threads) {
    const auto t0 = Clock::now();
    const LiftMap f = LiftMap::mz(0.5, 0.5);
    const GridSpec grid{128, 128, {0.0, 0.0}};
    const PeriodicSearchReport rep = find_periodic_points(f, 2, 0, 0, grid, 50, threads);
    Run r;
    r.bytes = "# period=2 w=(0,0)\n" + io::periodic_csv(rep);
    double worst = 0.0;
    int fallback_hits = 0;
    bool found_all = true;
    for (double cx : {0.25, 0.75})
        for (double cy : {0.25, 0.75}) {
            const Vec2 expect{cx, cy};
            double best = 1e9;
            bool via_fallback = false;
            for (const PeriodicPoint& p : rep.points) {
                const double d = torus_distance(p.z, expect);
                if (d < best) {
                    best = d;
                    via_fallback = p.via_fallback;
                }
            }
            worst = std::max(worst, best);
            found_all = found_all && best <= 1e-10;
            if (via_fallback) ++fallback_hits;
        }
    const double dt = secs(t0);
    r.pass = found_all && fallback_hits > 0 && dt < 5.0;
    r.detail = fmt("worst center error %.3g, fallback on %d/4, %.2f s", worst, fallback_hits, dt);
    return r;
}

ConvexPolygon diamond(double radius) {
    return ConvexPolygon{{{radius, 0.0}, {0.0, radius}, {-radius, 0.0}, {0.0, -radius}}};
}

// 3: the estimated rotation set of the flagship map covers the diamond
// |x| + |y| <= 0.48, allowing the estimate to fall short by up to 0.02.
Run run_rotation_coverage(int threads) {
    const auto t0 = Clock::now();
    const LiftMap f = LiftMap::mz(0.5, 0.5);
    RotationOptions opts;
    opts.threads = threads;
    const RotationSetEstimate est = estimate_rotation_set(f, {200, 200, {0.0, 0.0}}, 2000, 0, opts);
    Run r;
    r.bytes = io::to_json(est).dump(2);
    const bool covered = contains(est.hull, diamond(0.48), 0.02);
    const double dt = secs(t0);
    r.pass = covered && dt < 60.0;
    r.detail = fmt("hull area %.4f, %zu vertices, diamond %scovered, %.1f s", hull_area(est.hull),
                   est.hull.size(), covered ? "" : "NOT ", dt);
    return r;
}

// 4: estimating the conjugated lift directly agrees with transforming the
// plain estimate.
Run run_conjugated_estimate(int threads) {
    const auto t0 = Clock::now();
    const LiftMap f = LiftMap::mz(0.5, 0.5);
    const UnimodularMatrix m{1, 1, 0, 1};
    RotationOptions opts;
    opts.threads = threads;
    const GridSpec grid{200, 200, {0.0, 0.0}};
    const RotationSetEstimate direct = estimate_rotation_set(conjugate_lift(f, m), grid, 2000, 0, opts);
    const RotationSetEstimate plain = estimate_rotation_set(f, grid, 2000, 0, opts);
    const ConvexPolygon mapped = transform_rotation_data(plain.hull, m);
    const double gap = polygon_hausdorff(direct.hull, mapped);
    Run r;
    io::json j;
    j["conjugated"] = io::to_json(direct.hull);
    j["transformed"] = io::to_json(mapped);
    j["hausdorff"] = io::format_double(gap);
    r.bytes = j.dump(2);
    const double dt = secs(t0);
    r.pass = gap <= 0.02;
    r.detail = fmt("Hausdorff gap %.4f, %.1f s", gap, dt);
    return r;
}

// 5: the quarter turn conjugates the symmetric map to its inverse, the
// point reflection and the shifted flip commute with the asymmetric map,
// and the quarter turn visibly fails for the asymmetric map.
Run run_symmetries(int) {
    const auto t0 = Clock::now();
    const LiftMap sym = LiftMap::mz(0.5, 0.5);
    const LiftMap asym = LiftMap::mz(0.5, 0.502);
    const double e_r = check_conjugacy(sym, AffineSymmetry::quarter_turn(), ConjugacyTarget::Inverse);
    const double e_s = check_conjugacy(asym, AffineSymmetry::point_reflection(), ConjugacyTarget::Self);
    const double e_t = check_conjugacy(asym, AffineSymmetry::shift_flip(), ConjugacyTarget::Self);
    const double e_bad = check_conjugacy(asym, AffineSymmetry::quarter_turn(), ConjugacyTarget::Inverse);
    Run r;
    io::json j;
    j["quarter_turn_inverse_symmetric"] = io::format_double(e_r);
    j["point_reflection_self"] = io::format_double(e_s);
    j["shift_flip_self"] = io::format_double(e_t);
    j["quarter_turn_inverse_asymmetric"] = io::format_double(e_bad);
    r.bytes = j.dump(2);
    const double dt = secs(t0);
    r.pass = e_r <= 1e-9 && e_s <= 1e-9 && e_t <= 1e-9 && e_bad > 1e-3 && dt < 5.0;
    r.detail = fmt("held %.2g/%.2g/%.2g, broken %.2g, %.2f s", e_r, e_s, e_t, e_bad, dt);
    return r;
}

// 6: the island around (1/4, 1/4) labels elliptic with witness (0, 0) and
// a tiny hull; a chaotic-sea disk labels chaotic with hull area above 0.01,
// stable within a factor of 2 when sampling is quadrupled. The sea cloud
// thins out roughly like 1/n, so its schedule uses short windows where the
// area signal lives; the island schedule keeps the long windows that pin
// the witness down.
Run run_dichotomy(int threads) {
    const auto t0 = Clock::now();
    const LiftMap f = LiftMap::mz(0.5, 0.5);
    RotationOptions opts;
    opts.threads = threads;

    const std::vector<long> island_schedule{1250, 2500, 5000};
    const ClassificationLabel island =
        dichotomy_classify(f, Disk{{0.25, 0.25}, 0.03}, island_schedule, 0.01, opts);

    const std::vector<long> sea_schedule{150, 300};
    const ClassificationLabel sea =
        dichotomy_classify(f, Disk{{0.1, 0.6}, 0.03}, sea_schedule, 0.01, opts);
    RotationOptions dense = opts;
    dense.samples = 4 * opts.samples;
    const ClassificationLabel sea4 =
        dichotomy_classify(f, Disk{{0.1, 0.6}, 0.03}, sea_schedule, 0.01, dense);

    Run r;
    io::json j;
    j["island"] = io::to_json(island);
    j["sea"] = io::to_json(sea);
    j["sea_oversampled"] = io::to_json(sea4);
    r.bytes = j.dump(2);

    const double witness_err = std::max(std::fabs(island.witness.x), std::fabs(island.witness.y));
    const double ratio = std::max(sea.area, sea4.area) / std::min(sea.area, sea4.area);
    const double dt = secs(t0);
    r.pass = island.kind == ClassificationLabel::Kind::Elliptic && witness_err <= 1e-6 &&
             island.diameter < 0.05 && sea.kind == ClassificationLabel::Kind::Chaotic &&
             sea.area > 0.01 && sea4.kind == ClassificationLabel::Kind::Chaotic &&
             sea4.area > 0.01 && ratio <= 2.0 && dt < 120.0;
    r.detail = fmt("island %s d=%.2g, sea %s area %.4f/%.4f (x%.2f), %.1f s",
                   to_string(island.kind), island.diameter, to_string(sea.kind), sea.area,
                   sea4.area, ratio, dt);
    return r;
}

// 7: a chaotic-sea point fails the finite-orbit stability probe at
// delta = 1e-4 while a rigid translation passes at every delta up to and
// including epsilon itself.
Run run_stability(int threads) {
    const auto t0 = Clock::now();
    const LiftMap f = LiftMap::mz(0.5, 0.5);
    const std::vector<double> tight{1e-4};
    const StabilityReport unstable = lyapunov_probe(f, {0.1, 0.6}, 0.5, tight, 100000, 16,
                                                    kDefaultSeed, threads);
    const LiftMap t = LiftMap::translation({0.3, 0.7});
    const std::vector<double> ladder{1e-4, 1e-3, 1e-2, 1e-1, 0.5};
    const StabilityReport stable = lyapunov_probe(t, {0.1, 0.6}, 0.5, ladder, 100000, 16,
                                                  kDefaultSeed, threads);
    Run r;
    io::json j;
    j["sea_point"] = io::to_json(unstable);
    j["translation"] = io::to_json(stable);
    r.bytes = j.dump(2);
    const StabilityOutcome& o = unstable.outcomes.at(0);
    const bool escaped = o.verdict == StabilityOutcome::Verdict::InstabilityWitness &&
                         o.separation >= 0.5;
    const double dt = secs(t0);
    r.pass = escaped && stable.all_stable();
    r.detail = fmt("escape at n=%ld sep %.3f, translation %s, %.1f s", o.escape_n, o.separation,
                   stable.all_stable() ? "stable throughout" : "NOT stable", dt);
    return r;
}

// 8: the chaotic sea spreads linearly across the vertical direction while
// a rigid translation stays flat.
Run run_spreading(int threads) {
    const auto t0 = Clock::now();
    const LiftMap f = LiftMap::mz(0.5, 0.5);
    const std::vector<long> ns{250, 500, 750, 1000, 1250, 1500, 1750, 2000};
    const SpreadingFit sea = spreading_slope(f, Disk{{0.1, 0.6}, 0.03}, {1.0, 0.0}, ns, 64,
                                             kDefaultSeed, threads);
    const LiftMap t = LiftMap::translation({0.3, 0.7});
    const SpreadingFit flat = spreading_slope(t, Disk{{0.1, 0.6}, 0.03}, {1.0, 0.0}, ns, 64,
                                              kDefaultSeed, threads);
    Run r;
    io::json j;
    j["sea"] = io::to_json(sea);
    j["translation"] = io::to_json(flat);
    r.bytes = j.dump(2);
    const double dt = secs(t0);
    r.pass = sea.slope > 0.01 && sea.relative_residual < 0.20 && std::fabs(flat.slope) < 1e-6;
    r.detail = fmt("sea slope %.4f (res %.1f%%), translation slope %.2g, %.2f s", sea.slope,
                   100.0 * sea.relative_residual, flat.slope, dt);
    return r;
}

// 9: projecting the deviation onto v commutes with conjugation when the
// point, the rotation vector, and the direction are carried along
// (M^{-1} on points and rotation vectors, M^t on directions, before any
// normalization).
Run run_equivariance() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        CounterRng rng(0x45515649ull, {std::uint64_t(i)});
        const long sa = long(rng.next_u64() % 5) - 2;
        const long sb = long(rng.next_u64() % 5) - 2;
        UnimodularMatrix m{1 + sa * sb, sa, sb, 1};
        if (rng.next_u64() & 1) m = m.transpose();
        const Vec2 z{rng.next_double(), rng.next_double()};
        const Vec2 rho{2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0};
        const long n = 1 + long(rng.next_u64() % 100);
        Vec2 v{2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0};
        if (std::hypot(v.x, v.y) < 0.1) v = {1.0, 0.5};
        // Alternate rigid translations with weakly nonlinear members of the
        // flagship family. Strong nonlinearity would amplify the rounding
        // gap between the two orbits exponentially and test nothing about
        // the identity itself.
        const LiftMap f = (i % 2 == 0)
                              ? LiftMap::translation({rng.next_double(), rng.next_double()})
                              : LiftMap::mz(0.1 * rng.next_double(), 0.1 * rng.next_double());
        const LiftMap g = conjugate_lift(f, m);
        const UnimodularMatrix minv = m.inverse();
        const double lhs = deviation_along(f, z, rho, n, v);
        const double rhs =
            deviation_along(g, minv.apply(z), minv.apply(rho), n, m.transpose().apply(v));
        worst = std::max(worst, std::fabs(lhs - rhs));
    }
    Run r;
    r.pass = worst <= 1e-8;
    r.detail = fmt("worst gap %.3g over 1000 instances, %.2f s", worst, secs(t0));
    return r;
}

// Gift wrapping, written independently of the production monotone chain.
ConvexPolygon wrap_hull(std::span<const Vec2> pts) {
    std::vector<Vec2> u(pts.begin(), pts.end());
    std::sort(u.begin(), u.end(), [](const Vec2& a, const Vec2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    u.erase(std::unique(u.begin(), u.end(),
                        [](const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }),
            u.end());
    ConvexPolygon out;
    if (u.size() <= 2) {
        out.vertices = u;
        return out;
    }
    const Vec2 start = u.front();
    Vec2 cur = start;
    do {
        out.vertices.push_back(cur);
        Vec2 next = u[0].x == cur.x && u[0].y == cur.y ? u[1] : u[0];
        for (const Vec2& cand : u) {
            if (cand.x == cur.x && cand.y == cur.y) continue;
            const double cr = (next.x - cur.x) * (cand.y - cur.y) - (next.y - cur.y) * (cand.x - cur.x);
            const double d_next = std::hypot(next.x - cur.x, next.y - cur.y);
            const double d_cand = std::hypot(cand.x - cur.x, cand.y - cur.y);
            if (cr < 0.0 || (cr == 0.0 && d_cand > d_next)) next = cand;
        }
        cur = next;
    } while (!(cur.x == start.x && cur.y == start.y) && out.vertices.size() <= u.size());
    return out;
}

bool same_cycle(const ConvexPolygon& a, const ConvexPolygon& b, double tol) {
    if (a.size() != b.size()) return false;
    const std::size_t n = a.size();
    if (n == 0) return true;
    for (std::size_t shift = 0; shift < n; ++shift) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            const Vec2& p = a.vertices[i];
            const Vec2& q = b.vertices[(i + shift) % n];
            ok = std::fabs(p.x - q.x) <= tol && std::fabs(p.y - q.y) <= tol;
        }
        if (ok) return true;
    }
    return false;
}

// 10: hulls, Hausdorff distances, and deviations agree with directly coded
// brute-force versions on seeded random inputs.
Run run_oracles() {
    const auto t0 = Clock::now();
    int hull_bad = 0;
    double worst_hd = 0.0, worst_dev = 0.0;
    for (int i = 0; i < 100; ++i) {
        CounterRng rng(0x4F52414Cull, {std::uint64_t(i)});

        std::vector<Vec2> cloud(8 + rng.next_u64() % 72);
        const bool on_circle = i % 10 == 9;
        for (Vec2& p : cloud) {
            if (on_circle) {
                const double a = 2.0 * std::numbers::pi * rng.next_double();
                p = {std::cos(a), std::sin(a)};
            } else {
                p = {2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0};
            }
        }
        if (!same_cycle(convex_hull(cloud), wrap_hull(cloud), 1e-12)) ++hull_bad;

        std::vector<Vec2> a(5 + rng.next_u64() % 56), b(5 + rng.next_u64() % 56);
        for (Vec2& p : a) p = {4.0 * rng.next_double() - 2.0, 4.0 * rng.next_double() - 2.0};
        for (Vec2& p : b) p = {4.0 * rng.next_double() - 2.0, 4.0 * rng.next_double() - 2.0};
        double d_ab = 0.0, d_ba = 0.0;
        for (const Vec2& p : a) {
            double best = 1e300;
            for (const Vec2& q : b) best = std::min(best, distance(p, q));
            d_ab = std::max(d_ab, best);
        }
        for (const Vec2& q : b) {
            double best = 1e300;
            for (const Vec2& p : a) best = std::min(best, distance(p, q));
            d_ba = std::max(d_ba, best);
        }
        worst_hd = std::max(worst_hd, std::fabs(hausdorff_distance(a, b) - std::max(d_ab, d_ba)));

        const LiftMap f = LiftMap::mz(rng.next_double(), rng.next_double());
        const Vec2 z{rng.next_double(), rng.next_double()};
        const Vec2 rho{2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0};
        const long n = 1 + long(rng.next_u64() % 100);
        Vec2 w = z;
        for (long k = 0; k < n; ++k) w = f(w);
        const Vec2 direct{w.x - z.x - double(n) * rho.x, w.y - z.y - double(n) * rho.y};
        const Vec2 dev = deviation(f, z, rho, n);
        worst_dev = std::max({worst_dev, std::fabs(dev.x - direct.x), std::fabs(dev.y - direct.y)});
    }
    Run r;
    r.pass = hull_bad == 0 && worst_hd <= 1e-12 && worst_dev <= 1e-9;
    r.detail = fmt("hull mismatches %d, Hausdorff gap %.3g, deviation gap %.3g, %.2f s", hull_bad,
                   worst_hd, worst_dev, secs(t0));
    return r;
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        Run (*fn)(int);
    };
    const Entry checks[] = {
        {"axis periodic points", run_axis_periodic},
        {"degenerate periodic centers", run_degenerate_periodic},
        {"rotation set coverage", run_rotation_coverage},
        {"conjugated estimate transform", run_conjugated_estimate},
        {"symmetry conjugacies", run_symmetries},
        {"disk dichotomy labels", run_dichotomy},
        {"stability probe", run_stability},
        {"spreading slope", run_spreading},
    };

    Run first[8];
    for (int i = 0; i < 8; ++i) {
        first[i] = checks[i].fn(1);
        report(i + 1, checks[i].name, first[i]);
    }
    report(9, "deviation equivariance", run_equivariance());
    report(10, "brute-force oracles", run_oracles());

    Run det;
    det.pass = true;
    std::string mismatched;
    for (int i = 0; i < 8; ++i) {
        const Run again = checks[i].fn(4);
        if (again.bytes != first[i].bytes) {
            det.pass = false;
            mismatched += fmt("%s%d", mismatched.empty() ? "" : ",", i + 1);
        }
    }
    det.detail = det.pass ? "checks 1-8 byte-identical across 1 and 4 workers"
                          : fmt("byte mismatch in checks {%s}", mismatched.c_str());
    report(11, "thread determinism", det);

    if (failures == 0) std::printf("all criteria passed\n");
    return failures;
}
