#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "torusrot/errors.hpp"
#include "torusrot/rotation.hpp"

using namespace torusrot;

namespace {

const double kSqrt2m1 = std::sqrt(2.0) - 1.0;         // [0; 2, 2, 2, ...]
const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;  // [0; 1, 1, 1, ...]

ConvexPolygon point_hull(Vec2 w) { return convex_hull(std::vector<Vec2>{w}); }

}  // namespace

TEST_CASE("rational_approx walks continued-fraction convergents") {
    auto check = [](double x, long p, long q) {
        const RationalApprox r = rational_approx(x);
        CHECK(r.found);
        CHECK(r.p == p);
        CHECK(r.q == q);
    };
    check(0.5, 1, 2);
    check(0.25, 1, 4);
    check(1.0 / 3.0, 1, 3);
    check(-0.75, -3, 4);
    check(3.0, 3, 1);
    check(0.0, 0, 1);
    check(0.5 + 5e-5, 1, 2);  // inside the acceptance tolerance
    check(1.0 / 64.0, 1, 64); // denominator cap is inclusive

    CHECK_FALSE(rational_approx(1.0 / 65.0).found);
    CHECK_FALSE(rational_approx(std::numeric_limits<double>::quiet_NaN()).found);

    // sqrt(2)-1 has convergents 1/2, 2/5, 5/12, 12/29, 29/70. The last one
    // inside q <= 64 misses by 4.2e-4, so the default tolerance rejects it.
    CHECK_FALSE(rational_approx(kSqrt2m1).found);
    const RationalApprox loose = rational_approx(kSqrt2m1, 64, 5e-4);
    CHECK(loose.found);
    CHECK(loose.p == 12);
    CHECK(loose.q == 29);
    const RationalApprox deep = rational_approx(kSqrt2m1, 70, 1e-4);
    CHECK(deep.found);
    CHECK(deep.p == 29);
    CHECK(deep.q == 70);

    // The golden mean's best fraction under q <= 64 is 34/55, off by 1.5e-4.
    CHECK_FALSE(rational_approx(kGolden).found);
}

TEST_CASE("detect_structure sorts hulls into the taxonomy") {
    CHECK(detect_structure(ConvexPolygon{}).kind == StructureKind::Empty);

    const StructureVerdict rat = detect_structure(point_hull({0.5, 0.25}));
    CHECK(rat.kind == StructureKind::SingletonRational);
    CHECK(rat.px.p == 1);
    CHECK(rat.px.q == 2);
    CHECK(rat.py.p == 1);
    CHECK(rat.py.q == 4);
    CHECK(rat.witness.x == 0.5);
    CHECK(rat.witness.y == 0.25);

    // The witness snaps to the fraction, not the noisy centroid.
    const StructureVerdict snap = detect_structure(point_hull({0.5 + 3e-5, 0.25 - 2e-5}));
    CHECK(snap.kind == StructureKind::SingletonRational);
    CHECK(snap.witness.x == 0.5);
    CHECK(snap.witness.y == 0.25);

    const StructureVerdict semi = detect_structure(point_hull({kSqrt2m1, 0.5}));
    CHECK(semi.kind == StructureKind::SingletonSemiRational);
    CHECK_FALSE(semi.px.found);
    CHECK(semi.py.found);

    // sqrt(3)-1 happens to sit within 1e-4 of 41/56, so this pair is only
    // semi-rational even though both entries look irrational at first glance.
    const StructureVerdict close = detect_structure(point_hull({kSqrt2m1, std::sqrt(3.0) - 1.0}));
    CHECK(close.kind == StructureKind::SingletonSemiRational);
    CHECK(close.py.q == 56);

    // Both coordinates fail, but their ratio is exactly 1/2.
    const StructureVerdict ratio = detect_structure(point_hull({kSqrt2m1, 2.0 * kSqrt2m1}));
    CHECK(ratio.kind == StructureKind::SingletonSemiRational);
    CHECK_FALSE(ratio.px.found);
    CHECK_FALSE(ratio.py.found);

    // Coordinates and ratio all miss every admissible fraction.
    const StructureVerdict irr = detect_structure(point_hull({kSqrt2m1, kGolden}));
    CHECK(irr.kind == StructureKind::SingletonIrrational);

    const StructureVerdict seg = detect_structure(convex_hull(std::vector<Vec2>{{0.0, 0.0}, {0.2, 0.2}}));
    CHECK(seg.kind == StructureKind::Segment);
    const bool forward = seg.segment_a == Vec2{0.0, 0.0} && seg.segment_b == Vec2{0.2, 0.2};
    const bool backward = seg.segment_a == Vec2{0.2, 0.2} && seg.segment_b == Vec2{0.0, 0.0};
    CHECK((forward || backward));
    CHECK(seg.diameter == doctest::Approx(0.2 * std::sqrt(2.0)));

    // A sliver triangle still reads as a segment between its extremes.
    const StructureVerdict thin =
        detect_structure(convex_hull(std::vector<Vec2>{{0.0, 0.0}, {0.2, 0.2}, {0.1, 0.1 + 1e-5}}));
    CHECK(thin.kind == StructureKind::Segment);
    CHECK(distance(thin.segment_a, thin.segment_b) == doctest::Approx(0.2 * std::sqrt(2.0)));

    const StructureVerdict fat =
        detect_structure(convex_hull(std::vector<Vec2>{{-0.1, -0.1}, {0.1, -0.1}, {0.1, 0.1}, {-0.1, 0.1}}));
    CHECK(fat.kind == StructureKind::Fat);
    CHECK(fat.area == doctest::Approx(0.04));
    CHECK(fat.witness.x == doctest::Approx(0.0));
    CHECK(fat.witness.y == doctest::Approx(0.0));
}

TEST_CASE("singleton_tol decides what counts as a point") {
    const ConvexPolygon tiny =
        convex_hull(std::vector<Vec2>{{0.0, 0.0}, {1e-4, 0.0}, {1e-4, 1e-4}, {0.0, 1e-4}});
    CHECK(detect_structure(tiny).kind == StructureKind::SingletonRational);

    RotationOptions strict;
    strict.singleton_tol = 1e-5;
    CHECK(detect_structure(tiny, strict).kind == StructureKind::Fat);
}

TEST_CASE("translation estimates collapse to the exact singleton") {
    // Dyadic starts plus a dyadic step keep the arithmetic exact, so every
    // mean displacement is literally the same point.
    const LiftMap f = LiftMap::translation({0.5, 0.25});
    const RotationSetEstimate est = estimate_rotation_set(f, {16, 16, {0.5, 0.5}}, 64);
    REQUIRE(est.hull.vertices.size() == 1);
    CHECK(est.hull.vertices[0] == Vec2{0.5, 0.25});
    CHECK(est.n == 64);
    CHECK(est.burn_in == 0);
    CHECK(est.grid.nx == 16);
    CHECK(est.grid.ny == 16);
    CHECK(est.map_description == f.description());
    CHECK(est.cloud.size() >= 16 * 16);  // refinement may add midpoint starts

    const StructureVerdict v = detect_structure(est.hull);
    CHECK(v.kind == StructureKind::SingletonRational);
    CHECK(v.witness == Vec2{0.5, 0.25});

    // Burn-in changes nothing for a rigid translation.
    const RotationSetEstimate burned = estimate_rotation_set(f, {8, 8, {0.5, 0.5}}, 50, 10);
    CHECK(burned.burn_in == 10);
    REQUIRE(burned.hull.vertices.size() == 1);
    CHECK(burned.hull.vertices[0] == Vec2{0.5, 0.25});
}

TEST_CASE("irrational translations are recognized as such") {
    const LiftMap f = LiftMap::translation({kSqrt2m1, kGolden});
    const RotationSetEstimate est = estimate_rotation_set(f, {8, 8, {0.5, 0.5}}, 128);
    const StructureVerdict v = detect_structure(est.hull);
    CHECK(v.kind == StructureKind::SingletonIrrational);
    CHECK(v.witness.x == doctest::Approx(kSqrt2m1).epsilon(1e-12));
    CHECK(v.witness.y == doctest::Approx(kGolden).epsilon(1e-12));
}

TEST_CASE("island disks stay coherent while straddling disks split") {
    const LiftMap f = LiftMap::mz(0.5, 0.5);
    RotationOptions opts;
    opts.samples = 128;

    // Fully inside the island around (1/4, 1/4): one tight cluster.
    const LocalRotationEstimate inside = local_rotation_subset(f, {{0.25, 0.25}, 0.02}, 1000, opts);
    CHECK(inside.disk.center == Vec2{0.25, 0.25});
    CHECK(inside.disk.radius == 0.02);
    CHECK(inside.n == 1000);
    CHECK(inside.samples == 128);
    CHECK(inside.cloud.size() == 128);
    CHECK_FALSE(inside.cluster_warning);
    CHECK(hull_diameter(inside.hull) < 1e-3);

    // Disks reaching across the island boundary pick up sea orbits too, and
    // the nearest-neighbor gap statistic flags the split cloud.
    for (const double r : {0.1, 0.2}) {
        const LocalRotationEstimate split = local_rotation_subset(f, {{0.25, 0.25}, r}, 1000, opts);
        CHECK(split.cluster_warning);
        CHECK(split.max_gap > 10.0 * split.median_gap);
        CHECK(hull_diameter(split.hull) > 1e-2);
    }
}

TEST_CASE("growing disks grow the estimated subset") {
    const LiftMap f = LiftMap::mz(0.5, 0.5);
    RotationOptions opts;
    opts.samples = 128;

    // Chaotic sea: the small disk's hull sits inside the big disk's hull up
    // to the sampling wiggle of the boundary (about 0.01 here).
    const LocalRotationEstimate sea_small = local_rotation_subset(f, {{0.1, 0.6}, 0.01}, 300, opts);
    const LocalRotationEstimate sea_big = local_rotation_subset(f, {{0.1, 0.6}, 0.05}, 300, opts);
    CHECK(hull_area(sea_big.hull) > hull_area(sea_small.hull));
    CHECK(contains(sea_big.hull, sea_small.hull, 0.02));

    // Elliptic island: both subsets are near-points around the same witness.
    const LocalRotationEstimate isl_small =
        local_rotation_subset(f, {{0.25, 0.25}, 0.005}, 2000, opts);
    const LocalRotationEstimate isl_big =
        local_rotation_subset(f, {{0.25, 0.25}, 0.02}, 2000, opts);
    CHECK(hull_diameter(isl_small.hull) < 1e-4);
    CHECK(hull_diameter(isl_big.hull) < 1e-3);
    CHECK(contains(isl_big.hull, isl_small.hull, 1e-4));
}

TEST_CASE("checkpointed runs share orbits and tighten with n") {
    const LiftMap f = LiftMap::mz(0.5, 0.5);
    RotationOptions opts;
    opts.samples = 128;
    const std::vector<long> ns{250, 500, 1000, 2000};

    const std::vector<LocalRotationEstimate> multi =
        local_rotation_subset_multi(f, {{0.25, 0.25}, 0.02}, ns, opts);
    REQUIRE(multi.size() == 4);
    for (std::size_t i = 0; i < multi.size(); ++i) {
        CHECK(multi[i].n == ns[i]);
        CHECK(multi[i].cloud.size() == 128);
    }

    // Mean displacements settle like 1/n, so consecutive-checkpoint motion
    // shrinks as the schedule advances.
    const double early = hausdorff_distance(multi[0].cloud, multi[1].cloud);
    const double late = hausdorff_distance(multi[2].cloud, multi[3].cloud);
    CHECK(late < early);
    CHECK(hull_diameter(multi[3].hull) < hull_diameter(multi[0].hull));

    // A single-checkpoint call is the same computation.
    const LocalRotationEstimate single = local_rotation_subset(f, {{0.25, 0.25}, 0.02}, 1000, opts);
    REQUIRE(single.cloud.size() == multi[2].cloud.size());
    for (std::size_t i = 0; i < single.cloud.size(); ++i)
        CHECK(single.cloud[i] == multi[2].cloud[i]);
}

TEST_CASE("schedule and disk validation") {
    const LiftMap f = LiftMap::mz(0.5, 0.5);
    const Disk disk{{0.25, 0.25}, 0.02};

    CHECK_THROWS_AS(local_rotation_subset_multi(f, disk, {}), ConfigError);
    const std::vector<long> zero{0};
    CHECK_THROWS_AS(local_rotation_subset_multi(f, disk, zero), ConfigError);
    const std::vector<long> negative{-5};
    CHECK_THROWS_AS(local_rotation_subset_multi(f, disk, negative), ConfigError);
    const std::vector<long> flat{100, 100};
    CHECK_THROWS_AS(local_rotation_subset_multi(f, disk, flat), ConfigError);
    const std::vector<long> descending{200, 100};
    CHECK_THROWS_AS(local_rotation_subset_multi(f, disk, descending), ConfigError);

    CHECK_THROWS_AS(local_rotation_subset(f, {{0.5, 0.5}, -1.0}, 100), ConfigError);
    RotationOptions none;
    none.samples = 0;
    CHECK_THROWS_AS(local_rotation_subset(f, disk, 100, none), ConfigError);
}

TEST_CASE("dichotomy verdicts on disks") {
    const std::vector<long> schedule{150, 300};

    // Rational rigid translation: singleton with a stable fraction.
    const ClassificationLabel ell =
        dichotomy_classify(LiftMap::translation({0.5, 0.25}), {{0.3, 0.3}, 0.05}, schedule);
    CHECK(ell.kind == ClassificationLabel::Kind::Elliptic);
    CHECK(ell.witness == Vec2{0.5, 0.25});
    CHECK(ell.verdict.kind == StructureKind::SingletonRational);
    CHECK(ell.diameter < 1e-9);

    // Irrational translation: a singleton that never becomes rational, and
    // with zero area it cannot be chaotic either.
    const ClassificationLabel und =
        dichotomy_classify(LiftMap::translation({kSqrt2m1, kGolden}), {{0.3, 0.3}, 0.05}, schedule);
    CHECK(und.kind == ClassificationLabel::Kind::Undetermined);
    CHECK(und.verdict.kind == StructureKind::SingletonIrrational);

    // Flagship island and sea behave per the dichotomy.
    const LiftMap mz = LiftMap::mz(0.5, 0.5);
    RotationOptions opts;
    opts.samples = 128;
    const std::vector<long> island_schedule{1250, 2500};
    const ClassificationLabel island =
        dichotomy_classify(mz, {{0.25, 0.25}, 0.02}, island_schedule, 0.01, opts);
    CHECK(island.kind == ClassificationLabel::Kind::Elliptic);
    CHECK(island.witness == Vec2{0.0, 0.0});

    const ClassificationLabel sea = dichotomy_classify(mz, {{0.1, 0.6}, 0.03}, schedule);
    CHECK(sea.kind == ClassificationLabel::Kind::Chaotic);
    CHECK(sea.area > 0.01);

    const std::vector<long> lone{100};
    CHECK_THROWS_AS(dichotomy_classify(mz, {{0.1, 0.6}, 0.03}, lone), ConfigError);
}

TEST_CASE("flagship estimate respects the quarter-turn symmetry") {
    const LiftMap f = LiftMap::mz(0.5, 0.5);
    const RotationSetEstimate est = estimate_rotation_set(f, {100, 100, {0.0, 0.0}}, 500);
    CHECK(hull_area(est.hull) == doctest::Approx(0.5).epsilon(0.1));

    std::vector<Vec2> rotated;
    for (const Vec2& v : est.cloud) rotated.push_back({-v.y, v.x});
    CHECK(polygon_hausdorff(est.hull, convex_hull(rotated)) < 0.02);
}
