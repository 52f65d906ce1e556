#pragma once

#include <span>
#include <vector>

#include "torusrot/rotation.hpp"

namespace torusrot {

// Per-cell dichotomy labels over a grid of disks. labels is row-major
// (index = iy*nx + ix); each disk sits at the cell's grid point.
struct LabelGrid {
    GridSpec grid;
    double disk_radius = 0.0;
    std::vector<long> schedule;
    std::vector<ClassificationLabel> labels;

    const ClassificationLabel& at(int ix, int iy) const {
        return labels[std::size_t(iy) * grid.nx + ix];
    }
};

LabelGrid classification_map(const LiftMap& f, const GridSpec& grid, double disk_radius,
                             std::span<const long> schedule, double area_tol = 0.01,
                             const RotationOptions& opts = {});

// Maximal 4-connected runs of elliptic cells (with torus wraparound)
// whose witness vectors agree within witness_tol.
struct IslandRegion {
    std::vector<std::pair<int, int>> cells;  // (ix, iy), sorted
    Vec2 witness{0.0, 0.0};
    long period = 0;  // lcm of witness denominators, or the attached orbit's period
    bool has_periodic_point = false;
    Vec2 periodic_point{0.0, 0.0};
};

std::vector<IslandRegion> extract_islands(const LabelGrid& labels, double witness_tol = 1e-3);

// Searches for representative periodic orbits per island and attaches any
// point landing in the island's cells, upgrading the island's period to
// the multiple of the witness denominators at which a point was found.
// `labels` must be the grid the islands came from.
void attach_periodic_points(std::vector<IslandRegion>& islands, const LiftMap& f,
                            const LabelGrid& labels, const GridSpec& search_grid,
                            int refine_iters = 50, int threads = 0);

// Roots of G(z) = F^p(z) - z - w on the fundamental domain. Candidate
// cells come from corner sign changes of G's components plus cells with a
// small central residual; each candidate is polished with damped Newton
// (central finite-difference Jacobian). A near-singular or stalling
// Jacobian switches to a derivative-free descent on |G|, and candidate
// roots are snapped to nearby low-denominator rationals whenever that
// strictly reduces the residual. Returned points satisfy |G| <= 1e-10,
// live in [0,1)^2 and are deduplicated within 1e-6.
struct PeriodicPoint {
    Vec2 z;
    double residual = 0.0;
    bool via_fallback = false;
};

struct PeriodicSearchReport {
    std::vector<PeriodicPoint> points;
    int candidates = 0;
    int newton_failures = 0;
};

PeriodicSearchReport find_periodic_points(const LiftMap& f, int period, long wx, long wy,
                                          const GridSpec& grid, int refine_iters = 50,
                                          int threads = 0);

// Finite-orbit probe of epsilon-Lyapunov stability at z. For each delta
// (ascending), boundary samples of B_delta(z) (plus all samples of the
// smaller deltas, so the sample sets are nested) are iterated alongside z
// until escape or n_max. A probe escapes once its separation reaches
// epsilon AND at least twice its own initial offset, so a probe launched
// near epsilon never trivially witnesses instability. Escape yields an
// instability witness with the first iterate count and separation; a run
// whose separations never grew beyond 2*delta counts as a stability
// witness; anything in between is inconclusive.
struct StabilityOutcome {
    enum class Verdict { StableWitness, InstabilityWitness, Inconclusive };
    double delta = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    long escape_n = 0;         // InstabilityWitness only
    double separation = 0.0;   // largest separation seen (or the escape one)
};

struct StabilityReport {
    Vec2 point{0.0, 0.0};
    double epsilon = 0.0;
    std::vector<StabilityOutcome> outcomes;

    bool all_stable() const;
    bool all_escaped() const;
};

const char* to_string(StabilityOutcome::Verdict v);

StabilityReport lyapunov_probe(const LiftMap& f, const Vec2& z, double epsilon,
                               std::span<const double> delta_list, long n_max,
                               int samples = 16, std::uint64_t seed = kDefaultSeed,
                               int threads = 0);

// Least-squares slope of the v_perp-extent of F^n(U) against n. A linear
// spreading direction shows a positive slope with a small relative
// residual; an isometry stays flat.
struct SpreadingFit {
    Vec2 v{1.0, 0.0};
    double slope = 0.0;
    double intercept = 0.0;
    double relative_residual = 0.0;
    std::vector<long> n_list;
    std::vector<double> extents;
};

SpreadingFit spreading_slope(const LiftMap& f, const Disk& disk, const Vec2& v,
                             std::span<const long> n_list, int samples = 64,
                             std::uint64_t seed = kDefaultSeed, int threads = 0);

}  // namespace torusrot
