#pragma once

#include <span>
#include <string>
#include <vector>

#include "torusrot/engine.hpp"
#include "torusrot/geometry.hpp"

namespace torusrot {

// Knobs shared by the estimators and the structure detector.
struct RotationOptions {
    int samples = 256;                  // starts per disk
    std::uint64_t seed = kDefaultSeed;
    int threads = 0;
    double singleton_tol = 1e-3;        // hull diameter below this = singleton
    double rational_tol = 1e-4;         // |x - p/q| acceptance for rationality
    long qmax = 64;                     // largest denominator considered
};

// Best rational approximation p/q with q <= qmax and |x - p/q| <= tol,
// taken over continued-fraction convergents (smallest such q first).
struct RationalApprox {
    long p = 0;
    long q = 1;
    bool found = false;
};
RationalApprox rational_approx(double x, long qmax = 64, double tol = 1e-4);

// Shape of an estimated rotation set or subset.
//
// Singletons split by the arithmetic of the witness vector: rational
// (both coordinates admit q <= qmax approximations), irrational (neither
// coordinate nor their ratio does), semi-rational otherwise.
enum class StructureKind {
    Empty,
    SingletonRational,
    SingletonSemiRational,
    SingletonIrrational,
    Segment,
    Fat,
};

struct StructureVerdict {
    StructureKind kind = StructureKind::Empty;
    Vec2 witness{0.0, 0.0};        // singleton location (hull centroid)
    RationalApprox px, py;         // per-coordinate approximations
    Vec2 segment_a{0.0, 0.0};      // extreme points when kind == Segment
    Vec2 segment_b{0.0, 0.0};
    double diameter = 0.0;
    double area = 0.0;
};

const char* to_string(StructureKind kind);

StructureVerdict detect_structure(const ConvexPolygon& hull, const RotationOptions& opts = {});

// Estimated rotation set: hull of mean grid displacements, plus one
// refinement pass that re-samples midpoints around the grid starts whose
// phi values ended up as hull vertices.
struct RotationSetEstimate {
    ConvexPolygon hull;
    std::vector<Vec2> cloud;
    GridSpec grid;
    long n = 0;
    long burn_in = 0;
    std::string map_description;
};

RotationSetEstimate estimate_rotation_set(const LiftMap& f, const GridSpec& grid, long n,
                                          long burn_in = 0, const RotationOptions& opts = {});

// Local rotation subset over a lifted disk of starts.
struct LocalRotationEstimate {
    Disk disk;
    long n = 0;
    int samples = 0;
    std::vector<Vec2> cloud;
    ConvexPolygon hull;
    std::string map_description;
    // Connectedness diagnostic: true when the cloud splits into clusters
    // separated by more than 10x the median nearest-neighbor gap.
    bool cluster_warning = false;
    double max_gap = 0.0;
    double median_gap = 0.0;
};

LocalRotationEstimate local_rotation_subset(const LiftMap& f, const Disk& disk, long n,
                                            const RotationOptions& opts = {});

// One orbit pass with checkpoints: estimates at every n in ascending
// n_list, sharing start points and orbit work.
std::vector<LocalRotationEstimate> local_rotation_subset_multi(const LiftMap& f,
                                                               const Disk& disk,
                                                               std::span<const long> n_list,
                                                               const RotationOptions& opts = {});

// Dichotomy verdict for a disk. Elliptic: the structure verdict is
// singleton-rational with the same witness at the last two schedule
// entries. Chaotic: the hull area stays above area_tol at the last two
// entries. Anything else is undetermined; the evidence is attached.
struct ClassificationLabel {
    enum class Kind { Elliptic, Chaotic, Undetermined };
    Kind kind = Kind::Undetermined;
    Vec2 witness{0.0, 0.0};
    StructureVerdict verdict;     // at the final schedule entry
    double diameter = 0.0;
    double area = 0.0;
    bool cluster_warning = false;
};

const char* to_string(ClassificationLabel::Kind kind);

ClassificationLabel dichotomy_classify(const LiftMap& f, const Disk& disk,
                                       std::span<const long> schedule, double area_tol = 0.01,
                                       const RotationOptions& opts = {});

}  // namespace torusrot
