#include "torusrot/rotation.hpp"

#include <algorithm>
#include <cmath>

#include "torusrot/errors.hpp"

namespace torusrot {

namespace {

// Nearest-neighbor gap statistics for the connectedness diagnostic.
void gap_statistics(std::span<const Vec2> cloud, double& max_gap, double& median_gap) {
    max_gap = 0.0;
    median_gap = 0.0;
    if (cloud.size() < 2) return;
    std::vector<double> nn(cloud.size(), std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < cloud.size(); ++i)
        for (std::size_t j = 0; j < cloud.size(); ++j) {
            if (i == j) continue;
            nn[i] = std::min(nn[i], distance(cloud[i], cloud[j]));
        }
    std::sort(nn.begin(), nn.end());
    max_gap = nn.back();
    median_gap = nn[nn.size() / 2];
}

bool ratio_is_rational(double wx, double wy, const RotationOptions& opts) {
    const double ax = std::fabs(wx);
    const double ay = std::fabs(wy);
    if (ax <= opts.rational_tol && ay <= opts.rational_tol) return true;
    if (ay > ax) std::swap(wx, wy);
    // |wx| >= |wy| now; the ratio wy/wx is in [-1, 1].
    return rational_approx(wy / wx, opts.qmax, opts.rational_tol).found;
}

}  // namespace

RationalApprox rational_approx(double x, long qmax, double tol) {
    RationalApprox best;
    if (!std::isfinite(x)) return best;
    // Continued-fraction convergents p_k/q_k of x, in order of growing q.
    double frac = x;
    long p_prev = 1, q_prev = 0;
    long p_cur = long(std::floor(frac)), q_cur = 1;
    for (int k = 0; k < 64; ++k) {
        if (q_cur > qmax) break;
        if (std::fabs(x - double(p_cur) / double(q_cur)) <= tol) {
            best.p = p_cur;
            best.q = q_cur;
            best.found = true;
            return best;
        }
        const double rem = frac - std::floor(frac);
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
        const double a = std::floor(frac);
        if (a > 1e15) break;
        const long p_next = long(a) * p_cur + p_prev;
        const long q_next = long(a) * q_cur + q_prev;
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
    }
    return best;
}

const char* to_string(StructureKind kind) {
    switch (kind) {
        case StructureKind::Empty: return "empty";
        case StructureKind::SingletonRational: return "singleton-rational";
        case StructureKind::SingletonSemiRational: return "singleton-semi-rational";
        case StructureKind::SingletonIrrational: return "singleton-irrational";
        case StructureKind::Segment: return "segment";
        case StructureKind::Fat: return "fat";
    }
    return "unknown";
}

const char* to_string(ClassificationLabel::Kind kind) {
    switch (kind) {
        case ClassificationLabel::Kind::Elliptic: return "elliptic";
        case ClassificationLabel::Kind::Chaotic: return "chaotic";
        case ClassificationLabel::Kind::Undetermined: return "undetermined";
    }
    return "unknown";
}

StructureVerdict detect_structure(const ConvexPolygon& hull, const RotationOptions& opts) {
    StructureVerdict v;
    v.diameter = hull_diameter(hull);
    v.area = hull_area(hull);
    if (hull.empty()) {
        v.kind = StructureKind::Empty;
        return v;
    }

    Vec2 centroid{0.0, 0.0};
    for (const Vec2& p : hull.vertices) centroid += p;
    centroid = centroid / double(hull.vertices.size());

    if (v.diameter < opts.singleton_tol) {
        v.witness = centroid;
        v.px = rational_approx(centroid.x, opts.qmax, opts.rational_tol);
        v.py = rational_approx(centroid.y, opts.qmax, opts.rational_tol);
        if (v.px.found && v.py.found) {
            v.kind = StructureKind::SingletonRational;
            v.witness = {double(v.px.p) / double(v.px.q), double(v.py.p) / double(v.py.q)};
        } else if (!v.px.found && !v.py.found &&
                   !ratio_is_rational(centroid.x, centroid.y, opts)) {
            v.kind = StructureKind::SingletonIrrational;
        } else {
            v.kind = StructureKind::SingletonSemiRational;
        }
        return v;
    }

    if (v.area < opts.singleton_tol * v.diameter) {
        v.kind = StructureKind::Segment;
        double best = -1.0;
        for (std::size_t i = 0; i < hull.vertices.size(); ++i)
            for (std::size_t j = i + 1; j < hull.vertices.size(); ++j) {
                const double d = distance(hull.vertices[i], hull.vertices[j]);
                if (d > best) {
                    best = d;
                    v.segment_a = hull.vertices[i];
                    v.segment_b = hull.vertices[j];
                }
            }
        v.witness = centroid;
        return v;
    }

    v.kind = StructureKind::Fat;
    v.witness = centroid;
    return v;
}

RotationSetEstimate estimate_rotation_set(const LiftMap& f, const GridSpec& grid, long n,
                                          long burn_in, const RotationOptions& opts) {
    const SweepResult sw = sweep(f, grid, n, burn_in, opts.threads);

    RotationSetEstimate est;
    est.grid = grid;
    est.n = n;
    est.burn_in = burn_in;
    est.map_description = f.description();
    est.cloud = sw.finite_cloud();

    ConvexPolygon first = convex_hull(est.cloud);

    // One refinement pass: for each grid start whose phi became a hull
    // vertex, probe the eight half-cell midpoints around that start.
    std::vector<Vec2> refined_starts;
    for (const Vec2& vert : first.vertices) {
        for (std::size_t i = 0; i < sw.phi.size(); ++i) {
            if (!sw.ok[i] || !(sw.phi[i] == vert)) continue;
            const int ix = int(i % std::size_t(grid.nx));
            const int iy = int(i / std::size_t(grid.nx));
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    refined_starts.push_back(
                        {(double(ix) + grid.offset.x + 0.5 * dx) / double(grid.nx),
                         (double(iy) + grid.offset.y + 0.5 * dy) / double(grid.ny)});
                }
            break;
        }
    }

    std::vector<Vec2> refined_phi(refined_starts.size());
    std::vector<std::uint8_t> refined_ok(refined_starts.size(), 0);
    parallel_for(refined_starts.size(), opts.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            try {
                refined_phi[i] = phi_window(f, refined_starts[i], n, burn_in);
                refined_ok[i] = 1;
            } catch (const NumericError&) {
            }
        }
    });
    for (std::size_t i = 0; i < refined_phi.size(); ++i)
        if (refined_ok[i]) est.cloud.push_back(refined_phi[i]);

    est.hull = convex_hull(est.cloud);
    return est;
}

std::vector<LocalRotationEstimate> local_rotation_subset_multi(const LiftMap& f,
                                                               const Disk& disk,
                                                               std::span<const long> n_list,
                                                               const RotationOptions& opts) {
    if (n_list.empty()) throw ConfigError("schedule must be nonempty");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (n_list[i] <= 0) throw ConfigError("iterate counts must be positive");
        if (i > 0 && n_list[i] <= n_list[i - 1])
            throw ConfigError("iterate counts must be strictly increasing");
    }

    const std::vector<Vec2> starts = sample_disk(disk, opts.samples, opts.seed);
    const std::size_t servings = n_list.size();
    std::vector<Vec2> phi(starts.size() * servings);
    std::vector<std::uint8_t> ok(starts.size() * servings, 0);

    parallel_for(starts.size(), opts.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            Vec2 z = starts[s];
            long reached = 0;
            try {
                for (std::size_t c = 0; c < servings; ++c) {
                    z = iterate(f, z, n_list[c] - reached);
                    reached = n_list[c];
                    phi[s * servings + c] = (z - starts[s]) / double(n_list[c]);
                    ok[s * servings + c] = 1;
                }
            } catch (const NumericError&) {
            }
        }
    });

    std::vector<LocalRotationEstimate> out(servings);
    for (std::size_t c = 0; c < servings; ++c) {
        LocalRotationEstimate& est = out[c];
        est.disk = disk;
        est.n = n_list[c];
        est.samples = opts.samples;
        est.map_description = f.description();
        for (std::size_t s = 0; s < starts.size(); ++s)
            if (ok[s * servings + c]) est.cloud.push_back(phi[s * servings + c]);
        est.hull = convex_hull(est.cloud);
        gap_statistics(est.cloud, est.max_gap, est.median_gap);
        est.cluster_warning =
            est.cloud.size() >= 8 && est.median_gap > 0.0 && est.max_gap > 10.0 * est.median_gap;
    }
    return out;
}

LocalRotationEstimate local_rotation_subset(const LiftMap& f, const Disk& disk, long n,
                                            const RotationOptions& opts) {
    const long n_list[1] = {n};
    return local_rotation_subset_multi(f, disk, n_list, opts)[0];
}

ClassificationLabel dichotomy_classify(const LiftMap& f, const Disk& disk,
                                       std::span<const long> schedule, double area_tol,
                                       const RotationOptions& opts) {
    if (schedule.size() < 2) throw ConfigError("dichotomy needs a schedule of at least two n");
    const std::vector<LocalRotationEstimate> ests =
        local_rotation_subset_multi(f, disk, schedule, opts);

    const LocalRotationEstimate& last = ests[ests.size() - 1];
    const LocalRotationEstimate& prev = ests[ests.size() - 2];
    const StructureVerdict v_last = detect_structure(last.hull, opts);
    const StructureVerdict v_prev = detect_structure(prev.hull, opts);

    ClassificationLabel label;
    label.verdict = v_last;
    label.diameter = v_last.diameter;
    label.area = v_last.area;
    label.cluster_warning = last.cluster_warning;

    const bool both_rational = v_last.kind == StructureKind::SingletonRational &&
                               v_prev.kind == StructureKind::SingletonRational;
    if (both_rational && v_last.px.p == v_prev.px.p && v_last.px.q == v_prev.px.q &&
        v_last.py.p == v_prev.py.p && v_last.py.q == v_prev.py.q) {
        label.kind = ClassificationLabel::Kind::Elliptic;
        label.witness = v_last.witness;
        return label;
    }
    if (v_last.area > area_tol && v_prev.area > area_tol) {
        label.kind = ClassificationLabel::Kind::Chaotic;
        label.witness = v_last.witness;
        return label;
    }
    label.kind = ClassificationLabel::Kind::Undetermined;
    label.witness = v_last.witness;
    return label;
}

}  // namespace torusrot
