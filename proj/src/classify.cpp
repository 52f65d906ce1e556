#include "torusrot/classify.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <tuple>

#include "torusrot/errors.hpp"

namespace torusrot {

namespace {

// ------------------------------------------------------ periodic points

// G(z) = F^p(z) - z - w. Non-finite orbits yield non-finite components;
// every comparison below is written so that NaN means "no improvement".
struct ReturnMap {
    const LiftMap& f;
    int p;
    Vec2 w;

    Vec2 operator()(const Vec2& z) const {
        Vec2 u = z;
        for (int i = 0; i < p; ++i) u = f(u);
        return u - z - w;
    }
    double residual(const Vec2& z) const { return norm_inf((*this)(z)); }
};

constexpr double kRootResidualTol = 1e-10;
constexpr double kNewtonDoneTol = 1e-12;
constexpr double kFdStep = 1e-6;
constexpr double kMergeTol = 1e-6;

struct Polish {
    Vec2 z;
    double res = std::numeric_limits<double>::infinity();
    bool fallback = false;
};

// Damped Newton with a central finite-difference Jacobian. Bails out to
// the caller's fallback when the Jacobian degenerates or progress stalls.
enum class NewtonExit { Converged, Degenerate, Failed };

NewtonExit newton_polish(const ReturnMap& g, Polish& state, int max_iters) {
    Vec2 z = state.z;
    double res = g.residual(z);
    int stalls = 0;
    NewtonExit exit = NewtonExit::Failed;

    for (int iter = 0; iter < max_iters; ++iter) {
        if (res <= kNewtonDoneTol) {
            exit = NewtonExit::Converged;
            break;
        }
        const Vec2 gx1 = g({z.x + kFdStep, z.y});
        const Vec2 gx0 = g({z.x - kFdStep, z.y});
        const Vec2 gy1 = g({z.x, z.y + kFdStep});
        const Vec2 gy0 = g({z.x, z.y - kFdStep});
        const double j11 = (gx1.x - gx0.x) / (2.0 * kFdStep);
        const double j21 = (gx1.y - gx0.y) / (2.0 * kFdStep);
        const double j12 = (gy1.x - gy0.x) / (2.0 * kFdStep);
        const double j22 = (gy1.y - gy0.y) / (2.0 * kFdStep);
        const double jmax = std::max({std::fabs(j11), std::fabs(j12), std::fabs(j21), std::fabs(j22)});
        const double det = j11 * j22 - j12 * j21;
        if (!std::isfinite(det) || jmax < 1e-6 ||
            std::fabs(det) < 1e-10 * std::max(1.0, jmax * jmax)) {
            exit = NewtonExit::Degenerate;
            break;
        }

        const Vec2 gz = g(z);
        const Vec2 step{(gz.x * j22 - gz.y * j12) / det, (gz.y * j11 - gz.x * j21) / det};

        double lambda = 1.0;
        bool improved = false;
        for (int t = 0; t < 12; ++t) {
            const Vec2 trial = z - lambda * step;
            const double trial_res = g.residual(trial);
            if (trial_res < res) {
                z = trial;
                res = trial_res;
                improved = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!improved) {
            if (++stalls >= 3) {
                exit = NewtonExit::Degenerate;
                break;
            }
        } else {
            stalls = 0;
        }
        if (norm_inf(z - state.z) > 0.5) {
            exit = NewtonExit::Failed;
            break;
        }
    }
    if (res <= kNewtonDoneTol) exit = NewtonExit::Converged;
    state.z = z;
    state.res = res;
    return exit;
}

// Derivative-free compass descent on |G|_inf, for roots where the return
// map's derivative is the identity and Newton has nothing to work with.
void compass_descend(const ReturnMap& g, Polish& state, double h0) {
    Vec2 z = state.z;
    double res = g.residual(z);
    static constexpr Vec2 dirs[8] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                     {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};
    for (double h = h0; h > 1e-10;) {
        bool moved = false;
        for (const Vec2& d : dirs) {
            const Vec2 trial = z + h * d;
            const double trial_res = g.residual(trial);
            if (trial_res < res) {
                z = trial;
                res = trial_res;
                moved = true;
                break;
            }
        }
        if (!moved) h *= 0.5;
    }
    state.z = z;
    state.res = res;
}

struct SnapCandidate {
    double value;
    long q;
};

// Continued-fraction convergents of x with q <= qmax that land within
// `window` of x.
void push_convergents(double x, long qmax, double window, std::vector<SnapCandidate>& out) {
    double frac = x;
    long p_prev = 1, q_prev = 0;
    long p_cur = long(std::floor(frac)), q_cur = 1;
    for (int k = 0; k < 48 && q_cur <= qmax; ++k) {
        const double cand = double(p_cur) / double(q_cur);
        if (std::fabs(x - cand) <= window) out.push_back({cand, q_cur});
        const double rem = frac - std::floor(frac);
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
        const double a = std::floor(frac);
        if (a > 1e15) break;
        const long p_next = long(a) * p_cur + p_prev;
        const long q_next = long(a) * q_cur + q_prev;
        p_prev = p_cur; q_prev = q_cur;
        p_cur = p_next; q_cur = q_next;
    }
}

// Replaces the candidate root with the lowest-denominator nearby rational
// pair whose residual stays within noise of the current one. Around the
// degenerate roots the return map vanishes to high order, so descent can
// stall millidistances away from the true root while the residual sits at
// rounding level already; preferring the simplest rational representative
// with a comparable residual recovers the exact point. Regular roots are
// untouched: any rational that far off fails the residual bar outright.
void rational_snap(const ReturnMap& g, Polish& state) {
    constexpr double kWindow = 5e-3;
    constexpr long kQmax = 4096;
    constexpr long kOriginalQ = 1'000'000'000;
    std::vector<SnapCandidate> xs{{state.z.x, kOriginalQ}};
    std::vector<SnapCandidate> ys{{state.z.y, kOriginalQ}};
    push_convergents(state.z.x, kQmax, kWindow, xs);
    push_convergents(state.z.y, kQmax, kWindow, ys);

    const double threshold = std::max(state.res, 1e-13);
    Vec2 best = state.z;
    double best_res = state.res;
    long best_q = 2 * kOriginalQ;
    for (const SnapCandidate& cx : xs) {
        for (const SnapCandidate& cy : ys) {
            if (cx.value == state.z.x && cy.value == state.z.y) continue;
            const double res = g.residual({cx.value, cy.value});
            if (!(res <= threshold)) continue;
            const long qsum = cx.q + cy.q;
            if (qsum < best_q || (qsum == best_q && res < best_res)) {
                best = {cx.value, cy.value};
                best_res = res;
                best_q = qsum;
            }
        }
    }
    state.z = best;
    state.res = best_res;
}

// --------------------------------------------------------- least squares

void fit_line(std::span<const long> xs, std::span<const double> ys, double& slope,
              double& intercept, double& rel_residual) {
    const std::size_t m = xs.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += double(xs[i]);
        sy += ys[i];
        sxx += double(xs[i]) * double(xs[i]);
        sxy += double(xs[i]) * ys[i];
    }
    const double denom = double(m) * sxx - sx * sx;
    if (denom == 0.0) {
        slope = 0.0;
        intercept = m ? sy / double(m) : 0.0;
    } else {
        slope = (double(m) * sxy - sx * sy) / denom;
        intercept = (sy - slope * sx) / double(m);
    }
    double ss_res = 0.0, ss_val = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = ys[i] - (slope * double(xs[i]) + intercept);
        ss_res += r * r;
        ss_val += ys[i] * ys[i];
    }
    rel_residual = ss_val > 0.0 ? std::sqrt(ss_res / ss_val) : 0.0;
}

}  // namespace

PeriodicSearchReport find_periodic_points(const LiftMap& f, int period, long wx, long wy,
                                          const GridSpec& grid, int refine_iters, int threads) {
    if (period < 1) throw ConfigError("period must be >= 1");
    if (grid.nx < 2 || grid.ny < 2) throw ConfigError("periodic search grid too small");
    const ReturnMap g{f, period, Vec2{double(wx), double(wy)}};

    // Corner table of G over [0,1]^2 (offset shifts every corner alike).
    const int nx = grid.nx, ny = grid.ny;
    std::vector<Vec2> corner((nx + 1) * (ny + 1));
    parallel_for(corner.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const int ix = int(i % std::size_t(nx + 1));
            const int iy = int(i / std::size_t(nx + 1));
            corner[i] = g({(double(ix) + grid.offset.x) / nx, (double(iy) + grid.offset.y) / ny});
        }
    });
    auto corner_at = [&](int ix, int iy) -> const Vec2& { return corner[std::size_t(iy) * (nx + 1) + ix]; };

    const double half_diag = 0.5 * std::hypot(1.0 / nx, 1.0 / ny);

    std::vector<Vec2> seeds;
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const Vec2& c00 = corner_at(ix, iy);
            const Vec2& c10 = corner_at(ix + 1, iy);
            const Vec2& c01 = corner_at(ix, iy + 1);
            const Vec2& c11 = corner_at(ix + 1, iy + 1);
            auto mixed = [&](double a, double b, double c, double d) {
                const double lo = std::min({a, b, c, d});
                const double hi = std::max({a, b, c, d});
                return lo <= 0.0 && hi >= 0.0;
            };
            const bool sign_change = mixed(c00.x, c10.x, c01.x, c11.x) &&
                                     mixed(c00.y, c10.y, c01.y, c11.y);
            const Vec2 center{(double(ix) + grid.offset.x + 0.5) / nx,
                              (double(iy) + grid.offset.y + 0.5) / ny};
            // Sign changes miss roots where G only touches zero (the
            // degenerate centers), so cells whose central residual is small
            // against the local corner-to-corner variation also qualify.
            bool candidate = sign_change;
            if (!candidate) {
                const double lip =
                    std::max({norm_inf(c10 - c00) * nx, norm_inf(c11 - c01) * nx,
                              norm_inf(c01 - c00) * ny, norm_inf(c11 - c10) * ny});
                if (g.residual(center) <= 1.5 * lip * half_diag) candidate = true;
            }
            if (candidate) seeds.push_back(center);
        }
    }

    PeriodicSearchReport report;
    report.candidates = int(seeds.size());

    std::vector<PeriodicPoint> found(seeds.size());
    std::vector<std::uint8_t> keep(seeds.size(), 0);
    std::vector<std::uint8_t> failed(seeds.size(), 0);

    parallel_for(seeds.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            Polish state;
            state.z = seeds[i];
            const NewtonExit exit = newton_polish(g, state, refine_iters);
            bool fallback = false;
            if (exit == NewtonExit::Degenerate ||
                (exit == NewtonExit::Failed && state.res <= 1e-2)) {
                compass_descend(g, state, half_diag);
                fallback = true;
            }
            // Report positions and residuals at the fundamental-domain
            // representative; wrapping shifts the residual by rounding
            // noise only, but the books should match the output.
            state.z = wrap_unit(state.z);
            state.res = g.residual(state.z);
            rational_snap(g, state);
            state.z = wrap_unit(state.z);
            state.res = g.residual(state.z);
            if (state.res <= kRootResidualTol) {
                found[i] = {state.z, state.res, fallback};
                keep[i] = 1;
            } else {
                failed[i] = 1;
            }
        }
    });

    std::vector<PeriodicPoint> pts;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (keep[i]) pts.push_back(found[i]);
        if (failed[i]) ++report.newton_failures;
    }
    std::sort(pts.begin(), pts.end(), [](const PeriodicPoint& a, const PeriodicPoint& b) {
        return a.z.x < b.z.x || (a.z.x == b.z.x && a.z.y < b.z.y);
    });
    for (const PeriodicPoint& p : pts) {
        bool dup = false;
        for (PeriodicPoint& q : report.points) {
            if (torus_distance(p.z, q.z) <= kMergeTol) {
                dup = true;
                if (p.residual < q.residual) q = p;
                break;
            }
        }
        if (!dup) report.points.push_back(p);
    }
    return report;
}

LabelGrid classification_map(const LiftMap& f, const GridSpec& grid, double disk_radius,
                             std::span<const long> schedule, double area_tol,
                             const RotationOptions& opts) {
    if (grid.nx <= 0 || grid.ny <= 0) throw ConfigError("classification grid must be nonempty");
    if (disk_radius <= 0.0) throw ConfigError("disk radius must be positive");

    LabelGrid out;
    out.grid = grid;
    out.disk_radius = disk_radius;
    out.schedule.assign(schedule.begin(), schedule.end());
    out.labels.resize(grid.count());

    parallel_for(grid.count(), opts.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const int ix = int(i % std::size_t(grid.nx));
            const int iy = int(i / std::size_t(grid.nx));
            RotationOptions cell_opts = opts;
            cell_opts.threads = 1;
            cell_opts.seed = CounterRng(opts.seed, {0x43454C4Cull, std::uint64_t(i)}).next_u64();
            out.labels[i] = dichotomy_classify(f, Disk{grid.point(ix, iy), disk_radius},
                                               schedule, area_tol, cell_opts);
        }
    });
    return out;
}

std::vector<IslandRegion> extract_islands(const LabelGrid& labels, double witness_tol) {
    const int nx = labels.grid.nx, ny = labels.grid.ny;
    std::vector<std::uint8_t> visited(labels.labels.size(), 0);
    std::vector<IslandRegion> islands;

    auto index = [&](int ix, int iy) { return std::size_t(iy) * nx + ix; };
    auto elliptic = [&](std::size_t i) {
        return labels.labels[i].kind == ClassificationLabel::Kind::Elliptic;
    };

    for (int iy0 = 0; iy0 < ny; ++iy0) {
        for (int ix0 = 0; ix0 < nx; ++ix0) {
            const std::size_t seed = index(ix0, iy0);
            if (visited[seed] || !elliptic(seed)) continue;

            IslandRegion region;
            region.witness = labels.labels[seed].witness;
            const StructureVerdict& v = labels.labels[seed].verdict;
            region.period = std::lcm(std::max(1l, v.px.q), std::max(1l, v.py.q));

            std::deque<std::pair<int, int>> queue{{ix0, iy0}};
            visited[seed] = 1;
            while (!queue.empty()) {
                const auto [ix, iy] = queue.front();
                queue.pop_front();
                region.cells.emplace_back(ix, iy);
                const int nb[4][2] = {{(ix + 1) % nx, iy},
                                      {(ix + nx - 1) % nx, iy},
                                      {ix, (iy + 1) % ny},
                                      {ix, (iy + ny - 1) % ny}};
                for (const auto& [jx, jy] : nb) {
                    const std::size_t j = index(jx, jy);
                    if (visited[j] || !elliptic(j)) continue;
                    if (norm_inf(labels.labels[j].witness - region.witness) > witness_tol)
                        continue;
                    visited[j] = 1;
                    queue.emplace_back(jx, jy);
                }
            }
            std::sort(region.cells.begin(), region.cells.end());
            islands.push_back(std::move(region));
        }
    }
    return islands;
}

void attach_periodic_points(std::vector<IslandRegion>& islands, const LiftMap& f,
                            const LabelGrid& labels, const GridSpec& search_grid,
                            int refine_iters, int threads) {
    std::map<std::tuple<long, long, long>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < islands.size(); ++i) {
        const IslandRegion& isl = islands[i];
        const long p = std::max(1l, isl.period);
        const long wx = std::lround(isl.witness.x * double(p));
        const long wy = std::lround(isl.witness.y * double(p));
        groups[{p, wx, wy}].push_back(i);
    }

    // The witness pins period and displacement only up to a common integer
    // multiple (a (0,0)-witness island can sit around a 2-periodic center),
    // so small multiples are tried until every island got its point.
    const int nx = labels.grid.nx, ny = labels.grid.ny;
    for (const auto& [key, members] : groups) {
        const auto [p, wx, wy] = key;
        std::vector<std::size_t> waiting(members.begin(), members.end());
        for (long k = 1; k <= 4 && !waiting.empty(); ++k) {
            if (p * k > 64) break;
            const PeriodicSearchReport report = find_periodic_points(
                f, int(p * k), wx * k, wy * k, search_grid, refine_iters, threads);
            std::vector<std::size_t> still;
            for (const std::size_t m : waiting) {
                IslandRegion& isl = islands[m];
                for (const PeriodicPoint& pt : report.points) {
                    int cx = int(std::lround(pt.z.x * nx - labels.grid.offset.x)) % nx;
                    int cy = int(std::lround(pt.z.y * ny - labels.grid.offset.y)) % ny;
                    if (cx < 0) cx += nx;
                    if (cy < 0) cy += ny;
                    if (std::binary_search(isl.cells.begin(), isl.cells.end(),
                                           std::make_pair(cx, cy))) {
                        isl.has_periodic_point = true;
                        isl.periodic_point = pt.z;
                        isl.period = p * k;
                        break;
                    }
                }
                if (!isl.has_periodic_point) still.push_back(m);
            }
            waiting = std::move(still);
        }
    }
}

const char* to_string(StabilityOutcome::Verdict v) {
    switch (v) {
        case StabilityOutcome::Verdict::StableWitness: return "stable-witness";
        case StabilityOutcome::Verdict::InstabilityWitness: return "instability-witness";
        case StabilityOutcome::Verdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

bool StabilityReport::all_stable() const {
    if (outcomes.empty()) return false;
    for (const StabilityOutcome& o : outcomes)
        if (o.verdict != StabilityOutcome::Verdict::StableWitness) return false;
    return true;
}

bool StabilityReport::all_escaped() const {
    if (outcomes.empty()) return false;
    for (const StabilityOutcome& o : outcomes)
        if (o.verdict != StabilityOutcome::Verdict::InstabilityWitness) return false;
    return true;
}

StabilityReport lyapunov_probe(const LiftMap& f, const Vec2& z, double epsilon,
                               std::span<const double> delta_list, long n_max, int samples,
                               std::uint64_t seed, int threads) {
    if (delta_list.empty()) throw ConfigError("delta list must be nonempty");
    for (std::size_t i = 0; i < delta_list.size(); ++i) {
        if (delta_list[i] <= 0.0) throw ConfigError("delta must be positive");
        if (i > 0 && delta_list[i] <= delta_list[i - 1])
            throw ConfigError("delta list must be strictly increasing");
        if (delta_list[i] > epsilon) throw ConfigError("delta larger than epsilon");
    }
    if (n_max < 1) throw ConfigError("n_max must be >= 1");
    if (n_max > 5'000'000) throw ConfigError("n_max beyond the supported probe range");
    if (samples < 1) throw ConfigError("need at least one probe sample");

    // Reference orbit, shared by every sample.
    std::vector<Vec2> ref(std::size_t(n_max) + 1);
    ref[0] = z;
    for (long n = 1; n <= n_max; ++n) {
        ref[n] = f(ref[n - 1]);
        if (!is_finite(ref[n]))
            throw NumericError("reference orbit left the finite range at step " +
                               std::to_string(n));
    }

    // Nested boundary rings: ring i belongs to every delta_j with j >= i.
    const double two_pi = 2.0 * std::numbers::pi;
    CounterRng base(seed, {0x4C594150ull});
    struct Probe {
        Vec2 start;
        std::size_t ring;
    };
    std::vector<Probe> probes;
    for (std::size_t i = 0; i < delta_list.size(); ++i) {
        CounterRng ring_rng = base.split(std::uint64_t(i));
        for (int k = 0; k < samples; ++k) {
            CounterRng rng = ring_rng.split(std::uint64_t(k));
            const double angle = two_pi * (double(k) + rng.next_double()) / double(samples);
            probes.push_back(
                {z + delta_list[i] * Vec2{std::cos(angle), std::sin(angle)}, i});
        }
    }

    struct ProbeResult {
        long escape_n = 0;     // 0 = never escaped
        double escape_sep = 0.0;
        double max_sep = 0.0;
    };
    std::vector<ProbeResult> results(probes.size());

    parallel_for(probes.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            Vec2 w = probes[s].start;
            ProbeResult r;
            const double sep0 = distance(w, ref[0]);
            r.max_sep = sep0;
            // Escape = reach epsilon AND at least double the initial offset.
            // The second clause keeps a probe launched at distance ~epsilon
            // (or one whose separation merely jitters by accumulated rounding)
            // from counting as an instability witness.
            for (long n = 1; n <= n_max; ++n) {
                w = f(w);
                const double sep = distance(w, ref[n]);
                if (!(sep == sep)) break;  // NaN: treat as lost, not escaped
                r.max_sep = std::max(r.max_sep, sep);
                if (sep >= epsilon && sep >= 2.0 * sep0) {
                    r.escape_n = n;
                    r.escape_sep = sep;
                    break;
                }
            }
            results[s] = r;
        }
    });

    StabilityReport report;
    report.point = z;
    report.epsilon = epsilon;
    for (std::size_t i = 0; i < delta_list.size(); ++i) {
        StabilityOutcome out;
        out.delta = delta_list[i];
        long first_escape = 0;
        double escape_sep = 0.0;
        double max_sep = 0.0;
        for (std::size_t s = 0; s < probes.size(); ++s) {
            if (probes[s].ring > i) continue;
            const ProbeResult& r = results[s];
            max_sep = std::max(max_sep, r.max_sep);
            if (r.escape_n > 0 && (first_escape == 0 || r.escape_n < first_escape)) {
                first_escape = r.escape_n;
                escape_sep = r.escape_sep;
            }
        }
        if (first_escape > 0) {
            out.verdict = StabilityOutcome::Verdict::InstabilityWitness;
            out.escape_n = first_escape;
            out.separation = escape_sep;
        } else if (max_sep <= 2.0 * delta_list[i]) {
            out.verdict = StabilityOutcome::Verdict::StableWitness;
            out.separation = max_sep;
        } else {
            out.verdict = StabilityOutcome::Verdict::Inconclusive;
            out.separation = max_sep;
        }
        report.outcomes.push_back(out);
    }
    return report;
}

SpreadingFit spreading_slope(const LiftMap& f, const Disk& disk, const Vec2& v,
                             std::span<const long> n_list, int samples, std::uint64_t seed,
                             int threads) {
    if (n_list.size() < 3) throw ConfigError("spreading fit needs at least three n");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (n_list[i] < 0) throw ConfigError("iterate counts must be nonnegative");
        if (i > 0 && n_list[i] <= n_list[i - 1])
            throw ConfigError("iterate counts must be strictly increasing");
    }
    const double len = norm(v);
    if (len == 0.0) throw ConfigError("direction vector must be nonzero");
    const Vec2 unit = v / len;
    const Vec2 across = perp(unit);

    const std::vector<Vec2> starts = sample_disk_with_boundary(disk, samples, seed);
    const std::size_t servings = n_list.size();
    std::vector<double> lo(servings, std::numeric_limits<double>::infinity());
    std::vector<double> hi(servings, -std::numeric_limits<double>::infinity());
    std::vector<double> proj(starts.size() * servings);

    parallel_for(starts.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            Vec2 zc = starts[s];
            long reached = 0;
            for (std::size_t c = 0; c < servings; ++c) {
                zc = iterate(f, zc, n_list[c] - reached);
                reached = n_list[c];
                proj[s * servings + c] = dot(zc, across);
            }
        }
    });
    for (std::size_t s = 0; s < starts.size(); ++s)
        for (std::size_t c = 0; c < servings; ++c) {
            lo[c] = std::min(lo[c], proj[s * servings + c]);
            hi[c] = std::max(hi[c], proj[s * servings + c]);
        }

    SpreadingFit fit;
    fit.v = unit;
    fit.n_list.assign(n_list.begin(), n_list.end());
    fit.extents.resize(servings);
    for (std::size_t c = 0; c < servings; ++c) fit.extents[c] = hi[c] - lo[c];
    fit_line(n_list, fit.extents, fit.slope, fit.intercept, fit.relative_residual);
    return fit;
}

}  // namespace torusrot
