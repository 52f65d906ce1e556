#include "torusrot/engine.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <thread>

#include "torusrot/errors.hpp"

namespace torusrot {

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
    if (count == 0) return;
    std::size_t workers = threads > 0 ? std::size_t(threads)
                                      : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, count);
    if (workers == 1) {
        fn(0, count);
        return;
    }
    const std::size_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto run = [&](std::size_t begin, std::size_t end) {
        try {
            fn(begin, end);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(run, begin, end);
    }
    run(0, std::min(chunk, count));
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

Vec2 iterate(const LiftMap& f, Vec2 z, long n) {
    if (!is_finite(z)) throw NumericError("non-finite start point");
    if (n >= 0) {
        for (long i = 0; i < n; ++i) {
            z = f(z);
            if (!is_finite(z))
                throw NumericError("orbit left the finite range at step " + std::to_string(i + 1));
        }
    } else {
        for (long i = 0; i > n; --i) {
            z = f.inverse(z);
            if (!is_finite(z))
                throw NumericError("orbit left the finite range at step " + std::to_string(i - 1));
        }
    }
    return z;
}

Vec2 phi_n(const LiftMap& f, const Vec2& z, long n) {
    if (n == 0) throw ConfigError("phi_n needs a nonzero iterate count");
    return (iterate(f, z, n) - z) / double(n);
}

Vec2 phi_window(const LiftMap& f, const Vec2& z, long n, long burn) {
    if (burn < 0 || burn >= n) throw ConfigError("burn-in must satisfy 0 <= burn < n");
    const Vec2 zb = iterate(f, z, burn);
    const Vec2 zn = iterate(f, zb, n - burn);
    return (zn - zb) / double(n - burn);
}

Vec2 deviation(const LiftMap& f, const Vec2& z, const RotationVector& rho, long n) {
    return iterate(f, z, n) - z - double(n) * rho;
}

double deviation_along(const LiftMap& f, const Vec2& z, const RotationVector& rho, long n,
                       const Vec2& v) {
    return dot(deviation(f, z, rho, n), v);
}

std::vector<Vec2> SweepResult::finite_cloud() const {
    std::vector<Vec2> cloud;
    cloud.reserve(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i)
        if (ok[i]) cloud.push_back(phi[i]);
    return cloud;
}

SweepResult sweep(const LiftMap& f, const GridSpec& grid, long n, long burn_in, int threads) {
    if (grid.nx <= 0 || grid.ny <= 0) throw ConfigError("sweep grid must be nonempty");
    if (burn_in < 0 || burn_in >= n) throw ConfigError("burn-in must satisfy 0 <= burn < n");

    SweepResult r;
    r.grid = grid;
    r.n = n;
    r.burn_in = burn_in;
    r.map_description = f.description();
    const std::size_t total = grid.count();
    r.start.resize(total);
    r.phi.assign(total, Vec2{0.0, 0.0});
    r.ok.assign(total, 0);

    for (int iy = 0; iy < grid.ny; ++iy)
        for (int ix = 0; ix < grid.nx; ++ix) r.start[r.index(ix, iy)] = grid.point(ix, iy);

    parallel_for(total, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            try {
                r.phi[i] = phi_window(f, r.start[i], n, burn_in);
                r.ok[i] = 1;
            } catch (const NumericError&) {
                r.phi[i] = Vec2{0.0, 0.0};
                r.ok[i] = 0;
            }
        }
    });
    return r;
}

std::vector<Vec2> sample_disk(const Disk& disk, int count, std::uint64_t seed) {
    if (count <= 0) throw ConfigError("sample count must be positive");
    if (disk.radius <= 0.0) throw ConfigError("disk radius must be positive");
    std::vector<Vec2> pts;
    pts.reserve(std::size_t(count));
    const int g = std::max(1, int(std::ceil(std::sqrt(double(count)))));
    const double cell = 2.0 * disk.radius / double(g);
    const Vec2 corner = disk.center - Vec2{disk.radius, disk.radius};
    CounterRng base(seed, {0x4449534Bull});
    for (std::uint64_t round = 0; pts.size() < std::size_t(count); ++round) {
        for (int j = 0; j < g && pts.size() < std::size_t(count); ++j) {
            for (int i = 0; i < g && pts.size() < std::size_t(count); ++i) {
                CounterRng rng =
                    base.split(round * std::uint64_t(g) * std::uint64_t(g) + std::uint64_t(j) * g + i);
                const Vec2 p = corner + Vec2{(i + rng.next_double()) * cell,
                                             (j + rng.next_double()) * cell};
                if (distance(p, disk.center) <= disk.radius) pts.push_back(p);
            }
        }
    }
    return pts;
}

std::vector<Vec2> sample_disk_with_boundary(const Disk& disk, int count, std::uint64_t seed) {
    if (count <= 0) throw ConfigError("sample count must be positive");
    if (disk.radius <= 0.0) throw ConfigError("disk radius must be positive");
    const int boundary = std::max(1, count / 2);
    std::vector<Vec2> pts;
    pts.reserve(std::size_t(count));
    CounterRng base(seed, {0x424F554Eull});
    const double two_pi = 2.0 * std::numbers::pi;
    for (int k = 0; k < boundary; ++k) {
        CounterRng rng = base.split(std::uint64_t(k));
        const double angle = two_pi * (double(k) + rng.next_double()) / double(boundary);
        pts.push_back(disk.center + disk.radius * Vec2{std::cos(angle), std::sin(angle)});
    }
    if (count > boundary) {
        const std::vector<Vec2> inner = sample_disk(disk, count - boundary, seed);
        pts.insert(pts.end(), inner.begin(), inner.end());
    }
    return pts;
}

std::vector<double> orbit_diameter_growth(const LiftMap& f, const Disk& disk,
                                          std::span<const long> n_list, int samples,
                                          std::uint64_t seed, int threads) {
    if (n_list.empty()) throw ConfigError("orbit_diameter_growth needs at least one n");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (n_list[i] < 0) throw ConfigError("iterate counts must be nonnegative");
        if (i > 0 && n_list[i] <= n_list[i - 1])
            throw ConfigError("iterate counts must be strictly increasing");
    }

    const std::vector<Vec2> starts = sample_disk_with_boundary(disk, samples, seed);
    const std::size_t servings = n_list.size();
    std::vector<Vec2> at(starts.size() * servings);

    parallel_for(starts.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            Vec2 z = starts[s];
            long reached = 0;
            for (std::size_t c = 0; c < servings; ++c) {
                z = iterate(f, z, n_list[c] - reached);
                reached = n_list[c];
                at[s * servings + c] = z;
            }
        }
    });

    std::vector<double> diam(servings, 0.0);
    for (std::size_t c = 0; c < servings; ++c) {
        double d = 0.0;
        for (std::size_t i = 0; i < starts.size(); ++i)
            for (std::size_t j = i + 1; j < starts.size(); ++j)
                d = std::max(d, distance(at[i * servings + c], at[j * servings + c]));
        diam[c] = d;
    }
    return diam;
}

}  // namespace torusrot
