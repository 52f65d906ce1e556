#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "torusrot/lift.hpp"
#include "torusrot/rng.hpp"
#include "torusrot/vec2.hpp"

namespace torusrot {

// Uniform grid over the fundamental domain: points ((i+ox)/nx, (j+oy)/ny)
// for 0 <= i < nx, 0 <= j < ny. The offset is a sub-cell shift in cell
// units, normally in [0, 1).
struct GridSpec {
    int nx = 0;
    int ny = 0;
    Vec2 offset{0.0, 0.0};

    Vec2 point(int ix, int iy) const {
        return {(double(ix) + offset.x) / double(nx), (double(iy) + offset.y) / double(ny)};
    }
    std::size_t count() const { return std::size_t(nx) * std::size_t(ny); }
};

// Runs fn over [0, count) in contiguous chunks. `threads` <= 0 picks the
// hardware count. Work is partitioned statically by index, so anything
// written into per-index slots is identical for every thread count.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t begin, std::size_t end)>& fn);

// n-th iterate of the lift; negative n walks the inverse (requires one).
// Throws NumericError naming the first step that left the finite range.
Vec2 iterate(const LiftMap& f, Vec2 z, long n);

// Mean displacement (F^n(z) - z) / n. n must be nonzero.
Vec2 phi_n(const LiftMap& f, const Vec2& z, long n);

// Mean displacement over a window: (F^n(z) - F^burn(z)) / (n - burn),
// which discards a transient of `burn` iterates. Requires 0 <= burn < n.
Vec2 phi_window(const LiftMap& f, const Vec2& z, long n, long burn);

// Deviation from linear drift: D_n(z, rho) = F^n(z) - z - n*rho.
Vec2 deviation(const LiftMap& f, const Vec2& z, const RotationVector& rho, long n);

// Projection <D_n(z, rho), v>. The inner product is taken literally with
// the v that is passed in; pass a unit vector for a calibrated reading.
double deviation_along(const LiftMap& f, const Vec2& z, const RotationVector& rho, long n,
                       const Vec2& v);

// Mean displacements for every grid start. Points whose orbit left the
// finite range carry ok = 0 and a zero phi; everything else is finite.
// The result is bit-identical for every worker count.
struct SweepResult {
    GridSpec grid;
    long n = 0;
    long burn_in = 0;
    std::string map_description;
    std::vector<Vec2> start;       // row-major: index = iy*nx + ix
    std::vector<Vec2> phi;
    std::vector<std::uint8_t> ok;

    std::size_t index(int ix, int iy) const { return std::size_t(iy) * grid.nx + ix; }
    std::vector<Vec2> finite_cloud() const;
};

SweepResult sweep(const LiftMap& f, const GridSpec& grid, long n, long burn_in = 0,
                  int threads = 0);

// Seeded start points for a lifted disk: roughly half the budget on the
// boundary circle (jittered angles), the rest on a stratified jittered
// grid inside. Points live on the plane (one lifted copy), not the torus.
std::vector<Vec2> sample_disk(const Disk& disk, int count, std::uint64_t seed);
std::vector<Vec2> sample_disk_with_boundary(const Disk& disk, int count, std::uint64_t seed);

// Diameter (max pairwise distance) of the n-th image of a sampled lifted
// disk, for each n in ascending n_list. Index 64 samples by default.
std::vector<double> orbit_diameter_growth(const LiftMap& f, const Disk& disk,
                                          std::span<const long> n_list, int samples = 64,
                                          std::uint64_t seed = kDefaultSeed, int threads = 0);

}  // namespace torusrot
