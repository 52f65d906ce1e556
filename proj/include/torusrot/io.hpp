#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "torusrot/classify.hpp"
#include "torusrot/lattice.hpp"

namespace torusrot::io {

using json = nlohmann::ordered_json;

// Shortest fixed-precision form that round-trips a double (%.17g).
std::string format_double(double x);

// Whole-file helpers, binary mode. Throw ConfigError on failure.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);

// CSV emitters. '.' decimal point, %.17g values, one header line, '\n'
// line ends. Flags are 0/1 columns.
std::string sweep_csv(const SweepResult& sweep);               // ix,iy,x0,y0,phix,phiy,ok
std::string cloud_csv(std::span<const Vec2> cloud, const std::string& xname = "x",
                      const std::string& yname = "y");
std::string labels_csv(const LabelGrid& labels);               // ix,iy,label,wx,wy,diameter,area,cluster_warning
std::string periodic_csv(const PeriodicSearchReport& report);  // x,y,residual,via_fallback

// JSON emitters. Vec2 serializes as [x, y]; hulls carry their vertices
// plus derived area/diameter; estimates embed their structure verdict.
// Clouds are included only on request (they dominate the file size).
json to_json(const Vec2& v);
json to_json(const GridSpec& grid);
json to_json(const Disk& disk);
json to_json(const ConvexPolygon& hull);
json to_json(const RationalApprox& r);
json to_json(const StructureVerdict& verdict);
json to_json(const RotationSetEstimate& est, bool include_cloud = false);
json to_json(const LocalRotationEstimate& est, bool include_cloud = false);
json to_json(const ClassificationLabel& label);
json to_json(const LabelGrid& labels);
json to_json(std::span<const IslandRegion> islands);
json to_json(const PeriodicSearchReport& report, int period, long wx, long wy);
json to_json(const StabilityReport& report);
json to_json(const SpreadingFit& fit);

// Parse-back of the emitted schemas (throws ConfigError on shape errors).
Vec2 vec2_from_json(const json& j);
ConvexPolygon polygon_from_json(const json& j);

// Anything with a "hull" member (rotation-set or local-rotation output,
// or a bare {"hull": {...}} object), plus an optional "cloud".
struct RotationData {
    ConvexPolygon hull;
    std::vector<Vec2> cloud;
};
RotationData rotation_data_from_json(const json& j);

// Accumulation raster for orbit portraits. Row-major, pixel (0, 0) at the
// top-left; the torus point (x, y) lands in column floor(x * width) and
// row height - 1 - floor(y * height), so y grows upward in the image.
struct PortraitAccumulator {
    int width = 0;
    int height = 0;
    std::vector<std::uint32_t> counts;  // hits per pixel
    std::vector<std::int32_t> owner;    // smallest start index seen, -1 = none

    PortraitAccumulator(int w, int h);
    void hit(const Vec2& plane_point, int start_index);
    void merge(const PortraitAccumulator& other);
};

// Accumulates the iterates burn_in < i <= n of every start (wrapped to the
// fundamental domain). An orbit that leaves the finite range just stops
// contributing. Identical output for every thread count.
PortraitAccumulator render_portrait(const LiftMap& f, std::span<const Vec2> starts, long n,
                                    long burn_in, int width, int height, int threads = 0);

// Binary PGM (P5), maxval 255: white background, hit pixels darken by
// 255 * (count / max_count)^0.5. The square root lifts faint structure
// that a linear scale would crush.
std::string encode_pgm(const PortraitAccumulator& acc);

// Binary PPM (P6): each hit pixel takes the palette color of the lowest
// start index that reached it, faded toward white by the same square-root
// intensity. Lets one image carry several orbits apart.
std::string encode_ppm(const PortraitAccumulator& acc);

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
};
Rgb palette_color(int index);  // 12 fixed colors, cycled

}  // namespace torusrot::io
