#include "torusrot/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>

#include "torusrot/errors.hpp"

namespace torusrot::io {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "' for reading");
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
}

void write_file(const std::string& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out.write(bytes.data(), std::streamsize(bytes.size()));
    if (!out) throw ConfigError("short write to '" + path + "'");
}

// ------------------------------------------------------------------ CSV

std::string sweep_csv(const SweepResult& sweep) {
    std::string out = "ix,iy,x0,y0,phix,phiy,ok\n";
    for (int iy = 0; iy < sweep.grid.ny; ++iy) {
        for (int ix = 0; ix < sweep.grid.nx; ++ix) {
            const std::size_t i = sweep.index(ix, iy);
            out += std::to_string(ix) + ',' + std::to_string(iy) + ',';
            out += format_double(sweep.start[i].x) + ',' + format_double(sweep.start[i].y) + ',';
            out += format_double(sweep.phi[i].x) + ',' + format_double(sweep.phi[i].y) + ',';
            out += sweep.ok[i] ? '1' : '0';
            out += '\n';
        }
    }
    return out;
}

std::string cloud_csv(std::span<const Vec2> cloud, const std::string& xname,
                      const std::string& yname) {
    std::string out = xname + ',' + yname + '\n';
    for (const Vec2& p : cloud) out += format_double(p.x) + ',' + format_double(p.y) + '\n';
    return out;
}

std::string labels_csv(const LabelGrid& labels) {
    std::string out = "ix,iy,label,wx,wy,diameter,area,cluster_warning\n";
    for (int iy = 0; iy < labels.grid.ny; ++iy) {
        for (int ix = 0; ix < labels.grid.nx; ++ix) {
            const ClassificationLabel& l = labels.at(ix, iy);
            out += std::to_string(ix) + ',' + std::to_string(iy) + ',';
            out += to_string(l.kind);
            out += ',';
            out += format_double(l.witness.x) + ',' + format_double(l.witness.y) + ',';
            out += format_double(l.diameter) + ',' + format_double(l.area) + ',';
            out += l.cluster_warning ? '1' : '0';
            out += '\n';
        }
    }
    return out;
}

std::string periodic_csv(const PeriodicSearchReport& report) {
    std::string out = "x,y,residual,via_fallback\n";
    for (const PeriodicPoint& p : report.points) {
        out += format_double(p.z.x) + ',' + format_double(p.z.y) + ',';
        out += format_double(p.residual) + ',';
        out += p.via_fallback ? '1' : '0';
        out += '\n';
    }
    return out;
}

// ----------------------------------------------------------------- JSON

json to_json(const Vec2& v) { return json::array({v.x, v.y}); }

json to_json(const GridSpec& grid) {
    return {{"nx", grid.nx}, {"ny", grid.ny}, {"offset", to_json(grid.offset)}};
}

json to_json(const Disk& disk) {
    return {{"center", to_json(disk.center)}, {"radius", disk.radius}};
}

json to_json(const ConvexPolygon& hull) {
    json verts = json::array();
    for (const Vec2& v : hull.vertices) verts.push_back(to_json(v));
    return {{"vertices", std::move(verts)},
            {"area", hull_area(hull)},
            {"diameter", hull_diameter(hull)}};
}

json to_json(const RationalApprox& r) {
    return {{"p", r.p}, {"q", r.q}, {"found", r.found}};
}

json to_json(const StructureVerdict& verdict) {
    json j = {{"kind", to_string(verdict.kind)},
              {"witness", to_json(verdict.witness)},
              {"px", to_json(verdict.px)},
              {"py", to_json(verdict.py)},
              {"diameter", verdict.diameter},
              {"area", verdict.area}};
    if (verdict.kind == StructureKind::Segment)
        j["segment"] = json::array({to_json(verdict.segment_a), to_json(verdict.segment_b)});
    return j;
}

namespace {
json cloud_to_json(std::span<const Vec2> cloud) {
    json arr = json::array();
    for (const Vec2& p : cloud) arr.push_back(to_json(p));
    return arr;
}
}  // namespace

json to_json(const RotationSetEstimate& est, bool include_cloud) {
    json j = {{"type", "rotation-set"},
              {"map", est.map_description},
              {"grid", to_json(est.grid)},
              {"n", est.n},
              {"burn_in", est.burn_in},
              {"hull", to_json(est.hull)},
              {"structure", to_json(detect_structure(est.hull))},
              {"cloud_size", est.cloud.size()}};
    if (include_cloud) j["cloud"] = cloud_to_json(est.cloud);
    return j;
}

json to_json(const LocalRotationEstimate& est, bool include_cloud) {
    json j = {{"type", "local-rotation"},
              {"map", est.map_description},
              {"disk", to_json(est.disk)},
              {"n", est.n},
              {"samples", est.samples},
              {"hull", to_json(est.hull)},
              {"structure", to_json(detect_structure(est.hull))},
              {"cluster_warning", est.cluster_warning},
              {"max_gap", est.max_gap},
              {"median_gap", est.median_gap},
              {"cloud_size", est.cloud.size()}};
    if (include_cloud) j["cloud"] = cloud_to_json(est.cloud);
    return j;
}

json to_json(const ClassificationLabel& label) {
    return {{"label", to_string(label.kind)},
            {"witness", to_json(label.witness)},
            {"diameter", label.diameter},
            {"area", label.area},
            {"cluster_warning", label.cluster_warning},
            {"structure", to_json(label.verdict)}};
}

json to_json(const LabelGrid& labels) {
    json cells = json::array();
    for (int iy = 0; iy < labels.grid.ny; ++iy) {
        for (int ix = 0; ix < labels.grid.nx; ++ix) {
            json cell = {{"ix", ix}, {"iy", iy}};
            cell.update(to_json(labels.at(ix, iy)));
            cells.push_back(std::move(cell));
        }
    }
    return {{"type", "classification"},
            {"grid", to_json(labels.grid)},
            {"disk_radius", labels.disk_radius},
            {"schedule", labels.schedule},
            {"cells", std::move(cells)}};
}

json to_json(std::span<const IslandRegion> islands) {
    json arr = json::array();
    for (const IslandRegion& isl : islands) {
        json cells = json::array();
        for (const auto& [ix, iy] : isl.cells) cells.push_back(json::array({ix, iy}));
        json j = {{"witness", to_json(isl.witness)},
                  {"period", isl.period},
                  {"cell_count", isl.cells.size()},
                  {"cells", std::move(cells)},
                  {"has_periodic_point", isl.has_periodic_point}};
        j["periodic_point"] = isl.has_periodic_point ? to_json(isl.periodic_point) : json();
        arr.push_back(std::move(j));
    }
    return {{"type", "islands"}, {"islands", std::move(arr)}};
}

json to_json(const PeriodicSearchReport& report, int period, long wx, long wy) {
    json pts = json::array();
    for (const PeriodicPoint& p : report.points)
        pts.push_back({{"z", to_json(p.z)},
                       {"residual", p.residual},
                       {"via_fallback", p.via_fallback}});
    return {{"type", "periodic-points"},
            {"period", period},
            {"w", json::array({wx, wy})},
            {"candidates", report.candidates},
            {"newton_failures", report.newton_failures},
            {"points", std::move(pts)}};
}

json to_json(const StabilityReport& report) {
    json outs = json::array();
    for (const StabilityOutcome& o : report.outcomes)
        outs.push_back({{"delta", o.delta},
                        {"verdict", to_string(o.verdict)},
                        {"escape_n", o.escape_n},
                        {"separation", o.separation}});
    return {{"type", "stability"},
            {"point", to_json(report.point)},
            {"epsilon", report.epsilon},
            {"outcomes", std::move(outs)},
            {"all_stable", report.all_stable()},
            {"all_escaped", report.all_escaped()}};
}

json to_json(const SpreadingFit& fit) {
    return {{"type", "spreading"},
            {"v", to_json(fit.v)},
            {"slope", fit.slope},
            {"intercept", fit.intercept},
            {"relative_residual", fit.relative_residual},
            {"n", fit.n_list},
            {"extents", fit.extents}};
}

Vec2 vec2_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError("expected a [x, y] pair in JSON input");
    return {j[0].get<double>(), j[1].get<double>()};
}

ConvexPolygon polygon_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
        throw ConfigError("expected a hull object with a 'vertices' array");
    ConvexPolygon hull;
    for (const json& v : j["vertices"]) hull.vertices.push_back(vec2_from_json(v));
    return hull;
}

RotationData rotation_data_from_json(const json& j) {
    if (!j.is_object() || !j.contains("hull"))
        throw ConfigError("rotation data JSON needs a 'hull' member");
    RotationData data;
    data.hull = polygon_from_json(j["hull"]);
    if (j.contains("cloud")) {
        if (!j["cloud"].is_array()) throw ConfigError("'cloud' must be an array of pairs");
        for (const json& p : j["cloud"]) data.cloud.push_back(vec2_from_json(p));
    }
    return data;
}

// --------------------------------------------------------------- images

PortraitAccumulator::PortraitAccumulator(int w, int h) : width(w), height(h) {
    if (w < 1 || h < 1) throw ConfigError("image dimensions must be at least 1x1");
    counts.assign(std::size_t(w) * h, 0);
    owner.assign(std::size_t(w) * h, -1);
}

void PortraitAccumulator::hit(const Vec2& plane_point, int start_index) {
    const Vec2 t = wrap_unit(plane_point);
    int px = int(t.x * width);
    int py = int(t.y * height);
    px = std::min(px, width - 1);
    py = std::min(py, height - 1);
    const std::size_t i = std::size_t(height - 1 - py) * width + px;
    ++counts[i];
    if (owner[i] < 0 || start_index < owner[i]) owner[i] = start_index;
}

void PortraitAccumulator::merge(const PortraitAccumulator& other) {
    for (std::size_t i = 0; i < counts.size(); ++i) {
        counts[i] += other.counts[i];
        if (other.owner[i] >= 0 && (owner[i] < 0 || other.owner[i] < owner[i]))
            owner[i] = other.owner[i];
    }
}

PortraitAccumulator render_portrait(const LiftMap& f, std::span<const Vec2> starts, long n,
                                    long burn_in, int width, int height, int threads) {
    if (n < 1) throw ConfigError("portrait needs at least one iterate");
    if (burn_in < 0 || burn_in >= n) throw ConfigError("burn-in must lie in [0, n)");

    PortraitAccumulator acc(width, height);
    std::mutex merge_mutex;
    parallel_for(starts.size(), threads, [&](std::size_t begin, std::size_t end) {
        PortraitAccumulator local(width, height);
        for (std::size_t s = begin; s < end; ++s) {
            Vec2 z = starts[s];
            for (long i = 1; i <= n; ++i) {
                z = f(z);
                if (!is_finite(z)) break;
                if (i > burn_in) local.hit(z, int(s));
            }
        }
        // Counts add and owners take minima, so merge order cannot matter.
        std::lock_guard<std::mutex> lock(merge_mutex);
        acc.merge(local);
    });
    return acc;
}

namespace {
double max_count(const PortraitAccumulator& acc) {
    std::uint32_t m = 0;
    for (std::uint32_t c : acc.counts) m = std::max(m, c);
    return double(m);
}

std::uint8_t intensity(std::uint32_t count, double max) {
    if (count == 0 || max <= 0.0) return 0;
    return std::uint8_t(std::lround(255.0 * std::sqrt(double(count) / max)));
}
}  // namespace

std::string encode_pgm(const PortraitAccumulator& acc) {
    std::string out = "P5\n" + std::to_string(acc.width) + ' ' + std::to_string(acc.height) +
                      "\n255\n";
    out.reserve(out.size() + acc.counts.size());
    const double max = max_count(acc);
    for (std::uint32_t c : acc.counts) out += char(255 - intensity(c, max));
    return out;
}

std::string encode_ppm(const PortraitAccumulator& acc) {
    std::string out = "P6\n" + std::to_string(acc.width) + ' ' + std::to_string(acc.height) +
                      "\n255\n";
    out.reserve(out.size() + acc.counts.size() * 3);
    const double max = max_count(acc);
    for (std::size_t i = 0; i < acc.counts.size(); ++i) {
        if (acc.owner[i] < 0) {
            out += char(255);
            out += char(255);
            out += char(255);
            continue;
        }
        const Rgb color = palette_color(acc.owner[i]);
        const double t = intensity(acc.counts[i], max) / 255.0;
        out += char(std::lround(255.0 + t * (color.r - 255.0)));
        out += char(std::lround(255.0 + t * (color.g - 255.0)));
        out += char(std::lround(255.0 + t * (color.b - 255.0)));
    }
    return out;
}

Rgb palette_color(int index) {
    static constexpr Rgb kPalette[12] = {
        {178, 24, 43},   {33, 102, 172},  {27, 120, 55},   {230, 97, 1},
        {118, 42, 131},  {1, 102, 94},    {140, 81, 10},   {197, 27, 125},
        {77, 77, 77},    {5, 48, 97},     {127, 59, 8},    {64, 0, 75},
    };
    int i = index % 12;
    if (i < 0) i += 12;
    return kPalette[i];
}

}  // namespace torusrot::io
