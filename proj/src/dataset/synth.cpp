#include "solis/dataset/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "solis/dataset/manifest.hpp"
#include "solis/io/png_io.hpp"
#include "solis/util/errors.hpp"

namespace solis {

std::string to_string(BackgroundMode m) {
    switch (m) {
        case BackgroundMode::Plain: return "plain";
        case BackgroundMode::Gradient: return "gradient";
        case BackgroundMode::Textured: return "textured";
    }
    return "plain";
}

BackgroundMode background_mode_from_string(const std::string& s) {
    if (s == "plain") return BackgroundMode::Plain;
    if (s == "gradient") return BackgroundMode::Gradient;
    if (s == "textured") return BackgroundMode::Textured;
    throw ConfigError("unknown background mode: \"" + s + "\"");
}

void SynthConfig::validate() const {
    if (n_samples < 2) throw ConfigError("synth: n_samples must be >= 2");
    if (image_size < 48) throw ConfigError("synth: image_size must be >= 48");
    auto range_ok = [](const std::array<double, 2>& r) {
        return r[0] >= 0.0 && r[1] <= 1.0 && r[0] <= r[1];
    };
    if (!range_ok(turbidity_undissolved_range) || !range_ok(turbidity_dissolved_range))
        throw ConfigError("synth: turbidity ranges must satisfy 0 <= lo <= hi <= 1");
    if (!(turbidity_dissolved_range[1] < turbidity_undissolved_range[0]))
        throw ConfigError("synth: dissolved turbidity range must lie strictly below the "
                          "undissolved range");
    if (background_modes.empty()) throw ConfigError("synth: no background modes");
    if (lighting_jitter < 0.0 || lighting_jitter > 1.0 || vial_position_jitter < 0.0 ||
        vial_position_jitter > 1.0)
        throw ConfigError("synth: jitter values must be in [0, 1]");
}

namespace {

// Per-pixel hash noise in [0, 1); pure function of (seed, x, y).
inline double hash01(std::uint64_t seed, std::int64_t x, std::int64_t y) {
    std::uint64_t h = RngStream::mix(seed ^ RngStream::mix(static_cast<std::uint64_t>(x) * 0x9E3779B97F4A7C15ull ^
                                                           static_cast<std::uint64_t>(y)));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Two-octave value noise on a 16 px lattice, range roughly [-1, 1].
double value_noise(std::uint64_t seed, int x, int y) {
    double total = 0.0, amp = 1.0;
    int cell = 16;
    for (int oct = 0; oct < 2; ++oct) {
        const int gx = x / cell, gy = y / cell;
        const double fx = static_cast<double>(x % cell) / cell;
        const double fy = static_cast<double>(y % cell) / cell;
        const double v00 = hash01(seed + oct, gx, gy);
        const double v01 = hash01(seed + oct, gx + 1, gy);
        const double v10 = hash01(seed + oct, gx, gy + 1);
        const double v11 = hash01(seed + oct, gx + 1, gy + 1);
        const double v = (1 - fy) * ((1 - fx) * v00 + fx * v01) +
                         fy * ((1 - fx) * v10 + fx * v11);
        total += amp * (2.0 * v - 1.0);
        amp *= 0.5;
        cell /= 2;
    }
    return total / 1.5;
}

inline std::uint8_t quantize(double v) {
    return static_cast<std::uint8_t>(std::clamp<long>(std::lround(v), 0L, 255L));
}

struct VialGeometry {
    int w, h, wall, cap_h, corner_r;
    int liquid_top;  // local y of the liquid surface

    bool inside_body(int lx, int ly) const {
        if (lx < 0 || lx >= w || ly < 0 || ly >= h) return false;
        // rounded bottom corners
        if (ly >= h - corner_r) {
            if (lx < corner_r) {
                const int dx = corner_r - 1 - lx, dy = ly - (h - corner_r);
                if (dx * dx + dy * dy > corner_r * corner_r) return false;
            } else if (lx >= w - corner_r) {
                const int dx = lx - (w - corner_r), dy = ly - (h - corner_r);
                if (dx * dx + dy * dy > corner_r * corner_r) return false;
            }
        }
        return true;
    }

    bool in_interior(int lx, int ly) const {
        return lx >= wall && lx < w - wall && ly >= cap_h && ly < h - wall;
    }
};

}  // namespace

SceneParams sample_scene(const SynthConfig& config, SolubilityLabel label, RngStream& rng) {
    SceneParams p;
    p.label = label;
    const auto& range = (label == SolubilityLabel::Undissolved)
                            ? config.turbidity_undissolved_range
                            : config.turbidity_dissolved_range;
    p.turbidity = rng.uniform(range[0], range[1]);

    const double s = config.image_size;
    p.vial_w = std::max(18, static_cast<int>(std::lround(rng.uniform(0.22, 0.34) * s)));
    p.vial_h = std::max(36, static_cast<int>(std::lround(rng.uniform(0.50, 0.68) * s)));
    p.wall = std::max(2, static_cast<int>(std::lround(p.vial_w * 0.09)));
    p.cap_h = std::max(3, static_cast<int>(std::lround(p.vial_h * 0.12)));
    p.corner_r = std::min(p.wall + 1, 4);
    p.fill_fraction = rng.uniform(0.45, 0.80);

    const double gj = rng.uniform(-6.0, 6.0);
    p.glass_color = {56.0 + gj, 58.0 + gj, 62.0 + gj};
    p.cap_color = {68.0 + gj, 70.0 + gj, 76.0 + gj};
    p.liquid_tint = {rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0), rng.uniform(-2.0, 6.0)};

    p.bg_mode = config.background_modes[static_cast<std::size_t>(
        rng.uniform_int(config.background_modes.size()))];
    const double base = rng.uniform(172.0, 212.0);
    p.bg_base = {base + rng.uniform(-4.0, 4.0), base + rng.uniform(-4.0, 4.0),
                 base + rng.uniform(-4.0, 4.0)};
    if (p.bg_mode == BackgroundMode::Gradient) {
        p.bg_ramp = rng.uniform(18.0, 32.0);  // total excursion around the base
        const double ang = rng.uniform(0.0, 6.283185307179586);
        p.bg_dir_x = std::cos(ang);
        p.bg_dir_y = std::sin(ang);
    }
    p.lighting = 1.0 + config.lighting_jitter * rng.uniform(-1.0, 1.0);
    p.speckle_seed = rng.next_u64();
    p.noise_seed = rng.next_u64();
    return p;
}

std::pair<int, int> sample_position(const SynthConfig& config, const SceneParams& params,
                                    RngStream& rng) {
    const int s = config.image_size;
    const double amp = config.vial_position_jitter * s;
    const int dx = static_cast<int>(std::lround(rng.uniform(-amp, amp)));
    const int dy = static_cast<int>(std::lround(rng.uniform(-amp, amp)));
    int x0 = (s - params.vial_w) / 2 + dx;
    int y0 = (s - params.vial_h) / 2 + dy;
    x0 = std::clamp(x0, 2, s - params.vial_w - 2);
    y0 = std::clamp(y0, 2, s - params.vial_h - 2);
    return {x0, y0};
}

RenderedScene render_scene(const SceneParams& p, int image_size, int vial_x0, int vial_y0) {
    RenderedScene scene;
    scene.image = ImageRGB(image_size, image_size);
    ImageRGB& img = scene.image;

    VialGeometry geo{p.vial_w, p.vial_h, p.wall, p.cap_h, p.corner_r, 0};
    const int interior_h = p.vial_h - p.wall - p.cap_h;
    geo.liquid_top =
        p.cap_h + static_cast<int>(std::lround((1.0 - p.fill_fraction) * interior_h));

    const double liquid_base = 60.0 + p.turbidity * 140.0;
    const double speckle_density =
        p.label == SolubilityLabel::Undissolved ? 0.10 + 0.30 * p.turbidity : 0.0;

    // stir bar: dark rounded bar resting on the vial bottom
    const int bar_h = std::max(2, static_cast<int>(std::lround(0.05 * p.vial_h)));
    const int bar_w = static_cast<int>(std::lround(0.6 * (p.vial_w - 2 * p.wall)));
    const int bar_x0 = p.wall + (p.vial_w - 2 * p.wall - bar_w) / 2;
    const int bar_y0 = p.vial_h - p.wall - bar_h;

    const double inv_diag = 1.0 / image_size;

    for (int y = 0; y < image_size; ++y) {
        for (int x = 0; x < image_size; ++x) {
            const int lx = x - vial_x0, ly = y - vial_y0;
            double r, g, b;

            // background (global coordinates)
            double br = p.bg_base[0], bg = p.bg_base[1], bb = p.bg_base[2];
            if (p.bg_mode == BackgroundMode::Gradient) {
                const double t =
                    (p.bg_dir_x * x + p.bg_dir_y * y) * inv_diag - 0.5 * (p.bg_dir_x + p.bg_dir_y);
                br += p.bg_ramp * t;
                bg += p.bg_ramp * t;
                bb += p.bg_ramp * t;
            } else if (p.bg_mode == BackgroundMode::Textured) {
                const double nv = 22.0 * value_noise(p.noise_seed, x, y);
                br += nv;
                bg += nv;
                bb += nv;
            }

            if (geo.inside_body(lx, ly)) {
                if (ly < p.cap_h) {
                    r = p.cap_color[0];
                    g = p.cap_color[1];
                    b = p.cap_color[2];
                } else if (!geo.in_interior(lx, ly)) {
                    r = p.glass_color[0];
                    g = p.glass_color[1];
                    b = p.glass_color[2];
                } else if (ly < geo.liquid_top) {
                    // headspace: transparent glass, background shows through
                    r = 0.82 * br + 0.18 * p.glass_color[0];
                    g = 0.82 * bg + 0.18 * p.glass_color[1];
                    b = 0.82 * bb + 0.18 * p.glass_color[2];
                } else {
                    // liquid column
                    const double shade =
                        -7.0 * static_cast<double>(ly - geo.liquid_top) /
                        std::max(1, p.vial_h - p.wall - geo.liquid_top);
                    r = liquid_base + p.liquid_tint[0] + shade;
                    g = liquid_base + p.liquid_tint[1] + shade;
                    b = liquid_base + p.liquid_tint[2] + shade;
                    if (ly - geo.liquid_top < 2) {  // meniscus highlight
                        r += 22.0;
                        g += 22.0;
                        b += 22.0;
                    }
                    if (speckle_density > 0.0) {
                        const double u = hash01(p.speckle_seed, lx, ly);
                        if (u < speckle_density) {
                            const double speck =
                                195.0 + 60.0 * hash01(p.speckle_seed ^ 0x5bd1e995, lx, ly);
                            r = g = b = speck;
                        }
                    }
                    if (lx >= bar_x0 && lx < bar_x0 + bar_w && ly >= bar_y0 &&
                        ly < bar_y0 + bar_h) {
                        r = 35.0;
                        g = 35.0;
                        b = 39.0;
                    }
                }
            } else {
                r = br;
                g = bg;
                b = bb;
            }

            img.set(y, x, quantize(r * p.lighting), quantize(g * p.lighting),
                    quantize(b * p.lighting));
        }
    }

    scene.vial_box = {vial_x0, vial_y0, vial_x0 + p.vial_w, vial_y0 + p.vial_h};
    scene.liquid_box = {vial_x0 + p.wall, vial_y0 + geo.liquid_top, vial_x0 + p.vial_w - p.wall,
                        vial_y0 + p.vial_h - p.wall};
    return scene;
}

std::filesystem::path generate_synthetic(const SynthConfig& config,
                                         const std::filesystem::path& out_dir) {
    config.validate();
    std::error_code ec;
    std::filesystem::create_directories(out_dir / "images", ec);
    if (ec) throw IoError("cannot create output directory " + (out_dir / "images").string());

    static const std::array<std::pair<const char*, const char*>, 6> kCombos{{
        {"caffeine", "water"},
        {"caffeine", "ethanol"},
        {"caffeine", "acetone"},
        {"benzimidazole", "water"},
        {"benzimidazole", "ethanol"},
        {"benzimidazole", "acetone"},
    }};

    std::vector<SampleRecord> records;
    records.reserve(config.n_samples);
    for (int i = 0; i < config.n_samples; ++i) {
        const SolubilityLabel label =
            (i % 2 == 0) ? SolubilityLabel::Undissolved : SolubilityLabel::Dissolved;
        RngStream rng = RngStream::derive(config.seed, {rng_tag::kSynth, static_cast<std::uint64_t>(i)});
        const SceneParams params = sample_scene(config, label, rng);
        const auto [x0, y0] = sample_position(config, params, rng);
        const RenderedScene scene = render_scene(params, config.image_size, x0, y0);

        char name[32];
        std::snprintf(name, sizeof(name), "synth-%06d", i);
        SampleRecord rec;
        rec.sample_id = name;
        rec.image_path = std::string("images/") + name + ".png";
        rec.solute = kCombos[(i / 2) % kCombos.size()].first;
        rec.solvent = kCombos[(i / 2) % kCombos.size()].second;
        rec.label = label;
        rec.gt_bbox = scene.vial_box;
        write_png(out_dir / rec.image_path, scene.image);
        records.push_back(std::move(rec));
    }

    const auto manifest_path = out_dir / "manifest.jsonl";
    save_manifest(manifest_path, records);
    return manifest_path;
}

}  // namespace solis
