#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "solis/core/image.hpp"
#include "solis/core/label.hpp"
#include "solis/segmentation/bbox.hpp"
#include "solis/util/rng.hpp"

namespace solis {

enum class BackgroundMode { Plain, Gradient, Textured };

std::string to_string(BackgroundMode m);
BackgroundMode background_mode_from_string(const std::string& s);

// Generator settings. The turbidity ranges must stay disjoint (dissolved
// below undissolved); the unpopulated gap between them is what makes the
// synthetic set a comfortable desk-scale oracle for the pipeline.
struct SynthConfig {
    int n_samples = 600;
    int image_size = 128;
    std::array<double, 2> turbidity_undissolved_range{0.35, 1.0};
    std::array<double, 2> turbidity_dissolved_range{0.0, 0.1};
    std::vector<BackgroundMode> background_modes{BackgroundMode::Plain};
    double lighting_jitter = 0.1;       // relative brightness scale amplitude
    double vial_position_jitter = 0.12; // fraction of image size
    std::uint64_t seed = 0;

    void validate() const;
};

// Everything sampled for one scene. Rendering is a pure function of these
// values plus the vial offset: vial pixels are keyed on vial-local
// coordinates, background pixels on global ones, so moving the offset
// translates the vial bit-exactly.
struct SceneParams {
    SolubilityLabel label = SolubilityLabel::Undissolved;
    double turbidity = 0.0;
    int vial_w = 0, vial_h = 0;
    int wall = 2, cap_h = 4, corner_r = 3;
    double fill_fraction = 0.6;
    std::array<double, 3> glass_color{58, 60, 64};
    std::array<double, 3> cap_color{70, 72, 78};
    std::array<double, 3> liquid_tint{0, 0, 0};
    BackgroundMode bg_mode = BackgroundMode::Plain;
    std::array<double, 3> bg_base{190, 190, 190};
    double bg_ramp = 0.0;               // gradient amplitude
    double bg_dir_x = 0.0, bg_dir_y = 1.0;
    double lighting = 1.0;
    std::uint64_t speckle_seed = 0, noise_seed = 0;
};

struct RenderedScene {
    ImageRGB image;
    BoundingBox vial_box;    // tight box of every painted vial pixel
    BoundingBox liquid_box;  // interior liquid region (brightness oracle)
};

SceneParams sample_scene(const SynthConfig& config, SolubilityLabel label, RngStream& rng);

// Top-left vial position; jittered around the image center and clamped so
// the vial stays fully inside the frame.
std::pair<int, int> sample_position(const SynthConfig& config, const SceneParams& params,
                                    RngStream& rng);

RenderedScene render_scene(const SceneParams& params, int image_size, int vial_x0, int vial_y0);

// Writes n_samples PNGs plus manifest.jsonl under out_dir and returns the
// manifest path. Labels alternate (exact balance), solute/solvent pairs
// cycle through the six bench combinations, and every byte is reproducible
// from the seed.
std::filesystem::path generate_synthetic(const SynthConfig& config,
                                         const std::filesystem::path& out_dir);

}  // namespace solis
