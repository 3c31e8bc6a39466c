#pragma once

#include <filesystem>

#include "solis/classifier/model.hpp"
#include "solis/preprocess/transform.hpp"

namespace solis {

// Checkpoint directory layout:
//   <dir>/weights.bin  — named float32 tensors (params + buffers)
//   <dir>/model.json   — backbone, strategy, input size, seed,
//                        normalization constants, parameter hashes
void save_checkpoint(const std::filesystem::path& dir, ClassifierModel& model,
                     const TransformConfig& transform);

struct LoadedCheckpoint {
    std::unique_ptr<ClassifierModel> model;
    TransformConfig transform;
};

// Rebuilds the model from the sidecar and restores tensor values; verifies
// the stored parameter hashes after loading.
LoadedCheckpoint load_checkpoint(const std::filesystem::path& dir);

// Raw tensor blob IO. With backbone_only, only "backbone." entries are
// consumed (pretrained import path); otherwise every model tensor must be
// present by name.
void save_named_tensors(const std::filesystem::path& path, ClassifierModel& model);
void load_named_tensors(const std::filesystem::path& path, ClassifierModel& model,
                        bool backbone_only);

}  // namespace solis
