#pragma once

#include <array>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "solis/classifier/layers.hpp"
#include "solis/util/rng.hpp"

namespace solis {

enum class TrainStrategy { FineTune, FeatureExtract };

std::string to_string(TrainStrategy s);
TrainStrategy strategy_from_string(const std::string& s);

// Registry metadata for one backbone. Input sizes follow the published
// architecture summary this artifact mirrors; approx_backbone_params is the
// quoted figure, not a measurement.
struct BackboneSpec {
    std::string name;
    int input_size = 224;
    int feature_dim = 0;
    long long approx_backbone_params = 0;
    bool supports_pretrained = true;
    std::array<double, 3> default_mean{0.485, 0.456, 0.406};
    std::array<double, 3> default_std{0.229, 0.224, 0.225};
};

const std::vector<BackboneSpec>& backbone_registry();

// Throws ConfigError listing the registry when the name is unknown.
const BackboneSpec& get_backbone_spec(const std::string& name);

// feature_dim * n_classes + n_classes
long long head_param_count(long long feature_dim, long long n_classes);

struct ParamEntry {
    std::string name;
    std::vector<int> shape;
    bool trainable;
    long long count() const {
        long long c = 1;
        for (int d : shape) c *= d;
        return c;
    }
};

// Backbone + fresh 2-unit linear head. The training strategy fixes which
// parameters are trainable and whether the backbone ever runs in train mode
// (FeatureExtract keeps it in inference mode, so its normalization buffers
// stay frozen too).
template <typename T>
class ClassifierModelT {
public:
    ClassifierModelT(const BackboneSpec& spec, TrainStrategy strategy, int input_size,
                     std::uint64_t seed);

    // batch: [n, 3, input_size, input_size] -> logits [n, 2, 1, 1]
    kernels::Tensor<T> forward(const kernels::Tensor<T>& batch, bool train);
    void backward(const kernels::Tensor<T>& dlogits);

    std::vector<ParamRef<T>> parameters();
    std::vector<ParamRef<T>> buffers();
    std::vector<ParamEntry> param_manifest();
    long long trainable_scalar_count();

    const BackboneSpec& spec() const { return spec_; }
    TrainStrategy strategy() const { return strategy_; }
    int input_size() const { return input_size_; }
    std::uint64_t seed() const { return seed_; }
    Module<T>& backbone() { return *backbone_; }
    Linear<T>& head() { return *head_; }

private:
    BackboneSpec spec_;
    TrainStrategy strategy_;
    int input_size_;
    std::uint64_t seed_;
    ModulePtr<T> backbone_;
    std::unique_ptr<Linear<T>> head_;
};

using ClassifierModel = ClassifierModelT<float>;

enum class ParamSubset { Backbone, Head, All };

// Order-stable SHA-256 over (name, shape, raw value bytes) of the subset's
// parameters and persistent buffers.
template <typename T>
std::string parameter_hash(ClassifierModelT<T>& model, ParamSubset subset);

// Builds a classifier for a registered backbone. `pretrained` loads backbone
// weights from $SOLIS_CACHE/<name>.weights (the checkpoint tensor format);
// the classification head is always fresh. tinycnn never loads pretrained
// weights. input_size_override 0 means the registry default.
std::unique_ptr<ClassifierModel> build_classifier(const std::string& backbone,
                                                  TrainStrategy strategy, bool pretrained,
                                                  std::uint64_t seed,
                                                  int input_size_override = 0);

// Double-precision twin for the finite-difference gradient checks; supports
// the scratch backbone only.
std::unique_ptr<ClassifierModelT<double>> build_classifier_f64(const std::string& backbone,
                                                               TrainStrategy strategy,
                                                               std::uint64_t seed,
                                                               int input_size_override = 0);

std::filesystem::path pretrained_cache_dir();

}  // namespace solis
