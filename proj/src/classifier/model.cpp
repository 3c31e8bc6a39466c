#include "solis/classifier/model.hpp"

#include <cstdlib>

#include "solis/classifier/backbones.hpp"
#include "solis/classifier/checkpoint.hpp"
#include "solis/util/sha256.hpp"

namespace solis {

std::string to_string(TrainStrategy s) {
    return s == TrainStrategy::FineTune ? "finetune" : "feature_extract";
}

TrainStrategy strategy_from_string(const std::string& s) {
    if (s == "finetune" || s == "ft") return TrainStrategy::FineTune;
    if (s == "feature_extract" || s == "fe") return TrainStrategy::FeatureExtract;
    throw ConfigError("unknown training strategy \"" + s +
                      "\" (expected finetune | feature_extract)");
}

const std::vector<BackboneSpec>& backbone_registry() {
    static const std::vector<BackboneSpec> registry = [] {
        std::vector<BackboneSpec> r;
        r.push_back({"vgg", 224, 4096, 128'000'000, true});
        r.push_back({"resnet18", 224, 512, 11'200'000, true});
        r.push_back({"inceptionv3", 224, 2048, 24'300'000, true});
        r.push_back({"densenet", 299, 1024, 7'000'000, true});
        BackboneSpec tiny{"tinycnn", 64, 64, 23'584, false};
        tiny.default_mean = {0.5, 0.5, 0.5};
        tiny.default_std = {0.25, 0.25, 0.25};
        r.push_back(tiny);
        return r;
    }();
    return registry;
}

const BackboneSpec& get_backbone_spec(const std::string& name) {
    for (const auto& spec : backbone_registry())
        if (spec.name == name) return spec;
    std::string known;
    for (const auto& spec : backbone_registry()) {
        if (!known.empty()) known += ", ";
        known += spec.name;
    }
    throw ConfigError("unknown backbone \"" + name + "\"; registered: " + known);
}

long long head_param_count(long long feature_dim, long long n_classes) {
    if (feature_dim < 1 || n_classes < 1)
        throw ConfigError("head_param_count: dimensions must be >= 1");
    return feature_dim * n_classes + n_classes;
}

namespace {

template <typename T>
ModulePtr<T> make_backbone(const std::string& name, std::uint64_t seed);

template <>
ModulePtr<float> make_backbone<float>(const std::string& name, std::uint64_t seed) {
    RngStream rng = RngStream::derive(seed, {rng_tag::kModelInit, 0});
    const std::uint64_t drop_seed = RngStream::derive(seed, {rng_tag::kDropout}).next_u64();
    if (name == "tinycnn") return build_tinycnn_backbone<float>(rng);
    if (name == "resnet18") return build_resnet18_backbone<float>(rng);
    if (name == "vgg") return build_vgg11_backbone<float>(rng, drop_seed);
    if (name == "densenet") return build_densenet121_backbone<float>(rng);
    if (name == "inceptionv3") return build_inceptionv3_backbone<float>(rng, drop_seed);
    throw ConfigError("no runtime graph for backbone \"" + name + "\"");
}

template <>
ModulePtr<double> make_backbone<double>(const std::string& name, std::uint64_t seed) {
    RngStream rng = RngStream::derive(seed, {rng_tag::kModelInit, 0});
    if (name == "tinycnn") return build_tinycnn_backbone<double>(rng);
    throw ConfigError("float64 model path supports the tinycnn backbone only");
}

}  // namespace

template <typename T>
ClassifierModelT<T>::ClassifierModelT(const BackboneSpec& spec, TrainStrategy strategy,
                                      int input_size, std::uint64_t seed)
    : spec_(spec), strategy_(strategy), input_size_(input_size), seed_(seed) {
    backbone_ = make_backbone<T>(spec.name, seed);
    RngStream head_rng = RngStream::derive(seed, {rng_tag::kModelInit, 1});
    head_ = std::make_unique<Linear<T>>(spec.feature_dim, 2, head_rng);
}

template <typename T>
kernels::Tensor<T> ClassifierModelT<T>::forward(const kernels::Tensor<T>& batch, bool train) {
    if (batch.c != 3 || batch.h != input_size_ || batch.w != input_size_)
        throw Error("forward: expected batch of 3x" + std::to_string(input_size_) + "x" +
                    std::to_string(input_size_) + " tensors, got " + std::to_string(batch.c) +
                    "x" + std::to_string(batch.h) + "x" + std::to_string(batch.w));
    const bool backbone_train = train && strategy_ == TrainStrategy::FineTune;
    kernels::Tensor<T> features = backbone_->forward(batch, backbone_train);
    if (features.c != spec_.feature_dim || features.h != 1 || features.w != 1)
        throw Error("forward: backbone produced " + std::to_string(features.c) +
                    " features, expected " + std::to_string(spec_.feature_dim));
    return head_->forward(features, train);
}

template <typename T>
void ClassifierModelT<T>::backward(const kernels::Tensor<T>& dlogits) {
    kernels::Tensor<T> dfeat = head_->backward(dlogits);
    if (strategy_ == TrainStrategy::FineTune) backbone_->backward(dfeat);
}

template <typename T>
std::vector<ParamRef<T>> ClassifierModelT<T>::parameters() {
    std::vector<ParamRef<T>> params;
    backbone_->collect_params("backbone", params);
    const bool backbone_trainable = strategy_ == TrainStrategy::FineTune;
    for (auto& p : params) p.trainable = backbone_trainable;
    head_->collect_params("head", params);
    return params;
}

template <typename T>
std::vector<ParamRef<T>> ClassifierModelT<T>::buffers() {
    std::vector<ParamRef<T>> buffers;
    backbone_->collect_buffers("backbone", buffers);
    head_->collect_buffers("head", buffers);
    return buffers;
}

template <typename T>
std::vector<ParamEntry> ClassifierModelT<T>::param_manifest() {
    std::vector<ParamEntry> manifest;
    for (const auto& p : parameters()) {
        ParamEntry e;
        e.name = p.name;
        e.shape = {p.value->n, p.value->c, p.value->h, p.value->w};
        e.trainable = p.trainable;
        manifest.push_back(std::move(e));
    }
    return manifest;
}

template <typename T>
long long ClassifierModelT<T>::trainable_scalar_count() {
    long long count = 0;
    for (const auto& e : param_manifest())
        if (e.trainable) count += e.count();
    return count;
}

template <typename T>
std::string parameter_hash(ClassifierModelT<T>& model, ParamSubset subset) {
    const std::string prefix = subset == ParamSubset::Backbone ? "backbone."
                               : subset == ParamSubset::Head   ? "head."
                                                               : "";
    Sha256 h;
    auto feed = [&](const std::vector<ParamRef<T>>& refs) {
        for (const auto& r : refs) {
            if (!prefix.empty() && r.name.rfind(prefix, 0) != 0) continue;
            h.update(r.name);
            const int shape[4] = {r.value->n, r.value->c, r.value->h, r.value->w};
            h.update(shape, sizeof(shape));
            h.update(r.value->v.data(), r.value->v.size() * sizeof(T));
        }
    };
    feed(model.parameters());
    feed(model.buffers());
    return h.hex_digest();
}

std::filesystem::path pretrained_cache_dir() {
    if (const char* env = std::getenv("SOLIS_CACHE"); env != nullptr && env[0] != '\0')
        return std::filesystem::path(env);
    if (const char* home = std::getenv("HOME"); home != nullptr && home[0] != '\0')
        return std::filesystem::path(home) / ".cache" / "solis";
    return std::filesystem::path(".solis_cache");
}

std::unique_ptr<ClassifierModel> build_classifier(const std::string& backbone,
                                                  TrainStrategy strategy, bool pretrained,
                                                  std::uint64_t seed, int input_size_override) {
    const BackboneSpec& spec = get_backbone_spec(backbone);
    if (pretrained && !spec.supports_pretrained)
        throw ConfigError("backbone \"" + backbone + "\" is scratch-only; pretrained weights "
                          "are not available");
    int input_size = input_size_override > 0 ? input_size_override : spec.input_size;
    if (backbone == "vgg" && input_size != 224)
        throw ConfigError("vgg requires input size 224 (fixed by its flattened features)");
    if (backbone == "inceptionv3" && input_size < 75)
        throw ConfigError("inceptionv3 requires input size >= 75");
    if (input_size < 16) throw ConfigError("input size must be >= 16");

    auto model = std::make_unique<ClassifierModel>(spec, strategy, input_size, seed);
    if (pretrained) {
        const auto weights = pretrained_cache_dir() / (backbone + ".weights");
        if (!std::filesystem::exists(weights))
            throw ConfigError("pretrained weights not found: " + weights.string() +
                              " (set SOLIS_CACHE or run without pretrained weights)");
        load_named_tensors(weights, *model, /*backbone_only=*/true);
    }
    return model;
}

std::unique_ptr<ClassifierModelT<double>> build_classifier_f64(const std::string& backbone,
                                                               TrainStrategy strategy,
                                                               std::uint64_t seed,
                                                               int input_size_override) {
    const BackboneSpec& spec = get_backbone_spec(backbone);
    const int input_size = input_size_override > 0 ? input_size_override : spec.input_size;
    return std::make_unique<ClassifierModelT<double>>(spec, strategy, input_size, seed);
}

template class ClassifierModelT<float>;
template class ClassifierModelT<double>;
template std::string parameter_hash<float>(ClassifierModelT<float>&, ParamSubset);
template std::string parameter_hash<double>(ClassifierModelT<double>&, ParamSubset);

}  // namespace solis
