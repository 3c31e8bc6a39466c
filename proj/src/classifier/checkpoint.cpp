#include "solis/classifier/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

namespace solis {

namespace {

constexpr char kMagic[8] = {'S', 'O', 'L', 'I', 'S', 'W', '0', '1'};

template <typename V>
void write_raw(std::ofstream& out, const V& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(V));
}

template <typename V>
V read_raw(std::ifstream& in) {
    V v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(V));
    return v;
}

std::vector<ParamRef<float>> all_tensors(ClassifierModel& model) {
    auto refs = model.parameters();
    auto bufs = model.buffers();
    refs.insert(refs.end(), bufs.begin(), bufs.end());
    return refs;
}

}  // namespace

void save_named_tensors(const std::filesystem::path& path, ClassifierModel& model) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write weights file: " + path.string());
    out.write(kMagic, sizeof(kMagic));
    const auto refs = all_tensors(model);
    write_raw(out, static_cast<std::uint32_t>(refs.size()));
    for (const auto& r : refs) {
        write_raw(out, static_cast<std::uint32_t>(r.name.size()));
        out.write(r.name.data(), static_cast<std::streamsize>(r.name.size()));
        const std::int32_t dims[4] = {r.value->n, r.value->c, r.value->h, r.value->w};
        out.write(reinterpret_cast<const char*>(dims), sizeof(dims));
        out.write(reinterpret_cast<const char*>(r.value->v.data()),
                  static_cast<std::streamsize>(r.value->v.size() * sizeof(float)));
    }
    if (!out) throw IoError("write failed: " + path.string());
}

void load_named_tensors(const std::filesystem::path& path, ClassifierModel& model,
                        bool backbone_only) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open weights file: " + path.string());
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw ConfigError("not a weights file: " + path.string());

    std::map<std::string, ParamRef<float>> by_name;
    for (auto& r : all_tensors(model)) by_name.emplace(r.name, r);

    std::map<std::string, bool> loaded;
    const auto n = read_raw<std::uint32_t>(in);
    for (std::uint32_t i = 0; i < n; ++i) {
        const auto name_len = read_raw<std::uint32_t>(in);
        std::string name(name_len, '\0');
        in.read(name.data(), name_len);
        std::int32_t dims[4];
        in.read(reinterpret_cast<char*>(dims), sizeof(dims));
        if (!in) throw ConfigError("truncated weights file: " + path.string());
        const std::size_t count = static_cast<std::size_t>(dims[0]) * dims[1] * dims[2] * dims[3];

        auto it = by_name.find(name);
        if (it == by_name.end() || (backbone_only && name.rfind("backbone.", 0) != 0)) {
            in.seekg(static_cast<std::streamoff>(count * sizeof(float)), std::ios::cur);
            continue;
        }
        auto& t = *it->second.value;
        if (t.n != dims[0] || t.c != dims[1] || t.h != dims[2] || t.w != dims[3])
            throw ConfigError("weights file tensor \"" + name + "\" has mismatched shape");
        in.read(reinterpret_cast<char*>(t.v.data()),
                static_cast<std::streamsize>(count * sizeof(float)));
        if (!in) throw ConfigError("truncated weights file: " + path.string());
        loaded[name] = true;
    }

    for (const auto& [name, ref] : by_name) {
        (void)ref;
        const bool needed = !backbone_only || name.rfind("backbone.", 0) == 0;
        if (needed && !loaded.count(name))
            throw ConfigError("weights file is missing tensor \"" + name + "\"");
    }
}

void save_checkpoint(const std::filesystem::path& dir, ClassifierModel& model,
                     const TransformConfig& transform) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create checkpoint dir: " + dir.string());
    save_named_tensors(dir / "weights.bin", model);

    nlohmann::ordered_json j;
    j["format"] = "solis-ckpt-1";
    j["backbone"] = model.spec().name;
    j["strategy"] = to_string(model.strategy());
    j["input_size"] = model.input_size();
    j["seed"] = model.seed();
    j["mean"] = transform.mean;
    j["std"] = transform.std_dev;
    j["hashes"] = {{"backbone", parameter_hash(model, ParamSubset::Backbone)},
                   {"head", parameter_hash(model, ParamSubset::Head)},
                   {"all", parameter_hash(model, ParamSubset::All)}};
    std::ofstream out(dir / "model.json", std::ios::trunc);
    if (!out) throw IoError("cannot write model.json under " + dir.string());
    out << j.dump(2) << '\n';
}

LoadedCheckpoint load_checkpoint(const std::filesystem::path& dir) {
    std::ifstream in(dir / "model.json");
    if (!in) throw IoError("cannot open checkpoint: " + (dir / "model.json").string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("model.json: invalid JSON: " + std::string(e.what()));
    }
    if (j.value("format", std::string{}) != "solis-ckpt-1")
        throw ConfigError("model.json: unsupported checkpoint format");

    LoadedCheckpoint lc;
    const std::string backbone = j.at("backbone").get<std::string>();
    const TrainStrategy strategy = strategy_from_string(j.at("strategy").get<std::string>());
    const int input_size = j.at("input_size").get<int>();
    const std::uint64_t seed = j.at("seed").get<std::uint64_t>();
    lc.model = build_classifier(backbone, strategy, /*pretrained=*/false, seed, input_size);
    load_named_tensors(dir / "weights.bin", *lc.model, /*backbone_only=*/false);

    lc.transform.input_size = input_size;
    lc.transform.mean = j.at("mean").get<std::array<double, 3>>();
    lc.transform.std_dev = j.at("std").get<std::array<double, 3>>();

    const auto hashes = j.at("hashes");
    if (parameter_hash(*lc.model, ParamSubset::All) != hashes.at("all").get<std::string>())
        throw ConfigError("checkpoint hash mismatch: weights do not match model.json");
    return lc;
}

}  // namespace solis
