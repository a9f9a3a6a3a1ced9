#include "vtg/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "vtg/error.hpp"

namespace vtg {

namespace {

constexpr char kMagic[4] = {'V', 'T', 'N', 'C'};
constexpr uint32_t kVersion = 1;

void write_u32(std::ostream& os, uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

uint32_t read_u32(std::istream& is, const char* what) {
    uint32_t v = 0;
    if (!is.read(reinterpret_cast<char*>(&v), sizeof(v)))
        throw IoError(std::string("checkpoint: truncated ") + what);
    return v;
}

}  // namespace

void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
    ckpt.net.require_valid();
    ckpt.train.require_valid();
    if (!ckpt.params.all_finite()) throw IoError("save_checkpoint: non-finite parameters");

    nlohmann::json header;
    header["net"] = {{"grid_dim", ckpt.net.grid_dim},
                     {"conv1_channels", ckpt.net.conv1_channels},
                     {"conv2_channels", ckpt.net.conv2_channels},
                     {"hidden", ckpt.net.hidden}};
    header["train"] = {{"learning_rate", ckpt.train.learning_rate},
                       {"beta1", ckpt.train.beta1},
                       {"beta2", ckpt.train.beta2},
                       {"epsilon", ckpt.train.epsilon},
                       {"batch_size", ckpt.train.batch_size},
                       {"epochs", ckpt.train.epochs},
                       {"seed", ckpt.train.seed},
                       {"clamp_eps", ckpt.train.clamp_eps}};
    header["epoch"] = ckpt.epoch;
    header["mode"] = ckpt.mode;
    header["metrics"] = ckpt.metrics;
    const std::string json = header.dump();

    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("save_checkpoint: cannot open " + path);
    os.write(kMagic, 4);
    write_u32(os, kVersion);
    write_u32(os, static_cast<uint32_t>(json.size()));
    os.write(json.data(), static_cast<std::streamsize>(json.size()));
    ckpt.params.for_each_tensor([&os](const auto& t) {
        os.write(reinterpret_cast<const char*>(t.data()),
                 static_cast<std::streamsize>(sizeof(float) * t.size()));
    });
    if (!os) throw IoError("save_checkpoint: write failed for " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("load_checkpoint: cannot open " + path);
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
        throw IoError("load_checkpoint: bad magic in " + path);
    const uint32_t version = read_u32(is, "version");
    if (version != kVersion) throw IoError("load_checkpoint: unsupported version");
    const uint32_t json_len = read_u32(is, "header length");
    std::string json(json_len, '\0');
    if (!is.read(json.data(), json_len)) throw IoError("load_checkpoint: truncated header");

    Checkpoint ckpt;
    try {
        const nlohmann::json header = nlohmann::json::parse(json);
        const auto& net = header.at("net");
        ckpt.net.grid_dim = net.at("grid_dim").get<int>();
        ckpt.net.conv1_channels = net.at("conv1_channels").get<int>();
        ckpt.net.conv2_channels = net.at("conv2_channels").get<int>();
        ckpt.net.hidden = net.at("hidden").get<int>();
        const auto& train = header.at("train");
        ckpt.train.learning_rate = train.at("learning_rate").get<double>();
        ckpt.train.beta1 = train.at("beta1").get<double>();
        ckpt.train.beta2 = train.at("beta2").get<double>();
        ckpt.train.epsilon = train.at("epsilon").get<double>();
        ckpt.train.batch_size = train.at("batch_size").get<int>();
        ckpt.train.epochs = train.at("epochs").get<int>();
        ckpt.train.seed = train.at("seed").get<uint64_t>();
        ckpt.train.clamp_eps = train.at("clamp_eps").get<double>();
        ckpt.epoch = header.at("epoch").get<int>();
        ckpt.mode = header.at("mode").get<std::string>();
        if (header.contains("metrics"))
            ckpt.metrics = header.at("metrics").get<std::map<std::string, double>>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("load_checkpoint: malformed header: ") + e.what());
    }
    ckpt.net.require_valid();
    ckpt.train.require_valid();

    detail::zero_like(ckpt.params, ckpt.net);
    ckpt.params.for_each_tensor([&is, &path](auto& t) {
        if (!is.read(reinterpret_cast<char*>(t.data()),
                     static_cast<std::streamsize>(sizeof(float) * t.size())))
            throw IoError("load_checkpoint: truncated parameter blob in " + path);
    });
    if (!ckpt.params.all_finite()) throw IoError("load_checkpoint: non-finite parameters");
    return ckpt;
}

}  // namespace vtg
