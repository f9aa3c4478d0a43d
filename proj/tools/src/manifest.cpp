#include "manifest.hpp"

#include <fmt/format.h>
#include <openssl/evp.h>

#include <fstream>
#include <sstream>

#ifndef BIKEFLOW_VERSION
#define BIKEFLOW_VERSION "0.0.0"
#endif

namespace bikeflow::cli {

namespace fs = std::filesystem;

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 digest failed");
    }
    std::string hex;
    for (unsigned int i = 0; i < len; ++i) {
        hex += fmt::format("{:02x}", digest[i]);
    }
    return hex;
}

std::string read_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError(fmt::format("cannot open input file '{}'", path.string()));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void StagedOutputs::add(const std::string &name, std::string content) {
    files_[name] = std::move(content);
}

void StagedOutputs::commit() const {
    fs::create_directories(dir_);
    std::vector<std::pair<fs::path, fs::path>> staged;
    try {
        for (const auto &[name, content] : files_) {
            const fs::path target = dir_ / name;
            const fs::path tmp = dir_ / ("." + name + ".tmp");
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            out << content;
            out.close();
            if (!out) {
                throw std::runtime_error(fmt::format("cannot write '{}'", tmp.string()));
            }
            staged.emplace_back(tmp, target);
        }
    } catch (...) {
        for (const auto &[tmp, target] : staged) {
            std::error_code ec;
            fs::remove(tmp, ec);
        }
        throw;
    }
    for (const auto &[tmp, target] : staged) {
        fs::rename(tmp, target);
    }
}

Manifest::Manifest(std::string command) : command_(std::move(command)) {}

void Manifest::input(const std::string &role, const fs::path &path, const std::string &content) {
    inputs_.push_back({{"role", role},
                       {"path", path.string()},
                       {"bytes", content.size()},
                       {"sha256", sha256_hex(content)}});
}

Manifest::Stage::~Stage() {
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    m_.timings_[name_] = std::chrono::duration<double, std::milli>(elapsed).count();
}

void Manifest::finish(StagedOutputs &outputs) {
    nlohmann::ordered_json files = nlohmann::ordered_json::array();
    for (const auto &[name, content] : outputs.files()) {
        files.push_back({{"file", name}, {"bytes", content.size()}, {"sha256", sha256_hex(content)}});
    }
    nlohmann::ordered_json doc;
    doc["tool"] = "bikeflow";
    doc["version"] = BIKEFLOW_VERSION;
    doc["command"] = command_;
    doc["inputs"] = inputs_;
    doc["config"] = config_;
    doc["results"] = results_;
    doc["timings_ms"] = timings_;
    doc["outputs"] = std::move(files);
    outputs.add("manifest.json", doc.dump(2) + "\n");
}

} // namespace bikeflow::cli
