#pragma once

#include <nlohmann/json.hpp>

#include <chrono>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace bikeflow::cli {

std::string sha256_hex(std::string_view data);

/// Reads a whole file; throws InputError when it cannot be opened.
std::string read_file(const std::filesystem::path &path);

/// Raised for missing or unreadable input files (a usage problem).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Output files held in memory until commit(), which writes each one to a
/// temporary name and renames them into place together. Nothing is written
/// if the command fails before commit().
class StagedOutputs {
public:
    explicit StagedOutputs(std::filesystem::path dir) : dir_(std::move(dir)) {}

    void add(const std::string &name, std::string content);
    const std::map<std::string, std::string> &files() const { return files_; }
    void commit() const;

private:
    std::filesystem::path dir_;
    std::map<std::string, std::string> files_;
};

/// Run record written as manifest.json next to the outputs.
class Manifest {
public:
    explicit Manifest(std::string command);

    void input(const std::string &role, const std::filesystem::path &path,
               const std::string &content);
    nlohmann::ordered_json &config() { return config_; }
    nlohmann::ordered_json &results() { return results_; }

    /// Times the stage from construction of the returned guard to its end.
    class Stage {
    public:
        Stage(Manifest &m, std::string name)
            : m_(m), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}
        ~Stage();
        Stage(const Stage &) = delete;
        Stage &operator=(const Stage &) = delete;

    private:
        Manifest &m_;
        std::string name_;
        std::chrono::steady_clock::time_point start_;
    };

    /// Lists every staged file with its digest and adds manifest.json.
    void finish(StagedOutputs &outputs);

private:
    std::string command_;
    nlohmann::ordered_json inputs_ = nlohmann::ordered_json::array();
    nlohmann::ordered_json config_ = nlohmann::ordered_json::object();
    nlohmann::ordered_json results_ = nlohmann::ordered_json::object();
    nlohmann::ordered_json timings_ = nlohmann::ordered_json::object();
};

} // namespace bikeflow::cli
