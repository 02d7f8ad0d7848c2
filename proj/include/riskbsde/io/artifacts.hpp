#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

#include "riskbsde/common.hpp"

namespace riskbsde::io {

// Collects artifact files in a temp directory and renames it over the
// target on success, so failed runs never leave torn outputs. A lock file
// beside the target rejects concurrent runs into the same directory.
class ArtifactDir {
public:
    explicit ArtifactDir(const std::filesystem::path& target);
    ~ArtifactDir();

    ArtifactDir(const ArtifactDir&) = delete;
    ArtifactDir& operator=(const ArtifactDir&) = delete;

    void write_text(const std::string& name, const std::string& content);
    void write_json(const std::string& name, const nlohmann::json& j);

    // CSV: mandatory header, '.' decimal point, shortest round-trip floats.
    void write_csv(const std::string& name, const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows);

    // Writes manifest.json (config hash, tool version, timings, file
    // digests) and atomically publishes the directory.
    void finalize(const std::string& config_hash,
                  const std::vector<std::pair<std::string, double>>& timings);

    const std::filesystem::path& target() const { return target_; }

private:
    std::filesystem::path target_;
    std::filesystem::path tmp_;
    std::filesystem::path lock_;
    std::vector<std::pair<std::string, std::string>> digests_;  // name -> fnv1a64
    bool finalized_ = false;
};

std::string tool_version();

}  // namespace riskbsde::io
