#include "riskbsde/io/artifacts.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <fstream>

#include "riskbsde/util/numeric.hpp"

namespace riskbsde::io {

namespace fs = std::filesystem;

std::string tool_version() { return "riskbsde 0.1.0"; }

ArtifactDir::ArtifactDir(const fs::path& target) : target_(target) {
    if (target_.empty()) throw ValidationError("output directory must not be empty");
    lock_ = target_;
    lock_ += ".lock";
    if (!target_.parent_path().empty()) fs::create_directories(target_.parent_path());
    const int fd = ::open(lock_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0)
        throw ValidationError("output directory is locked by another run: " + lock_.string());
    ::close(fd);
    tmp_ = target_;
    tmp_ += ".tmp";
    std::error_code ec;
    fs::remove_all(tmp_, ec);
    fs::create_directories(tmp_);
}

ArtifactDir::~ArtifactDir() {
    std::error_code ec;
    if (!finalized_) fs::remove_all(tmp_, ec);
    fs::remove(lock_, ec);
}

void ArtifactDir::write_text(const std::string& name, const std::string& content) {
    std::ofstream out(tmp_ / name, std::ios::binary);
    if (!out) throw NumericalError("cannot write artifact " + name);
    out << content;
    out.close();
    digests_.emplace_back(name, util::hex64(util::fnv1a64(content)));
}

void ArtifactDir::write_json(const std::string& name, const nlohmann::json& j) {
    write_text(name, j.dump(2) + "\n");
}

void ArtifactDir::write_csv(const std::string& name, const std::vector<std::string>& header,
                            const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw NumericalError("csv row width does not match header in " + name);
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += util::format_double(row[i]);
        }
        out += '\n';
    }
    write_text(name, out);
}

void ArtifactDir::finalize(const std::string& config_hash,
                           const std::vector<std::pair<std::string, double>>& timings) {
    nlohmann::json manifest;
    manifest["config_hash"] = config_hash;
    manifest["tool_version"] = tool_version();
    nlohmann::json tj = nlohmann::json::array();
    for (const auto& [name, secs] : timings) tj.push_back({{"operation", name}, {"seconds", secs}});
    manifest["timings"] = tj;
    nlohmann::json files = nlohmann::json::array();
    for (const auto& [name, digest] : digests_)
        files.push_back({{"name", name}, {"fnv1a64", digest}});
    manifest["files"] = files;
    {
        std::ofstream out(tmp_ / "manifest.json", std::ios::binary);
        out << manifest.dump(2) << "\n";
    }
    std::error_code ec;
    fs::remove_all(target_, ec);
    fs::rename(tmp_, target_);
    finalized_ = true;
}

}  // namespace riskbsde::io
