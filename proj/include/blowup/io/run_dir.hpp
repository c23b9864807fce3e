#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "blowup/io/config.hpp"
#include "blowup/solver.hpp"

namespace blowup::io {

namespace fs = std::filesystem;

inline constexpr const char* kOutputRootEnv = "BLOWUP_OUTPUT_ROOT";

// default parent for run directories: $BLOWUP_OUTPUT_ROOT, else ./runs
fs::path default_output_root();

struct ManifestEntry {
    std::string path;  // relative to the run directory
    std::string sha256;
    std::uintmax_t bytes = 0;
};

// The run directory is the unit of provenance: every stage reads its inputs
// from it and registers what it writes in manifest.json.
class RunDir {
public:
    explicit RunDir(fs::path root);

    const fs::path& root() const { return root_; }
    fs::path path(const std::string& rel) const { return root_ / rel; }
    bool has(const std::string& rel) const { return fs::exists(root_ / rel); }

    // writes text and records it in the manifest
    void write(const std::string& rel, const std::string& content);
    // records a file that was written directly
    void record(const std::string& rel);

    // config.resolved.yaml: written by simulate, read by every later stage
    void save_config(const RunConfig& cfg);
    RunConfig load_config() const;

    // rewrites manifest.json with the current entries, the config hash and the stage name
    void commit(const std::string& stage);

    std::vector<ManifestEntry> entries() const;

private:
    fs::path root_;
    std::map<std::string, ManifestEntry> files_;
    std::vector<std::pair<std::string, std::string>> stages_;  // (stage, UTC time)
    std::string created_;
};

// trajectory.csv (t,r,u,ut) and center.csv (t,u_center,u_max)
void save_trajectory(RunDir& dir, const Trajectory& traj);
Trajectory load_trajectory(const RunDir& dir, const Exponents& e, double dr);

struct BlowupRecord {
    bool blew_up = false;
    double T_est = 0;
    double exponent = 0;
    double fit_r2 = 0;
    Vec3 center = Vec3::Zero();
    std::size_t steps = 0;
    double t_final = 0;
};
BlowupRecord record_of(const BlowupRun& run);
void save_blowup(RunDir& dir, const BlowupRecord& rec);
BlowupRecord load_blowup(const RunDir& dir);

}  // namespace blowup::io
