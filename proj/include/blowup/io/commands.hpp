#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "blowup/io/config.hpp"
#include "blowup/io/run_dir.hpp"
#include "blowup/lemmas.hpp"
#include "blowup/snapshot.hpp"

namespace blowup::io {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsageError = 2, kNoBlowup = 3 };

// a run stage that cannot proceed because the run never blew up
struct NoBlowup : Error {
    using Error::Error;
};

struct CommandContext {
    bool verbose = false;
    int jobs = 1;
    std::ostream* log = nullptr;  // progress lines when verbose
};

// everything later stages need from a simulated run
struct LoadedRun {
    RunConfig cfg;
    BlowupRecord blowup;
    Trajectory trajectory;
    Vec3 x0 = Vec3::Zero();
    double T0 = 0;
    std::shared_ptr<const RuleSet> rules;
};
LoadedRun load_run(const RunDir& dir);
std::vector<SimilaritySnapshot> run_snapshots(const LoadedRun& run);

// functional name -> series, in a fixed order; unknown names throw ConfigError
std::vector<FunctionalSeries> compute_functionals(const std::vector<SimilaritySnapshot>& snaps,
                                                  const FunctionalSettings& fs);
std::vector<std::string> functional_names();

struct VerifyCheck {
    std::string group;
    IdentityReport report;
};
std::vector<std::string> verify_suites();
// checks of one suite; the static identity suite ignores the run
std::vector<VerifyCheck> run_suite(const std::string& suite, const RunConfig& cfg, const LoadedRun* run);

int cmd_simulate(const RunConfig& cfg, const std::filesystem::path& out, const CommandContext& ctx = {});
int cmd_functionals(const std::filesystem::path& run_dir, const std::vector<std::string>& names,
                    const CommandContext& ctx = {});
// run_dir may be empty for the static identity suite; reports go to out (defaults to run_dir)
int cmd_verify(const std::optional<std::filesystem::path>& run_dir, const RunConfig& cfg, const std::string& suite,
               const std::filesystem::path& out, const CommandContext& ctx = {});
int cmd_rate(const std::filesystem::path& run_dir, double q, const CommandContext& ctx = {});
int cmd_sweep(const RunConfig& base, const std::vector<double>& ps, const std::vector<int>& Ns,
              const std::filesystem::path& out, const CommandContext& ctx = {});

}  // namespace blowup::io
