// blowup: simulate radial blow-up for u_tt = Lap u + |u|^(p-1) u and study it in similarity variables.
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "blowup/io/commands.hpp"

namespace io = blowup::io;

namespace {

io::RunConfig config_from(const std::string& path) { return path.empty() ? io::default_config() : io::load_config(path); }

std::filesystem::path output_dir(const std::string& flag, const io::RunConfig& cfg, const std::string& fallback) {
    if (!flag.empty()) return flag;
    if (!cfg.output_dir.empty()) return cfg.output_dir;
    return io::default_output_root() / fallback;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semilinear wave blow-up: solver, similarity-variable functionals and checks"};
    app.set_version_flag("--version", BLOWUP_VERSION);
    app.require_subcommand(1);

    std::string config_path, out, suite = "all";
    bool verbose = false;
    int jobs = 1;
    double q = 1.0;
    std::optional<std::uint64_t> seed;
    std::string run_dir;
    std::vector<std::string> names;
    std::vector<double> ps;
    std::vector<int> Ns;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "YAML config file")->check(CLI::ExistingFile);
        sub->add_flag("--verbose,-v", verbose, "progress messages on stderr");
    };

    auto* sim = app.add_subcommand("simulate", "run the solver to blow-up and store the trajectory");
    common(sim);
    sim->add_option("--out", out, "run directory (default $BLOWUP_OUTPUT_ROOT/run)");
    sim->add_option("--seed", seed, "seed recorded with the run");

    auto* fun = app.add_subcommand("functionals", "evaluate functionals along a simulated run");
    fun->add_option("run", run_dir, "run directory")->required()->check(CLI::ExistingDirectory);
    fun->add_option("--names", names, "functionals to evaluate (default: the config selection)");
    fun->add_flag("--verbose,-v", verbose, "progress messages on stderr");

    auto* ver = app.add_subcommand("verify", "run a check suite and write verify_report.json");
    common(ver);
    ver->add_option("run", run_dir, "run directory (not needed for the identities suite)")
        ->check(CLI::ExistingDirectory);
    ver->add_option("--suite", suite, "identities, lemmas, monotone, decay or all")
        ->check(CLI::IsMember(io::verify_suites()));
    ver->add_option("--out", out, "report directory (default: the run directory)");
    ver->add_option("--seed", seed, "seed for the random test fields");

    auto* rate = app.add_subcommand("rate", "log-weighted blow-up rate quantities along a run");
    rate->add_option("run", run_dir, "run directory")->required()->check(CLI::ExistingDirectory);
    rate->add_option("--q", q, "power of |log(T - t)|");
    rate->add_flag("--verbose,-v", verbose, "progress messages on stderr");

    auto* sweep = app.add_subcommand("sweep", "simulate a grid of (p, N) and tabulate the verdicts");
    common(sweep);
    sweep->add_option("--p", ps, "exponents p")->required()->delimiter(',');
    sweep->add_option("--N", Ns, "dimensions N")->required()->delimiter(',');
    sweep->add_option("--out", out, "output directory (default $BLOWUP_OUTPUT_ROOT/sweep)");
    sweep->add_option("--jobs,-j", jobs, "concurrent runs")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : io::kUsageError;
    }

    io::CommandContext ctx{verbose, jobs, &std::cerr};
    try {
        io::RunConfig cfg = config_from(config_path);
        if (seed) cfg.seed = *seed;
        if (*sim) return io::cmd_simulate(cfg, output_dir(out, cfg, "run"), ctx);
        if (*fun) return io::cmd_functionals(run_dir, names, ctx);
        if (*ver) {
            std::optional<std::filesystem::path> run;
            if (!run_dir.empty()) run = run_dir;
            if (!run && suite != "identities") {
                std::cerr << "error: suite '" << suite << "' needs a run directory\n";
                return io::kUsageError;
            }
            const auto dest = !out.empty() ? std::filesystem::path(out)
                              : run       ? *run
                                          : output_dir("", cfg, "verify");
            const int rc = io::cmd_verify(run, cfg, suite, dest, ctx);
            std::cout << (rc == io::kOk ? "PASS" : "FAIL") << " " << suite << " (" << (dest / "summary.txt").string()
                      << ")\n";
            return rc;
        }
        if (*rate) return io::cmd_rate(run_dir, q, ctx);
        if (*sweep) return io::cmd_sweep(cfg, ps, Ns, output_dir(out, cfg, "sweep"), ctx);
    } catch (const io::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return io::kUsageError;
    } catch (const io::NoBlowup& e) {
        std::cerr << "error: " << e.what() << "\n";
        return io::kNoBlowup;
    } catch (const blowup::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return io::kUsageError;
    }
    return io::kUsageError;
}
