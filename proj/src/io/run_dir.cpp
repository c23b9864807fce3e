#include "blowup/io/run_dir.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "blowup/io/csv.hpp"
#include "blowup/io/digest.hpp"

namespace blowup::io {

using json = nlohmann::json;

namespace {

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    if (!f) throw Error(fmt::format("cannot read {}", p.string()));
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

fs::path default_output_root() {
    if (const char* env = std::getenv(kOutputRootEnv); env && *env) return env;
    return "runs";
}

RunDir::RunDir(fs::path root) : root_(std::move(root)) {
    fs::create_directories(root_);
    const auto mf = root_ / "manifest.json";
    if (!fs::exists(mf)) return;
    const json j = json::parse(slurp(mf));
    created_ = j.value("created", "");
    for (const auto& f : j.at("files")) {
        ManifestEntry e{f.at("path"), f.at("sha256"), f.at("bytes")};
        files_[e.path] = e;
    }
    for (const auto& st : j.at("stages")) stages_.emplace_back(st.at("stage"), st.at("time"));
}

void RunDir::write(const std::string& rel, const std::string& content) {
    const auto p = root_ / rel;
    fs::create_directories(p.parent_path());
    {
        std::ofstream f(p, std::ios::binary);
        if (!f) throw Error(fmt::format("cannot write {}", p.string()));
        f << content;
    }
    record(rel);
}

void RunDir::record(const std::string& rel) {
    const auto p = root_ / rel;
    files_[rel] = {rel, sha256_file(p), fs::file_size(p)};
}

void RunDir::save_config(const RunConfig& cfg) { write("config.resolved.yaml", dump_config(cfg)); }

RunConfig RunDir::load_config() const {
    const auto p = root_ / "config.resolved.yaml";
    if (!fs::exists(p)) throw Error(fmt::format("{} has no config.resolved.yaml; run simulate first", root_.string()));
    return blowup::io::load_config(p.string());
}

void RunDir::commit(const std::string& stage) {
    const std::string now = utc_now();
    if (created_.empty()) created_ = now;
    stages_.emplace_back(stage, now);
    json j;
    j["tool"] = "blowup";
    j["version"] = BLOWUP_VERSION;
    j["created"] = created_;
    j["updated"] = now;
    const auto cfg = root_ / "config.resolved.yaml";
    j["config_sha256"] = fs::exists(cfg) ? sha256_file(cfg) : "";
    j["stages"] = json::array();
    for (const auto& [name, time] : stages_) j["stages"].push_back({{"stage", name}, {"time", time}});
    j["files"] = json::array();
    for (const auto& [rel, e] : files_) j["files"].push_back({{"path", e.path}, {"sha256", e.sha256}, {"bytes", e.bytes}});
    std::ofstream f(root_ / "manifest.json", std::ios::binary);
    f << j.dump(2) << "\n";
}

std::vector<ManifestEntry> RunDir::entries() const {
    std::vector<ManifestEntry> out;
    for (const auto& [rel, e] : files_) out.push_back(e);
    return out;
}

void save_trajectory(RunDir& dir, const Trajectory& traj) {
    CsvWriter w({"t", "r", "u", "ut"});
    for (const auto& st : traj.states)
        for (std::size_t i = 0; i < st.u.size(); ++i)
            w.row({st.t, static_cast<double>(i) * traj.dr, st.u[i], st.ut[i]});
    dir.write("trajectory.csv", w.text());

    CsvWriter c({"t", "u_center", "u_max"});
    for (std::size_t i = 0; i < traj.center_t.size(); ++i) c.row({traj.center_t[i], traj.center_u[i], traj.max_u[i]});
    dir.write("center.csv", c.text());
}

Trajectory load_trajectory(const RunDir& dir, const Exponents& e, double dr) {
    if (!dir.has("trajectory.csv")) throw Error(fmt::format("{} has no trajectory.csv", dir.root().string()));
    const CsvTable t = read_csv(dir.path("trajectory.csv"));
    const auto it = t.column("t"), iu = t.column("u"), iut = t.column("ut");
    Trajectory traj;
    traj.e = e;
    traj.dr = dr;
    std::string current;
    for (const auto& row : t.rows) {
        if (traj.states.empty() || row[it] != current) {
            current = row[it];
            traj.states.push_back({parse_double(current), {}, {}});
        }
        traj.states.back().u.push_back(parse_double(row[iu]));
        traj.states.back().ut.push_back(parse_double(row[iut]));
    }
    if (dir.has("center.csv")) {
        const CsvTable c = read_csv(dir.path("center.csv"));
        const auto ct = c.column("t"), cu = c.column("u_center"), cm = c.column("u_max");
        for (const auto& row : c.rows) {
            traj.center_t.push_back(parse_double(row[ct]));
            traj.center_u.push_back(parse_double(row[cu]));
            traj.max_u.push_back(parse_double(row[cm]));
        }
    }
    return traj;
}

BlowupRecord record_of(const BlowupRun& run) {
    return {run.blew_up, run.T_est, run.exponent, run.fit_r2, run.center, run.steps, run.t_final};
}

void save_blowup(RunDir& dir, const BlowupRecord& r) {
    json j;
    j["blew_up"] = r.blew_up;
    j["T_est"] = r.T_est;
    j["exponent"] = r.exponent;
    j["fit_r2"] = r.fit_r2;
    j["center"] = {r.center.x(), r.center.y(), r.center.z()};
    j["steps"] = r.steps;
    j["t_final"] = r.t_final;
    dir.write("t_est.json", j.dump(2) + "\n");
}

BlowupRecord load_blowup(const RunDir& dir) {
    if (!dir.has("t_est.json")) throw Error(fmt::format("{} has no t_est.json", dir.root().string()));
    const json j = json::parse(slurp(dir.path("t_est.json")));
    BlowupRecord r;
    r.blew_up = j.at("blew_up");
    r.T_est = j.at("T_est");
    r.exponent = j.at("exponent");
    r.fit_r2 = j.at("fit_r2");
    r.center = Vec3(j.at("center")[0], j.at("center")[1], j.at("center")[2]);
    r.steps = j.at("steps");
    r.t_final = j.at("t_final");
    return r;
}

}  // namespace blowup::io
