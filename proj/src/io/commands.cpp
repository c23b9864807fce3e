#include "blowup/io/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "blowup/decay.hpp"
#include "blowup/functionals.hpp"
#include "blowup/io/csv.hpp"
#include "blowup/similarity.hpp"
#include "blowup/test_field.hpp"
#include "blowup/theorem.hpp"

namespace blowup::io {

using json = nlohmann::json;

namespace {

// quadrature for the static identity checks: the random test fields are
// polynomials of degree up to about 11, squared inside the identities
constexpr int kIdentityRadial = 24;
constexpr int kIdentityAngular = 16;

void note(const CommandContext& ctx, const std::string& msg) {
    if (ctx.verbose && ctx.log) *ctx.log << msg << "\n";
}

std::string eps_tag(double eps) { return format_double(eps); }

json report_json(const VerifyCheck& c) {
    const auto& r = c.report;
    return {{"group", c.group},     {"name", r.name},          {"pass", r.pass},
            {"lhs", r.lhs},         {"rhs", r.rhs},            {"abs_residual", r.abs_residual},
            {"rel_residual", r.rel_residual}, {"tolerance", r.tolerance}, {"context", r.context}};
}

FunctionalSeries ladder(const FunctionalSeries& f0, int k) {
    FunctionalSeries out;
    out.name = fmt::format("ladder_k{}", k);
    for (std::size_t i = 0; i < f0.size(); ++i) out.push(f0.s[i], std::pow(f0.s[i], k / 18.0) * f0.value[i]);
    return out;
}

template <class F>
FunctionalSeries sample(const std::vector<SimilaritySnapshot>& snaps, std::string name, F&& f) {
    FunctionalSeries out;
    out.name = std::move(name);
    for (const auto& sn : snaps) out.push(sn.s, f(sn));
    return out;
}

IdentityReport monotone_report(const MonotoneReport& m, double slack) {
    IdentityReport r;
    r.name = m.name;
    r.tolerance = slack;
    r.pass = m.pass;
    if (!m.violations.empty()) {
        const auto& v = *std::max_element(m.violations.begin(), m.violations.end(),
                                          [](const Violation& a, const Violation& b) { return a.increase < b.increase; });
        r.lhs = v.increase;
        r.rhs = v.allowed;
        r.abs_residual = v.increase;
        r.context = fmt::format("{} increases, worst at s={}", m.violations.size(), v.s);
    } else {
        r.context = "nonincreasing";
    }
    if (m.nonneg_checked) {
        r.context += fmt::format("; min {} (scale {})", m.min_value, m.scale);
        if (!m.nonneg_ok) r.context += " below the nonnegativity floor";
    }
    return r;
}

std::vector<VerifyCheck> identity_suite(const RunConfig& cfg) {
    std::vector<VerifyCheck> out;
    const auto& v = cfg.verify;
    if (v.identity_fields == 0) return out;
    std::mt19937_64 rng(cfg.seed);
    for (int N : {2, 3}) {
        // the flow checks need a superconformal pair in this dimension
        const Exponents e = make_exponents(N == 2 ? 6.0 : 4.0, N);
        for (double eps : v.identity_eps) {
            auto rules = make_rule_set(N, standard_betas({eps}), kIdentityRadial, kIdentityAngular);
            for (int i = 0; i < v.identity_fields; ++i) {
                const TestField f = random_test_field(N, rng);
                const auto ctx = fmt::format("N={} eps={} field {}", N, eps, i);
                for (auto r : {check_pohozaev_A(f, eps, *rules), check_pohozaev_E(f, eps, *rules)}) {
                    r.tolerance = v.identity_tol;
                    r.pass = std::isfinite(r.rel_residual) && r.rel_residual <= v.identity_tol;
                    r.context = ctx;
                    out.push_back({"identities", r});
                }
                if (i >= v.flow_fields) continue;
                for (Lemma l : all_lemmas()) {
                    auto r = instantaneous_lemma_check(l, f, e, eps, 1.5, rules);
                    r.context = ctx + " (flow)";
                    out.push_back({"flow", r});
                }
            }
        }
    }
    return out;
}

std::vector<VerifyCheck> lemma_suite(const RunConfig& cfg, const std::vector<SimilaritySnapshot>& snaps) {
    std::vector<VerifyCheck> out;
    const auto& v = cfg.verify;
    const double ds = cfg.similarity.ds;
    const auto steps = static_cast<std::size_t>(std::llround(v.lemma_window / ds));
    if (steps < 2) throw ConfigError("verify.lemma_window", 0, "shorter than two s-steps");
    for (std::size_t i0 = 0; i0 + steps < snaps.size(); i0 += steps) {
        const double a = snaps[i0].s, b = snaps[i0 + steps].s;
        for (Lemma l : all_lemmas()) {
            const bool eps_dep = l == Lemma::E_eps || l == Lemma::J_eps || l == Lemma::N_eps || l == Lemma::I_eps ||
                                 l == Lemma::L_eps;
            const std::vector<double> eps_list = eps_dep ? cfg.functionals.eps : std::vector<double>{kEps0};
            for (double eps : eps_list) {
                const auto paths = lemma_paths(l, snaps, eps, a, b);
                auto r = check_lemma_paths(l, paths, v.lemma_rel_tol,
                                           eps_dep ? fmt::format("eps={} s in [{}, {}]", eps, a, b)
                                                   : fmt::format("s in [{}, {}]", a, b));
                // functionals that vanish identically (N on a constant state) are measured against the mass
                double scale = weighted_integral(snaps[i0], 0.0, [](const NodeField& f, std::size_t i) {
                    return f.w[i] * f.w[i];
                });
                for (double x : paths.value) scale = std::max(scale, std::abs(x));
                if (!r.pass && r.abs_residual <= v.lemma_abs_tol * scale) {
                    r.pass = true;
                    r.context += " (within the absolute floor)";
                }
                out.push_back({"lemmas", r});
            }
        }
    }
    return out;
}

std::vector<VerifyCheck> monotone_suite(const RunConfig& cfg, const std::vector<SimilaritySnapshot>& snaps) {
    std::vector<VerifyCheck> out;
    const auto& v = cfg.verify;
    const FunctionalSeries f0 = F0_series(snaps);
    for (int k = 0; k <= cfg.functionals.k_max; ++k) {
        FunctionalSeries q = k == 0 ? f0 : ladder(f0, k);
        q.name = k == 0 ? "F0" : q.name;
        out.push_back({"monotone", monotone_report(monitor_monotone(q, v.slack, v.transient_s, k == 0, v.nonneg_tol),
                                                   v.slack)});
    }
    const double need = required_tail_length(snaps.front().e.alpha);
    if (f0.s.back() - f0.s.front() >= need)
        for (int k = 1; k <= cfg.functionals.k_max; ++k) {
            FunctionalSeries fk = F_family(f0, k, snaps.front().e.alpha);
            fk.name = fmt::format("F_k{}", k);
            out.push_back({"monotone", monotone_report(monitor_monotone(fk, v.slack, v.transient_s), v.slack)});
        }
    return out;
}

std::vector<VerifyCheck> decay_suite(const RunConfig& cfg, const std::vector<SimilaritySnapshot>& snaps) {
    std::vector<VerifyCheck> out;
    const auto& v = cfg.verify;
    for (const auto& d : check_decay_suite(decay_quantities(snaps, 2), v.decay_factor, v.vanish_tol, v.slack)) {
        IdentityReport r;
        r.name = d.name;
        r.lhs = d.ratio;
        r.rhs = v.decay_factor;
        r.tolerance = v.decay_factor;
        r.pass = d.pass;
        r.context = d.vanishing ? fmt::format("vanishes on s in [{}, {}]", d.s_start, d.s_end)
                                : fmt::format("s in [{}, {}], ratio {}, log slope {}{}", d.s_start, d.s_end, d.ratio,
                                              d.fitted_rate, d.decreasing ? "" : ", not monotone");
        out.push_back({"decay", r});
    }
    return out;
}

}  // namespace

LoadedRun load_run(const RunDir& dir) {
    LoadedRun run;
    run.cfg = dir.load_config();
    run.blowup = load_blowup(dir);
    if (!run.blowup.blew_up) throw NoBlowup(fmt::format("{}: the run did not blow up", dir.root().string()));
    run.trajectory = load_trajectory(dir, run.cfg.solver.e, run.cfg.solver.grid.dr);
    const auto& sim = run.cfg.similarity;
    run.x0 = sim.x0 ? Vec3((*sim.x0)[0], (*sim.x0)[1], (*sim.x0)[2]) : run.blowup.center;
    run.T0 = sim.T0 ? *sim.T0 : shifted_blowup_time(run.blowup.T_est, sim.delta0, run.x0, run.blowup.center);
    const bool radial = sim.angular == "radial" || (sim.angular == "auto" && run.x0.norm() == 0.0);
    auto eps = run.cfg.functionals.eps;
    eps.push_back(kEps0);
    run.rules = make_rule_set(run.cfg.solver.e.N, standard_betas(eps), sim.n_radial, sim.n_angular,
                              radial ? AngularMode::Radial : AngularMode::Full);
    return run;
}

std::vector<SimilaritySnapshot> run_snapshots(const LoadedRun& run) {
    const auto& sim = run.cfg.similarity;
    const auto grid = uniform_s_grid(sim.s_start, sim.s_end, sim.ds);
    return trajectory_to_w(run.trajectory, run.x0, run.T0, grid, run.rules);
}

std::vector<std::string> functional_names() {
    return {"E0",    "J0",    "E", "F0",        "E_eps",     "J_eps",        "G_eps", "N_eps", "I_eps",
            "L_eps", "M",     "U_density", "Sigma", "singular_Lp1", "hardy", "ladder", "F_family", "script"};
}

std::vector<FunctionalSeries> compute_functionals(const std::vector<SimilaritySnapshot>& snaps,
                                                  const FunctionalSettings& fs) {
    const auto all = functional_names();
    const auto names = fs.names.empty() ? all : fs.names;
    for (const auto& n : names)
        if (std::find(all.begin(), all.end(), n) == all.end())
            throw ConfigError("functionals.names", 0, fmt::format("unknown functional '{}'", n));
    const double alpha = snaps.front().e.alpha;
    const bool tails_fit = snaps.back().s - snaps.front().s >= required_tail_length(alpha);

    using EpsFn = double (*)(const SimilaritySnapshot&, double);
    const std::vector<std::pair<std::string, EpsFn>> eps_fns = {
        {"E_eps", E_eps}, {"J_eps", J_eps}, {"G_eps", G_eps},        {"N_eps", N_eps},
        {"I_eps", I_eps}, {"L_eps", L_eps}, {"singular_Lp1", singular_Lp1}, {"hardy", hardy_ratio}};

    std::vector<FunctionalSeries> out;
    for (const auto& n : names) {
        if (n == "E0") {
            out.push_back(sample(snaps, n, [](const auto& sn) { return E0(sn); }));
        } else if (n == "J0") {
            out.push_back(sample(snaps, n, [](const auto& sn) { return J0(sn); }));
        } else if (n == "E") {
            out.push_back(sample(snaps, n, [](const auto& sn) { return E_and_F0(sn).E; }));
        } else if (n == "F0") {
            auto f0 = F0_series(snaps);
            f0.name = n;
            out.push_back(f0);
        } else if (n == "M") {
            out.push_back(sample(snaps, n, [](const auto& sn) { return M_func(sn); }));
        } else if (n == "U_density") {
            out.push_back(sample(snaps, n, [](const auto& sn) { return U_density(sn); }));
        } else if (n == "Sigma") {
            out.push_back(sample(snaps, n, [](const auto& sn) { return sigma_term(sn); }));
        } else if (n == "ladder") {
            const auto f0 = F0_series(snaps);
            for (int k = 0; k <= fs.k_max; ++k) out.push_back(ladder(f0, k));
        } else if (n == "F_family") {
            if (!tails_fit) continue;
            const auto f0 = F0_series(snaps);
            for (int k = 1; k <= fs.k_max; ++k) {
                auto fk = F_family(f0, k, alpha);
                fk.name = fmt::format("F_k{}", k);
                out.push_back(fk);
            }
        } else if (n == "script") {
            if (!tails_fit) continue;
            for (int k = 1; k <= fs.k_max; ++k)
                for (double sigma : fs.sigma) {
                    auto sf = script_family(snaps, k, sigma);
                    sf.value.name = fmt::format("script_k{}_sigma{}", k, format_double(sigma));
                    out.push_back(sf.value);
                    if (sigma == fs.sigma.front()) {
                        sf.main.name = fmt::format("script_main_k{}", k);
                        sf.U.name = fmt::format("script_U_k{}", k);
                        out.push_back(sf.main);
                        out.push_back(sf.U);
                    }
                }
        } else {
            const auto fn = std::find_if(eps_fns.begin(), eps_fns.end(), [&](const auto& p) { return p.first == n; });
            for (double eps : fs.eps)
                out.push_back(sample(snaps, fmt::format("{}_{}", n, eps_tag(eps)),
                                     [&](const auto& sn) { return fn->second(sn, eps); }));
        }
    }
    return out;
}

std::vector<std::string> verify_suites() { return {"identities", "lemmas", "monotone", "decay", "all"}; }

std::vector<VerifyCheck> run_suite(const std::string& suite, const RunConfig& cfg, const LoadedRun* run) {
    const auto suites = verify_suites();
    if (std::find(suites.begin(), suites.end(), suite) == suites.end())
        throw ConfigError("--suite", 0, fmt::format("unknown suite '{}'", suite));
    std::vector<VerifyCheck> out;
    if (suite == "identities" || suite == "all") out = identity_suite(cfg);
    if (suite == "identities") return out;
    if (!run) throw Error(fmt::format("suite '{}' needs a run directory", suite));
    const auto snaps = run_snapshots(*run);
    auto append = [&](std::vector<VerifyCheck> more) { out.insert(out.end(), more.begin(), more.end()); };
    if (suite == "lemmas" || suite == "all") append(lemma_suite(run->cfg, snaps));
    if (suite == "monotone" || suite == "all") append(monotone_suite(run->cfg, snaps));
    if (suite == "decay" || suite == "all") append(decay_suite(run->cfg, snaps));
    return out;
}

int cmd_simulate(const RunConfig& cfg, const std::filesystem::path& out, const CommandContext& ctx) {
    RunDir dir(out);
    dir.save_config(cfg);
    note(ctx, fmt::format("simulating p={} N={} on {} nodes", cfg.solver.e.p, cfg.solver.e.N, cfg.solver.grid.nr));
    const BlowupRun run = run_until_blowup(cfg.solver);
    save_trajectory(dir, run.trajectory);
    save_blowup(dir, record_of(run));
    write_curve("t", run.trajectory.center_t, "u_center", run.trajectory.center_u, dir.path("plots/center_u.csv"));
    dir.record("plots/center_u.csv");
    write_curve("t", run.trajectory.center_t, "u_max", run.trajectory.max_u, dir.path("plots/max_u.csv"));
    dir.record("plots/max_u.csv");
    dir.commit("simulate");
    if (!run.blew_up) {
        note(ctx, fmt::format("no blow-up by t={}", run.t_final));
        return kNoBlowup;
    }
    note(ctx, fmt::format("blow-up at T={} (rate exponent {}, {} steps)", run.T_est, run.exponent, run.steps));
    return kOk;
}

int cmd_functionals(const std::filesystem::path& run_dir, const std::vector<std::string>& names,
                    const CommandContext& ctx) {
    RunDir dir(run_dir);
    LoadedRun run = load_run(dir);
    if (!names.empty()) run.cfg.functionals.names = names;
    const auto snaps = run_snapshots(run);
    note(ctx, fmt::format("{} snapshots on s in [{}, {}]", snaps.size(), snaps.front().s, snaps.back().s));
    for (const auto& fs : compute_functionals(snaps, run.cfg.functionals)) {
        const auto rel = "series/" + fs.name + ".csv";
        std::filesystem::create_directories(dir.path("series"));
        write_series(fs, dir.path(rel));
        dir.record(rel);
        const auto plot = "plots/" + fs.name + ".csv";
        write_curve("s", fs.s, fs.name, fs.value, dir.path(plot));
        dir.record(plot);
    }
    dir.commit("functionals");
    return kOk;
}

int cmd_verify(const std::optional<std::filesystem::path>& run_dir, const RunConfig& cfg, const std::string& suite,
               const std::filesystem::path& out, const CommandContext& ctx) {
    std::optional<LoadedRun> run;
    RunConfig used = cfg;
    if (run_dir) {
        run = load_run(RunDir(*run_dir));
        used = run->cfg;
        used.verify = cfg.verify;
        used.seed = cfg.seed;
        run->cfg.verify = cfg.verify;
    }
    const auto checks = run_suite(suite, used, run ? &*run : nullptr);
    RunDir dir(out);
    std::size_t failed = 0;
    json j;
    j["suite"] = suite;
    j["checks"] = json::array();
    std::string summary;
    for (const auto& c : checks) {
        failed += c.report.pass ? 0 : 1;
        j["checks"].push_back(report_json(c));
        summary += fmt::format("{} {}/{}: {}\n", c.report.pass ? "PASS" : "FAIL", c.group, c.report.name, c.report.context);
    }
    j["total"] = checks.size();
    j["failed"] = failed;
    if (checks.empty()) summary += "no checks in this suite\n";
    summary += fmt::format("{} checks, {} failed\n", checks.size(), failed);
    dir.write("verify_report.json", j.dump(2) + "\n");
    dir.write("summary.txt", summary);
    dir.commit("verify:" + suite);
    note(ctx, fmt::format("{} checks, {} failed", checks.size(), failed));
    return failed ? kCheckFailed : kOk;
}

int cmd_rate(const std::filesystem::path& run_dir, double q, const CommandContext& ctx) {
    if (!(q >= 0)) throw ConfigError("--q", 0, "must be nonnegative");
    RunDir dir(run_dir);
    const LoadedRun run = load_run(dir);
    const auto& sim = run.cfg.similarity;
    const auto grid = uniform_s_grid(sim.s_start, sim.s_end - std::numbers::ln2, 10.0 * sim.ds);
    const TheoremReport rep = theorem_quantities(run.trajectory, run.x0, run.T0, q, grid, run.rules);

    CsvWriter w({"s", "lambda", "cone_integral", "boundary_energy", "scaled_l2", "lower_bound"});
    std::vector<double> s, cone, l2;
    for (const auto& t : rep.samples) {
        w.row({t.s, t.lambda, t.cone_integral, t.boundary_energy, t.scaled_l2, t.lower_bound});
        s.push_back(t.s);
        cone.push_back(t.cone_integral);
        l2.push_back(t.scaled_l2);
    }
    const std::string tag = format_double(q);
    dir.write("theorem/q" + tag + ".csv", w.text());
    std::filesystem::create_directories(dir.path("plots"));
    write_curve("s", s, "cone_integral", cone, dir.path("plots/theorem_cone_q" + tag + ".csv"));
    dir.record("plots/theorem_cone_q" + tag + ".csv");
    write_curve("s", s, "scaled_l2", l2, dir.path("plots/theorem_l2_q" + tag + ".csv"));
    dir.record("plots/theorem_l2_q" + tag + ".csv");

    const double rel = std::abs(rep.fitted_l2_exponent - rep.expected_l2_exponent) / std::abs(rep.expected_l2_exponent);
    const bool trend = rep.l2_decreasing && rel <= 0.1;
    json j = {{"q", q},
              {"sup_cone", rep.sup_cone},
              {"sup_boundary", rep.sup_boundary},
              {"sup_l2", rep.sup_l2},
              {"lower_floor", rep.lower_floor},
              {"expected_l2_exponent", rep.expected_l2_exponent},
              {"fitted_l2_exponent", rep.fitted_l2_exponent},
              {"l2_decreasing", rep.l2_decreasing},
              {"l2_trend_pass", trend},
              {"cone_bounded", rep.cone_bounded}};
    dir.write("theorem/report_q" + tag + ".json", j.dump(2) + "\n");
    dir.commit("rate");
    note(ctx, fmt::format("L2 exponent {} (expected {}), cone bounded: {}", rep.fitted_l2_exponent,
                          rep.expected_l2_exponent, rep.cone_bounded));
    return trend && rep.cone_bounded ? kOk : kCheckFailed;
}

int cmd_sweep(const RunConfig& base, const std::vector<double>& ps, const std::vector<int>& Ns,
              const std::filesystem::path& out, const CommandContext& ctx) {
    struct Job {
        RunConfig cfg;
        std::filesystem::path dir;
        int code = 0;
        BlowupRecord rec;
        std::vector<bool> ladder_ok;
        std::string error;
    };
    std::vector<Job> jobs;
    if (ps.empty() || Ns.empty()) throw ConfigError("sweep", 0, "needs at least one p and one N");
    for (double p : ps)
        for (int N : Ns) {
            Job j;
            j.cfg = base;
            try {
                j.cfg.solver.e = make_exponents(p, N);
                validate(j.cfg);
            } catch (const InvalidParameter& e) {
                throw ConfigError("sweep", 0, fmt::format("(p={}, N={}): {}", p, N, e.what()));
            }
            j.dir = out / fmt::format("p{}_N{}", format_double(p), N);
            jobs.push_back(std::move(j));
        }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            Job& j = jobs[i];
            try {
                j.code = cmd_simulate(j.cfg, j.dir);
                RunDir dir(j.dir);
                j.rec = load_blowup(dir);
                if (j.code != kOk) continue;
                const LoadedRun run = load_run(dir);
                const auto snaps = run_snapshots(run);
                const FunctionalSeries f0 = F0_series(snaps);
                for (int k = 0; k <= j.cfg.functionals.k_max; ++k) {
                    const auto m = monitor_monotone(k == 0 ? f0 : ladder(f0, k), j.cfg.verify.slack,
                                                    j.cfg.verify.transient_s, k == 0, j.cfg.verify.nonneg_tol);
                    j.ladder_ok.push_back(m.pass);
                }
            } catch (const std::exception& e) {
                j.code = kCheckFailed;
                j.error = e.what();
            }
        }
    };
    const int n = std::max(1, std::min<int>(ctx.jobs, static_cast<int>(jobs.size())));
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::vector<std::string> header = {"p", "N", "blew_up", "T_est", "rate_exponent", "F0_monotone"};
    for (int k = 1; k <= base.functionals.k_max; ++k) header.push_back(fmt::format("ladder_k{}", k));
    CsvWriter w(header);
    int code = kOk;
    for (const auto& j : jobs) {
        std::vector<std::string> row = {format_double(j.cfg.solver.e.p), std::to_string(j.cfg.solver.e.N),
                                        j.rec.blew_up ? "1" : "0", format_double(j.rec.T_est),
                                        format_double(j.rec.exponent)};
        for (int k = 0; k <= base.functionals.k_max; ++k)
            row.push_back(static_cast<std::size_t>(k) < j.ladder_ok.size() ? (j.ladder_ok[k] ? "1" : "0") : "");
        w.row(row);
        if (!j.error.empty()) note(ctx, fmt::format("p={} N={}: {}", j.cfg.solver.e.p, j.cfg.solver.e.N, j.error));
        if (j.code != kOk) code = kCheckFailed;
        for (bool ok : j.ladder_ok)
            if (!ok) code = kCheckFailed;
    }
    RunDir dir(out);
    dir.write("sweep.csv", w.text());
    dir.commit("sweep");
    return code;
}

}  // namespace blowup::io
