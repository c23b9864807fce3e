#include "blowup/io/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "blowup/io/csv.hpp"

namespace blowup::io {

ConfigError::ConfigError(const std::string& f, int l, const std::string& what)
    : Error(l > 0 ? fmt::format("line {}: {}: {}", l, f, what) : fmt::format("{}: {}", f, what)), field(f), line(l), detail(what) {}

namespace {

int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

template <class T>
T scalar(const YAML::Node& n, const std::string& field) {
    if (!n.IsScalar()) throw ConfigError(field, line_of(n), "expected a scalar");
    try {
        return n.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError(field, line_of(n), fmt::format("cannot read '{}'", n.Scalar()));
    }
}

template <class T>
std::vector<T> list(const YAML::Node& n, const std::string& field) {
    if (!n.IsSequence()) throw ConfigError(field, line_of(n), "expected a list");
    std::vector<T> out;
    for (const auto& item : n) out.push_back(scalar<T>(item, field));
    return out;
}

bool is_auto(const YAML::Node& n) { return n.IsScalar() && (n.Scalar() == "auto" || n.Scalar().empty()); }

using Setter = std::function<void(const YAML::Node&, const std::string&)>;
using Section = std::map<std::string, Setter>;

template <class T>
Setter set(T& dst) {
    return [&dst](const YAML::Node& n, const std::string& f) { dst = scalar<T>(n, f); };
}
template <class T>
Setter set_list(std::vector<T>& dst) {
    return [&dst](const YAML::Node& n, const std::string& f) { dst = list<T>(n, f); };
}

std::map<std::string, Section> schema(RunConfig& c, double& p, int& N, double& r_max, int& nr) {
    auto& s = c.solver;
    auto& in = s.init;
    auto& sim = c.similarity;
    auto& fn = c.functionals;
    auto& v = c.verify;
    return {
        {"model", {{"p", set(p)}, {"N", set(N)}}},
        {"solver",
         {{"r_max", set(r_max)},
          {"nr", set(nr)},
          {"cfl", set(s.cfl)},
          {"eta", set(s.eta)},
          {"u_cap", set(s.u_cap)},
          {"store_ds", set(s.store_ds)},
          {"store_radius_factor", set(s.store_radius_factor)},
          {"fit_lo", set(s.fit_lo)},
          {"t_max", set(s.t_max)},
          {"max_steps", set(s.max_steps)}}},
        {"initial",
         {{"family",
           [&in](const YAML::Node& n, const std::string& f) {
               try {
                   in.family = parse_initial_family(scalar<std::string>(n, f));
               } catch (const InvalidParameter& e) {
                   throw ConfigError(f, line_of(n), e.what());
               }
           }},
          {"amplitude", set(in.amplitude)},
          {"velocity", set(in.velocity)},
          {"width", set(in.width)},
          {"blowup_time", set(in.blowup_time)},
          {"plateau_radius", set(in.plateau_radius)},
          {"taper", set(in.taper)},
          {"bump_amplitude", set(in.bump_amplitude)},
          {"bump_width", set(in.bump_width)}}},
        {"similarity",
         {{"x0",
           [&sim](const YAML::Node& n, const std::string& f) {
               if (is_auto(n)) {
                   sim.x0.reset();
                   return;
               }
               auto xs = list<double>(n, f);
               if (xs.size() != 3) throw ConfigError(f, line_of(n), "expected three coordinates");
               sim.x0 = std::array<double, 3>{xs[0], xs[1], xs[2]};
           }},
          {"T0",
           [&sim](const YAML::Node& n, const std::string& f) {
               if (is_auto(n))
                   sim.T0.reset();
               else
                   sim.T0 = scalar<double>(n, f);
           }},
          {"delta0", set(sim.delta0)},
          {"s_start", set(sim.s_start)},
          {"s_end", set(sim.s_end)},
          {"ds", set(sim.ds)},
          {"n_radial", set(sim.n_radial)},
          {"n_angular", set(sim.n_angular)},
          {"angular", set(sim.angular)}}},
        {"functionals",
         {{"names", set_list(fn.names)},
          {"eps", set_list(fn.eps)},
          {"k_max", set(fn.k_max)},
          {"sigma", set_list(fn.sigma)},
          {"q", set(fn.q)}}},
        {"verify",
         {{"transient_s", set(v.transient_s)},
          {"lemma_window", set(v.lemma_window)},
          {"lemma_rel_tol", set(v.lemma_rel_tol)},
          {"lemma_abs_tol", set(v.lemma_abs_tol)},
          {"slack", set(v.slack)},
          {"nonneg_tol", set(v.nonneg_tol)},
          {"decay_factor", set(v.decay_factor)},
          {"vanish_tol", set(v.vanish_tol)},
          {"identity_fields", set(v.identity_fields)},
          {"flow_fields", set(v.flow_fields)},
          {"identity_eps", set_list(v.identity_eps)},
          {"identity_tol", set(v.identity_tol)}}},
        {"output", {{"dir", set(c.output_dir)}, {"seed", set(c.seed)}}},
    };
}

std::string num_list(const std::vector<double>& xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + format_double(xs[i]);
    return out + "]";
}

std::string quoted(const std::string& s) {
    YAML::Emitter em;
    em << YAML::DoubleQuoted << s;
    return em.c_str();
}

}  // namespace

RunConfig default_config() {
    RunConfig c;
    c.solver.e = make_exponents(4.0, 3);
    c.solver.grid = make_radial_grid(2.5, 2048);
    return c;
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError(origin, e.mark.line + 1, e.msg);
    }
    RunConfig c = default_config();
    double p = c.solver.e.p, r_max = c.solver.grid.r_max;
    int N = c.solver.e.N, nr = c.solver.grid.nr;
    auto sections = schema(c, p, N, r_max, nr);
    if (root.IsNull()) return c;
    std::map<std::string, int> lines;  // section or field -> line, for errors found after reading
    if (!root.IsMap()) throw ConfigError(origin, line_of(root), "top level must be a mapping of sections");
    for (const auto& sec : root) {
        const auto name = sec.first.as<std::string>();
        auto it = sections.find(name);
        if (it == sections.end()) throw ConfigError(name, line_of(sec.first), "unknown section");
        if (sec.second.IsNull()) continue;
        if (!sec.second.IsMap()) throw ConfigError(name, line_of(sec.second), "section must be a mapping");
        lines[name] = line_of(sec.first);
        for (const auto& kv : sec.second) {
            const auto key = kv.first.as<std::string>();
            const auto field = name + "." + key;
            auto setter = it->second.find(key);
            if (setter == it->second.end()) throw ConfigError(field, line_of(kv.first), "unknown key");
            setter->second(kv.second, field);
            lines[field] = line_of(kv.first);
        }
    }
    const auto locate = [&](const ConfigError& e, std::initializer_list<std::string> candidates) {
        for (const auto& k : candidates)
            if (auto it = lines.find(k); it != lines.end()) return ConfigError(e.field, it->second, e.detail);
        return e;
    };
    try {
        try {
            c.solver.e = make_exponents(p, N);
        } catch (const InvalidParameter& e) {
            throw ConfigError("model", 0, e.what());
        }
        try {
            c.solver.grid = make_radial_grid(r_max, nr);
        } catch (const InvalidParameter& e) {
            throw ConfigError("solver", 0, e.what());
        }
        validate(c);
    } catch (const ConfigError& e) {
        if (e.line > 0) throw;
        if (e.field == "model") throw locate(e, {"model.p", "model.N", "model"});
        throw locate(e, {e.field, e.field.substr(0, e.field.find('.'))});
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError(path, 0, "cannot open config file");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), path);
}

void validate(const RunConfig& c) {
    try {
        blowup::validate(c.solver);
    } catch (const InvalidParameter& e) {
        throw ConfigError("solver", 0, e.what());
    }
    const auto& sim = c.similarity;
    if (!(sim.ds > 0)) throw ConfigError("similarity.ds", 0, "must be positive");
    if (!(sim.s_end > sim.s_start)) throw ConfigError("similarity.s_end", 0, "must exceed s_start");
    if (sim.n_radial < 4) throw ConfigError("similarity.n_radial", 0, "must be at least 4");
    if (sim.n_angular < 1) throw ConfigError("similarity.n_angular", 0, "must be at least 1");
    if (sim.angular != "auto" && sim.angular != "radial" && sim.angular != "full")
        throw ConfigError("similarity.angular", 0, "expected auto, radial or full");
    if (!(sim.delta0 >= 0 && sim.delta0 < 1)) throw ConfigError("similarity.delta0", 0, "must lie in [0, 1)");
    if (sim.T0 && !(*sim.T0 > 0)) throw ConfigError("similarity.T0", 0, "must be positive");
    const auto& fn = c.functionals;
    if (fn.eps.empty()) throw ConfigError("functionals.eps", 0, "needs at least one value");
    for (double e : fn.eps)
        if (!(e > 0)) throw ConfigError("functionals.eps", 0, "values must be positive");
    if (fn.k_max < 0) throw ConfigError("functionals.k_max", 0, "must be nonnegative");
    if (!(fn.q >= 0)) throw ConfigError("functionals.q", 0, "must be nonnegative");
    const auto& v = c.verify;
    if (v.identity_fields < 0) throw ConfigError("verify.identity_fields", 0, "must be nonnegative");
    if (v.flow_fields < 0) throw ConfigError("verify.flow_fields", 0, "must be nonnegative");
    if (!(v.lemma_window > 0)) throw ConfigError("verify.lemma_window", 0, "must be positive");
    if (!(v.transient_s >= 0)) throw ConfigError("verify.transient_s", 0, "must be nonnegative");
    if (!(v.lemma_rel_tol >= 0)) throw ConfigError("verify.lemma_rel_tol", 0, "must be nonnegative");
    if (!(v.lemma_abs_tol >= 0)) throw ConfigError("verify.lemma_abs_tol", 0, "must be nonnegative");
    if (!(v.slack >= 0)) throw ConfigError("verify.slack", 0, "must be nonnegative");
    if (!(v.nonneg_tol >= 0)) throw ConfigError("verify.nonneg_tol", 0, "must be nonnegative");
    if (!(v.decay_factor > 0 && v.decay_factor <= 1)) throw ConfigError("verify.decay_factor", 0, "must lie in (0, 1]");
    if (!(v.vanish_tol >= 0)) throw ConfigError("verify.vanish_tol", 0, "must be nonnegative");
    if (!(v.identity_tol > 0)) throw ConfigError("verify.identity_tol", 0, "must be positive");
    for (double e : v.identity_eps)
        if (!(e > 0)) throw ConfigError("verify.identity_eps", 0, "values must be positive");
}

std::string dump_config(const RunConfig& c) {
    const auto& s = c.solver;
    const auto& in = s.init;
    const auto& sim = c.similarity;
    const auto& fn = c.functionals;
    const auto& v = c.verify;
    const auto d = [](double x) { return format_double(x); };
    std::string names = "[";
    for (std::size_t i = 0; i < fn.names.size(); ++i) names += (i ? ", " : "") + quoted(fn.names[i]);
    names += "]";
    std::string out;
    out += fmt::format("model:\n  p: {}\n  N: {}\n", d(s.e.p), s.e.N);
    out += fmt::format(
        "solver:\n  r_max: {}\n  nr: {}\n  cfl: {}\n  eta: {}\n  u_cap: {}\n  store_ds: {}\n"
        "  store_radius_factor: {}\n  fit_lo: {}\n  t_max: {}\n  max_steps: {}\n",
        d(s.grid.r_max), s.grid.nr, d(s.cfl), d(s.eta), d(s.u_cap), d(s.store_ds), d(s.store_radius_factor),
        d(s.fit_lo), d(s.t_max), s.max_steps);
    out += fmt::format(
        "initial:\n  family: {}\n  amplitude: {}\n  velocity: {}\n  width: {}\n  blowup_time: {}\n"
        "  plateau_radius: {}\n  taper: {}\n  bump_amplitude: {}\n  bump_width: {}\n",
        to_string(in.family), d(in.amplitude), d(in.velocity), d(in.width), d(in.blowup_time),
        d(in.plateau_radius), d(in.taper), d(in.bump_amplitude), d(in.bump_width));
    out += fmt::format(
        "similarity:\n  x0: {}\n  T0: {}\n  delta0: {}\n  s_start: {}\n  s_end: {}\n  ds: {}\n"
        "  n_radial: {}\n  n_angular: {}\n  angular: {}\n",
        sim.x0 ? num_list({(*sim.x0)[0], (*sim.x0)[1], (*sim.x0)[2]}) : "auto", sim.T0 ? d(*sim.T0) : "auto",
        d(sim.delta0), d(sim.s_start), d(sim.s_end), d(sim.ds), sim.n_radial, sim.n_angular, sim.angular);
    out += fmt::format("functionals:\n  names: {}\n  eps: {}\n  k_max: {}\n  sigma: {}\n  q: {}\n", names,
                       num_list(fn.eps), fn.k_max, num_list(fn.sigma), d(fn.q));
    out += fmt::format(
        "verify:\n  transient_s: {}\n  lemma_window: {}\n  lemma_rel_tol: {}\n  lemma_abs_tol: {}\n  slack: {}\n"
        "  nonneg_tol: {}\n  decay_factor: {}\n  vanish_tol: {}\n  identity_fields: {}\n  flow_fields: {}\n  identity_eps: {}\n"
        "  identity_tol: {}\n",
        d(v.transient_s), d(v.lemma_window), d(v.lemma_rel_tol), d(v.lemma_abs_tol), d(v.slack), d(v.nonneg_tol),
        d(v.decay_factor), d(v.vanish_tol), v.identity_fields, v.flow_fields, num_list(v.identity_eps), d(v.identity_tol));
    out += fmt::format("output:\n  dir: {}\n  seed: {}\n", quoted(c.output_dir), c.seed);
    return out;
}

}  // namespace blowup::io
