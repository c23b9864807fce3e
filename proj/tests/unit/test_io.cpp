#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

#include "blowup/io/config.hpp"
#include "blowup/io/csv.hpp"
#include "blowup/io/digest.hpp"
#include "blowup/io/run_dir.hpp"

using namespace blowup;
using namespace blowup::io;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / "blowup_unit" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int error_line(const std::string& yaml) {
    try {
        parse_config(yaml);
    } catch (const ConfigError& e) {
        return e.line;
    }
    return -1;
}

}  // namespace

TEST_CASE("double formatting round-trips") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int i = 0; i < 2000; ++i) {
        const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
        CHECK(parse_double(format_double(x)) == x);
    }
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1e8) == "1e+08");
    CHECK(std::isinf(parse_double(format_double(std::numeric_limits<double>::infinity()))));
    CHECK_THROWS(parse_double("1.5x"));
    CHECK_THROWS(parse_double(""));
}

TEST_CASE("csv quoting and reading") {
    const auto dir = scratch("csv");
    CsvWriter w({"name", "value"});
    w.row(std::vector<std::string>{"plain", "1"});
    w.row(std::vector<std::string>{"has,comma", "2"});
    w.row(std::vector<std::string>{"has \"quote\"", "3"});
    CHECK(w.text() == "name,value\r\nplain,1\r\n\"has,comma\",2\r\n\"has \"\"quote\"\"\",3\r\n");
    CHECK_THROWS(w.row(std::vector<double>{1.0}));
    w.save(dir / "nested" / "t.csv");

    const auto t = read_csv(dir / "nested" / "t.csv");
    CHECK(t.header == std::vector<std::string>{"name", "value"});
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[1][0] == "has,comma");
    CHECK(t.rows[2][0] == "has \"quote\"");
    CHECK(t.column("value") == 1);
    CHECK_THROWS(t.column("missing"));

    FunctionalSeries s;
    s.name = "F0";
    s.push(0.5, 1.0 / 3.0, 1e-17);
    s.push(0.75, -2.5e-300);
    write_series(s, dir / "F0.csv");
    const auto back = read_series(dir / "F0.csv");
    CHECK(back.name == "F0");
    CHECK(back.s == s.s);
    CHECK(back.value == s.value);
    CHECK(back.tail_bound == s.tail_bound);
}

TEST_CASE("sha256 digests") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    const auto dir = scratch("sha");
    std::ofstream(dir / "abc.txt", std::ios::binary) << "abc";
    CHECK(sha256_file(dir / "abc.txt") == sha256_hex("abc"));
    CHECK_THROWS(sha256_file(dir / "none.txt"));
}

TEST_CASE("config defaults, dump and parse") {
    const RunConfig d = default_config();
    CHECK(d.solver.e.p == 4.0);
    CHECK(d.solver.e.N == 3);
    CHECK(d.similarity.ds == 0.025);
    CHECK_NOTHROW(validate(d));

    RunConfig c = d;
    c.solver.e = make_exponents(2.5, 4);
    c.solver.grid = make_radial_grid(3.0, 777);
    c.solver.eta = 0.1 / 3.0;
    c.solver.init.family = InitialFamily::Gaussian;
    c.solver.init.bump_amplitude = -0.2;
    c.similarity.x0 = std::array<double, 3>{0.1, 0.0, -0.25};
    c.similarity.T0 = 1.0 + 1e-13;
    c.similarity.angular = "full";
    c.functionals.names = {"F0", "ladder"};
    c.functionals.eps = {0.6, 1.1};
    c.verify.identity_fields = 3;
    c.output_dir = "some dir/with: colon";
    c.seed = 123456789012345ULL;
    const std::string text = dump_config(c);
    const RunConfig r = parse_config(text);
    CHECK(dump_config(r) == text);
    CHECK(r.solver.e.p == 2.5);
    CHECK(r.solver.grid.nr == 777);
    CHECK(r.solver.eta == c.solver.eta);
    CHECK(r.similarity.T0 == c.similarity.T0);
    CHECK((*r.similarity.x0)[2] == -0.25);
    CHECK(r.functionals.names == c.functionals.names);
    CHECK(r.output_dir == c.output_dir);
    CHECK(r.seed == c.seed);

    // the shipped example parses to the defaults
    const auto ex = load_config(BLOWUP_SOURCE_DIR "/configs/example.yaml");
    CHECK(dump_config(ex) == dump_config(d));
}

TEST_CASE("config errors carry the line") {
    CHECK(error_line("model:\n  p: 4\n  pp: 3\n") == 3);
    CHECK(error_line("model:\n  p: 4\nsolverr:\n  nr: 10\n") == 3);
    CHECK(error_line("solver:\n  nr: many\n") == 2);
    CHECK(error_line("model:\n  p: 9\n  N: 3\n") == 2);
    CHECK(error_line("similarity:\n  x0: [1, 2]\n") == 2);
    CHECK(error_line("model: [1,\n") > 0);
    CHECK(error_line("model:\n  p: 4\n") == -1);
    try {
        parse_config("\n\nverify:\n  slack: -1\n", "cfg.yaml");
        FAIL("expected an error");
    } catch (const ConfigError& e) {
        CHECK(e.field == "verify.slack");
        CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
    CHECK_THROWS_AS(load_config("/nonexistent/config.yaml"), ConfigError);
}

TEST_CASE("run directory manifest") {
    const auto root = scratch("run");
    {
        RunDir dir(root);
        dir.save_config(default_config());
        dir.write("notes/a.txt", "abc");
        dir.commit("first");
    }
    RunDir again(root);
    again.write("b.txt", "");
    again.commit("second");

    const auto m = nlohmann::json::parse(slurp(root / "manifest.json"));
    CHECK(m["stages"].size() == 2);
    CHECK(m["config_sha256"] == sha256_file(root / "config.resolved.yaml"));
    bool found = false;
    for (const auto& f : m["files"])
        if (f["path"] == "notes/a.txt") {
            found = true;
            CHECK(f["sha256"] == sha256_hex("abc"));
            CHECK(f["bytes"] == 3);
        }
    CHECK(found);
    CHECK(again.entries().size() == 3);
    CHECK(dump_config(again.load_config()) == dump_config(default_config()));

    BlowupRecord rec;
    rec.blew_up = true;
    rec.T_est = 1.0000034615;
    rec.center = Vec3(0.0, 0.5, 0.0);
    rec.steps = 42;
    save_blowup(again, rec);
    const auto back = load_blowup(again);
    CHECK(back.T_est == rec.T_est);
    CHECK(back.center.y() == 0.5);
    CHECK(back.steps == 42);
}
