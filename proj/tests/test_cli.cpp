#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "polariton/cli.hpp"
#include "polariton/config.hpp"
#include "polariton/error.hpp"

using namespace polariton;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "polariton");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& body) {
    const fs::path p = fs::temp_directory_path() / ("polariton_test_" + name);
    std::ofstream(p) << body;
    return p;
}

// data rows of a single-table CSV
std::vector<std::vector<std::string>> rows(const std::string& csv, std::vector<std::string>* cols = nullptr) {
    std::istringstream in(csv);
    std::string line;
    std::vector<std::vector<std::string>> r;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cells.push_back(c);
        if (header) {
            if (cols) *cols = cells;
            header = false;
        } else {
            r.push_back(cells);
        }
    }
    return r;
}

}  // namespace

TEST_CASE("config parsing") {
    std::istringstream in(
        "# fig 3b\n"
        "gamma_cb = 1e-3\n"
        "v_d = 0.7   # applied after doppler\n"
        "doppler = 200\n"
        "density_ratio=1.2\n"
        "medium = hotgas\n"
        "distribution = maxwellian\n");
    const ModelParams p = parse_config(in);
    CHECK(p.drive.delta_d == doctest::Approx(-140.0));
    CHECK(*p.atom.density_ratio == 1.2);
    CHECK(p.distribution() == Distribution::Maxwellian);

    std::istringstream beam("medium = beam\nbeam_velocity = 0.3\ncoupling_g = 1e-3\n");
    const ModelParams b = parse_config(beam);
    CHECK(b.beam_velocity() == 0.3);

    for (const char* bad : {"nonsense = 1\n", "gamma = 2\n", "gamma_cb = abc\n", "gamma_cb 1\n", "medium = liquid\n"}) {
        std::istringstream s(bad);
        CHECK_THROWS_AS(parse_config(s), ParameterError);
    }
    CHECK_THROWS_AS(load_config("/nonexistent/dir/x.cfg"), std::ios_base::failure);
}

TEST_CASE("describe round-trips through the parser") {
    ModelParams p = fig3a_params();
    std::ostringstream os;
    for (const auto& l : describe(p)) os << l << "\n";
    std::istringstream in(os.str());
    const ModelParams q = parse_config(in);
    CHECK(q.beam_velocity() == p.beam_velocity());
    CHECK(*q.atom.coupling_g == *p.atom.coupling_g);
    CHECK(q.drive.delta_d == p.drive.delta_d);
}

TEST_CASE("format_double") {
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "NaN");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "Inf");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-Inf");
    CHECK(std::stod(format_double(0.1)) == 0.1);
}

TEST_CASE("sweep specs") {
    const SweepAxis a = parse_sweep("delta_d:0:-300:301");
    CHECK(a.name == "delta_d");
    const auto v = a.values();
    REQUIRE(v.size() == 301);
    CHECK(v.front() == 0.0);
    CHECK(v.back() == -300.0);
    CHECK(v[1] == doctest::Approx(-1.0));
    CHECK(parse_sweep("omega_rabi:0.3:0.3:2").values() == std::vector<double>{0.3, 0.3});
    for (const char* bad : {"delta_d:0:1", "delta_d:a:1:3", "delta_d:0:1:1", "delta_d:0:1:x"})
        CHECK_THROWS_AS(parse_sweep(bad), ParameterError);
    ModelParams p;
    CHECK_THROWS_AS(set_param(p, "bogus", 1.0), ParameterError);
}

TEST_CASE("fig2 preset equals the groupvel sweep") {
    const Run pre = cli({"preset", "fig2"});
    REQUIRE(pre.code == 0);
    std::vector<std::string> cols;
    const auto r = rows(pre.out, &cols);
    REQUIRE(r.size() == 301);
    REQUIRE(cols.size() == 5);
    CHECK(cols[2] == "vg_over_vT__N0.6");
    CHECK(cols[3] == "vg__N1.0");
    CHECK(cols[4] == "vg__N1.5");

    const fs::path cfg = temp_file("nu15.cfg", "density_ratio = 1.5\n");
    const Run g = cli({"groupvel", "--config", cfg.string(), "--sweep", "delta_d:0:-300:301"});
    REQUIRE(g.code == 0);
    const auto s = rows(g.out);
    REQUIRE(s.size() == 301);
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[i][4] == s[i].back());

    // nu = 1.5 goes slower than zero between the two roots; nu = 0.6 never does
    int crossings = 0;
    for (std::size_t i = 1; i < r.size(); ++i) {
        if ((std::stod(r[i][4]) < 0) != (std::stod(r[i - 1][4]) < 0)) ++crossings;
        CHECK(std::stod(r[i][2]) > 0);
    }
    CHECK(crossings == 2);
}

TEST_CASE("density sweep is monotone at fixed drift") {
    const fs::path cfg = temp_file("nu1.cfg", "density_ratio = 1\n");
    const Run g = cli({"groupvel", "--config", cfg.string(), "--sweep", "density_ratio:0.5:2:7"});
    REQUIRE(g.code == 0);
    const auto r = rows(g.out);
    REQUIRE(r.size() == 7);
    for (std::size_t i = 1; i < r.size(); ++i) CHECK(std::stod(r[i].back()) < std::stod(r[i - 1].back()));
}

TEST_CASE("degenerate sweep gives identical rows") {
    const fs::path cfg = temp_file("deg.cfg", "density_ratio = 1.1\n");
    const Run g = cli({"groupvel", "--config", cfg.string(), "--sweep", "delta_d:-80:-80:2"});
    REQUIRE(g.code == 0);
    const auto r = rows(g.out);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == r[1]);
}

TEST_CASE("exit codes") {
    CHECK(cli({"groupvel"}).code == 2);  // no density
    CHECK(cli({"groupvel", "--bogus"}).code == 2);
    const fs::path bad = temp_file("bad.cfg", "gamma_cb = -1\ndensity_ratio = 1\n");
    CHECK(cli({"groupvel", "--config", bad.string()}).code == 2);
    const fs::path ok = temp_file("ok.cfg", "density_ratio = 1\n");
    CHECK(cli({"groupvel", "--config", ok.string(), "--sweep", "nonsense:0:1:2"}).code == 2);
    CHECK(cli({"groupvel", "--config", ok.string(), "--out", "/nonexistent/dir/out.csv"}).code == 4);
    CHECK(cli({"preset", "fig9"}).code == 2);
}

TEST_CASE("json output and NaN cells") {
    const fs::path ok = temp_file("json.cfg", "density_ratio = 1.1\n");
    const Run r = cli({"groupvel", "--config", ok.string(), "--format", "json", "--sweep", "delta_d:-60:-140:5"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["header"].is_array());
    CHECK(j["header"][0] == "polariton 1.0");
    REQUIRE(j["tables"].size() == 1);
    CHECK(j["tables"]["groupvel"]["rows"].size() == 5);

    Dataset ds;
    ds.tables.push_back({"t", {"a", "b"}, {{1.0, std::numeric_limits<double>::quiet_NaN()}}});
    CHECK(ds.nan_cells() == 1);
    std::ostringstream js, cs;
    write_json(js, ds);
    CHECK(nlohmann::json::parse(js.str())["tables"]["t"]["rows"][0][1].is_null());
    write_csv(cs, ds, ds.tables[0]);
    CHECK(cs.str().find("1,NaN") != std::string::npos);
}

TEST_CASE("multi-table csv splits into files") {
    const fs::path dir = fs::temp_directory_path() / "polariton_split";
    fs::create_directories(dir);
    Dataset ds;
    ds.header = {"x"};
    ds.tables.push_back({"profile", {"z"}, {{0.0}}});
    ds.tables.push_back({"trajectory", {"t"}, {{1.0}}});
    std::ostringstream unused;
    write_dataset(ds, Format::Csv, (dir / "run.csv").string(), unused);
    CHECK(fs::exists(dir / "run_profile.csv"));
    CHECK(fs::exists(dir / "run_trajectory.csv"));
    fs::remove_all(dir);
}

TEST_CASE("fig5 trajectory moves forward and stays before the freeze point") {
    const Dataset d = run_preset("fig5");
    const Table* tr = nullptr;
    for (const auto& t : d.tables)
        if (t.name == "trajectory") tr = &t;
    REQUIRE(tr != nullptr);
    std::size_t zc = 0;
    while (zc < tr->columns.size() && tr->columns[zc] != "z") ++zc;
    REQUIRE(zc < tr->columns.size());
    std::size_t lc = 0;
    while (lc < tr->columns.size() && tr->columns[lc] != "log_distance") ++lc;
    REQUIRE(lc < tr->columns.size());
    REQUIRE(tr->rows.size() == 4);
    for (std::size_t i = 1; i < tr->rows.size(); ++i) {
        CHECK(tr->rows[i][zc] >= tr->rows[i - 1][zc]);
        // z itself rounds to z* after one tau; the distance to z* keeps shrinking
        CHECK(tr->rows[i][lc] < tr->rows[i - 1][lc]);
    }
    const auto gap = [&](std::size_t i) { return std::exp(tr->rows[i][lc]) - std::exp(tr->rows[i + 1][lc]); };
    CHECK(gap(1) < gap(0));
    CHECK(gap(2) < gap(1));
    bool has_header = false;
    for (const auto& h : d.header) has_header |= h.rfind("polariton", 0) == 0;
    CHECK(has_header);
}

TEST_CASE("fig3b spectrum bottoms out at gamma_cb") {
    const Dataset d = run_preset("fig3b");
    REQUIRE(d.tables.size() == 1);
    const Table& t = d.tables[0];
    CHECK(t.columns[0] == "dk");
    CHECK(t.columns[1] == "Re_domega");
    CHECK(t.columns[2] == "Im_domega");
    double lo = 1e300;
    for (const auto& r : t.rows) lo = std::min(lo, r[2]);
    CHECK(lo > 0.5e-3);
    CHECK(lo < 2e-3);
}

TEST_CASE("presets are deterministic") {
    for (const char* id : {"fig2", "fig3a", "fig5"}) {
        const Run a = cli({"preset", id}), b = cli({"preset", id});
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("chi subcommand") {
    const fs::path ok = temp_file("chi.cfg", "density_ratio = 1.1\n");
    const Run r = cli({"chi", "--config", ok.string(), "--sweep", "d_omega:-100.1:-99.9:5"});
    REQUIRE(r.code == 0);
    std::vector<std::string> cols;
    const auto rr = rows(r.out, &cols);
    CHECK(rr.size() == 5);
    CHECK(cols == std::vector<std::string>{"d_omega", "d_k", "Re_chi", "Im_chi"});
    for (const auto& row : rr) CHECK(std::stod(row[3]) <= 0.0);
}
