#include "doctest.h"

#include "ftqm/cli/commands.hpp"
#include "ftqm/cli/config.hpp"
#include "ftqm/cli/table.hpp"
#include "ftqm/error.hpp"
#include "ftqm/oscillator.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

using namespace ftqm;
using namespace ftqm::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string error_of(std::string_view text)
{
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

/// Fresh scratch directory per call, removed by the caller's fixture.
struct Scratch {
    fs::path dir;
    Scratch()
    {
        std::string tmpl = (fs::temp_directory_path() / "ftqm-cli-XXXXXX").string();
        dir = ::mkdtemp(tmpl.data());
    }
    ~Scratch() { fs::remove_all(dir); }
};

int run_tool(const std::string& args)
{
    const std::string cmd = std::string(FTQM_TOOL) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write(const fs::path& path, const std::string& text)
{
    std::ofstream(path, std::ios::binary) << text;
}

const char* kMinimal = R"({"potential": {"type": "harmonic"}})";

} // namespace

TEST_CASE("minimal config fills defaults")
{
    const RunConfig cfg = parse_config(kMinimal);
    REQUIRE(std::holds_alternative<HarmonicPotential>(cfg.potential.shape));
    const auto& ho = std::get<HarmonicPotential>(cfg.potential.shape);
    CHECK(ho.omega_osc == 1.0);
    CHECK(ho.mass == 1.0);
    CHECK(cfg.grid.x_min() == -10.0);
    CHECK(cfg.grid.x_max() == 10.0);
    CHECK(cfg.grid.size() == 2001);
    CHECK(cfg.levels == 10);
    CHECK(std::holds_alternative<AllOnes>(cfg.degeneracy));
    CHECK(cfg.temperatures == std::vector<double>{1.0});
    CHECK(cfg.transitions.empty());
    CHECK(cfg.units.hbar() == 1.0);
    CHECK(cfg.format == OutputFormat::csv);
    CHECK(!cfg.evolution);
    CHECK(!cfg.ensemble);
}

TEST_CASE("config errors name the field")
{
    const std::string neg = error_of(R"({"potential": {"type": "harmonic"}, "temperatures": [1.0, -0.5]})");
    CHECK(neg.find("temperatures[1]") != std::string::npos);

    const std::string typo = error_of(R"({"potentail": {"type": "harmonic"}})");
    CHECK(typo.find("potentail") != std::string::npos);

    const std::string nested = error_of(R"({"potential": {"type": "harmonic", "omgea": 2}})");
    CHECK(nested.find("omgea") != std::string::npos);
    CHECK(nested.find("potential") != std::string::npos);

    const std::string broken = error_of(R"({"potential": {"type": "harmonic"},)");
    CHECK(broken.find("byte") != std::string::npos);

    CHECK(error_of(R"({"potential": {"type": "harmonic"}, "levels": 0})").find("levels") !=
          std::string::npos);
    CHECK(error_of(R"({"potential": {"type": "harmonic"}, "grid": {"x_min": 0, "x_max": 1, "n_points": 10},
                       "levels": 9})")
              .find("levels") != std::string::npos);
    CHECK(error_of(R"({"potential": {"type": "harmonic"}, "levels": 3, "transitions": [[0, 3]]})")
              .find("transitions[0]") != std::string::npos);
    CHECK(error_of(R"({"potential": {"type": "tabulated", "values": [0, 1, 2]}})").find("grid") !=
          std::string::npos);
    CHECK(error_of(R"({"potential": {"type": "harmonic"}, "levels": 3,
                       "degeneracy": {"policy": "explicit", "g": [1, 2]}})")
              .find("degeneracy") != std::string::npos);
    CHECK(error_of(R"({"potential": {"type": "harmonic"}, "output": {"format": "xml"}})")
              .find("xml") != std::string::npos);
}

TEST_CASE("full config parses")
{
    const RunConfig cfg = parse_config(R"({
        "units": {"hbar": 2.0, "k_B": 0.5, "mass": 3.0},
        "potential": {"type": "infinite_well", "width": 2.0, "offset": 0.25},
        "grid": {"x_min": 0.0, "x_max": 2.0, "n_points": 101},
        "levels": 4,
        "degeneracy": {"policy": "explicit", "g": [1, 4, 9, 16]},
        "temperatures": [0.5, 1.5],
        "transitions": [[1, 0], [3, 2]],
        "evolution": {"components": [{"level": 0, "re": 0.6}, {"level": 1, "im": 0.8}],
                      "times": [0, 1, 2], "temperature": 1.0, "x_stride": 5},
        "ensemble": {"temperature": 2.0,
                     "states": [{"P": 1.0, "pair_energy": 0.0,
                                 "particles": [{"kin": 1.0, "pot": 0.0, "g": 1, "p": 0.5}]}]},
        "output": {"directory": "out", "format": "report"}
    })");
    CHECK(cfg.units.hbar() == 2.0);
    CHECK(cfg.units.k_B() == 0.5);
    CHECK(cfg.mass == 3.0);
    CHECK(cfg.potential.offset == 0.25);
    CHECK(std::get<ExplicitDegeneracies>(cfg.degeneracy).g == std::vector<int>{1, 4, 9, 16});
    CHECK(cfg.transitions.size() == 2);
    REQUIRE(cfg.evolution);
    CHECK(cfg.evolution->components.size() == 2);
    CHECK(cfg.evolution->components[1].coeff == std::complex<double>{0.0, 0.8});
    CHECK(cfg.evolution->x_stride == 5);
    REQUIRE(cfg.ensemble);
    CHECK(cfg.ensemble->ensemble.states.size() == 1);
    CHECK(cfg.output_directory == "out");
    CHECK(cfg.format == OutputFormat::report);
}

TEST_CASE("number formatting")
{
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-2.5e-20) == "-2.5e-20");
    const double third = 1.0 / 3.0;
    CHECK(std::stod(format_number(third)) == third);
}

TEST_CASE("tables and emit")
{
    ResultTable t({"a", "E_n(T)", "nu(T1)"}, "a: first\nE_n(T): second");
    CHECK_THROWS_AS(t.add_row({1.0, 2.0}), InvalidInput);
    CHECK_THROWS_AS(t.add_row({1.0, std::numeric_limits<double>::quiet_NaN(), 0.0}), InvalidInput);
    CHECK_THROWS_AS(t.add_row({1.0, std::numeric_limits<double>::infinity(), 0.0}), InvalidInput);

    CHECK(to_csv(t) == "a,E_n(T),nu(T1)\n");
    t.add_row({1.0, 0.5, -3.0});
    CHECK(to_csv(t) == "a,E_n(T),nu(T1)\n1,0.5,-3\n");

    const std::string report = to_report(t, "demo");
    CHECK(report.find("# a: first") != std::string::npos);
    CHECK(report.find("E_n(T)") != std::string::npos);
    CHECK(report.find("# rows: 1") != std::string::npos);

    Scratch s;
    const fs::path csv = emit(ResultTable({"x", "y"}, ""), s.dir / "nested", "empty", OutputFormat::csv);
    CHECK(csv.filename() == "empty.csv");
    CHECK(slurp(csv) == "x,y\n");
    const fs::path txt = emit(t, s.dir, "demo", OutputFormat::report);
    CHECK(txt.filename() == "demo.txt");

    write(s.dir / "plain", "x");
    try {
        emit(t, s.dir / "plain" / "sub", "demo", OutputFormat::csv);
        FAIL("expected an I/O error");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("plain") != std::string::npos);
    }
}

TEST_CASE("commands")
{
    RunConfig box = parse_config(R"({"potential": {"type": "infinite_well"}, "levels": 4})");
    const ResultTable sp = run_spectrum(box);
    REQUIRE(sp.rows().size() == 4);
    CHECK(sp.rows()[0][1] == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(sp.rows()[3][1] == doctest::Approx(8.0).epsilon(1e-5));

    RunConfig ho = parse_config(R"({"potential": {"type": "harmonic"}, "levels": 5,
                                    "temperatures": [0, 1]})");
    CHECK(run_spectrum(ho).rows()[0][1] == doctest::Approx(0.5).epsilon(1e-5));
    const ResultTable th = run_thermal(ho);
    REQUIRE(th.rows().size() == 10);
    for (std::size_t n = 0; n < 5; ++n) {
        CHECK(th.rows()[n][2] == run_spectrum(ho).rows()[n][1]);
    }
    CHECK(th.rows()[5][2] == doctest::Approx(ho_energy_thermal(0, {1.0, 1.0}, 1.0, UnitSystem::natural()))
                                 .epsilon(1e-4));

    // Degeneracy-weighted p over the full converged spectrum sums to one.
    RunConfig all = ho;
    all.levels = 200;
    const ResultTable wide = run_thermal(all);
    double sum = 0.0;
    for (const auto& row : wide.rows()) {
        if (row[0] == 1.0) {
            sum += row[3];
        }
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));

    RunConfig shift = parse_config(R"({"potential": {"type": "infinite_well"}, "levels": 20,
        "degeneracy": {"policy": "explicit", "g": [1, 4, 9, 16, 25, 36, 49, 64, 81, 100, 121, 144,
                                                   169, 196, 225, 256, 289, 324, 361, 400]},
        "temperatures": [1, 2], "transitions": [[1, 0], [1, 1]]})");
    const ResultTable sh = run_shift(shift);
    REQUIRE(sh.rows().size() == 2);
    CHECK(sh.rows()[0][8] == doctest::Approx(std::log(4.0) / (4.0 * std::numbers::pi)).epsilon(1e-12));
    CHECK(sh.rows()[1][6] == 0.0);
    shift.temperatures = {1.0};
    CHECK_THROWS_AS(run_shift(shift), ConfigError);

    RunConfig evo = parse_config(R"({"potential": {"type": "harmonic"}, "levels": 4,
        "evolution": {"level": 1, "times": [0, 0.7, 3.1], "temperature": 1.0, "x_stride": 10}})");
    const EvolveResult er = run_evolve(evo);
    const std::size_t per_t = er.field.rows().size() / 3;
    for (std::size_t k = 0; k < per_t; ++k) {
        CHECK(std::abs(er.field.rows()[k][4] - er.field.rows()[k + 2 * per_t][4]) <= 1e-15);
    }
    for (const auto& row : er.norms.rows()) {
        CHECK(std::abs(row[1] - 1.0) <= 1e-12);
    }

    RunConfig osc = parse_config(R"({"potential": {"type": "harmonic"}, "levels": 3, "temperatures": [0, 1]})");
    const ResultTable ot = run_oscillator(osc);
    REQUIRE(ot.rows().size() == 6);
    CHECK(ot.rows()[1][3] == 1.5);
    CHECK(ot.rows()[1][4] == 1.0);
    CHECK(ot.rows()[3][5] == doctest::Approx(1.979317581651).epsilon(1e-11));
    CHECK_THROWS_AS(run_oscillator(box), ConfigError);

    RunConfig ens = parse_config(R"({"potential": {"type": "harmonic"},
        "ensemble": {"temperature": 1.5, "states": [
            {"P": 0.5, "particles": [{"kin": 1.0, "pot": 0.0, "g": 1, "p": 1.0}]},
            {"P": 0.5, "particles": [{"kin": 0.0, "pot": 1.0, "g": 1, "p": 1.0}]}]}})");
    const ResultTable et = run_ensemble(ens);
    CHECK(et.rows()[0][1] == 1.0);
    CHECK(et.rows()[0][2] == 1.0);
    CHECK(et.rows()[0][3] == 0.0);

    CHECK_THROWS_AS(run_command("bogus", ho), ConfigError);
    CHECK(run_command("evolve", evo).size() == 2);
}

TEST_CASE("run metadata")
{
    CHECK(config_hash("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    const std::string meta = run_meta("thermal", kMinimal);
    CHECK(meta.find("command: thermal") != std::string::npos);
    CHECK(meta.find("config_sha256: " + config_hash(kMinimal)) != std::string::npos);
    CHECK(meta.find("partition_tail_tolerance: 1e-08") != std::string::npos);
}

TEST_CASE("tool exit codes")
{
    Scratch s;
    const fs::path good = s.dir / "good.json";
    write(good, R"({"potential": {"type": "harmonic"}, "levels": 3, "temperatures": [0, 1]})");
    const std::string out = " --out " + (s.dir / "out").string();

    CHECK(run_tool("thermal --config " + good.string() + out) == 0);
    CHECK(fs::exists(s.dir / "out" / "thermal.csv"));
    CHECK(fs::exists(s.dir / "out" / "run_meta.txt"));
    CHECK(run_tool("thermal --config " + good.string() + out + " --format report") == 0);
    CHECK(fs::exists(s.dir / "out" / "thermal.txt"));

    const fs::path neg = s.dir / "neg.json";
    write(neg, R"({"potential": {"type": "harmonic"}, "temperatures": [-1]})");
    CHECK(run_tool("thermal --config " + neg.string() + out) == 2);
    CHECK(run_tool("bogus --config " + good.string() + out) == 2);
    CHECK(run_tool("thermal" + out) == 2);

    const fs::path hot = s.dir / "hot.json";
    write(hot, R"({"potential": {"type": "harmonic"}, "grid": {"x_min": -10, "x_max": 10, "n_points": 12},
                   "levels": 2, "temperatures": [50]})");
    CHECK(run_tool("thermal --config " + hot.string() + out) == 3);

    // A large constant offset leaves too few significant digits for the
    // shift cross-check.
    const fs::path offset = s.dir / "offset.json";
    write(offset, R"({"potential": {"type": "harmonic", "offset": 1e9}, "grid": {"x_min": -10, "x_max": 10, "n_points": 401},
                      "levels": 60, "degeneracy": {"policy": "all_ones"},
                      "temperatures": [1, 2], "transitions": [[1, 0]]})");
    CHECK(run_tool("shift --config " + offset.string() + out) == 4);

    write(s.dir / "file", "x");
    CHECK(run_tool("thermal --config " + good.string() + " --out " + (s.dir / "file" / "sub").string()) == 5);
    CHECK(run_tool("thermal --config " + (s.dir / "missing.json").string() + out) == 5);
}

TEST_CASE("tool output is deterministic and matches golden tables")
{
    Scratch s;
    const fs::path golden(FTQM_GOLDEN_DIR);
    const std::pair<const char*, const char*> cases[] = {{"ho_thermal", "thermal"},
                                                         {"hydrogen_shift", "shift"}};
    for (const auto& [name, command] : cases) {
        const fs::path a = s.dir / (std::string(name) + "_a");
        const fs::path b = s.dir / (std::string(name) + "_b");
        const std::string cfg = " --config " + (golden / (std::string(name) + ".json")).string();
        REQUIRE(run_tool(std::string(command) + cfg + " --out " + a.string()) == 0);
        REQUIRE(run_tool(std::string(command) + cfg + " --out " + b.string()) == 0);
        const std::string file = std::string(command) + ".csv";
        const std::string first = slurp(a / file);
        CHECK(!first.empty());
        CHECK(first == slurp(b / file));
        CHECK(first == slurp(golden / (std::string(name) + ".csv")));
    }
}
