#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

#include "eisense/acquisition.hpp"
#include "eisense/error.hpp"
#include "eisense/io.hpp"
#include "synthetic_milk.hpp"

using namespace eisense;
namespace fs = std::filesystem;

namespace {

template <class F>
std::string error_text(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

fs::path scratch_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("eisense_test_io_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("number text round-trips bit-exactly") {
    std::mt19937_64 rng(123);
    for (int i = 0; i < 20000; ++i) {
        double v;
        const std::uint64_t bits = rng();
        std::memcpy(&v, &bits, sizeof v);
        if (!std::isfinite(v)) continue;
        const double back = io::parse_double(io::format_double(v), "");
        CHECK(std::memcmp(&v, &back, sizeof v) == 0);
    }
    CHECK_THROWS_AS((void)io::parse_double("1,5", ""), Error);
    CHECK_THROWS_AS((void)io::parse_double("nan", ""), Error);
    CHECK_THROWS_AS((void)io::parse_double("12abc", ""), Error);
    CHECK_THROWS_AS((void)io::parse_double("", ""), Error);
}

TEST_CASE("impedance spectrum write/read") {
    SweepConfig cfg;
    cfg.noise_rel = 0.02;
    cfg.seed = 5;
    const auto spectrum = to_spectrum(simulate_sweep({1e5, 1e-6, 4e-11, 1e-11, 1e-6}, cfg));
    const io::Metadata meta{{"seed", "5"}, {"note", "value with spaces"}};
    const auto parsed = io::parse_spectrum_text(io::write_spectrum_text(spectrum, meta));
    REQUIRE(std::holds_alternative<io::ImpedanceFile>(parsed));
    const auto& f = std::get<io::ImpedanceFile>(parsed);
    CHECK(f.spectrum == spectrum);
    CHECK(f.metadata == meta);

    const fs::path dir = scratch_dir("rt");
    io::write_atomic(dir, "s.csv", io::write_spectrum_text(spectrum, meta));
    CHECK(io::read_impedance_spectrum(dir / "s.csv").spectrum == spectrum);
    CHECK_THROWS_AS((void)io::read_optical_spectrum(dir / "s.csv"), Error);
}

TEST_CASE("optical spectrum write/read keeps axis direction") {
    SampledSpectrum s({1800, 1500.5, 1056, 700}, {0.1, 0.25, 0.9, 0.05}, AxisKind::wavenumber_cm_inv);
    const auto parsed = io::parse_spectrum_text(io::write_spectrum_text(s));
    REQUIRE(std::holds_alternative<io::OpticalFile>(parsed));
    CHECK(std::get<io::OpticalFile>(parsed).spectrum == s);
}

TEST_CASE("malformed spectrum files carry positions") {
    const std::string head = "# eisense spectrum v1\n# kind: impedance\nfrequency_hz,z_real_ohm,z_imag_ohm\n";
    CHECK(error_text([&] { (void)io::parse_spectrum_text(head + "10,1,2\n5,1,2\n"); })
              .find("line 5: row 1") != std::string::npos);
    CHECK(error_text([&] { (void)io::parse_spectrum_text(head + "10,1,2\n20,1,2,3\n"); })
              .find("line 5") != std::string::npos);
    // Decimal commas split into extra columns instead of parsing as something else.
    CHECK(error_text([&] { (void)io::parse_spectrum_text(head + "10,1,5,2,0\n"); }).find("line 4") !=
          std::string::npos);
    CHECK(error_text([&] { (void)io::parse_spectrum_text(head + "10;1;2\n"); }).find("line 4") != std::string::npos);
    CHECK(error_text([&] { (void)io::parse_spectrum_text("# eisense spectrum v2\n# kind: impedance\n"); })
              .find("version 2") != std::string::npos);
    CHECK(error_text([&] { (void)io::parse_spectrum_text("frequency_hz,z_real_ohm,z_imag_ohm\n"); })
              .find("line 1") != std::string::npos);
    CHECK_THROWS_AS((void)io::parse_spectrum_text("# eisense spectrum v1\n# kind: impedance\nf,re,im\n1,2,3\n"),
                    Error);
    CHECK_THROWS_AS(
        (void)io::parse_spectrum_text("# eisense spectrum v1\n# kind: optical\n# axis_kind: wavelength_nm\n"
                                      "axis,absorbance\n400,1\n401,2\n401,3\n"),
        Error);
}

TEST_CASE("tables") {
    const auto t = io::parse_table_text("# comment\nx,y1,y2\n0,1,2\n1,3,5\n\n2,5,8\n");
    CHECK(t.columns == std::vector<std::string>{"x", "y1", "y2"});
    CHECK(t.column("y2") == std::vector<double>{2, 5, 8});
    CHECK_THROWS_AS((void)t.column("z"), Error);
    CHECK(io::parse_table_text(io::write_table_text(t)).rows == t.rows);
    CHECK(error_text([] { (void)io::parse_table_text("x,y\n1,2\n3\n"); }).find("line 3") != std::string::npos);
}

TEST_CASE("calibration set round trip and validation") {
    const auto set = synth::calibration_set();
    const auto back = io::parse_calibration_text(io::write_calibration_text(set));
    REQUIRE(back.size() == set.size());
    for (std::size_t i = 0; i < set.size(); ++i) {
        CHECK(back[i].adulterant == set[i].adulterant);
        CHECK(back[i].category == set[i].category);
        CHECK(back[i].reference.z == set[i].reference.z);
        REQUIRE(back[i].points.size() == set[i].points.size());
        for (std::size_t k = 0; k < set[i].points.size(); ++k) {
            CHECK(back[i].points[k].concentration == set[i].points[k].concentration);
            CHECK(back[i].points[k].m.c == set[i].points[k].m.c);
            CHECK(back[i].points[k].m.g == set[i].points[k].m.g);
        }
    }
    const std::string head =
        "# eisense calibration v1\nadulterant,category,concentration_wt,z_real_ohm,z_imag_ohm,c_farad,g_siemens\n";
    CHECK(error_text([&] { (void)io::parse_calibration_text(head + "a,polar,1,1,0,1,1\n"); })
              .find("reference") != std::string::npos);
    CHECK(error_text([&] {
              (void)io::parse_calibration_text(head + "a,polar,0,1,0,1,1\na,polar,2,1,0,1,1\na,polar,1,1,0,1,1\n");
          }).find("line 5") != std::string::npos);
    CHECK(error_text([&] { (void)io::parse_calibration_text(head + "a,salty,0,1,0,1,1\n"); }).find("line 3") !=
          std::string::npos);
}

TEST_CASE("signature map round trip") {
    const auto set = synth::calibration_set();
    const auto map = build_signature_map(set, synth::kFref);
    const auto back = io::parse_map_text(io::write_map_text(map, {{"config_digest", "abc"}}));
    CHECK(back.f_ref == map.f_ref);
    REQUIRE(back.signatures.size() == map.signatures.size());
    for (std::size_t i = 0; i < map.signatures.size(); ++i) {
        CHECK(back.signatures[i].adulterant == map.signatures[i].adulterant);
        CHECK(back.signatures[i].angle_range.lo == map.signatures[i].angle_range.lo);
        CHECK(back.signatures[i].trend == map.signatures[i].trend);
        const auto a = back.signatures[i].radial_curve.percents();
        const auto b = map.signatures[i].radial_curve.percents();
        CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()));
    }
    CHECK_THROWS_AS((void)io::parse_map_text("{\"format\": \"eisense-map\", \"version\": 9}"), Error);
    CHECK_THROWS_AS((void)io::parse_map_text("not json"), Error);
}

TEST_CASE("run configuration") {
    const auto cfg = io::RunConfig::parse(R"(
# cell under test
[circuit]
r_sol = 2.5e4   # ohm
c_sol = 3.3e-11

[sweep]
points = 11
seed = 9

[fit]
fixed = ["c_stray", "l_stray"]
)");
    const auto p = io::circuit_params_from(cfg);
    CHECK(p.r_sol == 2.5e4);
    CHECK(p.c_sol == 3.3e-11);
    CHECK(p.c_dl == 1e-6);
    const auto s = io::sweep_config_from(cfg);
    CHECK(s.points == 11);
    CHECK(s.seed == 9);
    CHECK(cfg.get_list("fit.fixed") == std::vector<std::string>{"c_stray", "l_stray"});

    CHECK_NOTHROW(cfg.require_known({"circuit.r_sol", "circuit.c_sol", "sweep.points", "sweep.seed", "fit.fixed"}));
    try {
        cfg.require_known(io::circuit_keys());
        FAIL("unknown keys must be rejected");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::config);
    }

    const auto bad = io::RunConfig::parse("[circuit]\nr_sol = 1,5\n");
    CHECK_THROWS_AS((void)io::circuit_params_from(bad), Error);
    const auto neg = io::RunConfig::parse("[circuit]\nr_sol = -3\n");
    CHECK_THROWS_AS((void)io::circuit_params_from(neg), Error);
    CHECK_THROWS_AS((void)io::RunConfig::parse("[a]\nx = 1\nx = 2\n"), Error);
    CHECK(io::RunConfig::parse("a = 1\nb = 2\n").digest() == io::RunConfig::parse("b = 2\n# c\na = 1\n").digest());
    CHECK(io::RunConfig::parse("a = 1\n").digest() != io::RunConfig::parse("a = 2\n").digest());

    const auto d = io::dielectric_from(io::RunConfig::parse("[dielectric]\nn_d = 1e26\np_d = 1e-29\n"));
    CHECK(d.n_d == 1e26);
}

TEST_CASE("sha256 of a known string") {
    CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("atomic writes stay inside the output directory") {
    const fs::path dir = scratch_dir("atomic");
    const auto p = io::write_atomic(dir, "a.txt", "hello");
    CHECK(fs::exists(p));
    io::write_atomic(dir, "a.txt", "again");
    std::ifstream in(p);
    std::string text;
    std::getline(in, text);
    CHECK(text == "again");
    CHECK_THROWS_AS(io::write_atomic(dir, "../escape.txt", "x"), Error);
    CHECK_THROWS_AS(io::write_atomic(dir, "sub/inner.txt", "x"), Error);
    CHECK_THROWS_AS(io::write_atomic(dir, "..", "x"), Error);
    for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().filename().string().find(".tmp") == std::string::npos);
}

TEST_CASE("run configuration comments") {
    const auto cfg = io::RunConfig::parse("[circuit]   # cell\nr_sol = 5e3  # ohm\n[fit] # options\nfixed = [\"c_stray\"] # held\n"
                                          "[io]\nlabel = \"a # b\"\n");
    CHECK(io::circuit_params_from(cfg).r_sol == 5e3);
    CHECK(cfg.get_list("fit.fixed") == std::vector<std::string>{"c_stray"});
    CHECK(cfg.get_string("io.label", "") == "a # b");
}
