// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "app.hpp"
#include "cell_oracle.hpp"
#include "eisense/eisense.hpp"
#include "eisense/io.hpp"
#include "normal_equations.hpp"
#include "synthetic_milk.hpp"

using namespace eisense;
namespace fs = std::filesystem;

namespace tol {
constexpr double forward_rel = 1e-12;
constexpr double langevin_small_rel = 1e-3;
constexpr double langevin_saturation = 0.999;
constexpr double coefficient_abs = 1e-9;
constexpr double r2_abs = 1e-12;
constexpr double beta_abs = 1e-12;
constexpr double fit_exact_rel = 1e-3;
constexpr double fit_noisy_median_rel = 0.05;
constexpr double coverage_lo = 0.93;
constexpr double coverage_hi = 0.97;
constexpr double fixture_abs = 1e-12;
}  // namespace tol

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Outcome forward_model() {
    std::mt19937_64 rng(20240611);
    auto log_uniform = [&](double lo, double hi) {
        return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(rng));
    };
    const auto freqs = log_sweep(SweepConfig{});
    double worst = 0.0;
    for (int set = 0; set < 50; ++set) {
        CircuitParams p{log_uniform(1e1, 1e7), log_uniform(1e-9, 1e-4), log_uniform(1e-13, 1e-9),
                        set % 5 == 0 ? 0.0 : log_uniform(1e-13, 1e-10), set % 7 == 0 ? 0.0 : log_uniform(1e-9, 1e-5)};
        for (double f : freqs) {
            const ComplexValue z = cell_impedance(p, f);
            const oracle::Cx o = oracle::cell(p.r_sol, p.c_dl, p.c_sol, p.c_stray, p.l_stray, f);
            const double err = std::hypot(z.real() - o.re, z.imag() - o.im) / oracle::abs(o);
            worst = std::max(worst, err);
        }
    }
    return {worst <= tol::forward_rel && freqs.size() == 201, fmt("max relative error %.3g over 50 x 201 points", worst)};
}

Outcome langevin_limits() {
    const double t = 298.15;
    const double n = 3.3e28;
    const double p = 6.2e-30;
    double worst_small = 0.0;
    for (double gamma : {1e-8, 1e-6, 1e-5, 1e-4, 5e-4, 1e-3}) {
        const double e = gamma * constants::boltzmann * t / p;
        const double ratio = polarization(n, p, e, t) / (n * p * p * e / (3.0 * constants::boltzmann * t));
        worst_small = std::max(worst_small, std::abs(ratio - 1.0));
    }
    double worst_sat = 1.0;
    for (double gamma : {1e3, 1e4, 1e6, 1e12}) {
        const double e = gamma * constants::boltzmann * t / p;
        worst_sat = std::min(worst_sat, polarization(n, p, e, t) / (n * p));
    }
    bool exact = true;
    for (double nd : {0.0, 1e20, 1e26, 3.3e28}) {
        for (double pd : {0.0, 3.336e-30, 1.2e-29}) {
            DielectricSystem sys;
            sys.n_d = nd;
            sys.p_d = pd;
            sys.p_i = 3.3e-29;
            sys.p_w = 6.2e-30;
            sys.n_w = 3.3e28;
            exact = exact && effective_permittivity(sys) == relative_permittivity_debye(nd, pd, sys.temperature);
        }
    }
    return {worst_small <= tol::langevin_small_rel && worst_sat >= tol::langevin_saturation && exact,
            fmt("small-field max deviation %.3g, saturation min %.6f, n_i = 0 reduction exact: ", worst_small,
                worst_sat) +
                (exact ? "yes" : "no")};
}

Outcome regression_fixtures() {
    struct Line {
        double m, c;
        const char* text;
    };
    const Line lines[] = {{1.69, 0.86, "1.69x + 0.86"}, {1.19, 1.74, "1.19x + 1.74"}, {0.56, 2.52, "0.56x + 2.52"},
                          {0.52, 1.5, "0.52x + 1.5"},   {0.47, 0.94, "0.47x + 0.94"}};
    const std::vector<double> xs{0, 1, 2, 3, 4, 5};
    double worst_coef = 0.0;
    double worst_r2 = 0.0;
    for (const auto& l : lines) {
        std::vector<double> ys;
        for (double x : xs) ys.push_back(l.m * x + l.c);
        const auto fit = ols_fit(xs, ys);
        worst_coef = std::max({worst_coef, std::abs(fit.m - l.m), std::abs(fit.c - l.c)});
        worst_r2 = std::max(worst_r2, std::abs(fit.r2 - 1.0));
    }
    std::mt19937_64 rng(99);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::uniform_int_distribution<int> size(3, 40);
    double worst_beta = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = size(rng);
        std::vector<double> w(n), v(n);
        for (int i = 0; i < n; ++i) {
            w[i] = 0.25 * i + 0.1 * noise(rng);
            v[i] = 3.0 * noise(rng) * w[i] + noise(rng);
        }
        const double beta = sensitivity_coefficient(w, v);
        const double m = ols_fit(w, v).m;
        worst_beta = std::max(worst_beta, std::abs(beta - m) / std::max(1.0, std::abs(m)));
    }
    return {worst_coef <= tol::coefficient_abs && worst_r2 <= tol::r2_abs && worst_beta <= tol::beta_abs,
            fmt("five lines: coef err %.3g, |R2-1| %.3g; beta vs slope over 1000 sets %.3g", worst_coef, worst_r2,
                worst_beta)};
}

Outcome quasi_oscillatory() {
    const std::vector<double> frac{0.1, 0.2, 0.3, 0.4, 0.5};
    const std::vector<double> z_kohm{158, 141.53, 162.1, 230, 160};
    const auto fit = ols_fit(frac, z_kohm);
    const auto oracle_fit = oracle::normal_equation_fit(frac, z_kohm);
    const auto regime = linearity_regime_detect(frac, z_kohm, 0.95);
    const bool pass = fit.r2 < 0.5 && std::abs(fit.r2 - oracle_fit.r2) <= 1e-12 && !regime.linear_found;
    return {pass, fmt("R2 = %.17g (oracle %.17g)", fit.r2, oracle_fit.r2) +
                      (regime.linear_found ? ", linear regime reported" : ", non-linear")};
}

double rel_err(double a, double truth) { return std::abs(a - truth) / std::abs(truth); }

Outcome circuit_round_trip() {
    const CircuitParams truth{10e3, 1e-6, 40e-12, 10e-12, 10e-6};
    const std::set<std::string> fixed{"c_stray"};
    const std::vector<std::string> free{"r_sol", "c_dl", "c_sol", "l_stray"};
    const SweepConfig sweep;
    const auto clean = to_spectrum(simulate_sweep(truth, sweep));

    double worst_exact = 0.0;
    for (unsigned mask = 0; mask < 16; ++mask) {
        CircuitParams guess = truth;
        for (std::size_t k = 0; k < free.size(); ++k) {
            const double factor = (mask >> k) & 1U ? 2.0 : 0.5;
            set_param(guess, free[k], get_param(truth, free[k]) * factor);
        }
        const auto r = estimate_circuit_params(clean, guess, fixed);
        for (const auto& name : free) worst_exact = std::max(worst_exact, rel_err(get_param(r.params, name), get_param(truth, name)));
    }

    std::vector<std::vector<double>> errors(free.size());
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SweepConfig noisy = sweep;
        noisy.noise_rel = 0.01;
        noisy.seed = seed;
        const auto data = to_spectrum(simulate_sweep(truth, noisy));
        CircuitParams guess = truth;
        for (std::size_t k = 0; k < free.size(); ++k) {
            set_param(guess, free[k], get_param(truth, free[k]) * (seed % 2 == k % 2 ? 2.0 : 0.5));
        }
        const auto r = estimate_circuit_params(data, guess, fixed);
        for (std::size_t k = 0; k < free.size(); ++k) {
            errors[k].push_back(rel_err(get_param(r.params, free[k]), get_param(truth, free[k])));
        }
    }
    double worst_median = 0.0;
    for (auto& e : errors) {
        std::sort(e.begin(), e.end());
        worst_median = std::max(worst_median, 0.5 * (e[9] + e[10]));
    }
    return {worst_exact <= tol::fit_exact_rel && worst_median <= tol::fit_noisy_median_rel,
            fmt("noise-free worst error %.3g over 16 perturbations; 1%% noise worst median %.3g over 20 seeds",
                worst_exact, worst_median)};
}

Outcome prediction_coverage() {
    std::mt19937_64 rng(31337);
    std::normal_distribution<double> noise(0.0, 0.4);
    std::uniform_real_distribution<double> fresh_x(0.0, 7.0);
    const std::vector<double> xs{0, 1, 2, 3, 4, 5, 6, 7};
    const int trials = 10000;
    int covered = 0;
    std::vector<double> ys(xs.size());
    for (int t = 0; t < trials; ++t) {
        for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = 1.3 * xs[i] + 0.7 + noise(rng);
        const auto fit = ols_fit(xs, ys);
        const double x0 = fresh_x(rng);
        const double y0 = 1.3 * x0 + 0.7 + noise(rng);
        if (prediction_interval(fit, xs, ys, x0, 0.95).contains(y0)) ++covered;
    }
    const double coverage = static_cast<double>(covered) / trials;
    return {coverage >= tol::coverage_lo && coverage <= tol::coverage_hi,
            fmt("coverage %.4f over %g trials (n = 8)", coverage, trials)};
}

SampledSpectrum gaussian(double center, double sigma, double height, double lo, double hi, double step) {
    std::vector<double> axis, values;
    for (double x = lo; x <= hi + 1e-9; x += step) {
        axis.push_back(x);
        values.push_back(height * std::exp(-0.5 * (x - center) * (x - center) / (sigma * sigma)));
    }
    return {axis, values};
}

Outcome fwhm_gaussian() {
    const double k = 2.0 * std::sqrt(2.0 * std::log(2.0));
    bool pass = true;
    double previous = 0.0;
    std::string detail;
    for (double sigma : {1.0, 2.0, 5.0}) {
        const auto s = gaussian(100.3, sigma, 1.0, 0.0, 200.0, 1.0);
        const auto peaks = find_peaks(s);
        if (peaks.size() != 1) return {false, "expected exactly one peak"};
        const auto measured = fwhm(s, peaks[0]);
        if (!measured.width) return {false, "peak width unbounded"};
        const double w = measured.width->fwhm();
        pass = pass && std::abs(w - k * sigma) <= 1.0 && w > previous;
        previous = w;
        detail += fmt("sigma %g: %.4f (ideal %.4f)  ", sigma, w, k * sigma);
    }
    return {pass, detail};
}

Outcome peak_shift_fixture() {
    const double step = 0.5;
    auto spectrum = [&](double main_center) {
        std::vector<double> axis, values;
        for (double x = 300.0; x <= 600.0 + 1e-9; x += step) {
            axis.push_back(x);
            values.push_back(std::exp(-0.5 * std::pow((x - main_center) / 12.0, 2)) +
                             0.3 * std::exp(-0.5 * std::pow((x - 330.0) / 8.0, 2)));
        }
        return SampledSpectrum(axis, values);
    };
    const double shift = peak_shift(spectrum(420.0), spectrum(442.0), Interval{380.0, 500.0});
    return {std::abs(shift - 22.0) <= 0.5 * step, fmt("shift %.6f nm (grid %.2g nm)", shift, step)};
}

Outcome classifier_logic() {
    const auto set = synth::calibration_set();
    const auto map = build_signature_map(set, synth::kFref);

    int up = 0;
    for (const auto& s : map.signatures) up += s.trend == Trend::z_increasing;
    bool partition = up == 5 && map.signatures.size() == 8;

    int self_ok = 0;
    double self_err = 0.0;
    for (const auto& s : set) {
        auto unknown = s;
        unknown.adulterant.clear();
        const auto r = classify(unknown, map);
        if (r.adulterant && *r.adulterant == s.adulterant) ++self_ok;
        for (std::size_t i = 0; i < s.points.size() && i < r.diagnostics.point_concentrations.size(); ++i) {
            self_err = std::max(self_err, std::abs(r.diagnostics.point_concentrations[i] - s.points[i].concentration));
        }
    }

    int mid_ok = 0;
    int mid_total = 0;
    int category_ok = 0;
    for (const auto& spec : synth::specs()) {
        for (std::size_t i = 0; i + 1 < synth::concentrations().size(); ++i) {
            const auto unknown = synth::midpoint_unknown(spec, i);
            const auto r = classify(unknown, map);
            ++mid_total;
            const double step = synth::concentrations()[i + 1] - synth::concentrations()[i];
            if (r.adulterant && *r.adulterant == spec.name &&
                std::abs(*r.concentration_estimate - unknown.points[0].concentration) <= step) {
                ++mid_ok;
            }
            const auto from_trend = r.diagnostics.trend == Trend::z_increasing ? AdulterantCategory::polar
                                                                               : AdulterantCategory::nonpolar_ionic;
            if (from_trend == spec.category) ++category_ok;
        }
    }

    bool overlap = true;
    for (std::size_t k : {3U, 4U}) {
        const auto& spec = synth::specs()[k];
        const auto r = classify(synth::midpoint_unknown(spec, 1), map);
        overlap = overlap && r.diagnostics.candidates_considered.size() == 2 && r.adulterant &&
                  *r.adulterant == spec.name;
    }

    const bool pass = partition && self_ok == 8 && self_err == 0.0 && mid_ok == mid_total &&
                      category_ok == mid_total && overlap;
    return {pass, fmt("self %g/8 (max conc err %g), midpoints %g", self_ok, self_err, mid_ok) + "/" +
                      std::to_string(mid_total) + ", categories " + std::to_string(category_ok) + "/" +
                      std::to_string(mid_total) + ", overlap resolved: " + (overlap ? "yes" : "no")};
}

Outcome fixture_arithmetic() {
    const double pct = percent_impedance_change(66.94, 72.51);
    const double oracle_pct = 100.0 * (72.51 - 66.94) / 66.94;
    const double c = 1e-9;
    const double f = 1e3;
    const double g = 2.0 * constants::pi * f * c;
    const bool anchors = phase_angle(0.0, 1e-3, f) == 0.0 && phase_angle(c, g, f) == 45.0 &&
                         phase_angle(c, 0.0, f) == 90.0;
    return {std::abs(pct - oracle_pct) <= tol::fixture_abs &&
                std::abs(pct - 8.320884374066328054974604) <= tol::fixture_abs && anchors,
            fmt("acacia %.15f %%, anchors exact: ", pct) + (anchors ? "yes" : "no")};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism_io() {
    const fs::path dir = fs::temp_directory_path() / "eisense_acceptance_io";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::ofstream(dir / "run.toml") << "[sweep]\nnoise_rel = 0.02\n";
    auto sim = [&](const std::string& sub) {
        return cli::run({"eisense", "--config", (dir / "run.toml").string(), "--seed", "7", "--out-dir",
                         (dir / sub).string(), "simulate"});
    };
    bool identical = sim("a") == 0 && sim("b") == 0;
    for (const char* f : {"spectrum.csv", "measurements.csv", "report.json"}) {
        identical = identical && slurp(dir / "a" / f) == slurp(dir / "b" / f);
    }

    const auto file = io::read_impedance_spectrum(dir / "a" / "spectrum.csv");
    const auto again = io::parse_spectrum_text(io::write_spectrum_text(file.spectrum, file.metadata));
    const auto& back = std::get<io::ImpedanceFile>(again);
    const bool lossless = back.spectrum == file.spectrum && back.metadata == file.metadata;

    bool positional = false;
    try {
        (void)io::parse_spectrum_text(
            "# eisense spectrum v1\n# kind: impedance\n# axis_kind: frequency_hz\n"
            "frequency_hz,z_real_ohm,z_imag_ohm\n100,1,2\n90,1,2\n");
    } catch (const Error& e) {
        positional = std::string(e.what()).find("line 6: row 1") != std::string::npos;
    }
    bool comma = false;
    try {
        (void)io::parse_spectrum_text("# eisense spectrum v1\n# kind: impedance\nfrequency_hz,z_real_ohm,z_imag_ohm\n"
                                      "100,1,5,2\n");
    } catch (const Error& e) {
        comma = std::string(e.what()).find("line 4") != std::string::npos;
    }
    fs::remove_all(dir);
    return {identical && lossless && positional && comma,
            std::string("bit-identical reruns: ") + (identical ? "yes" : "no") +
                ", lossless round trip: " + (lossless ? "yes" : "no") +
                ", positional diagnostics: " + (positional && comma ? "yes" : "no")};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> check;
    };
    const Criterion criteria[] = {
        {"forward model vs oracle", forward_model},
        {"Langevin-Debye limits", langevin_limits},
        {"regression fixtures", regression_fixtures},
        {"quasi-oscillatory fixture", quasi_oscillatory},
        {"circuit-fit round trip", circuit_round_trip},
        {"prediction-interval coverage", prediction_coverage},
        {"FWHM of Gaussians", fwhm_gaussian},
        {"peak shift 420 -> 442 nm", peak_shift_fixture},
        {"classifier logic", classifier_logic},
        {"fixture arithmetic", fixture_arithmetic},
        {"determinism and I/O", determinism_io},
    };
    int failures = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %2d %-30s %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str(), secs);
        failures += o.pass ? 0 : 1;
    }
    std::printf("%d/%d criteria passed\n", index - failures, index);
    return failures == 0 ? 0 : 1;
}
