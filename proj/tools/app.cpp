#include "app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "eisense/eisense.hpp"

namespace eisense::cli {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

struct GlobalOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";
    std::optional<double> f_ref;
    double r2_threshold = 0.95;
};

std::set<std::string> merge(std::set<std::string> a, const std::set<std::string>& b) {
    a.insert(b.begin(), b.end());
    return a;
}

// One config file may serve every subcommand; a key no subcommand reads is an error.
std::set<std::string> known_config_keys() {
    std::set<std::string> keys = merge(merge(io::circuit_keys(), io::sweep_keys()), io::dielectric_keys());
    keys.insert({"fit.fixed", "fit.max_iterations", "fit.tolerance", "calibrate.x_column", "calibrate.y_columns",
                 "calibrate.coverage_k", "calibrate.prediction_level", "peaks.prominence",
                 "classifier.noise_floor_rel"});
    return keys;
}

// Shared state of one invocation: effective config, output directory, provenance.
class Context {
public:
    Context(const GlobalOptions& g, std::string command) : globals_(g), command_(std::move(command)) {
        if (!g.config_path.empty()) config_ = io::RunConfig::load(g.config_path);
        config_.require_known(known_config_keys());
    }

    const io::RunConfig& config() const { return config_; }
    const GlobalOptions& globals() const { return globals_; }

    // Command-line inputs join the digest so identical digests mean identical runs.
    void record(const std::string& key, const std::string& value) { provenance_.set("cli." + key, {value}); }

    std::string digest() const { return io::sha256_hex(config_.canonical() + provenance_.canonical()); }

    io::Metadata metadata() const {
        return {{"tool", "eisense"},
                {"tool_version", std::string(io::tool_version())},
                {"command", command_},
                {"config_digest", digest()}};
    }

    json report_header() const {
        json j;
        j["tool"] = "eisense";
        j["tool_version"] = std::string(io::tool_version());
        j["command"] = command_;
        j["config_digest"] = digest();
        return j;
    }

    void write(const std::string& name, const std::string& content) {
        io::write_atomic(globals_.out_dir, name, content);
        written_.push_back(name);
    }
    void write_report(const std::string& name, json report) {
        report["outputs"] = written_;
        write(name, report.dump(2) + "\n");
    }

private:
    GlobalOptions globals_;
    std::string command_;
    io::RunConfig config_;
    io::RunConfig provenance_;
    std::vector<std::string> written_;
};

std::string sig6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string line_equation(const LinearFit& f) {
    const std::string sign = f.c < 0.0 ? " - " : " + ";
    return "y = " + sig6(f.m) + "x" + sign + sig6(std::abs(f.c));
}

json interval_json(const Interval& i) { return json::array({i.lo, i.hi}); }

json fit_json(const LinearFit& f) {
    return {{"equation", line_equation(f)}, {"m", f.m},           {"c", f.c},
            {"r2", f.r2},                   {"se_m", f.se_m},     {"se_c", f.se_c},
            {"ci_m", interval_json(f.ci_m)}, {"ci_c", interval_json(f.ci_c)}, {"s_reg", f.s_reg},
            {"n", f.n},                     {"coverage_k", f.coverage_k}};
}

json params_json(const CircuitParams& p) {
    return {{"r_sol", p.r_sol}, {"c_dl", p.c_dl}, {"c_sol", p.c_sol}, {"c_stray", p.c_stray}, {"l_stray", p.l_stray}};
}

// --- subcommands -------------------------------------------------------------

void cmd_simulate(Context& ctx) {
    const CircuitParams params = io::circuit_params_from(ctx.config());
    SweepConfig sweep = io::sweep_config_from(ctx.config());
    if (ctx.globals().seed) sweep.seed = *ctx.globals().seed;
    ctx.record("seed", std::to_string(sweep.seed));

    const auto records = simulate_sweep(params, sweep);

    io::Metadata meta = ctx.metadata();
    meta["rng"] = std::string(kNoiseAlgorithm);
    meta["seed"] = std::to_string(sweep.seed);
    meta["noise_rel"] = io::format_double(sweep.noise_rel);
    meta["amplitude_vpp"] = io::format_double(sweep.amplitude);
    meta["params"] = "r_sol=" + io::format_double(params.r_sol) + " c_dl=" + io::format_double(params.c_dl) +
                     " c_sol=" + io::format_double(params.c_sol) + " c_stray=" + io::format_double(params.c_stray) +
                     " l_stray=" + io::format_double(params.l_stray);
    ctx.write("spectrum.csv", io::write_spectrum_text(to_spectrum(records), meta));

    io::Table table{{"frequency_hz", "z_real_ohm", "z_imag_ohm", "c_parallel_f", "g_parallel_s", "reactance_ohm",
                     "phase_deg"},
                    {}};
    for (const auto& r : records) {
        table.rows.push_back({r.frequency, r.z.real(), r.z.imag(), r.c_parallel, r.g_parallel, r.reactance,
                              r.phase_deg});
    }
    ctx.write("measurements.csv", io::write_table_text(table, ctx.metadata()));

    json report = ctx.report_header();
    report["params"] = params_json(params);
    report["sweep"] = {{"f_start", sweep.f_start}, {"f_stop", sweep.f_stop},       {"points", sweep.points},
                       {"amplitude_vpp", sweep.amplitude}, {"noise_rel", sweep.noise_rel}, {"seed", sweep.seed},
                       {"rng", std::string(kNoiseAlgorithm)}};
    ctx.write_report("report.json", report);
}

int cmd_fit_circuit(Context& ctx, const std::string& input) {
    ctx.record("input", input);
    const auto file = io::read_impedance_spectrum(input);
    const CircuitParams guess = io::circuit_params_from(ctx.config());
    const auto fixed_list = ctx.config().get_list("fit.fixed");
    std::set<std::string> fixed(fixed_list.begin(), fixed_list.end());
    for (const auto& name : fixed) {
        const auto& names = circuit_param_names();
        require(std::find(names.begin(), names.end(), name) != names.end(),
                "fit.fixed: unknown parameter '" + name + "'", ErrorKind::config);
    }
    CircuitFitOptions opts;
    opts.max_iterations = static_cast<int>(ctx.config().get_int("fit.max_iterations", opts.max_iterations));
    opts.tolerance = ctx.config().get_double("fit.tolerance", opts.tolerance);
    require(opts.max_iterations > 0 && opts.tolerance > 0.0, "fit options must be positive", ErrorKind::config);

    const auto result = estimate_circuit_params(file.spectrum, guess, fixed, opts);

    ctx.write("fitted_spectrum.csv",
              io::write_spectrum_text(cell_spectrum(result.params, file.spectrum.frequencies()), ctx.metadata()));
    json report = ctx.report_header();
    report["params"] = params_json(result.params);
    report["guess"] = params_json(guess);
    report["free_parameters"] = result.free_parameters;
    report["residual"] = result.residual;
    report["converged"] = result.converged;
    report["iterations"] = result.iterations;
    report["evaluations"] = result.evaluations;
    report["restarts"] = result.restarts;
    ctx.write_report("fit_report.json", report);
    if (!result.converged) {
        std::cerr << "eisense: circuit fit did not converge within " << opts.max_iterations
                  << " iterations; best-so-far parameters written and flagged\n";
        return kNumericalFailure;
    }
    return kOk;
}

void cmd_calibrate(Context& ctx, const std::string& input, std::string x_column, std::vector<std::string> y_columns,
                   const std::vector<double>& predict_at) {
    ctx.record("input", input);
    if (x_column.empty()) x_column = ctx.config().get_string("calibrate.x_column", "x");
    if (y_columns.empty()) y_columns = ctx.config().get_list("calibrate.y_columns");
    const double k = ctx.config().get_double("calibrate.coverage_k", 2.0);
    const double level = ctx.config().get_double("calibrate.prediction_level", 0.95);
    require(level > 0.0 && level < 1.0, "calibrate.prediction_level must lie in (0, 1)", ErrorKind::config);
    ctx.record("x_column", x_column);

    const io::Table table = io::read_table(input);
    if (y_columns.empty()) {
        for (const auto& c : table.columns) {
            if (c != x_column) y_columns.push_back(c);
        }
    }
    require(!y_columns.empty(), "no response columns to calibrate", ErrorKind::config);
    const auto xs = table.column(x_column);

    json report = ctx.report_header();
    report["x_column"] = x_column;
    report["sets"] = json::array();
    std::vector<LinearFit> fits;
    io::Table plot{{x_column}, {}};
    for (const auto& yc : y_columns) plot.columns.push_back(yc + "_fit");
    for (double x : xs) plot.rows.push_back({x});

    for (const auto& yc : y_columns) {
        const auto ys = table.column(yc);
        const LinearFit fit = ols_fit(xs, ys, k);
        fits.push_back(fit);
        json set = fit_json(fit);
        set["column"] = yc;
        if (xs.size() >= 4) {
            const auto regime = linearity_regime_detect(xs, ys, ctx.globals().r2_threshold);
            json lr = {{"linear", regime.linear_found}, {"whole_range_r2", regime.whole_r2},
                       {"r2_threshold", ctx.globals().r2_threshold}};
            if (regime.linear_found) {
                lr["boundary_index"] = regime.boundary_index;
                lr["boundary_x"] = xs[regime.boundary_index];
                lr["high_fit"] = fit_json(*regime.high_fit);
                if (regime.low_fit) lr["low_fit"] = fit_json(*regime.low_fit);
            }
            set["linearity"] = lr;
        }
        if (xs.size() >= 3) {
            set["predictions"] = json::array();
            for (double x0 : predict_at) {
                const Interval pi = prediction_interval(fit, xs, ys, x0, level);
                set["predictions"].push_back({{"x", x0}, {"y", fit.predict(x0)}, {"interval", interval_json(pi)},
                                              {"level", level}});
            }
        }
        report["sets"].push_back(set);
        for (std::size_t i = 0; i < xs.size(); ++i) plot.rows[i].push_back(fit.predict(xs[i]));
    }
    const FitEnvelope env = envelope(fits);
    report["envelope"] = {{"m_estimates", interval_json(env.m_estimates)},
                          {"c_estimates", interval_json(env.c_estimates)},
                          {"m_ci", interval_json(env.m_ci)},
                          {"c_ci", interval_json(env.c_ci)}};
    ctx.write("calibration_fit.csv", io::write_table_text(plot, ctx.metadata()));
    ctx.write_report("calibration_report.json", report);
}

void cmd_sensitivity(Context& ctx, const std::string& input) {
    ctx.record("input", input);
    const io::Table table = io::read_table(input);
    const auto freq = table.column("frequency_hz");
    const auto wt = table.column("wt_percent");
    const auto value = table.column("value");

    std::map<double, std::pair<std::vector<double>, std::vector<double>>> groups;
    for (std::size_t i = 0; i < freq.size(); ++i) {
        groups[freq[i]].first.push_back(wt[i]);
        groups[freq[i]].second.push_back(value[i]);
    }
    require(!groups.empty(), "sensitivity table has no rows", ErrorKind::data);

    io::Table out{{"frequency_hz", "beta", "r2", "n"}, {}};
    json report = ctx.report_header();
    report["results"] = json::array();
    for (const auto& [f, data] : groups) {
        const double beta = sensitivity_coefficient(data.first, data.second);
        const LinearFit fit = ols_fit(data.first, data.second);
        out.rows.push_back({f, beta, fit.r2, static_cast<double>(data.first.size())});
        report["results"].push_back({{"frequency_hz", f}, {"beta", beta}, {"r2", fit.r2}, {"fit", fit_json(fit)}});
    }
    ctx.write("sensitivity.csv", io::write_table_text(out, ctx.metadata()));
    ctx.write_report("sensitivity_report.json", report);
}

void cmd_nyquist(Context& ctx, const std::string& input) {
    ctx.record("input", input);
    const auto file = io::read_impedance_spectrum(input);
    const auto pts = nyquist_points(file.spectrum);
    io::Table out{{"frequency_hz", "re_z_ohm", "abs_im_z_ohm", "abs_z_ohm", "phase_deg"}, {}};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = file.spectrum[i];
        out.rows.push_back({p.frequency, pts[i].re, pts[i].abs_im, std::abs(p.z), phase_degrees(p.z)});
    }
    ctx.write("nyquist.csv", io::write_table_text(out, ctx.metadata()));
    json report = ctx.report_header();
    report["points"] = pts.size();
    ctx.write_report("nyquist_report.json", report);
}

void cmd_fwhm(Context& ctx, const std::string& input, std::optional<double> prominence) {
    ctx.record("input", input);
    if (!prominence && ctx.config().has("peaks.prominence")) {
        prominence = ctx.config().get_double("peaks.prominence", 0.0);
    }
    if (prominence) ctx.record("prominence", io::format_double(*prominence));
    const auto file = io::read_optical_spectrum(input);
    const auto peaks = find_peaks(file.spectrum, prominence);

    io::Table out{{"position", "height", "prominence", "left_half", "right_half", "fwhm"}, {}};
    json report = ctx.report_header();
    report["peaks"] = json::array();
    for (const auto& p : peaks) {
        json jp = {{"position", p.position}, {"height", p.height}, {"prominence", p.prominence}};
        try {
            const PeakInfo w = fwhm(file.spectrum, p);
            out.rows.push_back({w.position, w.height, w.prominence, w.width->left_half, w.width->right_half,
                                w.width->fwhm()});
            jp["fwhm"] = w.width->fwhm();
            jp["left_half"] = w.width->left_half;
            jp["right_half"] = w.width->right_half;
            jp["baseline"] = w.width->baseline;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::data) throw;
            jp["fwhm"] = nullptr;
            jp["unbounded"] = e.what();
        }
        report["peaks"].push_back(jp);
    }
    ctx.write("peaks.csv", io::write_table_text(out, ctx.metadata()));
    ctx.write_report("fwhm_report.json", report);
}

void cmd_peak_shift(Context& ctx, const std::string& reference, const std::string& sample, double lo, double hi,
                    std::optional<double> prominence) {
    ctx.record("reference", reference);
    ctx.record("sample", sample);
    ctx.record("window", io::format_double(lo) + "," + io::format_double(hi));
    if (!prominence && ctx.config().has("peaks.prominence")) {
        prominence = ctx.config().get_double("peaks.prominence", 0.0);
    }
    require(lo < hi, "--window-lo must be below --window-hi", ErrorKind::config);
    const auto ref = io::read_optical_spectrum(reference);
    const auto smp = io::read_optical_spectrum(sample);
    const double shift = peak_shift(ref.spectrum, smp.spectrum, {lo, hi}, prominence);
    json report = ctx.report_header();
    report["window"] = {lo, hi};
    report["shift"] = shift;
    ctx.write_report("peak_shift_report.json", report);
}

void cmd_map_build(Context& ctx, const std::string& input, bool doubled) {
    ctx.record("input", input);
    ClassifierOptions opts;
    opts.noise_floor_rel = ctx.config().get_double("classifier.noise_floor_rel", opts.noise_floor_rel);
    const double f_ref = ctx.globals().f_ref.value_or(1000.0);
    ctx.record("f_ref", io::format_double(f_ref));
    ctx.record("display", doubled ? "doubled" : "argument");

    const auto set = io::read_calibration(input);
    const SignatureMap map = build_signature_map(set, f_ref, opts);
    ctx.write("map.json", io::write_map_text(map, ctx.metadata()));

    io::Table polar{{"series_index", "concentration_wt", "angle_deg", "radius_percent"}, {}};
    io::Metadata meta = ctx.metadata();
    meta["angle_display"] = doubled ? "doubled" : "admittance_argument";
    std::map<std::string, double> index;
    for (std::size_t i = 0; i < set.size(); ++i) {
        index[set[i].adulterant] = static_cast<double>(i);
        meta["series_" + std::to_string(i)] = set[i].adulterant;
    }
    for (const auto& p : polar_coordinates(set, f_ref, doubled ? AngleDisplay::doubled : AngleDisplay::admittance_argument)) {
        polar.rows.push_back({index[p.adulterant], p.concentration, p.angle_deg, p.radius_percent});
    }
    ctx.write("polar.csv", io::write_table_text(polar, meta));

    json report = ctx.report_header();
    report["f_ref_hz"] = f_ref;
    report["signatures"] = json::array();
    for (const auto& s : map.signatures) {
        report["signatures"].push_back({{"adulterant", s.adulterant},
                                        {"category", to_string(s.category)},
                                        {"trend", to_string(s.trend)},
                                        {"angle_range_deg", interval_json(s.angle_range)}});
    }
    ctx.write_report("map_report.json", report);
}

void cmd_classify(Context& ctx, const std::string& map_path, const std::string& input) {
    ctx.record("map", map_path);
    ctx.record("input", input);
    ClassifierOptions opts;
    opts.noise_floor_rel = ctx.config().get_double("classifier.noise_floor_rel", opts.noise_floor_rel);

    std::ifstream in(map_path, std::ios::binary);
    require(static_cast<bool>(in), "cannot open map '" + map_path + "'", ErrorKind::data);
    const std::string map_text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const SignatureMap map = io::parse_map_text(map_text);
    if (ctx.globals().f_ref) {
        require(std::abs(*ctx.globals().f_ref - map.f_ref) <= 1e-9 * map.f_ref,
                "--f-ref differs from the map's reference frequency", ErrorKind::config);
    }

    const auto set = io::read_calibration(input);
    require(set.size() == 1, "classify expects exactly one unknown series in the input", ErrorKind::data);
    const ClassificationResult r = classify(set.front(), map, opts);

    json report = ctx.report_header();
    report["identified"] = r.adulterant.has_value();
    report["adulterant"] = r.adulterant ? json(*r.adulterant) : json(nullptr);
    report["candidates"] = r.candidates;
    report["ambiguous"] = r.ambiguous();
    report["category"] = r.category ? json(to_string(*r.category)) : json(nullptr);
    report["concentration_estimate_wt"] =
        r.concentration_estimate ? json(*r.concentration_estimate) : json(nullptr);
    report["diagnostics"] = {{"mean_angle_deg", r.diagnostics.mean_angle_deg},
                             {"radius_percent", r.diagnostics.radius_percent},
                             {"trend", to_string(r.diagnostics.trend)},
                             {"extrapolated", r.diagnostics.extrapolated},
                             {"candidates_considered", r.diagnostics.candidates_considered},
                             {"point_concentrations_wt", r.diagnostics.point_concentrations},
                             {"reason", r.diagnostics.reason}};
    ctx.write_report("classification.json", report);
}

void cmd_dielectric(Context& ctx) {
    const DielectricSystem sys = io::dielectric_from(ctx.config());
    const SweepConfig sweep = io::sweep_config_from(ctx.config());
    const double eps_r = effective_permittivity(sys);
    const double eps = eps_r * constants::vacuum_permittivity;

    io::Table out{{"frequency_hz", "eps_real_f_per_m", "eps_imag_f_per_m", "c_sol_farad"}, {}};
    for (double f : log_sweep(sweep)) {
        const ComplexValue e = complex_permittivity(eps, sys.sigma, f);
        out.rows.push_back({f, e.real(), e.imag(), solution_capacitance(e, sys.area, sys.gap)});
    }
    ctx.write("permittivity.csv", io::write_table_text(out, ctx.metadata()));
    json report = ctx.report_header();
    report["relative_permittivity"] = eps_r;
    report["regime"] = sys.n_i > sys.n_d ? "ionic_dominated" : "polar_dominated";
    ctx.write_report("dielectric_report.json", report);
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::config:
        case ErrorKind::invalid_argument: return kConfigError;
        case ErrorKind::data: return kDataError;
        case ErrorKind::numerical: return kNumericalFailure;
    }
    return kNumericalFailure;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"eisense: impedance-spectroscopy sensing toolkit", "eisense"};
    app.set_version_flag("--version", std::string(io::tool_version()));
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--config", g.config_path, "Run configuration file (TOML-style sections)")->check(CLI::ExistingFile);
    app.add_option("--seed", g.seed, "Seed for all randomness");
    app.add_option("--out-dir", g.out_dir, "Directory receiving every output file")->capture_default_str();
    app.add_option("--f-ref", g.f_ref, "Reference frequency for the polar map, Hz")->check(CLI::PositiveNumber);
    app.add_option("--r2-threshold", g.r2_threshold, "R^2 threshold for linear-regime detection")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();

    std::string input;
    std::string map_path;
    std::string reference;
    std::string sample;
    std::string x_column;
    std::vector<std::string> y_columns;
    std::vector<double> predict_at;
    std::optional<double> prominence;
    double window_lo = 0.0;
    double window_hi = 0.0;
    bool doubled = false;

    auto* simulate = app.add_subcommand("simulate", "Virtual LCR sweep over the cell network");
    auto* fit = app.add_subcommand("fit-circuit", "Estimate cell network parameters from a spectrum");
    fit->add_option("--input", input, "Impedance spectrum file")->required()->check(CLI::ExistingFile);
    auto* calibrate = app.add_subcommand("calibrate", "Linear calibration report with uncertainties");
    calibrate->add_option("--input", input, "Table with the concentration column and response columns")
        ->required()
        ->check(CLI::ExistingFile);
    calibrate->add_option("--x", x_column, "Concentration column name");
    calibrate->add_option("--y", y_columns, "Response column names (one fit per column)");
    calibrate->add_option("--predict-at", predict_at, "Concentrations for prediction intervals");
    auto* sensitivity = app.add_subcommand("sensitivity", "Coefficient of sensitivity per frequency");
    sensitivity->add_option("--input", input, "Table with frequency_hz, wt_percent, value columns")
        ->required()
        ->check(CLI::ExistingFile);
    auto* nyquist = app.add_subcommand("nyquist", "Export Nyquist and Bode plot data");
    nyquist->add_option("--input", input, "Impedance spectrum file")->required()->check(CLI::ExistingFile);
    auto* fwhm_cmd = app.add_subcommand("fwhm", "Peaks and full widths at half maximum");
    fwhm_cmd->add_option("--input", input, "Optical spectrum file")->required()->check(CLI::ExistingFile);
    fwhm_cmd->add_option("--prominence", prominence, "Minimum peak prominence (default 5% of range)");
    auto* shift = app.add_subcommand("peak-shift", "Shift of the dominant in-window peak");
    shift->add_option("--reference", reference, "Reference optical spectrum")->required()->check(CLI::ExistingFile);
    shift->add_option("--sample", sample, "Sample optical spectrum")->required()->check(CLI::ExistingFile);
    shift->add_option("--window-lo", window_lo, "Window lower bound, axis units")->required();
    shift->add_option("--window-hi", window_hi, "Window upper bound, axis units")->required();
    shift->add_option("--prominence", prominence, "Minimum peak prominence (default 5% of range)");
    auto* map_build = app.add_subcommand("map-build", "Build the phase-angle / impedance signature map");
    map_build->add_option("--input", input, "Calibration set file")->required()->check(CLI::ExistingFile);
    map_build->add_flag("--doubled-angle", doubled, "Export polar angles as twice the admittance argument");
    auto* classify_cmd = app.add_subcommand("classify", "Identify and quantify an unknown sample");
    classify_cmd->add_option("--map", map_path, "Signature map file")->required()->check(CLI::ExistingFile);
    classify_cmd->add_option("--input", input, "Unknown series in calibration format")
        ->required()
        ->check(CLI::ExistingFile);
    auto* dielectric = app.add_subcommand("dielectric", "Effective permittivity and solution capacitance");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        CLI::App* cmd = app.get_subcommands().front();
        Context ctx(g, cmd->get_name());
        if (cmd == simulate) cmd_simulate(ctx);
        else if (cmd == fit) return cmd_fit_circuit(ctx, input);
        else if (cmd == calibrate) cmd_calibrate(ctx, input, x_column, y_columns, predict_at);
        else if (cmd == sensitivity) cmd_sensitivity(ctx, input);
        else if (cmd == nyquist) cmd_nyquist(ctx, input);
        else if (cmd == fwhm_cmd) cmd_fwhm(ctx, input, prominence);
        else if (cmd == shift) cmd_peak_shift(ctx, reference, sample, window_lo, window_hi, prominence);
        else if (cmd == map_build) cmd_map_build(ctx, input, doubled);
        else if (cmd == classify_cmd) cmd_classify(ctx, map_path, input);
        else if (cmd == dielectric) cmd_dielectric(ctx);
        return kOk;
    } catch (const Error& e) {
        std::cerr << "eisense: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "eisense: " << e.what() << '\n';
        return kNumericalFailure;
    }
}

}  // namespace eisense::cli
