#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "eisense/acquisition.hpp"
#include "eisense/circuit.hpp"
#include "eisense/classifier.hpp"
#include "eisense/dielectric.hpp"
#include "eisense/spectral.hpp"

namespace eisense::io {

inline constexpr int kSpectrumFormatVersion = 1;
inline constexpr int kCalibrationFormatVersion = 1;
inline constexpr int kMapFormatVersion = 1;

[[nodiscard]] std::string_view tool_version();

/// Shortest decimal text that parses back to the same double.
[[nodiscard]] std::string format_double(double v);

/// Strict, locale-independent parse of a whole field. `where` prefixes the diagnostic.
[[nodiscard]] double parse_double(std::string_view text, const std::string& where);

[[nodiscard]] std::string sha256_hex(std::string_view data);

using Metadata = std::map<std::string, std::string>;

// ---------------------------------------------------------------------------
// Spectrum files
//
//   # eisense spectrum v1
//   # kind: impedance            (or optical)
//   # axis_kind: frequency_hz    (optical: wavelength_nm | wavenumber_cm-1)
//   # <key>: <value>             any further metadata
//   frequency_hz,z_real_ohm,z_imag_ohm      (optical: axis,absorbance)
//   <rows>
// ---------------------------------------------------------------------------

struct ImpedanceFile {
    Metadata metadata;
    ImpedanceSpectrum spectrum;
};

struct OpticalFile {
    Metadata metadata;
    SampledSpectrum spectrum;
};

using SpectrumFile = std::variant<ImpedanceFile, OpticalFile>;

[[nodiscard]] std::string write_spectrum_text(const ImpedanceSpectrum& s, const Metadata& metadata = {});
[[nodiscard]] std::string write_spectrum_text(const SampledSpectrum& s, const Metadata& metadata = {});
[[nodiscard]] SpectrumFile parse_spectrum_text(std::string_view text);

[[nodiscard]] SpectrumFile read_spectrum(const std::filesystem::path& path);
[[nodiscard]] ImpedanceFile read_impedance_spectrum(const std::filesystem::path& path);
[[nodiscard]] OpticalFile read_optical_spectrum(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Numeric tables: '#' comment lines, one header row, comma-separated numbers.
// ---------------------------------------------------------------------------

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    [[nodiscard]] std::size_t column_index(std::string_view name) const;
    [[nodiscard]] std::vector<double> column(std::string_view name) const;
};

[[nodiscard]] Table parse_table_text(std::string_view text);
[[nodiscard]] Table read_table(const std::filesystem::path& path);
[[nodiscard]] std::string write_table_text(const Table& t, const Metadata& metadata = {});

// ---------------------------------------------------------------------------
// Calibration sets
//
//   # eisense calibration v1
//   adulterant,category,concentration_wt,z_real_ohm,z_imag_ohm,c_farad,g_siemens
//   urea,polar,0,...        (concentration 0 is the pure reference of that series)
// ---------------------------------------------------------------------------

[[nodiscard]] std::string write_calibration_text(const std::vector<CalibrationSeries>& set,
                                                 const Metadata& metadata = {});
[[nodiscard]] std::vector<CalibrationSeries> parse_calibration_text(std::string_view text);
[[nodiscard]] std::vector<CalibrationSeries> read_calibration(const std::filesystem::path& path);

// Signature maps are JSON with {"format": "eisense-map", "version": 1, ...}.
[[nodiscard]] std::string write_map_text(const SignatureMap& map, const Metadata& metadata = {});
[[nodiscard]] SignatureMap parse_map_text(std::string_view text);

// ---------------------------------------------------------------------------
// Run configuration: TOML-style sections and key = value pairs, '#' comments.
// ---------------------------------------------------------------------------

class RunConfig {
public:
    RunConfig() = default;

    [[nodiscard]] static RunConfig parse(std::string_view text);
    [[nodiscard]] static RunConfig load(const std::filesystem::path& path);

    /// Throws a config error naming the first key outside `allowed`.
    void require_known(const std::set<std::string>& allowed) const;

    [[nodiscard]] bool has(const std::string& key) const { return values_.contains(key); }
    [[nodiscard]] double get_double(const std::string& key, double fallback) const;
    [[nodiscard]] long long get_int(const std::string& key, long long fallback) const;
    [[nodiscard]] std::string get_string(const std::string& key, const std::string& fallback) const;
    [[nodiscard]] std::vector<std::string> get_list(const std::string& key) const;

    void set(const std::string& key, std::vector<std::string> value) { values_[key] = std::move(value); }

    /// Stable text form (sorted keys), the input of the config digest.
    [[nodiscard]] std::string canonical() const;
    [[nodiscard]] std::string digest() const { return sha256_hex(canonical()); }

private:
    std::map<std::string, std::vector<std::string>> values_;
};

/// Keys: circuit.{r_sol,c_dl,c_sol,c_stray,l_stray}. Defaults give a 100 kOhm / 40 pF cell.
[[nodiscard]] CircuitParams circuit_params_from(const RunConfig& cfg, const std::string& section = "circuit");
[[nodiscard]] std::set<std::string> circuit_keys(const std::string& section = "circuit");

/// Keys: sweep.{f_start,f_stop,points,amplitude,noise_rel,seed}.
[[nodiscard]] SweepConfig sweep_config_from(const RunConfig& cfg);
[[nodiscard]] std::set<std::string> sweep_keys();

/// Keys: dielectric.{n_d,p_d,n_i,p_i,p_w,n_i1,n_i2,n_w,temperature,sigma,area,gap}.
[[nodiscard]] DielectricSystem dielectric_from(const RunConfig& cfg);
[[nodiscard]] std::set<std::string> dielectric_keys();

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

/// Writes `content` to out_dir/file_name through a temporary file and a rename.
/// `file_name` must be a bare name; anything that would escape out_dir is refused.
std::filesystem::path write_atomic(const std::filesystem::path& out_dir, const std::string& file_name,
                                   std::string_view content);

}  // namespace eisense::io
