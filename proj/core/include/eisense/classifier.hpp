#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eisense/circuit.hpp"
#include "eisense/regression.hpp"

namespace eisense {

enum class AdulterantCategory { polar, nonpolar_ionic };
enum class Trend { z_increasing, z_decreasing, non_monotone };

[[nodiscard]] std::string to_string(AdulterantCategory c);
[[nodiscard]] std::string to_string(Trend t);
[[nodiscard]] AdulterantCategory parse_category(std::string_view s);
[[nodiscard]] Trend parse_trend(std::string_view s);

/// Impedance plus parallel-mode C and G at the reference frequency.
struct Measurement {
    ComplexValue z;      // ohm
    double c = 0.0;      // farad
    double g = 0.0;      // siemens
};

struct CalibrationPoint {
    double concentration = 0.0;  // wt%
    Measurement m;
};

/// Dilution series of one adulterant in the base sample, all at one reference frequency.
/// For an unknown sample the name and category are ignored and the concentrations only
/// order the points.
struct CalibrationSeries {
    std::string adulterant;
    AdulterantCategory category = AdulterantCategory::polar;
    Measurement reference;  // pure sample, concentration 0
    std::vector<CalibrationPoint> points;

    void validate() const;
};

/// Piecewise-linear map between concentration and signed percent change of |Z|,
/// anchored at (0, 0) for the pure sample.
class RadialCurve {
public:
    RadialCurve() = default;
    RadialCurve(std::vector<double> concentrations, std::vector<double> percents);

    [[nodiscard]] std::span<const double> concentrations() const noexcept { return conc_; }
    [[nodiscard]] std::span<const double> percents() const noexcept { return pct_; }

    struct Inverse {
        double concentration;
        bool clamped;  // percent fell outside the calibrated range
    };
    [[nodiscard]] Inverse concentration_at(double percent) const;
    [[nodiscard]] double percent_at(double concentration) const;

private:
    std::vector<double> conc_;
    std::vector<double> pct_;
};

struct AdulterantSignature {
    std::string adulterant;
    AdulterantCategory category = AdulterantCategory::polar;
    Interval angle_range;  // degrees
    Trend trend = Trend::non_monotone;
    RadialCurve radial_curve;
};

struct SignatureMap {
    double f_ref = 1000.0;  // hertz
    std::vector<AdulterantSignature> signatures;
};

struct ClassifierOptions {
    double noise_floor_rel = 0.01;  // trend floor as a fraction of mean |Z|
    double angle_tolerance_deg = 1e-9;
};

struct ClassificationDiagnostics {
    double mean_angle_deg = 0.0;
    double radius_percent = 0.0;  // percent change of the last (highest) point
    Trend trend = Trend::non_monotone;
    bool extrapolated = false;
    std::vector<std::string> candidates_considered;  // angle-range matches before the trend filter
    std::vector<double> point_concentrations;        // one estimate per unknown point
    std::string reason;
};

struct ClassificationResult {
    std::optional<std::string> adulterant;  // set only for a unique match
    std::vector<std::string> candidates;    // survivors of the trend filter; > 1 means ambiguous
    std::optional<AdulterantCategory> category;
    std::optional<double> concentration_estimate;
    ClassificationDiagnostics diagnostics;

    [[nodiscard]] bool ambiguous() const noexcept { return candidates.size() > 1; }
};

/// Signed 100 * (|z_sample| - |z_ref|) / |z_ref|.
[[nodiscard]] double percent_impedance_change(double z_ref, double z_sample);

/// Admittance argument atan(2 pi f C / G) in degrees.
[[nodiscard]] double phase_angle(double c, double g, double frequency);

[[nodiscard]] Trend trend_direction(const CalibrationSeries& series, double noise_floor_rel = 0.01);

[[nodiscard]] SignatureMap build_signature_map(std::span<const CalibrationSeries> series_set, double f_ref = 1000.0,
                                               const ClassifierOptions& options = {});

/// Identify (trend, then angle range, then trend again for overlaps) and quantify
/// (radial curve inversion) an unlabeled series against a signature map.
[[nodiscard]] ClassificationResult classify(const CalibrationSeries& unknown, const SignatureMap& map,
                                            const ClassifierOptions& options = {});

enum class AngleDisplay { admittance_argument, doubled };

struct PolarPoint {
    std::string adulterant;
    double concentration;
    double angle_deg;
    double radius_percent;
};

/// Polar plot coordinates of every calibration point. `doubled` multiplies the angle by two.
[[nodiscard]] std::vector<PolarPoint> polar_coordinates(std::span<const CalibrationSeries> series_set, double f_ref,
                                                        AngleDisplay display = AngleDisplay::admittance_argument);

}  // namespace eisense
