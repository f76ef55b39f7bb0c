#include "eisense/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eisense/constants.hpp"
#include "eisense/error.hpp"

namespace eisense {

namespace {

double mean_phase(const CalibrationSeries& s, double f_ref) {
    double sum = 0.0;
    for (const auto& p : s.points) sum += phase_angle(p.m.c, p.m.g, f_ref);
    return sum / static_cast<double>(s.points.size());
}

bool strictly_monotone(std::span<const double> v) {
    if (v.size() < 2) return false;
    bool up = true;
    bool down = true;
    for (std::size_t i = 1; i < v.size(); ++i) {
        up = up && v[i] > v[i - 1];
        down = down && v[i] < v[i - 1];
    }
    return up || down;
}

double lerp(double x0, double y0, double x1, double y1, double x) { return y0 + (y1 - y0) * (x - x0) / (x1 - x0); }

}  // namespace

std::string to_string(AdulterantCategory c) { return c == AdulterantCategory::polar ? "polar" : "nonpolar_ionic"; }

std::string to_string(Trend t) {
    switch (t) {
        case Trend::z_increasing: return "z_increasing";
        case Trend::z_decreasing: return "z_decreasing";
        case Trend::non_monotone: return "non_monotone";
    }
    return "non_monotone";
}

AdulterantCategory parse_category(std::string_view s) {
    if (s == "polar") return AdulterantCategory::polar;
    if (s == "nonpolar_ionic") return AdulterantCategory::nonpolar_ionic;
    fail(ErrorKind::data, "unknown adulterant category '" + std::string(s) + "'");
}

Trend parse_trend(std::string_view s) {
    if (s == "z_increasing") return Trend::z_increasing;
    if (s == "z_decreasing") return Trend::z_decreasing;
    if (s == "non_monotone") return Trend::non_monotone;
    fail(ErrorKind::data, "unknown trend '" + std::string(s) + "'");
}

void CalibrationSeries::validate() const {
    const std::string name = adulterant.empty() ? std::string("<unlabeled>") : adulterant;
    require(!points.empty(), "series " + name + ": needs at least one adulterated point", ErrorKind::data);
    require(std::abs(reference.z) > 0.0, "series " + name + ": reference impedance is zero", ErrorKind::data);
    double prev = 0.0;
    for (const auto& p : points) {
        require(std::isfinite(p.concentration) && p.concentration > prev,
                "series " + name + ": concentrations must be positive and strictly increasing", ErrorKind::data);
        require(is_finite(p.m.z) && std::isfinite(p.m.c) && std::isfinite(p.m.g),
                "series " + name + ": non-finite measurement", ErrorKind::data);
        prev = p.concentration;
    }
}

RadialCurve::RadialCurve(std::vector<double> concentrations, std::vector<double> percents)
    : conc_(std::move(concentrations)), pct_(std::move(percents)) {
    require(conc_.size() == pct_.size() && conc_.size() >= 2, "radial curve needs >= 2 matching samples",
            ErrorKind::data);
    for (std::size_t i = 1; i < conc_.size(); ++i) {
        require(conc_[i] > conc_[i - 1], "radial curve concentrations must increase", ErrorKind::data);
    }
    require(strictly_monotone(pct_), "radial curve is not strictly monotone in concentration", ErrorKind::data);
}

RadialCurve::Inverse RadialCurve::concentration_at(double percent) const {
    const bool increasing = pct_.back() > pct_.front();
    const double lo = increasing ? pct_.front() : pct_.back();
    const double hi = increasing ? pct_.back() : pct_.front();
    if (percent <= lo) return {increasing ? conc_.front() : conc_.back(), percent < lo};
    if (percent >= hi) return {increasing ? conc_.back() : conc_.front(), percent > hi};
    for (std::size_t i = 1; i < pct_.size(); ++i) {
        const bool bracket = increasing ? percent <= pct_[i] : percent >= pct_[i];
        if (bracket) {
            if (percent == pct_[i]) return {conc_[i], false};
            return {lerp(pct_[i - 1], conc_[i - 1], pct_[i], conc_[i], percent), false};
        }
    }
    return {conc_.back(), false};
}

double RadialCurve::percent_at(double concentration) const {
    if (concentration <= conc_.front()) return pct_.front();
    if (concentration >= conc_.back()) return pct_.back();
    const auto it = std::upper_bound(conc_.begin(), conc_.end(), concentration);
    const auto i = static_cast<std::size_t>(it - conc_.begin());
    return lerp(conc_[i - 1], pct_[i - 1], conc_[i], pct_[i], concentration);
}

double percent_impedance_change(double z_ref, double z_sample) {
    require(std::isfinite(z_ref) && std::isfinite(z_sample), "impedance magnitudes must be finite");
    require(std::abs(z_ref) > 0.0, "reference impedance must be non-zero");
    return 100.0 * (std::abs(z_sample) - std::abs(z_ref)) / std::abs(z_ref);
}

double phase_angle(double c, double g, double frequency) {
    require(std::isfinite(frequency) && frequency > 0.0, "frequency must be > 0");
    require(std::isfinite(c) && std::isfinite(g), "capacitance and conductance must be finite");
    require(c != 0.0 || g != 0.0, "phase angle undefined for C = G = 0");
    if (c == 0.0) return g > 0.0 ? 0.0 : 180.0;
    if (g == 0.0) return c > 0.0 ? 90.0 : -90.0;
    return std::atan2(constants::two_pi * frequency * c, g) * 180.0 / constants::pi;
}

Trend trend_direction(const CalibrationSeries& series, double noise_floor_rel) {
    std::vector<double> conc{0.0};
    std::vector<double> mag{std::abs(series.reference.z)};
    for (const auto& p : series.points) {
        conc.push_back(p.concentration);
        mag.push_back(std::abs(p.m.z));
    }
    const double slope = sensitivity_coefficient(conc, mag);
    const double range = conc.back() - conc.front();
    const double mean_mag = std::accumulate(mag.begin(), mag.end(), 0.0) / static_cast<double>(mag.size());
    if (std::abs(slope) * range <= noise_floor_rel * mean_mag) return Trend::non_monotone;
    return slope > 0.0 ? Trend::z_increasing : Trend::z_decreasing;
}

SignatureMap build_signature_map(std::span<const CalibrationSeries> series_set, double f_ref,
                                 const ClassifierOptions& options) {
    require(!series_set.empty(), "signature map needs at least one calibration series", ErrorKind::data);
    require(std::isfinite(f_ref) && f_ref > 0.0, "reference frequency must be > 0");

    SignatureMap map;
    map.f_ref = f_ref;
    for (const auto& s : series_set) {
        s.validate();
        require(!s.adulterant.empty(), "calibration series must be named", ErrorKind::data);

        AdulterantSignature sig;
        sig.adulterant = s.adulterant;
        sig.category = s.category;
        sig.trend = trend_direction(s, options.noise_floor_rel);
        require(sig.trend != Trend::non_monotone,
                "calibration rejected for '" + s.adulterant + "': |Z| trend is within the noise floor",
                ErrorKind::data);

        double lo = HUGE_VAL;
        double hi = -HUGE_VAL;
        std::vector<double> conc{0.0};
        std::vector<double> pct{0.0};
        const double ref = std::abs(s.reference.z);
        for (const auto& p : s.points) {
            const double angle = phase_angle(p.m.c, p.m.g, f_ref);
            lo = std::min(lo, angle);
            hi = std::max(hi, angle);
            conc.push_back(p.concentration);
            pct.push_back(percent_impedance_change(ref, std::abs(p.m.z)));
        }
        require(strictly_monotone(pct),
                "calibration rejected for '" + s.adulterant + "': percent change of |Z| is not strictly monotone",
                ErrorKind::data);
        sig.angle_range = {lo, hi};
        sig.radial_curve = RadialCurve(std::move(conc), std::move(pct));
        map.signatures.push_back(std::move(sig));
    }
    std::sort(map.signatures.begin(), map.signatures.end(), [](const auto& a, const auto& b) {
        if (a.angle_range.lo != b.angle_range.lo) return a.angle_range.lo < b.angle_range.lo;
        return a.adulterant < b.adulterant;
    });
    return map;
}

ClassificationResult classify(const CalibrationSeries& unknown, const SignatureMap& map,
                              const ClassifierOptions& options) {
    require(!map.signatures.empty(), "signature map is empty", ErrorKind::data);
    unknown.validate();

    ClassificationResult out;
    auto& diag = out.diagnostics;

    // Step 1: direction of the |Z| change gives polar vs non-polar/ionic.
    diag.trend = trend_direction(unknown, options.noise_floor_rel);
    if (diag.trend == Trend::non_monotone) {
        fail(ErrorKind::data, "unclassifiable: the |Z| change of the unknown is within the noise floor");
    }
    out.category = diag.trend == Trend::z_increasing ? AdulterantCategory::polar : AdulterantCategory::nonpolar_ionic;

    // Step 2: angular sector, with overlaps separated by trend.
    diag.mean_angle_deg = mean_phase(unknown, map.f_ref);
    for (const auto& sig : map.signatures) {
        const Interval widened{sig.angle_range.lo - options.angle_tolerance_deg,
                               sig.angle_range.hi + options.angle_tolerance_deg};
        if (!widened.contains(diag.mean_angle_deg)) continue;
        diag.candidates_considered.push_back(sig.adulterant);
        if (sig.trend == diag.trend) out.candidates.push_back(sig.adulterant);
    }

    const double ref = std::abs(unknown.reference.z);
    diag.radius_percent = percent_impedance_change(ref, std::abs(unknown.points.back().m.z));

    if (out.candidates.empty()) {
        diag.reason = "no signature with a matching trend covers angle " + std::to_string(diag.mean_angle_deg) + " deg";
        return out;
    }
    if (out.candidates.size() > 1) {
        diag.reason = "angle and trend match several signatures";
        return out;
    }

    // Step 3: radial position along the matched curve gives the concentration.
    const auto& sig = *std::find_if(map.signatures.begin(), map.signatures.end(),
                                    [&](const auto& s) { return s.adulterant == out.candidates.front(); });
    out.adulterant = sig.adulterant;
    out.category = sig.category;
    for (const auto& p : unknown.points) {
        const auto inv = sig.radial_curve.concentration_at(percent_impedance_change(ref, std::abs(p.m.z)));
        diag.point_concentrations.push_back(inv.concentration);
        diag.extrapolated = diag.extrapolated || inv.clamped;
    }
    out.concentration_estimate = diag.point_concentrations.back();
    if (diag.extrapolated) diag.reason = "percent change outside the calibrated range; estimate clamped";
    return out;
}

std::vector<PolarPoint> polar_coordinates(std::span<const CalibrationSeries> series_set, double f_ref,
                                          AngleDisplay display) {
    const double scale = display == AngleDisplay::doubled ? 2.0 : 1.0;
    std::vector<PolarPoint> out;
    for (const auto& s : series_set) {
        s.validate();
        const double ref = std::abs(s.reference.z);
        for (const auto& p : s.points) {
            out.push_back({s.adulterant, p.concentration, scale * phase_angle(p.m.c, p.m.g, f_ref),
                           percent_impedance_change(ref, std::abs(p.m.z))});
        }
    }
    return out;
}

}  // namespace eisense
