#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "eisense/regression.hpp"

namespace eisense {

enum class AxisKind { wavelength_nm, wavenumber_cm_inv };

/// Sampled absorbance spectrum over a strictly monotone axis (increasing or decreasing).
class SampledSpectrum {
public:
    SampledSpectrum() = default;
    SampledSpectrum(std::vector<double> axis, std::vector<double> values, AxisKind kind = AxisKind::wavelength_nm);

    [[nodiscard]] std::span<const double> axis() const noexcept { return axis_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] AxisKind axis_kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t size() const noexcept { return axis_.size(); }

    /// Same samples ordered by increasing axis.
    [[nodiscard]] SampledSpectrum ascending() const;

    friend bool operator==(const SampledSpectrum&, const SampledSpectrum&) = default;

private:
    std::vector<double> axis_;
    std::vector<double> values_;
    AxisKind kind_ = AxisKind::wavelength_nm;
};

struct PeakWidth {
    double baseline;    // basin minimum the half level is measured from
    double left_half;   // axis position of the left half-height crossing
    double right_half;
    [[nodiscard]] double fwhm() const noexcept { return right_half - left_half; }
};

struct PeakInfo {
    double position;    // parabolic vertex, axis units
    double height;      // parabolic vertex value
    double prominence;
    std::size_t index;  // sample index in ascending-axis order
    std::optional<PeakWidth> width;
};

/// 5% of the spectrum's value range.
[[nodiscard]] double default_prominence(const SampledSpectrum& s);

/// Interior local maxima with prominence >= min_prominence, sorted by position.
[[nodiscard]] std::vector<PeakInfo> find_peaks(const SampledSpectrum& s, std::optional<double> min_prominence = {});

/// Full width at half maximum measured from the minimum of the peak's basin.
/// Throws a data error when a half-height crossing lies outside the basin.
[[nodiscard]] PeakInfo fwhm(const SampledSpectrum& s, const PeakInfo& peak);

/// Position of the highest in-window peak of `sample` minus that of `reference`.
[[nodiscard]] double peak_shift(const SampledSpectrum& reference, const SampledSpectrum& sample, Interval window,
                                std::optional<double> min_prominence = {});

}  // namespace eisense
