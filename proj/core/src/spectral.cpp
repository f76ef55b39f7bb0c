#include "eisense/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "eisense/error.hpp"

namespace eisense {

namespace {

struct Vertex2 {
    double x;
    double y;
};

// Vertex of the parabola through three points on a possibly non-uniform grid.
Vertex2 parabolic_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double a = (d12 - d01) / (x2 - x0);
    if (!(a < 0.0)) return {x1, y1};
    const double b = d01 - a * (x0 + x1);
    const double xv = std::clamp(-b / (2.0 * a), x0, x2);
    const double yv = y1 + (xv - x1) * (d01 + a * (xv - x0));  // Newton form about x1
    return {xv, std::max(yv, y1)};
}

double interpolate_crossing(double xa, double ya, double xb, double yb, double level) {
    return xa + (level - ya) * (xb - xa) / (yb - ya);
}

}  // namespace

SampledSpectrum::SampledSpectrum(std::vector<double> axis, std::vector<double> values, AxisKind kind)
    : axis_(std::move(axis)), values_(std::move(values)), kind_(kind) {
    require(axis_.size() == values_.size(), "axis and value columns differ in length", ErrorKind::data);
    for (std::size_t i = 0; i < axis_.size(); ++i) {
        if (!std::isfinite(axis_[i]) || !std::isfinite(values_[i])) {
            fail(ErrorKind::data, "non-finite sample at index " + std::to_string(i));
        }
    }
    if (axis_.size() >= 2) {
        const bool increasing = axis_[1] > axis_[0];
        for (std::size_t i = 1; i < axis_.size(); ++i) {
            const bool ok = increasing ? axis_[i] > axis_[i - 1] : axis_[i] < axis_[i - 1];
            if (!ok) fail(ErrorKind::data, "axis is not strictly monotone at index " + std::to_string(i));
        }
    }
}

SampledSpectrum SampledSpectrum::ascending() const {
    if (axis_.size() < 2 || axis_[1] > axis_[0]) return *this;
    return SampledSpectrum({axis_.rbegin(), axis_.rend()}, {values_.rbegin(), values_.rend()}, kind_);
}

double default_prominence(const SampledSpectrum& s) {
    if (s.size() == 0) return 0.0;
    const auto [lo, hi] = std::minmax_element(s.values().begin(), s.values().end());
    return 0.05 * (*hi - *lo);
}

std::vector<PeakInfo> find_peaks(const SampledSpectrum& input, std::optional<double> min_prominence) {
    const SampledSpectrum s = input.ascending();
    const auto x = s.axis();
    const auto v = s.values();
    const std::size_t n = s.size();
    require(n >= 3, "peak search needs at least 3 samples", ErrorKind::data);
    const double threshold = min_prominence.value_or(default_prominence(s));

    std::vector<PeakInfo> peaks;
    std::size_t i = 1;
    while (i + 1 < n) {
        if (!(v[i] > v[i - 1])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && v[j + 1] == v[i]) ++j;
        if (j + 1 >= n || !(v[j + 1] < v[i])) {
            i = j + 1;
            continue;
        }
        const std::size_t k = i + (j - i) / 2;  // middle of a plateau

        double left_min = v[k];
        for (std::size_t a = i; a-- > 0;) {
            if (v[a] > v[k]) break;
            left_min = std::min(left_min, v[a]);
        }
        double right_min = v[k];
        for (std::size_t b = j + 1; b < n; ++b) {
            if (v[b] > v[k]) break;
            right_min = std::min(right_min, v[b]);
        }
        const double prominence = v[k] - std::max(left_min, right_min);

        if (prominence >= threshold && prominence > 0.0) {
            const Vertex2 top = i == j ? parabolic_vertex(x[k - 1], v[k - 1], x[k], v[k], x[k + 1], v[k + 1])
                                       : Vertex2{0.5 * (x[i] + x[j]), v[k]};
            peaks.push_back({top.x, top.y, prominence, k, std::nullopt});
        }
        i = j + 1;
    }
    return peaks;
}

PeakInfo fwhm(const SampledSpectrum& input, const PeakInfo& peak) {
    const SampledSpectrum s = input.ascending();
    const auto x = s.axis();
    const auto v = s.values();
    const std::size_t n = s.size();
    require(peak.index > 0 && peak.index + 1 < n, "peak index lies outside the spectrum interior", ErrorKind::data);

    // The basin on each side runs to the nearest strictly higher sample (or the edge);
    // its lowest point bounds the crossing search.
    const double top = v[peak.index];
    std::size_t lo = peak.index;
    for (std::size_t i = peak.index; i > 0 && v[i - 1] <= top; --i) {
        if (v[i - 1] < v[lo]) lo = i - 1;
    }
    std::size_t hi = peak.index;
    for (std::size_t i = peak.index; i + 1 < n && v[i + 1] <= top; ++i) {
        if (v[i + 1] < v[hi]) hi = i + 1;
    }

    const double baseline = std::min(v[lo], v[hi]);
    const double half = baseline + 0.5 * (peak.height - baseline);

    std::size_t a = peak.index;
    while (a > lo && v[a - 1] >= half) --a;
    require(a > lo, "left half-height crossing not found within the peak's basin", ErrorKind::data);
    std::size_t b = peak.index;
    while (b < hi && v[b + 1] >= half) ++b;
    require(b < hi, "right half-height crossing not found within the peak's basin", ErrorKind::data);

    PeakInfo out = peak;
    out.width = PeakWidth{baseline, interpolate_crossing(x[a - 1], v[a - 1], x[a], v[a], half),
                          interpolate_crossing(x[b], v[b], x[b + 1], v[b + 1], half)};
    return out;
}

double peak_shift(const SampledSpectrum& reference, const SampledSpectrum& sample, Interval window,
                  std::optional<double> min_prominence) {
    require(window.lo < window.hi, "peak-shift window must satisfy lo < hi");
    auto dominant = [&](const SampledSpectrum& s, const char* which) {
        std::optional<PeakInfo> best;
        for (const auto& p : find_peaks(s, min_prominence)) {
            if (!window.contains(p.position)) continue;
            if (!best || p.height > best->height) best = p;
        }
        require(best.has_value(), std::string("no peak inside the window in the ") + which + " spectrum",
                ErrorKind::data);
        return best->position;
    };
    return dominant(sample, "sample") - dominant(reference, "reference");
}

}  // namespace eisense
