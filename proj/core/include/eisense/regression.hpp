#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace eisense {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] bool contains(double v) const noexcept { return lo <= v && v <= hi; }
    [[nodiscard]] double width() const noexcept { return hi - lo; }
};

/// Ordinary least squares line y = m x + c with its uncertainty summary.
/// Confidence intervals are estimate +/- k * standard error (coverage factor k).
struct LinearFit {
    double m = 0.0;
    double c = 0.0;
    double r2 = 0.0;
    double se_m = 0.0;
    double se_c = 0.0;
    Interval ci_m;
    Interval ci_c;
    double s_reg = 0.0;  // standard error of regression, sqrt(SS_res / (n - 2))
    std::size_t n = 0;
    double coverage_k = 2.0;

    [[nodiscard]] double predict(double x) const noexcept { return m * x + c; }
};

[[nodiscard]] LinearFit ols_fit(std::span<const double> xs, std::span<const double> ys, double coverage_k = 2.0);

/// Two-sided Student-t quantile t_{p, dof}.
[[nodiscard]] double student_t_quantile(double p, double dof);

/// Prediction interval for a fresh observation at x0 from the data that produced `fit`.
[[nodiscard]] Interval prediction_interval(const LinearFit& fit, std::span<const double> xs,
                                           std::span<const double> ys, double x0, double level = 0.95);

/// Coefficient of sensitivity: covariance of (w, value) over variance of w.
[[nodiscard]] double sensitivity_coefficient(std::span<const double> ws, std::span<const double> values);

struct SensitivityResult {
    double frequency;  // hertz
    double beta;       // response units per wt%
};

/// Envelope of several calibration sets measured on the same series, one fit per set.
struct FitEnvelope {
    Interval m_estimates;  // [min m, max m] across sets
    Interval c_estimates;
    Interval m_ci;         // [min ci_m.lo, max ci_m.hi]
    Interval c_ci;
};

[[nodiscard]] FitEnvelope envelope(std::span<const LinearFit> fits);

struct LinearityRegime {
    bool linear_found = false;
    std::size_t boundary_index = 0;   // first index of the linear suffix
    std::optional<LinearFit> low_fit;   // points before the boundary, when >= 2
    std::optional<LinearFit> high_fit;  // the linear suffix
    double whole_r2 = 0.0;
};

/// Longest suffix of (concs, values) whose OLS R^2 reaches the threshold.
[[nodiscard]] LinearityRegime linearity_regime_detect(std::span<const double> concs, std::span<const double> values,
                                                      double r2_threshold = 0.95);

}  // namespace eisense
