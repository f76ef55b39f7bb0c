#include "eisense/regression.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/distributions/students_t.hpp>

#include "eisense/error.hpp"

namespace eisense {

namespace {

void require_pairs(std::span<const double> xs, std::span<const double> ys, std::size_t min_n) {
    if (xs.size() != ys.size()) {
        fail(ErrorKind::data, "length mismatch: " + std::to_string(xs.size()) + " x values vs " +
                                  std::to_string(ys.size()) + " y values");
    }
    if (xs.size() < min_n) fail(ErrorKind::data, "need at least " + std::to_string(min_n) + " points");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
            fail(ErrorKind::data, "non-finite value at index " + std::to_string(i));
        }
    }
}

double mean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace

LinearFit ols_fit(std::span<const double> xs, std::span<const double> ys, double coverage_k) {
    require_pairs(xs, ys, 2);
    require(std::isfinite(coverage_k) && coverage_k >= 0.0, "coverage factor must be >= 0");
    const std::size_t n = xs.size();
    const double x_bar = mean(xs);
    const double y_bar = mean(ys);

    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - x_bar;
        const double dy = ys[i] - y_bar;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    require(sxx > 0.0, "x values have zero variance", ErrorKind::numerical);

    LinearFit fit;
    fit.n = n;
    fit.coverage_k = coverage_k;
    fit.m = sxy / sxx;
    fit.c = y_bar - fit.m * x_bar;

    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - fit.predict(xs[i]);
        ss_res += r * r;
    }
    fit.r2 = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;

    if (n >= 3) {
        fit.s_reg = std::sqrt(ss_res / static_cast<double>(n - 2));
        fit.se_m = fit.s_reg / std::sqrt(sxx);
        fit.se_c = fit.s_reg * std::sqrt(1.0 / static_cast<double>(n) + x_bar * x_bar / sxx);
    }
    fit.ci_m = {fit.m - coverage_k * fit.se_m, fit.m + coverage_k * fit.se_m};
    fit.ci_c = {fit.c - coverage_k * fit.se_c, fit.c + coverage_k * fit.se_c};
    return fit;
}

double student_t_quantile(double p, double dof) {
    require(p > 0.0 && p < 1.0, "quantile probability must lie in (0, 1)");
    require(dof > 0.0, "degrees of freedom must be > 0");
    return boost::math::quantile(boost::math::students_t_distribution<double>(dof), p);
}

Interval prediction_interval(const LinearFit& fit, std::span<const double> xs, std::span<const double> ys, double x0,
                             double level) {
    require_pairs(xs, ys, 3);
    require(fit.n == xs.size(), "fit was produced from a different sample size", ErrorKind::data);
    require(level > 0.0 && level < 1.0, "confidence level must lie in (0, 1)");
    const auto n = static_cast<double>(xs.size());
    const double x_bar = mean(xs);
    double sxx = 0.0;
    for (double x : xs) sxx += (x - x_bar) * (x - x_bar);
    require(sxx > 0.0, "x values have zero variance", ErrorKind::numerical);

    const double t = student_t_quantile(0.5 + level / 2.0, n - 2.0);
    const double half = t * fit.s_reg * std::sqrt(1.0 + 1.0 / n + (x0 - x_bar) * (x0 - x_bar) / sxx);
    const double y0 = fit.predict(x0);
    return {y0 - half, y0 + half};
}

double sensitivity_coefficient(std::span<const double> ws, std::span<const double> values) {
    require_pairs(ws, values, 2);
    const double w_bar = mean(ws);
    const double v_bar = mean(values);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < ws.size(); ++i) {
        num += (ws[i] - w_bar) * (values[i] - v_bar);
        den += (ws[i] - w_bar) * (ws[i] - w_bar);
    }
    require(den > 0.0, "concentrations have zero variance", ErrorKind::numerical);
    return num / den;
}

FitEnvelope envelope(std::span<const LinearFit> fits) {
    require(!fits.empty(), "envelope of zero fits");
    FitEnvelope e{{fits[0].m, fits[0].m}, {fits[0].c, fits[0].c}, fits[0].ci_m, fits[0].ci_c};
    for (const auto& f : fits.subspan(1)) {
        e.m_estimates = {std::min(e.m_estimates.lo, f.m), std::max(e.m_estimates.hi, f.m)};
        e.c_estimates = {std::min(e.c_estimates.lo, f.c), std::max(e.c_estimates.hi, f.c)};
        e.m_ci = {std::min(e.m_ci.lo, f.ci_m.lo), std::max(e.m_ci.hi, f.ci_m.hi)};
        e.c_ci = {std::min(e.c_ci.lo, f.ci_c.lo), std::max(e.c_ci.hi, f.ci_c.hi)};
    }
    return e;
}

LinearityRegime linearity_regime_detect(std::span<const double> concs, std::span<const double> values,
                                        double r2_threshold) {
    require_pairs(concs, values, 4);
    for (std::size_t i = 1; i < concs.size(); ++i) {
        require(concs[i] > concs[i - 1], "concentrations must be strictly increasing", ErrorKind::data);
    }
    require(r2_threshold >= 0.0 && r2_threshold <= 1.0, "r2 threshold must lie in [0, 1]");

    LinearityRegime out;
    out.whole_r2 = ols_fit(concs, values).r2;
    const std::size_t n = concs.size();
    // Suffixes nest, so the first qualifying start index is the longest suffix.
    for (std::size_t start = 0; start + 3 <= n; ++start) {
        LinearFit fit = ols_fit(concs.subspan(start), values.subspan(start));
        if (fit.r2 >= r2_threshold) {
            out.linear_found = true;
            out.boundary_index = start;
            out.high_fit = fit;
            if (start >= 2) out.low_fit = ols_fit(concs.first(start), values.first(start));
            break;
        }
    }
    return out;
}

}  // namespace eisense
