#include "eisense/circuit_fit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eisense/error.hpp"

namespace eisense {

namespace {

struct Vertex {
    std::vector<double> x;  // log parameters
    double f = 0.0;
};

class LogParamObjective {
public:
    LogParamObjective(const ImpedanceSpectrum& data, CircuitParams base, std::vector<std::string> free)
        : data_(data), base_(base), free_(std::move(free)) {
        for (const auto& name : free_) origin_.push_back(std::log(get_param(base_, name)));
    }

    [[nodiscard]] const std::vector<double>& origin() const { return origin_; }

    [[nodiscard]] CircuitParams params(const std::vector<double>& x) const {
        // exp(log(v)) need not return v; the starting point maps back to the guess itself.
        if (x == origin_) return base_;
        CircuitParams p = base_;
        for (std::size_t i = 0; i < free_.size(); ++i) set_param(p, free_[i], std::exp(x[i]));
        return p;
    }

    double operator()(const std::vector<double>& x) {
        ++evaluations;
        for (double v : x) {
            if (!std::isfinite(v) || std::abs(v) > 700.0) return HUGE_VAL;
        }
        return circuit_residual(params(x), data_);
    }

    int evaluations = 0;

private:
    const ImpedanceSpectrum& data_;
    CircuitParams base_;
    std::vector<std::string> free_;
    std::vector<double> origin_;
};

std::vector<double> blend(const std::vector<double>& a, const std::vector<double>& b, double t) {
    // a + t * (b - a)
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * (b[i] - a[i]);
    return out;
}

bool spread_converged(const std::vector<Vertex>& simplex, double tol, double floor) {
    const double best = simplex.front().f;
    const double worst = simplex.back().f;
    return worst - best <= tol * std::abs(best) + floor;
}

}  // namespace

const std::vector<std::string>& circuit_param_names() {
    static const std::vector<std::string> names{"r_sol", "c_dl", "c_sol", "c_stray", "l_stray"};
    return names;
}

double get_param(const CircuitParams& p, std::string_view name) {
    if (name == "r_sol") return p.r_sol;
    if (name == "c_dl") return p.c_dl;
    if (name == "c_sol") return p.c_sol;
    if (name == "c_stray") return p.c_stray;
    if (name == "l_stray") return p.l_stray;
    fail(ErrorKind::invalid_argument, "unknown circuit parameter '" + std::string(name) + "'");
}

void set_param(CircuitParams& p, std::string_view name, double value) {
    if (name == "r_sol") p.r_sol = value;
    else if (name == "c_dl") p.c_dl = value;
    else if (name == "c_sol") p.c_sol = value;
    else if (name == "c_stray") p.c_stray = value;
    else if (name == "l_stray") p.l_stray = value;
    else fail(ErrorKind::invalid_argument, "unknown circuit parameter '" + std::string(name) + "'");
}

double circuit_residual(const CircuitParams& p, const ImpedanceSpectrum& data) {
    double sum = 0.0;
    for (const auto& pt : data.points()) {
        const ComplexValue diff = cell_impedance(p, pt.frequency) - pt.z;
        sum += std::norm(diff) / std::norm(pt.z);
    }
    return sum;
}

CircuitFitResult estimate_circuit_params(const ImpedanceSpectrum& data, const CircuitParams& guess,
                                         const std::set<std::string>& fixed, const CircuitFitOptions& options) {
    guess.validate();
    for (const auto& name : fixed) (void)get_param(guess, name);
    for (const auto& pt : data.points()) {
        require(std::norm(pt.z) > 0.0, "spectrum contains a zero impedance", ErrorKind::data);
    }

    std::vector<std::string> free;
    for (const auto& name : circuit_param_names()) {
        if (!fixed.contains(name) && get_param(guess, name) > 0.0) free.push_back(name);
    }
    require(data.size() >= free.size(), "spectrum has fewer points than free parameters", ErrorKind::data);

    CircuitFitResult result;
    result.free_parameters = free;
    LogParamObjective objective(data, guess, free);

    const std::vector<double> x0 = objective.origin();
    // Residual of a model matching every point to about 1e-13 relative; rounding noise lives below it.
    const double floor = 1e-26 * static_cast<double>(data.size());

    Vertex best{x0, objective(x0)};
    if (free.empty() || best.f <= floor) {
        result.params = objective.params(best.x);
        result.residual = best.f;
        result.converged = true;
        result.evaluations = objective.evaluations;
        return result;
    }

    const std::size_t dim = free.size();
    // Standard reflection / expansion / contraction / shrink coefficients.
    constexpr double kReflect = 1.0;
    constexpr double kExpand = 2.0;
    constexpr double kContract = 0.5;
    constexpr double kShrink = 0.5;

    int iterations = 0;
    bool converged = false;
    for (int restart = 0; restart <= options.max_restarts && iterations < options.max_iterations; ++restart) {
        const double start_f = best.f;
        std::vector<Vertex> simplex{best};
        for (std::size_t i = 0; i < dim; ++i) {
            Vertex v = best;
            v.x[i] += options.initial_step;
            v.f = objective(v.x);
            simplex.push_back(std::move(v));
        }
        auto order = [&] {
            std::stable_sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
        };
        order();

        while (iterations < options.max_iterations && !spread_converged(simplex, options.tolerance, floor)) {
            ++iterations;
            std::vector<double> centroid(dim, 0.0);
            for (std::size_t k = 0; k < dim; ++k) {
                for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[k].x[i];
            }
            for (double& c : centroid) c /= static_cast<double>(dim);

            Vertex& worst = simplex.back();
            Vertex reflected{blend(centroid, worst.x, -kReflect), 0.0};
            reflected.f = objective(reflected.x);

            if (reflected.f < simplex.front().f) {
                Vertex expanded{blend(centroid, worst.x, -kExpand), 0.0};
                expanded.f = objective(expanded.x);
                worst = expanded.f < reflected.f ? std::move(expanded) : std::move(reflected);
            } else if (reflected.f < simplex[dim - 1].f) {
                worst = std::move(reflected);
            } else {
                const bool outside = reflected.f < worst.f;
                Vertex contracted{outside ? blend(centroid, reflected.x, kContract) : blend(centroid, worst.x, kContract),
                                  0.0};
                contracted.f = objective(contracted.x);
                if (contracted.f < std::min(worst.f, reflected.f)) {
                    worst = std::move(contracted);
                } else {
                    for (std::size_t k = 1; k <= dim; ++k) {
                        simplex[k].x = blend(simplex.front().x, simplex[k].x, kShrink);
                        simplex[k].f = objective(simplex[k].x);
                    }
                }
            }
            order();
            result.best_history.push_back(simplex.front().f);
        }

        best = simplex.front();
        result.restarts = restart;
        const bool no_gain = start_f - best.f <= options.tolerance * std::abs(start_f) + floor;
        if (spread_converged(simplex, options.tolerance, floor) && no_gain && restart > 0) {
            converged = true;
            break;
        }
        if (best.f <= floor) {
            converged = true;
            break;
        }
    }

    result.params = objective.params(best.x);
    result.residual = best.f;
    result.converged = converged;
    result.iterations = iterations;
    result.evaluations = objective.evaluations;
    return result;
}

}  // namespace eisense
