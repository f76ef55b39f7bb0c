#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "eisense/circuit.hpp"

namespace eisense {

/// Names accepted in the `fixed` set: r_sol, c_dl, c_sol, c_stray, l_stray.
[[nodiscard]] const std::vector<std::string>& circuit_param_names();

[[nodiscard]] double get_param(const CircuitParams& p, std::string_view name);
void set_param(CircuitParams& p, std::string_view name, double value);

struct CircuitFitOptions {
    int max_iterations = 10'000;
    double tolerance = 1e-12;     // relative spread of the simplex residuals
    double initial_step = 0.3;    // simplex edge in natural-log parameter units
    int max_restarts = 20;
};

struct CircuitFitResult {
    CircuitParams params;
    double residual = 0.0;  // sum |Z_model - Z_data|^2 / |Z_data|^2
    bool converged = false;
    int iterations = 0;
    int evaluations = 0;
    int restarts = 0;
    std::vector<std::string> free_parameters;
    std::vector<double> best_history;  // best residual after each iteration
};

/// Modulus-weighted squared residual of `p` against the data.
[[nodiscard]] double circuit_residual(const CircuitParams& p, const ImpedanceSpectrum& data);

/// Fits the cell network to a measured spectrum by Nelder-Mead descent over the
/// logarithms of the free parameters, restarting the simplex around the incumbent
/// until a restart brings no further improvement.
///
/// Parameters named in `fixed` keep their guess value. A c_stray or l_stray of zero
/// in the guess means the element is absent and is held at zero.
/// A fit that hits the iteration cap is returned with converged = false.
[[nodiscard]] CircuitFitResult estimate_circuit_params(const ImpedanceSpectrum& data, const CircuitParams& guess,
                                                       const std::set<std::string>& fixed = {},
                                                       const CircuitFitOptions& options = {});

}  // namespace eisense
