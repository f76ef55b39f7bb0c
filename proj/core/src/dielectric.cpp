#include "eisense/dielectric.hpp"

#include <cmath>

#include "eisense/constants.hpp"
#include "eisense/error.hpp"

namespace eisense {

namespace {

constexpr double kLangevinSeriesCutoff = 1e-4;

void require_temperature(double t) { require(std::isfinite(t) && t > 0.0, "temperature must be > 0 K"); }

double debye_scale(double temperature) {
    return 1.0 / (3.0 * constants::boltzmann * temperature * constants::vacuum_permittivity);
}

}  // namespace

void DielectricSystem::validate() const {
    auto non_negative = [](double v) { return std::isfinite(v) && v >= 0.0; };
    require(non_negative(n_d) && non_negative(n_i) && non_negative(n_i1) && non_negative(n_i2) && non_negative(n_w),
            "dipole densities must be >= 0");
    require(std::isfinite(p_d) && std::isfinite(p_i) && std::isfinite(p_w), "dipole moments must be finite");
    require_temperature(temperature);
    require(non_negative(sigma), "sigma must be >= 0");
    require(std::isfinite(area) && area > 0.0, "electrode area must be > 0");
    require(std::isfinite(gap) && gap > 0.0, "electrode gap must be > 0");
}

double langevin(double gamma) {
    require(std::isfinite(gamma), "langevin argument must be finite");
    if (std::abs(gamma) < kLangevinSeriesCutoff) {
        const double g2 = gamma * gamma;
        return gamma * (1.0 / 3.0 - g2 / 45.0);
    }
    // Extended precision absorbs the cancellation between coth and 1/gamma near the switch.
    const long double g = gamma;
    return static_cast<double>(1.0L / std::tanh(g) - 1.0L / g);
}

double polarization(double n, double p, double e_field, double temperature) {
    require_temperature(temperature);
    require(n >= 0.0 && p >= 0.0, "density and dipole moment must be >= 0");
    const double gamma = p * e_field / (constants::boltzmann * temperature);
    return n * p * langevin(gamma);
}

double relative_permittivity_debye(double n, double p, double temperature) {
    require_temperature(temperature);
    require(n >= 0.0, "density must be >= 0");
    return n * p * p * debye_scale(temperature) + 1.0;
}

double effective_permittivity(const DielectricSystem& sys) {
    sys.validate();
    double sum = sys.n_d * sys.p_d * sys.p_d;
    if (sys.n_i > 0.0) {
        require(sys.n_i2 > 0.0, "n_i2 must be > 0 when ionic dipoles are present (ratio n_i1/n_i2)");
        const double ionic_moment = sys.p_i * (1.0 + sys.n_i1 / sys.n_i2);
        const double screened = ionic_moment - sys.p_w;
        sum += sys.n_i * screened * screened;
        if (sys.n_i > sys.n_d) {
            const double n_prime = sys.n_i + sys.n_w;
            sum += n_prime * ionic_moment * ionic_moment;
        }
    }
    return sum * debye_scale(sys.temperature) + 1.0;
}

ComplexValue complex_permittivity(double eps, double sigma, double frequency) {
    require(std::isfinite(frequency) && frequency > 0.0, "frequency must be > 0");
    require(std::isfinite(sigma) && sigma >= 0.0, "sigma must be >= 0");
    require(std::isfinite(eps), "permittivity must be finite");
    return {eps, -sigma / (constants::two_pi * frequency)};
}

double solution_capacitance(ComplexValue eps_star, double area, double gap) {
    require(std::isfinite(area) && area > 0.0, "electrode area must be > 0");
    require(std::isfinite(gap) && gap > 0.0, "electrode gap must be > 0");
    require(is_finite(eps_star), "permittivity must be finite");
    return std::abs(eps_star) * area / gap;
}

double system_solution_capacitance(const DielectricSystem& sys, double frequency) {
    const double eps = effective_permittivity(sys) * constants::vacuum_permittivity;
    return solution_capacitance(complex_permittivity(eps, sys.sigma, frequency), sys.area, sys.gap);
}

}  // namespace eisense
