#pragma once

#include "eisense/circuit.hpp"

namespace eisense {

/// Dipole populations and cell geometry of a polar solute / ionic adulterant solution.
/// Densities are per cubic metre, dipole moments in C*m.
struct DielectricSystem {
    double n_d = 0.0;    // polar solute dipole density
    double p_d = 0.0;    // polar solute dipole moment
    double n_i = 0.0;    // ionic dipole density
    double p_i = 0.0;    // ionic dipole moment
    double p_w = 0.0;    // water dipole moment
    double n_i1 = 0.0;   // first of two consecutive ionic densities
    double n_i2 = 0.0;   // second of two consecutive ionic densities
    double n_w = 0.0;    // water dipole density
    double temperature = 298.15;  // kelvin
    double sigma = 0.0;  // bulk conductivity, S/m
    double area = 1.0;   // electrode area, m^2
    double gap = 1.0;    // electrode spacing, m

    void validate() const;
};

/// coth(x) - 1/x, with the series x/3 - x^3/45 below |x| = 1e-4.
[[nodiscard]] double langevin(double gamma);

/// Orientational polarization n*p*L(pE/kT), C/m^2.
[[nodiscard]] double polarization(double n, double p, double e_field, double temperature);

/// Small-field relative permittivity n*p^2/(3 k T eps0) + 1.
[[nodiscard]] double relative_permittivity_debye(double n, double p, double temperature);

/// Effective relative permittivity of the mixture.
///
/// For n_i <= n_d the polar solute and the water-screened ionic dipoles contribute.
/// For n_i > n_d an extra ionic term weighted by n_i + n_w is added. The extra term's
/// consecutive-density ratio is taken equal to n_i1/n_i2.
[[nodiscard]] double effective_permittivity(const DielectricSystem& sys);

/// eps - j*sigma/(2 pi f), F/m.
[[nodiscard]] ComplexValue complex_permittivity(double eps, double sigma, double frequency);

/// |eps*| * area / gap, farad.
[[nodiscard]] double solution_capacitance(ComplexValue eps_star, double area, double gap);

/// Convenience: C_sol of the system at frequency f.
[[nodiscard]] double system_solution_capacitance(const DielectricSystem& sys, double frequency);

}  // namespace eisense
