#pragma once

#include <complex>
#include <span>
#include <vector>

#include "eisense/constants.hpp"

namespace eisense {

/// Complex value in the units of its context (ohm for impedance, F/m for permittivity).
using ComplexValue = std::complex<double>;

[[nodiscard]] bool is_finite(ComplexValue z) noexcept;

enum class ElementKind { resistor, capacitor, inductor };

/// Element values of the conductivity-cell network: R_sol in series with the
/// double-layer capacitance, shunted by C_sol, shunted by C_stray, then L_stray in series.
/// A zero c_stray or l_stray removes that element from the network.
struct CircuitParams {
    double r_sol = 0.0;    // ohm
    double c_dl = 0.0;     // farad
    double c_sol = 0.0;    // farad
    double c_stray = 0.0;  // farad
    double l_stray = 0.0;  // henry

    void validate() const;

    friend bool operator==(const CircuitParams&, const CircuitParams&) = default;
};

/// Angular factor multiplying f*C (or f*L) for each element of the cell network.
/// The double-layer and stray terms carry pi rather than 2*pi. For the double layer
/// this is two electrode capacitors in series; the stray branch behaves as a
/// capacitance of C_stray/2.
struct CellNetworkFactors {
    static constexpr double double_layer = constants::pi;
    static constexpr double solution = constants::two_pi;
    static constexpr double stray = constants::pi;
    static constexpr double inductance = constants::two_pi;
};

struct SpectrumPoint {
    double frequency;  // hertz
    ComplexValue z;    // ohm

    friend bool operator==(const SpectrumPoint&, const SpectrumPoint&) = default;
};

/// Frequency-indexed complex impedance. Frequencies are strictly increasing and positive.
class ImpedanceSpectrum {
public:
    ImpedanceSpectrum() = default;
    explicit ImpedanceSpectrum(std::vector<SpectrumPoint> points);

    [[nodiscard]] std::span<const SpectrumPoint> points() const noexcept { return points_; }
    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] bool empty() const noexcept { return points_.empty(); }
    [[nodiscard]] const SpectrumPoint& operator[](std::size_t i) const { return points_[i]; }

    [[nodiscard]] std::vector<double> frequencies() const;

    friend bool operator==(const ImpedanceSpectrum&, const ImpedanceSpectrum&) = default;

private:
    std::vector<SpectrumPoint> points_;
};

[[nodiscard]] ComplexValue element_impedance(ElementKind kind, double value, double frequency);

[[nodiscard]] ComplexValue series(ComplexValue a, ComplexValue b);

/// a*b/(a+b). Throws a numerical error when a + b == 0.
[[nodiscard]] ComplexValue parallel(ComplexValue a, ComplexValue b);

[[nodiscard]] ComplexValue cell_impedance(const CircuitParams& p, double frequency);

[[nodiscard]] ImpedanceSpectrum cell_spectrum(const CircuitParams& p, std::span<const double> frequencies);

/// Parallel-mode equivalent of an impedance, as an LCR meter reports it.
struct ParallelCG {
    double capacitance;  // farad
    double conductance;  // siemens
};

[[nodiscard]] ParallelCG to_parallel_cg(ComplexValue z, double frequency);

/// Inverse of to_parallel_cg: the impedance of C and G in parallel.
[[nodiscard]] ComplexValue from_parallel_cg(ParallelCG cg, double frequency);

/// Argument of z in degrees.
[[nodiscard]] double phase_degrees(ComplexValue z);

struct NyquistPoint {
    double re;      // ohm
    double abs_im;  // ohm
};

[[nodiscard]] std::vector<NyquistPoint> nyquist_points(const ImpedanceSpectrum& s);

}  // namespace eisense
