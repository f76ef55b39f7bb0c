#include "eisense/circuit.hpp"

#include <cmath>
#include <string>

#include "eisense/error.hpp"

namespace eisense {

namespace {

void require_frequency(double f) {
    if (!(std::isfinite(f) && f > 0.0)) {
        fail(ErrorKind::invalid_argument, "frequency must be positive and finite, got " + std::to_string(f));
    }
}

void require_finite(ComplexValue z, const char* what) {
    if (!is_finite(z)) fail(ErrorKind::invalid_argument, std::string(what) + " must have finite components");
}

}  // namespace

bool is_finite(ComplexValue z) noexcept { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void CircuitParams::validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    auto non_negative = [](double v) { return std::isfinite(v) && v >= 0.0; };
    require(positive(r_sol), "r_sol must be > 0");
    require(positive(c_dl), "c_dl must be > 0");
    require(positive(c_sol), "c_sol must be > 0");
    require(non_negative(c_stray), "c_stray must be >= 0");
    require(non_negative(l_stray), "l_stray must be >= 0");
}

ImpedanceSpectrum::ImpedanceSpectrum(std::vector<SpectrumPoint> points) : points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        const char* problem = nullptr;
        if (!(std::isfinite(p.frequency) && p.frequency > 0.0)) problem = "frequency must be positive";
        else if (!is_finite(p.z)) problem = "impedance is not finite";
        else if (i > 0 && !(p.frequency > points_[i - 1].frequency)) problem = "frequencies must be strictly increasing";
        if (problem) fail(ErrorKind::data, "spectrum point " + std::to_string(i) + ": " + problem);
    }
}

std::vector<double> ImpedanceSpectrum::frequencies() const {
    std::vector<double> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.frequency);
    return out;
}

ComplexValue element_impedance(ElementKind kind, double value, double frequency) {
    require_frequency(frequency);
    require(std::isfinite(value), "element value must be finite");
    const double omega = constants::two_pi * frequency;
    switch (kind) {
        case ElementKind::resistor:
            require(value >= 0.0, "resistance must be >= 0");
            return {value, 0.0};
        case ElementKind::capacitor:
            require(value > 0.0, "capacitance must be > 0");
            return {0.0, -1.0 / (omega * value)};
        case ElementKind::inductor:
            require(value >= 0.0, "inductance must be >= 0");
            return {0.0, omega * value};
    }
    fail(ErrorKind::invalid_argument, "unknown element kind");
}

ComplexValue series(ComplexValue a, ComplexValue b) {
    require_finite(a, "series operand");
    require_finite(b, "series operand");
    return a + b;
}

ComplexValue parallel(ComplexValue a, ComplexValue b) {
    require_finite(a, "parallel operand");
    require_finite(b, "parallel operand");
    const ComplexValue sum = a + b;
    if (sum == ComplexValue{0.0, 0.0}) fail(ErrorKind::numerical, "singular parallel combination (a + b = 0)");
    return a * b / sum;
}

ComplexValue cell_impedance(const CircuitParams& p, double frequency) {
    p.validate();
    require_frequency(frequency);
    const double f = frequency;
    using F = CellNetworkFactors;

    const ComplexValue z1{p.r_sol, -1.0 / (F::double_layer * f * p.c_dl)};
    const ComplexValue z2{0.0, -1.0 / (F::solution * f * p.c_sol)};
    ComplexValue z = parallel(z1, z2);
    if (p.c_stray > 0.0) z = parallel(z, ComplexValue{0.0, -1.0 / (F::stray * f * p.c_stray)});
    if (p.l_stray > 0.0) z = series(z, ComplexValue{0.0, F::inductance * f * p.l_stray});
    return z;
}

ImpedanceSpectrum cell_spectrum(const CircuitParams& p, std::span<const double> frequencies) {
    std::vector<SpectrumPoint> pts;
    pts.reserve(frequencies.size());
    for (double f : frequencies) pts.push_back({f, cell_impedance(p, f)});
    return ImpedanceSpectrum(std::move(pts));
}

ParallelCG to_parallel_cg(ComplexValue z, double frequency) {
    require_frequency(frequency);
    require_finite(z, "impedance");
    require(std::abs(z) > 0.0, "zero impedance has no parallel C/G equivalent", ErrorKind::numerical);
    const ComplexValue y = 1.0 / z;
    return {y.imag() / (constants::two_pi * frequency), y.real()};
}

ComplexValue from_parallel_cg(ParallelCG cg, double frequency) {
    require_frequency(frequency);
    const ComplexValue y{cg.conductance, constants::two_pi * frequency * cg.capacitance};
    require(std::abs(y) > 0.0, "zero admittance", ErrorKind::numerical);
    return 1.0 / y;
}

double phase_degrees(ComplexValue z) { return std::arg(z) * 180.0 / constants::pi; }

std::vector<NyquistPoint> nyquist_points(const ImpedanceSpectrum& s) {
    std::vector<NyquistPoint> out;
    out.reserve(s.size());
    for (const auto& p : s.points()) out.push_back({p.z.real(), std::abs(p.z.imag())});
    return out;
}

}  // namespace eisense
