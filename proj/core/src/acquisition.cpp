#include "eisense/acquisition.hpp"

#include <cmath>
#include <random>

#include "eisense/constants.hpp"
#include "eisense/error.hpp"

namespace eisense {

namespace {

// Uniform in (0, 1]: 53 random bits, never zero so log() stays finite.
double open_unit(std::uint64_t bits) { return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53; }

std::pair<double, double> box_muller(double u1, double u2) {
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = constants::two_pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace

void SweepConfig::validate() const {
    require(std::isfinite(f_start) && f_start > 0.0, "sweep f_start must be > 0", ErrorKind::config);
    require(std::isfinite(f_stop) && f_stop > f_start, "sweep f_stop must exceed f_start", ErrorKind::config);
    require(points >= 2, "sweep needs at least 2 points", ErrorKind::config);
    require(std::isfinite(noise_rel) && noise_rel >= 0.0, "noise_rel must be >= 0", ErrorKind::config);
}

MeasurementRecord MeasurementRecord::from_impedance(double frequency, ComplexValue z) {
    const ParallelCG cg = to_parallel_cg(z, frequency);
    return {frequency, z, cg.capacitance, cg.conductance, z.imag(), phase_degrees(z)};
}

std::vector<double> log_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const auto n = static_cast<std::size_t>(cfg.points);
    const double log_start = std::log(cfg.f_start);
    const double log_span = std::log(cfg.f_stop) - log_start;
    std::vector<double> out(n);
    out.front() = cfg.f_start;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        out[i] = std::exp(log_start + log_span * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    out.back() = cfg.f_stop;
    return out;
}

std::pair<double, double> noise_pair(std::uint64_t seed, std::size_t index) {
    std::mt19937_64 gen(seed);
    gen.discard(2 * static_cast<unsigned long long>(index));
    const double u1 = open_unit(gen());
    const double u2 = open_unit(gen());
    return box_muller(u1, u2);
}

std::vector<MeasurementRecord> simulate_sweep(const CircuitParams& p, const SweepConfig& cfg) {
    p.validate();
    const std::vector<double> grid = log_sweep(cfg);
    std::vector<MeasurementRecord> out;
    out.reserve(grid.size());

    // Sequential walk over the same stream noise_pair() indexes into.
    std::mt19937_64 gen(cfg.seed);
    for (double f : grid) {
        ComplexValue z = cell_impedance(p, f);
        const double u1 = open_unit(gen());
        const double u2 = open_unit(gen());
        if (cfg.noise_rel > 0.0) {
            const auto [er, ei] = box_muller(u1, u2);
            z *= ComplexValue{1.0 + cfg.noise_rel * er, cfg.noise_rel * ei};
        }
        out.push_back(MeasurementRecord::from_impedance(f, z));
    }
    return out;
}

ImpedanceSpectrum to_spectrum(const std::vector<MeasurementRecord>& records) {
    std::vector<SpectrumPoint> pts;
    pts.reserve(records.size());
    for (const auto& r : records) pts.push_back({r.frequency, r.z});
    return ImpedanceSpectrum(std::move(pts));
}

}  // namespace eisense
