#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "eisense/circuit.hpp"

namespace eisense {

struct SweepConfig {
    double f_start = 100.0;   // hertz
    double f_stop = 5.0e6;    // hertz
    int points = 201;
    double amplitude = 1.0;   // volt peak-to-peak; metadata only, the model is linear
    double noise_rel = 0.0;   // z is scaled by (1 + eta), eta complex Gaussian with this std per part
    std::uint64_t seed = 0;

    void validate() const;
};

/// One row of the virtual LCR meter's output.
struct MeasurementRecord {
    double frequency;    // hertz
    ComplexValue z;      // ohm
    double c_parallel;   // farad
    double g_parallel;   // siemens
    double reactance;    // ohm
    double phase_deg;    // degrees

    /// Recomputes the derived fields from (frequency, z).
    static MeasurementRecord from_impedance(double frequency, ComplexValue z);
};

/// Identifier of the noise stream: 64-bit Mersenne Twister, Box-Muller pairs.
/// Point i of a sweep consumes generator outputs 2i and 2i+1 for Re and Im.
inline constexpr std::string_view kNoiseAlgorithm = "mt19937_64/box-muller/v1";

/// Geometric grid from f_start to f_stop inclusive.
[[nodiscard]] std::vector<double> log_sweep(const SweepConfig& cfg);

/// Standard normal pair for grid position `index` of the stream seeded by `seed`.
[[nodiscard]] std::pair<double, double> noise_pair(std::uint64_t seed, std::size_t index);

[[nodiscard]] std::vector<MeasurementRecord> simulate_sweep(const CircuitParams& p, const SweepConfig& cfg);

[[nodiscard]] ImpedanceSpectrum to_spectrum(const std::vector<MeasurementRecord>& records);

}  // namespace eisense
