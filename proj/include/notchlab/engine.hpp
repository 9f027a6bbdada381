#pragma once

#include "notchlab/netlist.hpp"

#include <Eigen/Core>

#include <complex>
#include <string>
#include <vector>

namespace notchlab {

/// Lowest supported analysis frequency. Inductor admittances dominate the
/// nodal conditioning towards DC, so sweeps are kept at or above this.
inline constexpr double kMinFrequencyHz = 1e3;

/// Two-port S-parameters sampled over an ascending frequency grid.
struct FrequencyResponse {
    Eigen::ArrayXd freqs_hz;
    Eigen::ArrayXcd s11, s21, s12, s22;
    double z_ref_ohm = 50.0;
    /// Indices whose frequency was nudged off a transmission-line pole.
    std::vector<Eigen::Index> nudged;

    Eigen::Index size() const { return freqs_hz.size(); }
};

/// Uniform grid helper, endpoints included.
Eigen::ArrayXd linear_grid(double fmin_hz, double fmax_hz, int points);

/// Solves the nodal system at a single frequency and returns the 2x2
/// S-matrix (row/column order: port 1, port 2). Both ports must share a
/// real reference impedance. Throws floating_node_error on a singular
/// system and line_resonance_error within the line-pole guard band.
Eigen::Matrix2cd ac_solve(const Netlist& netlist, double f_hz);

/// Sweeps the grid. Points falling on a line pole are nudged up by 1e-6
/// relative, recorded in `nudged`, and the response carries the nudged
/// frequency. The grid must be strictly ascending and >= 1 kHz.
FrequencyResponse sweep(const Netlist& netlist, const Eigen::ArrayXd& grid_hz);

/// Convenience: sweep a uniform grid. A start below 1 kHz is clamped.
FrequencyResponse sweep(const Netlist& netlist, double fmin_hz, double fmax_hz, int points);

struct EquivalenceReport {
    bool equivalent = false;
    double max_deviation = 0.0; ///< max |dS| over grid and matrix entries
    double freq_hz = 0.0;       ///< where the max occurs
    std::string entry;          ///< which S entry deviates most
};

/// Compares two responses on identical grids entry-by-entry.
EquivalenceReport equivalent(const FrequencyResponse& a, const FrequencyResponse& b, double tol);

} // namespace notchlab
