#pragma once

#include "notchlab/engine.hpp"

#include <string>
#include <vector>

namespace notchlab {

/// Stopband figures of merit extracted from a swept response.
struct StopbandMetrics {
    double f_notch_hz = 0.0;   ///< frequency of minimum |S21| (refined)
    double rejection_db = 0.0; ///< -20 log10 |S21| at the notch
    double f_lo_hz = 0.0;      ///< lower -3 dB stopband edge
    double f_hi_hz = 0.0;      ///< upper -3 dB stopband edge
    double fbw = 0.0;          ///< (f_hi - f_lo) / f_notch
    double pb_il_db = 0.0;     ///< worst passband insertion loss
    double sb_rl_db = 0.0;     ///< stopband return loss at the notch
    std::vector<double> modes_hz; ///< deep |S21| minima (mode frequencies)
};

struct AnalyzeOptions {
    /// Passband regions start this far (fractionally) outside the -3 dB edges.
    double passband_margin = 0.2;
    /// |S21| minima deeper than this below 0 dB count as modes.
    double mode_threshold_db = 20.0;
};

/// Extracts stopband metrics. The notch is the grid argmin of |S21|
/// refined by a three-point parabola on the dB magnitude; edges are linear
/// interpolations of the nearest -3 dB crossings bracketing the notch.
/// Throws no_stopband_error when nothing reaches -3 dB and
/// sweep_too_narrow_error when edges or passbands fall off the grid.
StopbandMetrics analyze(const FrequencyResponse& resp, const AnalyzeOptions& options = {});

/// Per-field tolerances for metric comparison. Frequencies compare
/// relatively; dB quantities and the fractional bandwidth absolutely.
struct MetricsTolerances {
    double f_notch_rel = 0.01;
    double edges_rel = 0.02;
    double fbw_abs = 0.02;
    double rejection_db_abs = 3.0;
    double pb_il_db_abs = 0.5;
    double sb_rl_db_abs = 0.5;
};

struct FieldComparison {
    std::string field;
    double a = 0.0;
    double b = 0.0;
    double deviation = 0.0; ///< relative or absolute per the field's rule
    double tolerance = 0.0;
    bool pass = false;
};

/// Compares the scalar fields of two metric sets; each compared field
/// appears exactly once in the report. Mode lists are not compared.
std::vector<FieldComparison> compare(const StopbandMetrics& a, const StopbandMetrics& b,
                                     const MetricsTolerances& tol = {});

} // namespace notchlab
