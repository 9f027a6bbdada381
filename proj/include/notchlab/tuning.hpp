#pragma once

#include "notchlab/metrics.hpp"
#include "notchlab/synthesis.hpp"
#include "notchlab/topologies.hpp"
#include "notchlab/varactor.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace notchlab {

/// What calibration aims for: a center frequency and a fractional
/// bandwidth, the latter weighted into the scalar objective.
struct CalibrationTarget {
    double f0_target_hz = 0.0;
    double fbw_target = 0.0;
    double weight_fbw = 0.25;
};

/// Box bounds for the two tunable capacitances.
struct CapBounds {
    double ca_min_f = 0.0;
    double ca_max_f = 0.0;
    double cb_min_f = 0.0;
    double cb_max_f = 0.0;

    /// Symmetric multiplicative bounds around a starting pair.
    static CapBounds around(double ca_f, double cb_f, double down = 0.1, double up = 4.0);
};

struct CalibrationResult {
    double ca_f = 0.0;
    double cb_f = 0.0;
    StopbandMetrics metrics;
    double objective = 0.0;
    int evals = 0;
    bool converged = false;
};

/// Adjusts (ca, cb) by bounded simplex search to minimize
///   ((f_notch - f0)/f0)^2 + weight_fbw ((fbw - target)/target)^2,
/// starting from the design's own practical values. Deterministic.
/// Throws calibration_infeasible_error when no probed point produces a
/// stopband.
CalibrationResult calibrate(const SynthesizedDesign& design, TopologyId topology,
                            const CalibrationTarget& target, const CapBounds& bounds,
                            const LossModel& loss = {});

enum class CbRule {
    fixed,        ///< keep the design's cb at every grid point
    recalibrated, ///< re-fit cb per point to hold the fractional bandwidth
};

/// One tuning-curve row. `metrics` is empty for grid points where the
/// response shows no stopband; such rows are kept, not dropped.
struct TuningRow {
    double control = 0.0; ///< ca in farad, or the site-1 bias in volt
    double ca_f = 0.0;
    double cb_f = 0.0;
    std::optional<StopbandMetrics> metrics;
    std::string note;
};

struct TuningCurve {
    std::vector<TuningRow> rows;
};

/// Sweeps ca over a monotone grid, resolving cb per the rule, and records
/// metrics per point.
TuningCurve tuning_curve_caps(const SynthesizedDesign& design, TopologyId topology,
                              std::span<const double> ca_grid_f, CbRule rule,
                              const LossModel& loss = {});

/// Maps bias points through a varactor model (plain device at the shunt
/// sites, anti-series pair at the bridge sites), then simulates each row.
/// The model's series resistance is applied at every varactor site.
TuningCurve tuning_curve_bias(const SynthesizedDesign& design, TopologyId topology,
                              const VaractorModel& model, std::span<const BiasPoint> bias_grid);

/// Exact CSV header of exported tuning curves.
inline constexpr std::string_view kTuningCsvHeader =
    "control,ca_f,cb_f,f_notch_hz,rejection_db,fbw,pb_il_db,sb_rl_db";

/// Writes one row per grid point; rows without a stopband keep their
/// control/capacitance columns and carry nan metric fields.
void write_tuning_csv(const TuningCurve& curve, std::ostream& out);

} // namespace notchlab
