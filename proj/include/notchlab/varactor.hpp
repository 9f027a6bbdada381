#pragma once

namespace notchlab {

/// Reverse-biased junction varactor: c(v) = cj0 / (1 + v/vj)^m + cp, with a
/// series resistance. Parameters come from device profiles; the library
/// ships only a clearly non-authoritative placeholder.
struct VaractorModel {
    double cj0_f = 0.0;  ///< zero-bias junction capacitance
    double vj_v = 0.7;   ///< junction potential
    double m = 0.5;      ///< grading exponent
    double cp_f = 0.0;   ///< package parallel capacitance
    double rs_ohm = 0.0; ///< series resistance
    double v_min_v = 0.0;
    double v_max_v = 30.0;

    void validate() const; ///< throws invalid_spec_error on bad parameters
};

/// Bias voltages for the two varactor sites.
struct BiasPoint {
    double v1_v = 0.0; ///< shunt-site bias
    double v2_v = 0.0; ///< bridge-site bias
};

/// Junction capacitance at reverse bias v. Throws bias_range_error outside
/// [v_min, v_max].
double capacitance(const VaractorModel& model, double v);

/// Bias voltage delivering a target capacitance; inverse of capacitance()
/// to 1e-9 relative. Throws unreachable_capacitance_error (carrying the
/// reachable range) when no bias works.
double invert(const VaractorModel& model, double c_target_f);

struct AntiSeriesResult {
    double c_eff_f = 0.0;
    double rs_eff_ohm = 0.0;
};

/// Two identical devices in series at equal bias: half the capacitance,
/// twice the series resistance.
AntiSeriesResult anti_series(const VaractorModel& model, double v);

} // namespace notchlab
