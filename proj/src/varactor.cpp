#include "notchlab/varactor.hpp"

#include "notchlab/errors.hpp"
#include "notchlab/units.hpp"

#include <algorithm>
#include <cmath>

namespace notchlab {

void VaractorModel::validate() const {
    if (!(cj0_f > 0.0))
        throw invalid_spec_error("varactor cj0 must be positive");
    if (!(vj_v > 0.0))
        throw invalid_spec_error("varactor junction potential must be positive");
    if (!(m > 0.0))
        throw invalid_spec_error("varactor grading exponent must be positive");
    if (cp_f < 0.0)
        throw invalid_spec_error("varactor package capacitance cannot be negative");
    if (rs_ohm < 0.0)
        throw invalid_spec_error("varactor series resistance cannot be negative");
    if (!(v_min_v >= 0.0 && v_min_v < v_max_v))
        throw invalid_spec_error("varactor bias range must satisfy 0 <= v_min < v_max");
}

double capacitance(const VaractorModel& model, double v) {
    model.validate();
    if (v < model.v_min_v || v > model.v_max_v)
        throw bias_range_error("bias " + format_quantity(v, "V") + " is outside [" +
                               format_quantity(model.v_min_v, "V") + ", " +
                               format_quantity(model.v_max_v, "V") + "]");
    return model.cj0_f / std::pow(1.0 + v / model.vj_v, model.m) + model.cp_f;
}

double invert(const VaractorModel& model, double c_target_f) {
    model.validate();
    const double c_hi = capacitance(model, model.v_min_v);
    const double c_lo = capacitance(model, model.v_max_v);
    if (c_target_f < c_lo || c_target_f > c_hi)
        throw unreachable_capacitance_error(
            format_quantity(c_target_f, "F") + " is unreachable; this device covers [" +
                format_quantity(c_lo, "F") + ", " + format_quantity(c_hi, "F") + "]",
            c_lo, c_hi);

    // Closed form on the junction term alone.
    const double cj = c_target_f - model.cp_f;
    double v = model.vj_v * (std::pow(model.cj0_f / cj, 1.0 / model.m) - 1.0);

    if (model.cp_f > 0.0) {
        // Refine by bisection; the package term makes the closed form a
        // starting guess rather than the answer when parameters are noisy.
        double lo = model.v_min_v;
        double hi = model.v_max_v;
        for (int i = 0; i < 200 && (hi - lo) > 1e-13 * (1.0 + hi); ++i) {
            const double mid = 0.5 * (lo + hi);
            if (capacitance(model, mid) > c_target_f)
                lo = mid;
            else
                hi = mid;
        }
        v = 0.5 * (lo + hi);
    }

    return std::clamp(v, model.v_min_v, model.v_max_v);
}

AntiSeriesResult anti_series(const VaractorModel& model, double v) {
    return {capacitance(model, v) / 2.0, 2.0 * model.rs_ohm};
}

} // namespace notchlab
