#include "notchlab/synthesis.hpp"

#include "notchlab/errors.hpp"
#include "notchlab/units.hpp"

#include <cmath>
#include <numbers>

namespace notchlab {

void FilterSpec::validate() const {
    if (!(f0_hz > 0.0))
        throw invalid_spec_error("center frequency must be positive");
    if (!(delta > 0.0 && delta < 1.0))
        throw invalid_spec_error("fractional bandwidth must be in (0, 1)");
    if (order < 2)
        throw invalid_spec_error("prototype order must be at least 2");
    if (!(z0_ohm > 0.0))
        throw invalid_spec_error("termination impedance must be positive");
    if (!(cc_f > 0.0))
        throw invalid_spec_error("series capacitor must be positive");
}

PrototypeCoefficients butterworth_g(int order) {
    if (order < 1)
        throw invalid_spec_error("prototype order must be at least 1");

    PrototypeCoefficients coeffs;
    coeffs.g.resize(static_cast<size_t>(order) + 2);
    coeffs.g.front() = 1.0;
    coeffs.g.back() = 1.0;
    for (int i = 1; i <= order; ++i) {
        const double arg = (2.0 * i - 1.0) * std::numbers::pi / (2.0 * order);
        coeffs.g[static_cast<size_t>(i)] = 2.0 * std::sin(arg);
    }
    return coeffs;
}

CoreDesign synth_core(const FilterSpec& spec, const PrototypeCoefficients& g) {
    spec.validate();
    if (spec.order != 2 || g.order() != 2)
        throw unsupported_order_error(
            "only order-2 synthesis is supported; the coupled circuit has exactly two resonators");

    const double g0 = g.g[0];
    const double g1 = g.g[1];
    const double g2 = g.g[2];
    const double g3 = g.g[3];
    const double w0 = 2.0 * std::numbers::pi * spec.f0_hz;

    CoreDesign core;
    core.zt_ohm = spec.z0_ohm / std::sqrt(g0 * g3);
    core.l_h = spec.z0_ohm / (spec.delta * w0 * std::sqrt(g1 * g2));
    core.c_f = 1.0 / (w0 * w0 * core.l_h);
    core.k = 1.0 / std::sqrt(g1 * g2);
    core.dk = spec.delta * core.k;
    return core;
}

CoupledElements split_coupled(const CoreDesign& core) {
    if (core.dk >= 1.0)
        throw infeasible_coupling_error("coupling dk >= 1 leaves no branch inductance");
    if (core.dk <= 0.0)
        throw degenerate_coupling_error("coupling dk <= 0: coupling elements vanish");

    CoupledElements coupled;
    coupled.lm_h = core.dk * core.l_h;
    coupled.l1_h = (1.0 - core.dk) * core.l_h;
    coupled.cm_f = core.dk * core.c_f;
    coupled.c1_f = (1.0 - core.dk) * core.c_f;
    return coupled;
}

double min_feasible_cc(const CoreDesign& core) {
    return (1.0 + core.dk) * core.c_f;
}

PracticalElements practical_caps(const CoreDesign& core, double cc_f) {
    if (core.dk <= 0.0)
        throw degenerate_coupling_error("coupling dk <= 0: tee shunt leg is unbounded");

    const double threshold = min_feasible_cc(core);
    if (cc_f <= threshold)
        throw cc_too_small_error(
            "series capacitor " + format_quantity(cc_f, "F") +
                " is infeasible; it must exceed " + format_quantity(threshold, "F"),
            threshold);

    PracticalElements out;
    out.cc_f = cc_f;
    out.ck_f = threshold * cc_f / (cc_f - threshold);
    out.cj_f = (1.0 - core.dk * core.dk) * core.c_f / core.dk;
    const PiCaps pi = tee_to_pi_caps(out.ck_f, out.cj_f);
    out.ca_f = pi.ca_f;
    out.cb_f = pi.cb_f;
    return out;
}

TeeCaps pi_to_tee_caps(double ca_f, double cb_f) {
    if (!(ca_f > 0.0))
        throw invalid_spec_error("pi shunt capacitance must be positive");
    if (!(cb_f > 0.0))
        throw degenerate_network_error(
            "pi bridge capacitance is zero: the shunt legs decouple and no tee form exists");

    TeeCaps tee;
    tee.ck_f = ca_f + 2.0 * cb_f;
    tee.cj_f = ca_f * (ca_f + 2.0 * cb_f) / cb_f;
    return tee;
}

PiCaps tee_to_pi_caps(double ck_f, double cj_f) {
    if (!(ck_f > 0.0) || !(cj_f > 0.0))
        throw invalid_spec_error("tee capacitances must be positive");

    PiCaps pi;
    pi.ca_f = ck_f * cj_f / (2.0 * ck_f + cj_f);
    pi.cb_f = ck_f * ck_f / (2.0 * ck_f + cj_f);
    return pi;
}

SynthesizedDesign synthesize(const FilterSpec& spec) {
    spec.validate();

    SynthesizedDesign design;
    design.spec = spec;
    design.g = butterworth_g(spec.order);
    design.core = synth_core(spec, design.g);
    design.coupled = split_coupled(design.core);
    design.practical = practical_caps(design.core, spec.cc_f);
    return design;
}

} // namespace notchlab
