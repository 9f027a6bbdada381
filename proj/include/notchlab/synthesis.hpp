#pragma once

#include <vector>

namespace notchlab {

enum class PrototypeKind { butterworth };

/// User-facing design targets for a second-order bandstop filter.
/// All quantities are SI (Hz, ohm, farad); engineering-notation parsing
/// happens only at the CLI boundary.
struct FilterSpec {
    double f0_hz = 0.0;   ///< center frequency
    double delta = 0.0;   ///< fractional bandwidth, 0 < delta < 1
    int order = 2;        ///< prototype order (this release supports 2)
    double z0_ohm = 50.0; ///< termination impedance
    double cc_f = 0.0;    ///< chosen series capacitor
    PrototypeKind prototype = PrototypeKind::butterworth;

    /// Throws invalid_spec_error when any field is out of range.
    void validate() const;
};

/// Lowpass prototype coefficients g0..g(n+1).
struct PrototypeCoefficients {
    std::vector<double> g;

    int order() const { return static_cast<int>(g.size()) - 2; }
};

/// Inverter impedance plus the series-resonator element values.
struct CoreDesign {
    double zt_ohm = 0.0; ///< inverter line impedance
    double l_h = 0.0;    ///< resonator inductance
    double c_f = 0.0;    ///< resonator capacitance
    double k = 0.0;      ///< normalized inter-resonator coupling coefficient
    double dk = 0.0;     ///< bandwidth-scaled coupling, delta * k
};

/// The coupled form: each resonator element split into a branch part and
/// a shared coupling part.
struct CoupledElements {
    double lm_h = 0.0; ///< common coupling inductance
    double l1_h = 0.0; ///< per-branch inductance
    double cm_f = 0.0; ///< bridging coupling capacitance
    double c1_f = 0.0; ///< per-branch capacitance
};

/// Varactor-realizable capacitor set obtained by pulling a practical
/// series capacitor out of each branch and re-expressing the remaining
/// three-capacitor tee as a pi.
struct PracticalElements {
    double ca_f = 0.0; ///< pi shunt capacitance (varactor site)
    double cb_f = 0.0; ///< pi bridge capacitance (varactor site)
    double ck_f = 0.0; ///< intermediate tee series arm
    double cj_f = 0.0; ///< intermediate tee shunt leg
    double cc_f = 0.0; ///< the chosen series capacitor
};

struct SynthesizedDesign {
    FilterSpec spec;
    PrototypeCoefficients g;
    CoreDesign core;
    CoupledElements coupled;
    PracticalElements practical;
};

/// Butterworth lowpass prototype coefficients:
/// g0 = g(n+1) = 1, gi = 2 sin((2i-1) pi / (2n)).
PrototypeCoefficients butterworth_g(int order);

/// Inverter impedance and resonator L, C from the prototype coefficients,
/// center frequency and fractional bandwidth. Fixed to order 2.
CoreDesign synth_core(const FilterSpec& spec, const PrototypeCoefficients& g);

/// Splits the resonator elements into branch and coupling parts:
/// lm = dk*l, l1 = (1-dk)*l, cm = dk*c, c1 = (1-dk)*c.
CoupledElements split_coupled(const CoreDesign& core);

/// Smallest series capacitor for which the practical transformation is
/// feasible: (1+dk)*c.
double min_feasible_cc(const CoreDesign& core);

/// Derives the varactor-realizable capacitor set for a chosen series
/// capacitor. Throws cc_too_small_error (carrying the threshold) when
/// cc <= (1+dk)*c.
PracticalElements practical_caps(const CoreDesign& core, double cc_f);

struct TeeCaps {
    double ck_f = 0.0; ///< series arms
    double cj_f = 0.0; ///< shunt leg
};

struct PiCaps {
    double ca_f = 0.0; ///< shunt legs
    double cb_f = 0.0; ///< bridge
};

/// Exact delta-star transform for a symmetric capacitive pi
/// {ca shunt, cb bridge, ca shunt}: ck = ca + 2 cb, cj = ca (ca + 2 cb) / cb.
TeeCaps pi_to_tee_caps(double ca_f, double cb_f);

/// Inverse transform for a symmetric capacitive tee {ck, cj, ck}:
/// ca = ck cj / (2 ck + cj), cb = ck^2 / (2 ck + cj).
PiCaps tee_to_pi_caps(double ck_f, double cj_f);

/// Runs the full synthesis chain. Pure: identical specs give identical
/// results.
SynthesizedDesign synthesize(const FilterSpec& spec);

} // namespace notchlab
