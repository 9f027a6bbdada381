#include "notchlab/topologies.hpp"

#include "notchlab/engine.hpp"
#include "notchlab/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace notchlab {

namespace {

constexpr double kQuarterWave = std::numbers::pi / 2.0;

/// Inserts `c` from n1 to n2 with an optional series resistance.
void add_cap_site(Netlist& nl, const std::string& label, NodeId n1, NodeId n2,
                  double c_f, double rs_ohm) {
    if (rs_ohm > 0.0) {
        const NodeId mid = nl.add_node(label + "_rs");
        nl.add_capacitor(label, n1, mid, c_f);
        nl.add_resistor(label + "_r", mid, n2, rs_ohm);
    } else {
        nl.add_capacitor(label, n1, n2, c_f);
    }
}

/// Inserts `l` from n1 to n2, with a series resistance w0*l/q when a
/// quality factor is given.
void add_inductor_site(Netlist& nl, const std::string& label, NodeId n1, NodeId n2,
                       double l_h, const std::optional<double>& q, double f0_hz) {
    if (q && *q > 0.0) {
        const double r = 2.0 * std::numbers::pi * f0_hz * l_h / *q;
        const NodeId mid = nl.add_node(label + "_q");
        nl.add_inductor(label, n1, mid, l_h);
        nl.add_resistor(label + "_r", mid, n2, r);
    } else {
        nl.add_inductor(label, n1, n2, l_h);
    }
}

} // namespace

std::string_view to_string(TopologyId id) {
    switch (id) {
    case TopologyId::notch: return "notch";
    case TopologyId::dualmode: return "dualmode";
    case TopologyId::practical_v1: return "practical_v1";
    case TopologyId::practical_v2: return "practical_v2";
    case TopologyId::practical_v3: return "practical_v3";
    }
    throw error("unknown topology id");
}

TopologyId topology_from_string(std::string_view name) {
    if (name == "notch") return TopologyId::notch;
    if (name == "dualmode") return TopologyId::dualmode;
    if (name == "practical_v1") return TopologyId::practical_v1;
    if (name == "practical_v2") return TopologyId::practical_v2;
    if (name == "practical_v3") return TopologyId::practical_v3;
    throw error("unknown topology '" + std::string(name) +
                "'; expected notch, dualmode or practical_v1..v3");
}

Netlist build_notch(const CoreDesign& core, double f_ref_hz) {
    Netlist nl;
    const NodeId a = nl.add_node("A");
    const NodeId b = nl.add_node("B");
    const NodeId p1 = nl.add_node("P1");
    const NodeId p2 = nl.add_node("P2");

    nl.add_line("TL", a, b, core.zt_ohm, kQuarterWave, f_ref_hz);
    nl.add_capacitor("C1a", a, p1, core.c_f);
    nl.add_inductor("L1a", p1, kGround, core.l_h);
    nl.add_capacitor("C1b", b, p2, core.c_f);
    nl.add_inductor("L1b", p2, kGround, core.l_h);

    // For the supported prototypes the inverter impedance equals the
    // termination impedance, so it doubles as the port reference.
    nl.set_ports({a, core.zt_ohm}, {b, core.zt_ohm});
    return nl;
}

Netlist build_dualmode(const CoupledElements& coupled, const CoreDesign& core,
                       double f_ref_hz) {
    Netlist nl;
    const NodeId a = nl.add_node("A");
    const NodeId b = nl.add_node("B");
    const NodeId p1 = nl.add_node("P1");
    const NodeId p2 = nl.add_node("P2");
    const NodeId x = nl.add_node("X");

    nl.add_line("TL", a, b, core.zt_ohm, kQuarterWave, f_ref_hz);
    nl.add_capacitor("C1a", a, p1, coupled.c1_f);
    nl.add_inductor("L1a", p1, x, coupled.l1_h);
    nl.add_capacitor("C1b", b, p2, coupled.c1_f);
    nl.add_inductor("L1b", p2, x, coupled.l1_h);
    nl.add_inductor("Lm", x, kGround, coupled.lm_h);
    nl.add_capacitor("Cm", a, b, coupled.cm_f);

    nl.set_ports({a, core.zt_ohm}, {b, core.zt_ohm});
    return nl;
}

Netlist build_practical(const SynthesizedDesign& design, TopologyId variant,
                        const LossModel& loss) {
    if (variant != TopologyId::practical_v1 && variant != TopologyId::practical_v2 &&
        variant != TopologyId::practical_v3)
        throw error("build_practical expects one of the practical variants");

    const double f0 = design.spec.f0_hz;
    const double z0 = design.spec.z0_ohm;
    const double rs = loss.varactor_rs_ohm;
    const PracticalElements& pe = design.practical;
    const CoupledElements& ce = design.coupled;
    const CoreDesign& core = design.core;

    Netlist nl;
    const NodeId in = nl.add_node("in");
    const NodeId out = nl.add_node("out");
    const NodeId a = nl.add_node("A");
    const NodeId b = nl.add_node("B");
    const NodeId x = nl.add_node("X");

    // Shared backbone: series caps at the ports around the inverter line,
    // coupling inductor from the branch junction to ground.
    nl.add_capacitor("Cc1", in, a, pe.cc_f);
    nl.add_line("TL", a, b, core.zt_ohm, kQuarterWave, f0);
    nl.add_capacitor("Cc2", b, out, pe.cc_f);
    add_inductor_site(nl, "Lm", x, kGround, ce.lm_h, loss.inductor_q, f0);

    if (variant == TopologyId::practical_v3) {
        add_cap_site(nl, "Ca1", a, kGround, pe.ca_f, rs);
        add_cap_site(nl, "Ca2", b, kGround, pe.ca_f, rs);
        add_inductor_site(nl, "L1a", a, x, ce.l1_h, loss.inductor_q, f0);
        add_inductor_site(nl, "L1b", b, x, ce.l1_h, loss.inductor_q, f0);
        add_cap_site(nl, "Cb", a, b, pe.cb_f, rs);
    } else {
        const NodeId y1 = nl.add_node("Y1");
        const NodeId y2 = nl.add_node("Y2");
        add_inductor_site(nl, "L1a", a, y1, ce.l1_h, loss.inductor_q, f0);
        add_inductor_site(nl, "L1b", b, y2, ce.l1_h, loss.inductor_q, f0);
        add_cap_site(nl, "Ca1", y1, x, pe.ca_f, rs);
        add_cap_site(nl, "Ca2", y2, x, pe.ca_f, rs);
        if (variant == TopologyId::practical_v1)
            add_cap_site(nl, "Cb", a, b, pe.cb_f, rs);
        else
            add_cap_site(nl, "Cb", y1, y2, pe.cb_f, rs);
    }

    nl.set_ports({in, z0}, {out, z0});
    return nl;
}

Netlist build_topology(const SynthesizedDesign& design, TopologyId id, const LossModel& loss) {
    switch (id) {
    case TopologyId::notch:
        return build_notch(design.core, design.spec.f0_hz);
    case TopologyId::dualmode:
        return build_dualmode(design.coupled, design.core, design.spec.f0_hz);
    default:
        return build_practical(design, id, loss);
    }
}

SelectionReport select_topology(const SynthesizedDesign& design,
                                std::span<const TopologyId> candidates) {
    if (candidates.empty())
        throw error("select_topology needs at least one candidate");

    const double f0 = design.spec.f0_hz;
    SelectionReport report;
    bool have_winner = false;
    double best = std::numeric_limits<double>::infinity();

    for (TopologyId id : candidates) {
        TopologyScore entry;
        entry.id = id;
        try {
            const Netlist nl = build_topology(design, id);
            const FrequencyResponse resp = sweep(nl, 0.4 * f0, 1.6 * f0, 801);
            const StopbandMetrics m = analyze(resp);
            entry.metrics = m;
            entry.dual_mode = m.modes_hz.size() >= 2;
            entry.score = std::fabs(m.f_notch_hz - f0) / f0 + std::fabs(m.fbw - design.spec.delta);
            if (!entry.dual_mode)
                entry.note = "no dual-mode splitting";
        } catch (const error& e) {
            entry.dual_mode = false;
            entry.score = std::numeric_limits<double>::infinity();
            entry.note = e.what();
        }

        if (entry.dual_mode && entry.score < best) {
            best = entry.score;
            report.winner = id;
            have_winner = true;
        }
        report.scores.push_back(std::move(entry));
    }

    if (!have_winner)
        throw no_viable_topology_error(
            "no candidate topology shows dual-mode stopband behaviour");
    return report;
}

} // namespace notchlab
