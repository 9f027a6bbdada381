#pragma once

#include "notchlab/metrics.hpp"
#include "notchlab/netlist.hpp"
#include "notchlab/synthesis.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace notchlab {

/// The buildable circuit topologies. The practical variants differ only in
/// where the varactor-site capacitors attach; hardware layouts leave that
/// wiring ambiguous, so all three ship and an empirical selector decides.
enum class TopologyId {
    notch,        ///< two uncoupled notch branches around the inverter line
    dualmode,     ///< coupled form: shared coupling inductor + bridge capacitor
    practical_v1, ///< series caps at the ports; cb bridges the line nodes
    practical_v2, ///< as v1 with cb bridging the internal branch nodes
    practical_v3, ///< ca shunted straight to ground at the line nodes
};

std::string_view to_string(TopologyId id);
TopologyId topology_from_string(std::string_view name);

/// Simple loss decorations: a series resistance at every varactor site and
/// an optional inductor quality factor applied as a frequency-independent
/// series resistance w0*L/Q.
struct LossModel {
    double varactor_rs_ohm = 0.0;
    std::optional<double> inductor_q;
};

/// Uncoupled notch filter: series-LC branches to ground at both ends of a
/// quarter-wave inverter line.
Netlist build_notch(const CoreDesign& core, double f_ref_hz);

/// Coupled (dual-mode) form: branch capacitors above branch inductors that
/// join at a shared node carrying the coupling inductor, plus a coupling
/// capacitor bridging the line nodes.
Netlist build_dualmode(const CoupledElements& coupled, const CoreDesign& core, double f_ref_hz);

/// Varactor-ready form with series capacitors next to the ports. The
/// variant picks the capacitor placement; loss decorations are optional.
Netlist build_practical(const SynthesizedDesign& design, TopologyId variant,
                        const LossModel& loss = {});

/// Dispatches on any TopologyId (loss applies to practical variants only).
Netlist build_topology(const SynthesizedDesign& design, TopologyId id,
                       const LossModel& loss = {});

struct TopologyScore {
    TopologyId id = TopologyId::practical_v1;
    bool dual_mode = false; ///< two or more deep minima observed
    double score = 0.0;     ///< |f_notch-f0|/f0 + |fbw-delta|; lower is better
    std::optional<StopbandMetrics> metrics;
    std::string note;
};

struct SelectionReport {
    TopologyId winner = TopologyId::practical_v1;
    std::vector<TopologyScore> scores;
};

/// Simulates every candidate and keeps the best-scoring one that shows
/// dual-mode splitting. Throws no_viable_topology_error when none does.
SelectionReport select_topology(const SynthesizedDesign& design,
                                std::span<const TopologyId> candidates);

} // namespace notchlab
