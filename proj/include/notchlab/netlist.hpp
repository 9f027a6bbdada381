#pragma once

#include <string>
#include <variant>
#include <vector>

namespace notchlab {

/// Node handle. Ground is the fixed id -1; real nodes are 0-based.
using NodeId = int;
inline constexpr NodeId kGround = -1;

struct Resistor {
    NodeId n1, n2;
    double r_ohm;
};

struct Capacitor {
    NodeId n1, n2;
    double c_f;
};

struct Inductor {
    NodeId n1, n2;
    double l_h;
};

/// Two magnetically coupled inductors sharing their second terminal
/// (`common`), so the pair has an exact tee model {la-m, m, lb-m} hanging
/// from that terminal. |m| < sqrt(la*lb).
struct CoupledInductorPair {
    NodeId a, b, common;
    double la_h, lb_h, m_h;
};

/// Ideal lossless line; electrical length scales linearly with frequency:
/// theta(f) = theta_ref * f / f_ref.
struct TransmissionLine {
    NodeId n1, n2;
    double z_ohm;
    double theta_ref_rad;
    double f_ref_hz;
};

using ElementBody =
    std::variant<Resistor, Capacitor, Inductor, CoupledInductorPair, TransmissionLine>;

struct Element {
    std::string label;
    ElementBody body;
};

struct Port {
    NodeId node = kGround;
    double z_ref_ohm = 50.0;
};

/// A two-port node/element graph. Immutable once built and validated;
/// the AC engine never mutates it, so concurrent sweeps are safe.
class Netlist {
public:
    /// Adds (or looks up) a named node.
    NodeId add_node(const std::string& name);

    /// Looks up an existing node; throws netlist_error when unknown.
    NodeId node(const std::string& name) const;

    const std::string& node_name(NodeId id) const;
    int node_count() const { return static_cast<int>(node_names_.size()); }

    void add_resistor(std::string label, NodeId n1, NodeId n2, double r_ohm);
    void add_capacitor(std::string label, NodeId n1, NodeId n2, double c_f);
    void add_inductor(std::string label, NodeId n1, NodeId n2, double l_h);
    void add_coupled_pair(std::string label, NodeId a, NodeId b, NodeId common,
                          double la_h, double lb_h, double m_h);
    void add_line(std::string label, NodeId n1, NodeId n2, double z_ohm,
                  double theta_ref_rad, double f_ref_hz);

    void set_ports(Port p1, Port p2);

    const std::vector<Element>& elements() const { return elements_; }
    const Port& port(int index) const;

    /// Structural checks: two ports, unique nodes referenced by elements,
    /// and every node (ports in particular) connected to ground through
    /// the element graph. Throws netlist_error / floating_node_error.
    void validate() const;

private:
    void check_node(NodeId id) const;

    std::vector<std::string> node_names_;
    std::vector<Element> elements_;
    std::vector<Port> ports_;
};

} // namespace notchlab
