#include "notchlab/netlist.hpp"

#include "notchlab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace notchlab {

namespace {

const std::string kGroundName = "gnd";

} // namespace

NodeId Netlist::add_node(const std::string& name) {
    if (name == kGroundName || name == "0")
        return kGround;
    auto it = std::find(node_names_.begin(), node_names_.end(), name);
    if (it != node_names_.end())
        return static_cast<NodeId>(it - node_names_.begin());
    node_names_.push_back(name);
    return static_cast<NodeId>(node_names_.size()) - 1;
}

NodeId Netlist::node(const std::string& name) const {
    if (name == kGroundName || name == "0")
        return kGround;
    auto it = std::find(node_names_.begin(), node_names_.end(), name);
    if (it == node_names_.end())
        throw netlist_error("unknown node '" + name + "'");
    return static_cast<NodeId>(it - node_names_.begin());
}

const std::string& Netlist::node_name(NodeId id) const {
    if (id == kGround)
        return kGroundName;
    if (id < 0 || id >= node_count())
        throw netlist_error("node id out of range");
    return node_names_[static_cast<size_t>(id)];
}

void Netlist::check_node(NodeId id) const {
    if (id != kGround && (id < 0 || id >= node_count()))
        throw netlist_error("element references an unknown node id");
}

void Netlist::add_resistor(std::string label, NodeId n1, NodeId n2, double r_ohm) {
    check_node(n1);
    check_node(n2);
    if (!(r_ohm > 0.0))
        throw netlist_error("resistor '" + label + "' must have positive resistance");
    elements_.push_back({std::move(label), Resistor{n1, n2, r_ohm}});
}

void Netlist::add_capacitor(std::string label, NodeId n1, NodeId n2, double c_f) {
    check_node(n1);
    check_node(n2);
    if (!(c_f > 0.0))
        throw netlist_error("capacitor '" + label + "' must have positive capacitance");
    elements_.push_back({std::move(label), Capacitor{n1, n2, c_f}});
}

void Netlist::add_inductor(std::string label, NodeId n1, NodeId n2, double l_h) {
    check_node(n1);
    check_node(n2);
    if (!(l_h > 0.0))
        throw netlist_error("inductor '" + label + "' must have positive inductance");
    elements_.push_back({std::move(label), Inductor{n1, n2, l_h}});
}

void Netlist::add_coupled_pair(std::string label, NodeId a, NodeId b, NodeId common,
                               double la_h, double lb_h, double m_h) {
    check_node(a);
    check_node(b);
    check_node(common);
    if (!(la_h > 0.0) || !(lb_h > 0.0))
        throw netlist_error("coupled pair '" + label + "' must have positive inductances");
    if (!(std::fabs(m_h) < std::sqrt(la_h * lb_h)))
        throw netlist_error("coupled pair '" + label + "': |M| must be below sqrt(La*Lb)");
    elements_.push_back({std::move(label), CoupledInductorPair{a, b, common, la_h, lb_h, m_h}});
}

void Netlist::add_line(std::string label, NodeId n1, NodeId n2, double z_ohm,
                       double theta_ref_rad, double f_ref_hz) {
    check_node(n1);
    check_node(n2);
    if (!(z_ohm > 0.0))
        throw netlist_error("line '" + label + "' must have positive impedance");
    if (!(theta_ref_rad > 0.0))
        throw netlist_error("line '" + label + "' must have positive electrical length");
    if (!(f_ref_hz > 0.0))
        throw netlist_error("line '" + label + "' must have a positive reference frequency");
    elements_.push_back({std::move(label), TransmissionLine{n1, n2, z_ohm, theta_ref_rad, f_ref_hz}});
}

void Netlist::set_ports(Port p1, Port p2) {
    check_node(p1.node);
    check_node(p2.node);
    if (p1.node == kGround || p2.node == kGround)
        throw netlist_error("a port cannot sit on the ground node");
    if (p1.node == p2.node)
        throw netlist_error("the two ports must sit on distinct nodes");
    if (!(p1.z_ref_ohm > 0.0) || !(p2.z_ref_ohm > 0.0))
        throw netlist_error("port reference impedances must be positive");
    ports_ = {p1, p2};
}

const Port& Netlist::port(int index) const {
    if (index < 0 || index >= static_cast<int>(ports_.size()))
        throw netlist_error("port index out of range");
    return ports_[static_cast<size_t>(index)];
}

void Netlist::validate() const {
    if (ports_.size() != 2)
        throw netlist_error("a netlist needs exactly two ports");

    // Union-find over {ground, nodes}; every node must reach ground through
    // elements, otherwise its nodal equations are singular.
    const int n = node_count();
    std::vector<int> parent(static_cast<size_t>(n) + 1);
    for (size_t i = 0; i < parent.size(); ++i)
        parent[i] = static_cast<int>(i);

    auto find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] =
                parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    auto unite = [&](NodeId a, NodeId b) {
        const int ra = find(a + 1);
        const int rb = find(b + 1);
        if (ra != rb)
            parent[static_cast<size_t>(ra)] = rb;
    };

    for (const auto& el : elements_) {
        std::visit(
            [&](const auto& body) {
                using T = std::decay_t<decltype(body)>;
                if constexpr (std::is_same_v<T, CoupledInductorPair>) {
                    unite(body.a, body.common);
                    unite(body.b, body.common);
                } else if constexpr (std::is_same_v<T, TransmissionLine>) {
                    // The line's admittance model ties both ends to ground.
                    unite(body.n1, kGround);
                    unite(body.n2, kGround);
                } else {
                    unite(body.n1, body.n2);
                }
            },
            el.body);
    }

    // Port terminations ground the signal path.
    for (const Port& p : ports_)
        unite(p.node, kGround);

    const int ground_root = find(0);
    for (NodeId id = 0; id < n; ++id) {
        if (find(id + 1) != ground_root)
            throw floating_node_error(
                "node '" + node_name(id) + "' has no path to ground", node_name(id));
    }
}

} // namespace notchlab
