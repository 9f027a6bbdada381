#include "notchlab/netlist.hpp"

#include "notchlab/errors.hpp"

#include <doctest.h>

using namespace notchlab;

TEST_CASE("node bookkeeping") {
    Netlist nl;
    const NodeId a = nl.add_node("A");
    const NodeId b = nl.add_node("B");
    CHECK(a != b);
    CHECK(nl.add_node("A") == a); // idempotent
    CHECK(nl.node("B") == b);
    CHECK(nl.node("gnd") == kGround);
    CHECK(nl.node("0") == kGround);
    CHECK(nl.node_name(a) == "A");
    CHECK(nl.node_name(kGround) == "gnd");
    CHECK_THROWS_AS(nl.node("nope"), netlist_error);
}

TEST_CASE("element parameter validation") {
    Netlist nl;
    const NodeId a = nl.add_node("A");
    const NodeId b = nl.add_node("B");
    CHECK_THROWS_AS(nl.add_resistor("R", a, b, 0.0), netlist_error);
    CHECK_THROWS_AS(nl.add_capacitor("C", a, b, -1e-12), netlist_error);
    CHECK_THROWS_AS(nl.add_inductor("L", a, b, 0.0), netlist_error);
    CHECK_THROWS_AS(nl.add_line("T", a, b, -50.0, 1.0, 1e9), netlist_error);
    CHECK_THROWS_AS(nl.add_line("T", a, b, 50.0, 0.0, 1e9), netlist_error);
    CHECK_THROWS_AS(nl.add_line("T", a, b, 50.0, 1.0, 0.0), netlist_error);
}

TEST_CASE("port rules") {
    Netlist nl;
    const NodeId a = nl.add_node("A");
    const NodeId b = nl.add_node("B");
    nl.add_resistor("R", a, b, 50.0);
    CHECK_THROWS_AS(nl.set_ports({a, 50.0}, {a, 50.0}), netlist_error);
    CHECK_THROWS_AS(nl.set_ports({kGround, 50.0}, {b, 50.0}), netlist_error);
    CHECK_THROWS_AS(nl.set_ports({a, -50.0}, {b, 50.0}), netlist_error);
    nl.set_ports({a, 50.0}, {b, 50.0});
    CHECK(nl.port(0).node == a);
    CHECK(nl.port(1).node == b);
}

TEST_CASE("validation requires two ports and ground connectivity") {
    Netlist nl;
    const NodeId a = nl.add_node("A");
    const NodeId b = nl.add_node("B");
    const NodeId m = nl.add_node("lonely");
    nl.add_resistor("R", a, b, 50.0);
    CHECK_THROWS_AS(nl.validate(), netlist_error); // no ports yet
    nl.set_ports({a, 50.0}, {b, 50.0});
    // the port terminations ground A and B, but the extra node floats
    CHECK_THROWS_AS(nl.validate(), floating_node_error);
    nl.add_capacitor("C", m, kGround, 1e-12);
    CHECK_NOTHROW(nl.validate());
}

TEST_CASE("a line grounds both of its ends") {
    Netlist nl;
    const NodeId a = nl.add_node("A");
    const NodeId b = nl.add_node("B");
    nl.add_line("T", a, b, 50.0, 1.0, 1e9);
    nl.set_ports({a, 50.0}, {b, 50.0});
    CHECK_NOTHROW(nl.validate());
}
