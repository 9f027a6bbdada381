#include "notchlab/engine.hpp"

#include "notchlab/errors.hpp"
#include "notchlab/synthesis.hpp"
#include "support/abcd.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace notchlab;
using Complex = std::complex<double>;

namespace {

constexpr double kZ0 = 50.0;
constexpr double kF0 = 0.83e9;
constexpr double kHalfPi = std::numbers::pi / 2.0;

Netlist series_resistor_network(double r) {
    Netlist nl;
    const NodeId a = nl.add_node("A");
    const NodeId b = nl.add_node("B");
    nl.add_resistor("R", a, b, r);
    // keep both sides referenced to ground through the terminations only
    nl.set_ports({a, kZ0}, {b, kZ0});
    return nl;
}

Netlist matched_line_network(double z, double theta_ref, double f_ref) {
    Netlist nl;
    const NodeId a = nl.add_node("A");
    const NodeId b = nl.add_node("B");
    nl.add_line("TL", a, b, z, theta_ref, f_ref);
    nl.set_ports({a, kZ0}, {b, kZ0});
    return nl;
}

} // namespace

TEST_CASE("series resistor matches the closed form") {
    const auto s = ac_solve(series_resistor_network(kZ0), 1e9);
    CHECK(std::abs(s(1, 0) - Complex(2.0 / 3.0)) < 1e-12);
    CHECK(std::abs(s(0, 0) - Complex(1.0 / 3.0)) < 1e-12);
    CHECK(std::abs(s(0, 1) - s(1, 0)) < 1e-14);
    CHECK(std::abs(s(1, 1) - s(0, 0)) < 1e-14);
}

TEST_CASE("matched quarter-wave line is a -90 degree phase shifter") {
    const auto s = ac_solve(matched_line_network(kZ0, kHalfPi, kF0), kF0);
    CHECK(std::abs(s(0, 0)) < 1e-12);
    CHECK(std::abs(s(1, 0) - Complex(0.0, -1.0)) < 1e-12);
}

TEST_CASE("shunt series-LC branch notches its resonance") {
    const auto design = synthesize({kF0, 0.18, 2, kZ0, 2.2e-12});
    Netlist nl;
    const NodeId a = nl.add_node("A");
    const NodeId b = nl.add_node("B");
    const NodeId m = nl.add_node("M");
    nl.add_resistor("Rthru", a, b, 1e-6); // near-ideal through connection
    nl.add_capacitor("C", a, m, design.core.c_f);
    nl.add_inductor("L", m, kGround, design.core.l_h);
    nl.set_ports({a, kZ0}, {b, kZ0});

    const auto s = ac_solve(nl, kF0);
    CHECK(std::abs(s(1, 0)) < 1e-6);
}

TEST_CASE("nodal results match the chain-matrix oracle on ladder networks") {
    const auto grid = linear_grid(0.1e9, 1.5e9, 301);

    SUBCASE("series R") {
        const auto resp = sweep(series_resistor_network(75.0), grid);
        for (Eigen::Index i = 0; i < grid.size(); ++i) {
            const auto s = oracle::to_s(oracle::series_z(Complex(75.0)), kZ0);
            CHECK(std::abs(resp.s21(i) - s(1, 0)) < 1e-12);
            CHECK(std::abs(resp.s11(i) - s(0, 0)) < 1e-12);
        }
    }

    SUBCASE("quarter-wave line off the design frequency") {
        const auto resp = sweep(matched_line_network(65.0, kHalfPi, kF0), grid);
        for (Eigen::Index i = 0; i < grid.size(); ++i) {
            const double theta = kHalfPi * grid(i) / kF0;
            const auto s = oracle::to_s(oracle::line(65.0, theta), kZ0);
            CHECK(std::abs(resp.s21(i) - s(1, 0)) < 1e-10);
            CHECK(std::abs(resp.s11(i) - s(0, 0)) < 1e-10);
        }
    }

    SUBCASE("LC ladder") {
        Netlist nl;
        const NodeId a = nl.add_node("A");
        const NodeId b = nl.add_node("B");
        nl.add_inductor("L", a, b, 10e-9);
        nl.add_capacitor("C", b, kGround, 2e-12);
        nl.set_ports({a, kZ0}, {b, kZ0});
        const auto resp = sweep(nl, grid);
        for (Eigen::Index i = 0; i < grid.size(); ++i) {
            const double w = 2.0 * std::numbers::pi * grid(i);
            const auto t = oracle::chain(oracle::series_z(Complex(0.0, w * 10e-9)),
                                         oracle::shunt_y(Complex(0.0, w * 2e-12)));
            const auto s = oracle::to_s(t, kZ0);
            CHECK(std::abs(resp.s21(i) - s(1, 0)) < 1e-12);
            CHECK(std::abs(resp.s11(i) - s(0, 0)) < 1e-12);
            CHECK(std::abs(resp.s22(i) - s(1, 1)) < 1e-12);
        }
    }
}

TEST_CASE("lossless unitarity and reciprocity") {
    Netlist nl;
    const NodeId a = nl.add_node("A");
    const NodeId b = nl.add_node("B");
    const NodeId m = nl.add_node("M");
    nl.add_line("TL", a, b, 62.0, kHalfPi, kF0);
    nl.add_capacitor("C1", a, m, 1.1e-12);
    nl.add_inductor("L1", m, kGround, 22e-9);
    nl.add_capacitor("Cb", a, b, 0.3e-12);
    nl.set_ports({a, kZ0}, {b, kZ0});

    const auto resp = sweep(nl, 0.2e9, 1.4e9, 601);
    for (Eigen::Index i = 0; i < resp.size(); ++i) {
        const double power = std::norm(resp.s11(i)) + std::norm(resp.s21(i));
        CHECK(std::fabs(power - 1.0) < 1e-9);
        CHECK(std::abs(resp.s12(i) - resp.s21(i)) < 1e-12);
    }
}

TEST_CASE("impedance scaling leaves S-parameters unchanged") {
    auto build = [](double scale) {
        Netlist nl;
        const NodeId a = nl.add_node("A");
        const NodeId b = nl.add_node("B");
        const NodeId m = nl.add_node("M");
        nl.add_resistor("R", a, b, 30.0 * scale);
        nl.add_inductor("L", b, m, 8e-9 * scale);
        nl.add_capacitor("C", m, kGround, 3e-12 / scale);
        nl.add_line("TL", a, b, 70.0 * scale, kHalfPi, kF0);
        nl.set_ports({a, kZ0 * scale}, {b, kZ0 * scale});
        return nl;
    };
    const auto grid = linear_grid(0.3e9, 1.2e9, 101);
    const auto base = sweep(build(1.0), grid);
    const auto scaled = sweep(build(3.7), grid);
    const auto report = equivalent(base, scaled, 1e-10);
    CHECK(report.equivalent);
}

TEST_CASE("coupled pair equals its explicit tee model") {
    const double l = 37.66e-9;
    const double m = 4.79e-9;

    Netlist pair;
    {
        const NodeId a = pair.add_node("A");
        const NodeId b = pair.add_node("B");
        pair.add_coupled_pair("K", a, b, kGround, l, l, m);
        pair.set_ports({a, kZ0}, {b, kZ0});
    }
    Netlist tee;
    {
        const NodeId a = tee.add_node("A");
        const NodeId b = tee.add_node("B");
        const NodeId x = tee.add_node("X");
        tee.add_inductor("La", a, x, l - m);
        tee.add_inductor("Lb", x, b, l - m);
        tee.add_inductor("Lm", x, kGround, m);
        tee.set_ports({a, kZ0}, {b, kZ0});
    }
    const auto grid = linear_grid(0.1e9, 2.0e9, 501);
    const auto report = equivalent(sweep(pair, grid), sweep(tee, grid), 1e-10);
    CHECK(report.equivalent);

    SUBCASE("negative mutual inductance is accepted") {
        Netlist neg;
        const NodeId a = neg.add_node("A");
        const NodeId b = neg.add_node("B");
        neg.add_coupled_pair("K", a, b, kGround, l, l, -m);
        neg.set_ports({a, kZ0}, {b, kZ0});
        CHECK_NOTHROW(ac_solve(neg, 1e9));
    }

    SUBCASE("overcoupling is rejected") {
        Netlist bad;
        const NodeId a = bad.add_node("A");
        const NodeId b = bad.add_node("B");
        CHECK_THROWS_AS(bad.add_coupled_pair("K", a, b, kGround, l, l, l), netlist_error);
    }
}

TEST_CASE("line pole guard") {
    auto nl = matched_line_network(kZ0, kHalfPi, kF0);
    // theta = pi exactly at 2 f0
    CHECK_THROWS_AS(ac_solve(nl, 2.0 * kF0), line_resonance_error);

    // sweep() nudges instead
    Eigen::ArrayXd grid(3);
    grid << 1.5e9, 2.0 * kF0, 1.8e9;
    const auto resp = sweep(nl, grid);
    REQUIRE(resp.nudged.size() == 1);
    CHECK(resp.nudged[0] == 1);
    CHECK(resp.freqs_hz(1) > 2.0 * kF0);
}

TEST_CASE("floating and singular netlists are reported by node name") {
    SUBCASE("node untouched by any element") {
        Netlist nl;
        const NodeId a = nl.add_node("A");
        const NodeId b = nl.add_node("B");
        nl.add_node("orphan");
        nl.add_resistor("R", a, b, 10.0);
        nl.set_ports({a, kZ0}, {b, kZ0});
        try {
            ac_solve(nl, 1e9);
            FAIL("expected floating_node_error");
        } catch (const floating_node_error& e) {
            CHECK(e.node() == "orphan");
        }
    }

    SUBCASE("island with no ground path") {
        Netlist nl;
        const NodeId a = nl.add_node("A");
        const NodeId b = nl.add_node("B");
        const NodeId i1 = nl.add_node("I1");
        const NodeId i2 = nl.add_node("I2");
        nl.add_resistor("R", a, b, 10.0);
        nl.add_capacitor("Cf", i1, i2, 1e-12);
        nl.set_ports({a, kZ0}, {b, kZ0});
        CHECK_THROWS_AS(ac_solve(nl, 1e9), floating_node_error);
    }
}

TEST_CASE("response comparison") {
    const auto grid = linear_grid(0.5e9, 1.0e9, 11);
    const auto resp = sweep(series_resistor_network(75.0), grid);

    SUBCASE("identical response at zero tolerance") {
        const auto report = equivalent(resp, resp, 0.0);
        CHECK(report.equivalent);
        CHECK(report.max_deviation == 0.0);
    }

    SUBCASE("grid mismatch") {
        const auto other = sweep(series_resistor_network(75.0), linear_grid(0.5e9, 1.0e9, 12));
        CHECK_THROWS_AS(equivalent(resp, other, 1e-6), grid_mismatch_error);
    }

    SUBCASE("deviation localized") {
        auto modified = resp;
        modified.s21(5) += Complex(1e-3, 0.0);
        const auto report = equivalent(resp, modified, 1e-6);
        CHECK_FALSE(report.equivalent);
        CHECK(report.entry == "S21");
        CHECK(report.freq_hz == resp.freqs_hz(5));
        CHECK(report.max_deviation == doctest::Approx(1e-3));
    }
}

TEST_CASE("frequency domain limits") {
    auto nl = series_resistor_network(75.0);
    CHECK_THROWS_AS(ac_solve(nl, 10.0), error);
    CHECK_THROWS_AS(sweep(nl, linear_grid(10.0, 1e9, 11)), error);
    // helper clamps instead
    CHECK_NOTHROW(sweep(nl, 10.0, 1e9, 11));
}
