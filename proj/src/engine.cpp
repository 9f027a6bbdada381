#include "notchlab/engine.hpp"

#include "notchlab/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>

namespace notchlab {

namespace {

using Complex = std::complex<double>;

constexpr double kLinePoleGuard = 1e-9; // |sin(theta)| below this is a pole
constexpr double kNudgeRel = 1e-6;

struct PortSetup {
    NodeId n1, n2;
    double z_ref;
};

PortSetup checked_ports(const Netlist& nl) {
    const Port& p1 = nl.port(0);
    const Port& p2 = nl.port(1);
    if (p1.z_ref_ohm != p2.z_ref_ohm)
        throw netlist_error("both ports must share one real reference impedance");
    return {p1.node, p2.node, p1.z_ref_ohm};
}

/// Stamps a ground-referenced two-port admittance block between nodes p and q.
void stamp_two_port(Eigen::MatrixXcd& y, NodeId p, NodeId q,
                    Complex y11, Complex y12, Complex y21, Complex y22) {
    if (p >= 0) {
        y(p, p) += y11;
        if (q >= 0) y(p, q) += y12;
    }
    if (q >= 0) {
        y(q, q) += y22;
        if (p >= 0) y(q, p) += y21;
    }
}

void stamp_admittance(Eigen::MatrixXcd& y, NodeId n1, NodeId n2, Complex adm) {
    if (n1 >= 0) y(n1, n1) += adm;
    if (n2 >= 0) y(n2, n2) += adm;
    if (n1 >= 0 && n2 >= 0) {
        y(n1, n2) -= adm;
        y(n2, n1) -= adm;
    }
}

/// Stamps a floating two-port (terminals p, q against reference r) given its
/// reference-relative admittance matrix.
void stamp_referenced_two_port(Eigen::MatrixXcd& y, NodeId p, NodeId q, NodeId r,
                               Complex y11, Complex y12, Complex y21, Complex y22) {
    auto add = [&](NodeId row, NodeId col, Complex v) {
        if (row >= 0 && col >= 0)
            y(row, col) += v;
    };
    add(p, p, y11);
    add(p, q, y12);
    add(q, p, y21);
    add(q, q, y22);
    add(p, r, -(y11 + y12));
    add(q, r, -(y21 + y22));
    add(r, p, -(y11 + y21));
    add(r, q, -(y12 + y22));
    add(r, r, y11 + y12 + y21 + y22);
}

void stamp_elements(const Netlist& nl, double f_hz, Eigen::MatrixXcd& y) {
    const double w = 2.0 * std::numbers::pi * f_hz;
    const Complex jw(0.0, w);

    for (const auto& el : nl.elements()) {
        std::visit(
            [&](const auto& body) {
                using T = std::decay_t<decltype(body)>;
                if constexpr (std::is_same_v<T, Resistor>) {
                    stamp_admittance(y, body.n1, body.n2, Complex(1.0 / body.r_ohm, 0.0));
                } else if constexpr (std::is_same_v<T, Capacitor>) {
                    stamp_admittance(y, body.n1, body.n2, jw * body.c_f);
                } else if constexpr (std::is_same_v<T, Inductor>) {
                    stamp_admittance(y, body.n1, body.n2, 1.0 / (jw * body.l_h));
                } else if constexpr (std::is_same_v<T, CoupledInductorPair>) {
                    // Exact terminal behaviour of the pair: invert the
                    // impedance matrix jw [[La, M], [M, Lb]]. Identical to
                    // the tee model {La-M, M, Lb-M} with its midpoint
                    // eliminated, but stays finite when La == M.
                    const double det = body.la_h * body.lb_h - body.m_h * body.m_h;
                    const Complex scale = 1.0 / (jw * det);
                    stamp_referenced_two_port(y, body.a, body.b, body.common,
                                              scale * body.lb_h, -scale * body.m_h,
                                              -scale * body.m_h, scale * body.la_h);
                } else if constexpr (std::is_same_v<T, TransmissionLine>) {
                    const double theta = body.theta_ref_rad * f_hz / body.f_ref_hz;
                    const double sin_t = std::sin(theta);
                    if (std::fabs(sin_t) < kLinePoleGuard)
                        throw line_resonance_error(
                            "line '" + nl.node_name(body.n1) + "-" + nl.node_name(body.n2) +
                                "' hits an electrical-length pole",
                            f_hz);
                    const double cos_t = std::cos(theta);
                    const Complex y11(0.0, -cos_t / (body.z_ohm * sin_t));
                    const Complex y12(0.0, 1.0 / (body.z_ohm * sin_t));
                    stamp_two_port(y, body.n1, body.n2, y11, y12, y12, y11);
                }
            },
            el.body);
    }
}

Eigen::Matrix2cd solve_point(const Netlist& nl, const PortSetup& ports, double f_hz) {
    const int n = nl.node_count();
    Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(n, n);
    stamp_elements(nl, f_hz, y);

    // Port terminations double as the source impedances.
    y(ports.n1, ports.n1) += Complex(1.0 / ports.z_ref, 0.0);
    y(ports.n2, ports.n2) += Complex(1.0 / ports.z_ref, 0.0);

    for (int i = 0; i < n; ++i) {
        if (y.row(i).cwiseAbs().maxCoeff() == 0.0)
            throw floating_node_error("node '" + nl.node_name(i) + "' is floating",
                                      nl.node_name(i));
    }

    Eigen::FullPivLU<Eigen::MatrixXcd> lu(y);
    if (!lu.isInvertible()) {
        Eigen::MatrixXcd kernel = lu.kernel();
        Eigen::Index worst = 0;
        kernel.col(0).cwiseAbs().maxCoeff(&worst);
        const std::string name = nl.node_name(static_cast<NodeId>(worst));
        throw floating_node_error("singular nodal system around node '" + name + "'", name);
    }

    // Source of amplitude 2 behind z_ref makes the incident wave unity, so
    // S_ij = V_i - delta_ij.
    Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(n, 2);
    rhs(ports.n1, 0) = Complex(2.0 / ports.z_ref, 0.0);
    rhs(ports.n2, 1) = Complex(2.0 / ports.z_ref, 0.0);
    const Eigen::MatrixXcd v = lu.solve(rhs);

    Eigen::Matrix2cd s;
    s(0, 0) = v(ports.n1, 0) - 1.0;
    s(1, 0) = v(ports.n2, 0);
    s(0, 1) = v(ports.n1, 1);
    s(1, 1) = v(ports.n2, 1) - 1.0;
    return s;
}

} // namespace

Eigen::ArrayXd linear_grid(double fmin_hz, double fmax_hz, int points) {
    if (points < 2)
        throw error("a frequency grid needs at least two points");
    if (!(fmin_hz < fmax_hz))
        throw error("grid start must lie below grid end");
    return Eigen::ArrayXd::LinSpaced(points, fmin_hz, fmax_hz);
}

Eigen::Matrix2cd ac_solve(const Netlist& netlist, double f_hz) {
    netlist.validate();
    if (!(f_hz >= kMinFrequencyHz))
        throw error("analysis frequency must be at least 1 kHz");
    return solve_point(netlist, checked_ports(netlist), f_hz);
}

FrequencyResponse sweep(const Netlist& netlist, const Eigen::ArrayXd& grid_hz) {
    netlist.validate();
    const PortSetup ports = checked_ports(netlist);

    const Eigen::Index n = grid_hz.size();
    if (n < 1)
        throw error("empty frequency grid");
    if (!(grid_hz(0) >= kMinFrequencyHz))
        throw error("grid start must be at least 1 kHz");
    for (Eigen::Index i = 1; i < n; ++i)
        if (!(grid_hz(i) > grid_hz(i - 1)))
            throw error("frequency grid must be strictly ascending");

    FrequencyResponse resp;
    resp.freqs_hz = grid_hz;
    resp.s11.resize(n);
    resp.s21.resize(n);
    resp.s12.resize(n);
    resp.s22.resize(n);
    resp.z_ref_ohm = ports.z_ref;

    for (Eigen::Index i = 0; i < n; ++i) {
        double f = grid_hz(i);
        Eigen::Matrix2cd s;
        try {
            s = solve_point(netlist, ports, f);
        } catch (const line_resonance_error&) {
            f *= 1.0 + kNudgeRel;
            s = solve_point(netlist, ports, f);
            resp.freqs_hz(i) = f;
            resp.nudged.push_back(i);
        }
        resp.s11(i) = s(0, 0);
        resp.s21(i) = s(1, 0);
        resp.s12(i) = s(0, 1);
        resp.s22(i) = s(1, 1);
    }
    return resp;
}

FrequencyResponse sweep(const Netlist& netlist, double fmin_hz, double fmax_hz, int points) {
    return sweep(netlist, linear_grid(std::max(fmin_hz, kMinFrequencyHz), fmax_hz, points));
}

EquivalenceReport equivalent(const FrequencyResponse& a, const FrequencyResponse& b, double tol) {
    if (a.size() != b.size() || !(a.freqs_hz == b.freqs_hz).all())
        throw grid_mismatch_error("responses were not sampled on identical grids");

    EquivalenceReport report;
    report.equivalent = true;
    if (a.size() == 0)
        return report;
    report.freq_hz = a.freqs_hz(0);
    report.entry = "S11";

    const Eigen::ArrayXcd* lhs[4] = {&a.s11, &a.s21, &a.s12, &a.s22};
    const Eigen::ArrayXcd* rhs[4] = {&b.s11, &b.s21, &b.s12, &b.s22};
    static const char* names[4] = {"S11", "S21", "S12", "S22"};

    for (int e = 0; e < 4; ++e) {
        Eigen::Index at = 0;
        const double dev = (*lhs[e] - *rhs[e]).abs().maxCoeff(&at);
        if (dev > report.max_deviation) {
            report.max_deviation = dev;
            report.freq_hz = a.freqs_hz(at);
            report.entry = names[e];
        }
    }
    report.equivalent = report.max_deviation <= tol;
    return report;
}

} // namespace notchlab
