#pragma once

#include <stdexcept>
#include <string>

namespace notchlab {

/// Base class for all notchlab errors.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Synthesis
// ---------------------------------------------------------------------------

class invalid_spec_error : public error {
public:
    using error::error;
};

class unsupported_order_error : public error {
public:
    using error::error;
};

/// dk >= 1: the coupled elements would have non-positive branch values.
class infeasible_coupling_error : public error {
public:
    using error::error;
};

/// dk <= 0: couplings vanish and the coupled forms degenerate.
class degenerate_coupling_error : public error {
public:
    using error::error;
};

/// The chosen series capacitor is at or below the feasibility threshold.
/// Carries the smallest workable value so callers can report it.
class cc_too_small_error : public error {
public:
    cc_too_small_error(const std::string& msg, double min_cc_f)
        : error(msg), min_cc_f_(min_cc_f) {}
    double min_feasible_cc_f() const { return min_cc_f_; }

private:
    double min_cc_f_;
};

/// A three-element capacitor network with a zero element has no counterpart form.
class degenerate_network_error : public error {
public:
    using error::error;
};

// ---------------------------------------------------------------------------
// Netlist / AC engine
// ---------------------------------------------------------------------------

class netlist_error : public error {
public:
    using error::error;
};

class floating_node_error : public error {
public:
    floating_node_error(const std::string& msg, std::string node)
        : error(msg), node_(std::move(node)) {}
    const std::string& node() const { return node_; }

private:
    std::string node_;
};

/// Evaluation frequency falls on (or within the guard band of) a
/// transmission-line pole where the admittance stamp blows up.
class line_resonance_error : public error {
public:
    line_resonance_error(const std::string& msg, double f_hz)
        : error(msg), f_hz_(f_hz) {}
    double frequency_hz() const { return f_hz_; }

private:
    double f_hz_;
};

class grid_mismatch_error : public error {
public:
    using error::error;
};

// ---------------------------------------------------------------------------
// Varactor
// ---------------------------------------------------------------------------

class bias_range_error : public error {
public:
    using error::error;
};

class unreachable_capacitance_error : public error {
public:
    unreachable_capacitance_error(const std::string& msg, double c_min_f, double c_max_f)
        : error(msg), c_min_f_(c_min_f), c_max_f_(c_max_f) {}
    double reachable_min_f() const { return c_min_f_; }
    double reachable_max_f() const { return c_max_f_; }

private:
    double c_min_f_;
    double c_max_f_;
};

// ---------------------------------------------------------------------------
// Metrics / topology selection / calibration
// ---------------------------------------------------------------------------

/// No swept point reaches the -3 dB stopband threshold.
class no_stopband_error : public error {
public:
    using error::error;
};

/// The stopband edges are not bracketed by the swept grid.
class sweep_too_narrow_error : public error {
public:
    using error::error;
};

class no_viable_topology_error : public error {
public:
    using error::error;
};

class calibration_infeasible_error : public error {
public:
    using error::error;
};

// ---------------------------------------------------------------------------
// I/O
// ---------------------------------------------------------------------------

class io_error : public error {
public:
    using error::error;
};

/// Malformed file content; carries the 1-based line number when known.
class parse_error : public error {
public:
    explicit parse_error(const std::string& msg, long line = 0)
        : error(msg), line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

class disjoint_ranges_error : public error {
public:
    using error::error;
};

} // namespace notchlab
