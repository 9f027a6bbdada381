// Command-line front end: synthesize, simulate, extract metrics, calibrate,
// tune and compare varactor-tunable bandstop designs.

#include "notchlab/design_io.hpp"
#include "notchlab/engine.hpp"
#include "notchlab/errors.hpp"
#include "notchlab/metrics.hpp"
#include "notchlab/synthesis.hpp"
#include "notchlab/topologies.hpp"
#include "notchlab/touchstone.hpp"
#include "notchlab/tuning.hpp"
#include "notchlab/units.hpp"
#include "notchlab/varactor.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace notchlab;

// Exit codes are a stable contract:
//   0 success, 1 I/O or parse, 2 infeasible design, 3 analysis failure.
constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitAnalysis = 3;

struct QuantityFlag {
    std::string text;
    bool set = false;
};

double parse_flag(const std::string& text, const char* unit) {
    return parse_quantity(text, unit);
}

void print_design_table(const SynthesizedDesign& d) {
    std::printf("prototype g      :");
    for (double g : d.g.g)
        std::printf(" %.6g", g);
    std::printf("\n");
    std::printf("Z_T              : %s\n", format_quantity(d.core.zt_ohm, "Ohm").c_str());
    std::printf("L                : %s\n", format_quantity(d.core.l_h, "H", 4).c_str());
    std::printf("C                : %s\n", format_quantity(d.core.c_f, "F").c_str());
    std::printf("k                : %.6g\n", d.core.k);
    std::printf("dk               : %.6g\n", d.core.dk);
    std::printf("L_M              : %s\n", format_quantity(d.coupled.lm_h, "H", 4).c_str());
    std::printf("L_1              : %s\n", format_quantity(d.coupled.l1_h, "H", 4).c_str());
    std::printf("C_M              : %s\n", format_quantity(d.coupled.cm_f, "F").c_str());
    std::printf("C_1              : %s\n", format_quantity(d.coupled.c1_f, "F").c_str());
    std::printf("C_k              : %s\n", format_quantity(d.practical.ck_f, "F").c_str());
    std::printf("C_j              : %s\n", format_quantity(d.practical.cj_f, "F").c_str());
    std::printf("C_a              : %s\n", format_quantity(d.practical.ca_f, "F").c_str());
    std::printf("C_b              : %s\n", format_quantity(d.practical.cb_f, "F").c_str());
    std::printf("C_C              : %s\n", format_quantity(d.practical.cc_f, "F").c_str());
}

void print_metrics(const StopbandMetrics& m) {
    std::printf("f_notch          : %s\n", format_quantity(m.f_notch_hz, "Hz", 6).c_str());
    std::printf("rejection        : %.2f dB\n", m.rejection_db);
    std::printf("f_lo / f_hi      : %s / %s\n", format_quantity(m.f_lo_hz, "Hz", 6).c_str(),
                format_quantity(m.f_hi_hz, "Hz", 6).c_str());
    std::printf("fbw (-3 dB)      : %.4f\n", m.fbw);
    std::printf("passband IL      : %.4f dB\n", m.pb_il_db);
    std::printf("stopband RL      : %.4f dB\n", m.sb_rl_db);
    std::printf("modes            :");
    for (double f : m.modes_hz)
        std::printf(" %s", format_quantity(f, "Hz", 6).c_str());
    std::printf("\n");
}

nlohmann::json metrics_to_json(const StopbandMetrics& m) {
    return {
        {"f_notch_hz", m.f_notch_hz}, {"rejection_db", m.rejection_db},
        {"f_lo_hz", m.f_lo_hz},       {"f_hi_hz", m.f_hi_hz},
        {"fbw", m.fbw},               {"pb_il_db", m.pb_il_db},
        {"sb_rl_db", m.sb_rl_db},     {"modes_hz", m.modes_hz},
    };
}

TopologyId resolve_topology(const DesignFile& file, const std::string& flag) {
    if (flag.empty() || flag == "file")
        return file.topology;
    if (flag == "auto") {
        const TopologyId candidates[] = {TopologyId::practical_v1, TopologyId::practical_v2,
                                         TopologyId::practical_v3};
        const SelectionReport report = select_topology(file.design, candidates);
        std::fprintf(stderr, "selected topology: %s\n",
                     std::string(to_string(report.winner)).c_str());
        return report.winner;
    }
    return topology_from_string(flag);
}

int cmd_synth(const std::string& f0, const std::string& fbw, int order, const std::string& z0,
              const std::string& cc, const std::string& topology, const std::string& out_path) {
    FilterSpec spec;
    spec.f0_hz = parse_flag(f0, "Hz");
    spec.delta = parse_flag(fbw, "");
    spec.order = order;
    spec.z0_ohm = parse_flag(z0, "Ohm");
    spec.cc_f = parse_flag(cc, "F");

    const SynthesizedDesign design = synthesize(spec);
    print_design_table(design);

    if (!out_path.empty()) {
        DesignFile file;
        file.design = design;
        file.topology = topology_from_string(topology);
        save_design(file, out_path);
        std::printf("wrote %s\n", out_path.c_str());
    }
    return kExitOk;
}

int cmd_simulate(const std::string& design_path, const std::string& topology,
                 const std::string& fmin, const std::string& fmax, int points, double rs,
                 std::optional<double> q, const std::string& out_path, bool stamp) {
    DesignFile file = load_design(design_path);
    const TopologyId id = resolve_topology(file, topology);

    LossModel loss = file.loss;
    if (rs >= 0.0)
        loss.varactor_rs_ohm = rs;
    if (q)
        loss.inductor_q = *q;

    double lo = parse_flag(fmin, "Hz");
    const double hi = parse_flag(fmax, "Hz");
    if (lo < kMinFrequencyHz) {
        std::fprintf(stderr, "warning: sweep start clamped to 1 kHz\n");
        lo = kMinFrequencyHz;
    }

    const Netlist nl = build_topology(file.design, id, loss);
    const FrequencyResponse resp = sweep(nl, linear_grid(lo, hi, points));
    write_touchstone(resp, out_path, stamp);
    std::printf("wrote %s (%lld points)\n", out_path.c_str(),
                static_cast<long long>(resp.size()));
    return kExitOk;
}

int cmd_metrics(const std::string& s2p_path, bool as_json) {
    const TouchstoneDocument doc = read_touchstone(s2p_path);
    const StopbandMetrics m = analyze(doc.response);
    if (as_json)
        std::printf("%s\n", metrics_to_json(m).dump(2).c_str());
    else
        print_metrics(m);
    return kExitOk;
}

int cmd_calibrate(const std::string& design_path, const std::string& topology,
                  const std::string& f0, const std::string& fbw, double weight_fbw,
                  double bound_down, double bound_up, const std::string& out_path) {
    DesignFile file = load_design(design_path);
    const TopologyId id = resolve_topology(file, topology);
    if (id == TopologyId::notch || id == TopologyId::dualmode)
        throw invalid_spec_error("calibration applies to the practical variants");

    CalibrationTarget target;
    target.f0_target_hz = f0.empty() ? file.design.spec.f0_hz : parse_flag(f0, "Hz");
    target.fbw_target = fbw.empty() ? file.design.spec.delta : parse_flag(fbw, "");
    target.weight_fbw = weight_fbw;

    const CapBounds bounds =
        CapBounds::around(file.design.practical.ca_f, file.design.practical.cb_f, bound_down,
                          bound_up);
    const CalibrationResult result = calibrate(file.design, id, target, bounds, file.loss);

    std::printf("ca               : %s\n", format_quantity(result.ca_f, "F").c_str());
    std::printf("cb               : %s\n", format_quantity(result.cb_f, "F").c_str());
    std::printf("objective        : %.6g (%d evaluations%s)\n", result.objective, result.evals,
                result.converged ? "" : ", budget exhausted");
    print_metrics(result.metrics);

    file.design.practical.ca_f = result.ca_f;
    file.design.practical.cb_f = result.cb_f;
    file.topology = id;
    save_design(file, out_path.empty() ? design_path : out_path);
    std::printf("wrote %s\n", (out_path.empty() ? design_path : out_path).c_str());
    return kExitOk;
}

int cmd_tune(const std::string& design_path, const std::string& topology,
             const std::string& ca_min, const std::string& ca_max, int points,
             const std::string& cb_rule, const std::string& profile_path,
             const std::string& bias_list, const std::string& out_path) {
    DesignFile file = load_design(design_path);
    const TopologyId id = resolve_topology(file, topology);

    TuningCurve curve;
    if (!bias_list.empty()) {
        if (profile_path.empty())
            throw invalid_spec_error("--bias-list needs --profile");
        const VaractorModel model = load_varactor_profile(profile_path);
        std::vector<BiasPoint> grid;
        std::string token;
        std::istringstream stream(bias_list);
        while (std::getline(stream, token, ',')) {
            const auto colon = token.find(':');
            if (colon == std::string::npos)
                throw parse_error("bias pairs are v1:v2, got '" + token + "'");
            grid.push_back({parse_flag(token.substr(0, colon), "V"),
                            parse_flag(token.substr(colon + 1), "V")});
        }
        curve = tuning_curve_bias(file.design, id, model, grid);
    } else {
        const double lo = parse_flag(ca_min, "F");
        const double hi = parse_flag(ca_max, "F");
        if (points < 2 || !(lo < hi))
            throw invalid_spec_error("need --points >= 2 and --ca-min < --ca-max");
        std::vector<double> grid(static_cast<size_t>(points));
        for (int i = 0; i < points; ++i)
            grid[static_cast<size_t>(i)] = lo + (hi - lo) * i / (points - 1);
        const CbRule rule =
            cb_rule == "recalibrated" ? CbRule::recalibrated : CbRule::fixed;
        curve = tuning_curve_caps(file.design, id, grid, rule, file.loss);
    }

    std::ofstream out(out_path);
    if (!out)
        throw io_error("cannot open '" + out_path + "' for writing");
    write_tuning_csv(curve, out);
    int gaps = 0;
    for (const auto& row : curve.rows)
        if (!row.metrics)
            ++gaps;
    std::printf("wrote %s (%zu rows, %d gaps)\n", out_path.c_str(), curve.rows.size(), gaps);
    return kExitOk;
}

int cmd_compare(const std::string& path_a, const std::string& path_b, double tol_db) {
    const TouchstoneDocument a = read_touchstone(path_a);
    const TouchstoneDocument b = read_touchstone(path_b);

    const double lo = std::max(a.response.freqs_hz(0), b.response.freqs_hz(0));
    const double hi_common = std::min(a.response.freqs_hz(a.response.size() - 1),
                                      b.response.freqs_hz(b.response.size() - 1));
    if (!(lo < hi_common))
        throw disjoint_ranges_error("the two files cover disjoint frequency ranges");

    // Linear interpolation of the second response onto the first file's
    // grid points inside the overlap.
    auto interp = [&](const Eigen::ArrayXcd& s, double f) {
        const auto& fs = b.response.freqs_hz;
        Eigen::Index k = 1;
        while (k < fs.size() - 1 && fs(k) < f)
            ++k;
        const double t = (f - fs(k - 1)) / (fs(k) - fs(k - 1));
        return s(k - 1) + t * (s(k) - s(k - 1));
    };

    auto db = [](double mag) { return 20.0 * std::log10(std::max(mag, 1e-15)); };

    double worst21 = 0.0, worst11 = 0.0;
    for (Eigen::Index i = 0; i < a.response.size(); ++i) {
        const double f = a.response.freqs_hz(i);
        if (f < lo || f > hi_common)
            continue;
        worst21 = std::max(worst21, std::fabs(db(std::abs(a.response.s21(i))) -
                                              db(std::abs(interp(b.response.s21, f)))));
        worst11 = std::max(worst11, std::fabs(db(std::abs(a.response.s11(i))) -
                                              db(std::abs(interp(b.response.s11, f)))));
    }

    const bool pass = worst21 <= tol_db && worst11 <= tol_db;
    std::printf("max |dS21| : %.6g dB\n", worst21);
    std::printf("max |dS11| : %.6g dB\n", worst11);
    std::printf("%s (tolerance %.6g dB)\n", pass ? "PASS" : "FAIL", tol_db);
    return pass ? kExitOk : kExitAnalysis;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tunable bandstop filter workbench"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "synthesize element values from design targets");
    std::string f0, fbw = "0.18", z0 = "50", cc, topology = "practical_v1", out;
    int order = 2;
    synth->add_option("--f0", f0, "center frequency, e.g. 0.83GHz")->required();
    synth->add_option("--fbw", fbw, "fractional bandwidth, e.g. 0.18")->required();
    synth->add_option("--order", order, "prototype order (2)");
    synth->add_option("--z0", z0, "termination impedance, e.g. 50");
    synth->add_option("--cc", cc, "series capacitor, e.g. 2.2pF")->required();
    synth->add_option("--topology", topology, "topology stored in the design file");
    synth->add_option("-o,--out", out, "design file to write");

    // simulate
    auto* sim = app.add_subcommand("simulate", "sweep a design and write a Touchstone file");
    std::string sim_design, sim_topology, sim_fmin = "0.3GHz", sim_fmax = "1.5GHz", sim_out;
    int sim_points = 1201;
    double sim_rs = -1.0;
    double sim_q = 0.0;
    bool sim_stamp = false;
    sim->add_option("--design", sim_design, "design file")->required();
    sim->add_option("--topology", sim_topology, "notch|dualmode|practical_v1..v3|auto|file");
    sim->add_option("--fmin", sim_fmin, "sweep start");
    sim->add_option("--fmax", sim_fmax, "sweep end");
    sim->add_option("--points", sim_points, "grid points");
    sim->add_option("--rs", sim_rs, "varactor series resistance override (ohm)");
    sim->add_option("--q", sim_q, "inductor quality factor (0 = lossless)");
    sim->add_flag("--stamp", sim_stamp, "prepend a generation-time comment");
    sim->add_option("-o,--out", sim_out, "output .s2p path")->required();

    // metrics
    auto* met = app.add_subcommand("metrics", "extract stopband metrics from a .s2p file");
    std::string met_input;
    bool met_json = false;
    met->add_option("--input", met_input, ".s2p file")->required();
    met->add_flag("--json", met_json, "machine-readable output");

    // calibrate
    auto* cal = app.add_subcommand("calibrate", "fit ca/cb against a frequency and bandwidth target");
    std::string cal_design, cal_topology, cal_f0, cal_fbw, cal_out;
    double cal_weight = 0.25, cal_down = 0.1, cal_up = 4.0;
    cal->add_option("--design", cal_design, "design file")->required();
    cal->add_option("--topology", cal_topology, "practical_v1..v3|auto|file");
    cal->add_option("--f0", cal_f0, "target center frequency (default: the design's)");
    cal->add_option("--fbw", cal_fbw, "target fractional bandwidth (default: the design's)");
    cal->add_option("--weight-fbw", cal_weight, "bandwidth weight in the objective");
    cal->add_option("--bound-down", cal_down, "lower cap bound as a fraction of current");
    cal->add_option("--bound-up", cal_up, "upper cap bound as a multiple of current");
    cal->add_option("-o,--out", cal_out, "output design file (default: rewrite input)");

    // tune
    auto* tune = app.add_subcommand("tune", "generate a tuning curve CSV");
    std::string tn_design, tn_topology, tn_ca_min, tn_ca_max, tn_rule = "recalibrated";
    std::string tn_profile, tn_bias, tn_out;
    int tn_points = 21;
    tune->add_option("--design", tn_design, "design file")->required();
    tune->add_option("--topology", tn_topology, "practical_v1..v3|auto|file");
    tune->add_option("--ca-min", tn_ca_min, "capacitance grid start, e.g. 0.5pF");
    tune->add_option("--ca-max", tn_ca_max, "capacitance grid end, e.g. 1.6pF");
    tune->add_option("--points", tn_points, "grid points");
    tune->add_option("--cb-rule", tn_rule, "fixed|recalibrated");
    tune->add_option("--profile", tn_profile, "varactor profile JSON");
    tune->add_option("--bias-list", tn_bias, "bias pairs v1:v2[,v1:v2...] in volt");
    tune->add_option("-o,--out", tn_out, "output CSV path")->required();

    // compare
    auto* cmp = app.add_subcommand("compare", "compare two .s2p files on their common range");
    std::string cmp_a, cmp_b;
    double cmp_tol = 0.1;
    cmp->add_option("--a", cmp_a, "first .s2p")->required();
    cmp->add_option("--b", cmp_b, "second .s2p")->required();
    cmp->add_option("--tol-db", cmp_tol, "pass/fail tolerance in dB");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitIo;
    }

    try {
        if (synth->parsed())
            return cmd_synth(f0, fbw, order, z0, cc, topology, out);
        if (sim->parsed())
            return cmd_simulate(sim_design, sim_topology, sim_fmin, sim_fmax, sim_points, sim_rs,
                                sim_q > 0.0 ? std::optional<double>(sim_q) : std::nullopt,
                                sim_out, sim_stamp);
        if (met->parsed())
            return cmd_metrics(met_input, met_json);
        if (cal->parsed())
            return cmd_calibrate(cal_design, cal_topology, cal_f0, cal_fbw, cal_weight, cal_down,
                                 cal_up, cal_out);
        if (tune->parsed())
            return cmd_tune(tn_design, tn_topology, tn_ca_min, tn_ca_max, tn_points, tn_rule,
                            tn_profile, tn_bias, tn_out);
        if (cmp->parsed())
            return cmd_compare(cmp_a, cmp_b, cmp_tol);
    } catch (const cc_too_small_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const unsupported_order_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const invalid_spec_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const infeasible_coupling_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const degenerate_coupling_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const degenerate_network_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const calibration_infeasible_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const unreachable_capacitance_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const bias_range_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const parse_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const io_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const error& e) {
        // no_stopband, sweep_too_narrow, floating node, line pole,
        // grid mismatch, disjoint ranges, no viable topology
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitAnalysis;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitAnalysis;
    }
    return kExitOk;
}
