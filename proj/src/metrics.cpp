#include "notchlab/metrics.hpp"

#include "notchlab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace notchlab {

namespace {

constexpr double kMagFloor = 1e-18; // keeps log10 finite at exact zeros

double to_db(double magnitude) {
    return 20.0 * std::log10(std::max(magnitude, kMagFloor));
}

/// Vertex of the parabola through three samples; returns the middle point
/// when the data is not locally convex. `f` may be non-uniform.
struct Vertex {
    double f;
    double value;
};

Vertex parabola_vertex(double f0, double y0, double f1, double y1, double f2, double y2) {
    // Newton form: y(f) = y0 + d0 (f - f0) + a (f - f0)(f - f1).
    const double d0 = (y1 - y0) / (f1 - f0);
    const double d1 = (y2 - y1) / (f2 - f1);
    const double a = (d1 - d0) / (f2 - f0);
    if (!(a > 0.0))
        return {f1, y1};
    double fv = 0.5 * (f0 + f1) - d0 / (2.0 * a);
    fv = std::clamp(fv, f0, f2);
    const double value = y0 + d0 * (fv - f0) + a * (fv - f0) * (fv - f1);
    return {fv, value};
}

} // namespace

StopbandMetrics analyze(const FrequencyResponse& resp, const AnalyzeOptions& options) {
    const Eigen::Index n = resp.size();
    if (n < 3)
        throw sweep_too_narrow_error("at least three swept points are required");

    Eigen::ArrayXd s21_db(n);
    for (Eigen::Index i = 0; i < n; ++i)
        s21_db(i) = to_db(std::abs(resp.s21(i)));

    Eigen::Index imin = 0;
    s21_db.minCoeff(&imin);
    if (s21_db(imin) > -3.0)
        throw no_stopband_error("no swept point reaches the -3 dB stopband threshold");

    StopbandMetrics m;

    // Notch refinement.
    if (imin > 0 && imin < n - 1) {
        const Vertex v = parabola_vertex(resp.freqs_hz(imin - 1), s21_db(imin - 1),
                                         resp.freqs_hz(imin), s21_db(imin),
                                         resp.freqs_hz(imin + 1), s21_db(imin + 1));
        m.f_notch_hz = v.f;
        m.rejection_db = -std::min(v.value, s21_db(imin));
    } else {
        m.f_notch_hz = resp.freqs_hz(imin);
        m.rejection_db = -s21_db(imin);
    }

    // -3 dB edges bracketing the notch.
    Eigen::Index lo = imin;
    while (lo > 0 && s21_db(lo) <= -3.0)
        --lo;
    if (s21_db(lo) <= -3.0)
        throw sweep_too_narrow_error("lower stopband edge lies below the grid start");
    m.f_lo_hz = resp.freqs_hz(lo) + (-3.0 - s21_db(lo)) *
                                        (resp.freqs_hz(lo + 1) - resp.freqs_hz(lo)) /
                                        (s21_db(lo + 1) - s21_db(lo));

    Eigen::Index hi = imin;
    while (hi < n - 1 && s21_db(hi) <= -3.0)
        ++hi;
    if (s21_db(hi) <= -3.0)
        throw sweep_too_narrow_error("upper stopband edge lies above the grid end");
    m.f_hi_hz = resp.freqs_hz(hi - 1) + (-3.0 - s21_db(hi - 1)) *
                                            (resp.freqs_hz(hi) - resp.freqs_hz(hi - 1)) /
                                            (s21_db(hi) - s21_db(hi - 1));

    m.fbw = (m.f_hi_hz - m.f_lo_hz) / m.f_notch_hz;

    // Worst insertion loss outside the margin-widened stopband.
    const double pb_left = (1.0 - options.passband_margin) * m.f_lo_hz;
    const double pb_right = (1.0 + options.passband_margin) * m.f_hi_hz;
    double worst = 0.0;
    bool any_pb = false;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (resp.freqs_hz(i) <= pb_left || resp.freqs_hz(i) >= pb_right) {
            any_pb = true;
            worst = std::max(worst, -s21_db(i));
        }
    }
    if (!any_pb)
        throw sweep_too_narrow_error("no swept point lies in a passband region");
    m.pb_il_db = worst;

    // Return loss at the sample nearest the refined notch.
    Eigen::Index nearest = imin;
    if (imin > 0 && std::fabs(resp.freqs_hz(imin - 1) - m.f_notch_hz) <
                        std::fabs(resp.freqs_hz(nearest) - m.f_notch_hz))
        nearest = imin - 1;
    if (imin < n - 1 && std::fabs(resp.freqs_hz(imin + 1) - m.f_notch_hz) <
                            std::fabs(resp.freqs_hz(nearest) - m.f_notch_hz))
        nearest = imin + 1;
    m.sb_rl_db = -to_db(std::abs(resp.s11(nearest)));

    // Deep local minima (mode frequencies).
    for (Eigen::Index i = 1; i < n - 1; ++i) {
        if (s21_db(i) > -options.mode_threshold_db)
            continue;
        if (s21_db(i) < s21_db(i - 1) && s21_db(i) <= s21_db(i + 1)) {
            const Vertex v = parabola_vertex(resp.freqs_hz(i - 1), s21_db(i - 1),
                                             resp.freqs_hz(i), s21_db(i),
                                             resp.freqs_hz(i + 1), s21_db(i + 1));
            m.modes_hz.push_back(v.f);
        }
    }

    return m;
}

std::vector<FieldComparison> compare(const StopbandMetrics& a, const StopbandMetrics& b,
                                     const MetricsTolerances& tol) {
    std::vector<FieldComparison> report;
    auto rel = [&](const char* name, double va, double vb, double t) {
        const double scale = std::max(std::fabs(va), std::fabs(vb));
        const double dev = scale > 0.0 ? std::fabs(va - vb) / scale : 0.0;
        report.push_back({name, va, vb, dev, t, dev <= t});
    };
    auto abs = [&](const char* name, double va, double vb, double t) {
        const double dev = std::fabs(va - vb);
        report.push_back({name, va, vb, dev, t, dev <= t});
    };

    rel("f_notch_hz", a.f_notch_hz, b.f_notch_hz, tol.f_notch_rel);
    abs("rejection_db", a.rejection_db, b.rejection_db, tol.rejection_db_abs);
    rel("f_lo_hz", a.f_lo_hz, b.f_lo_hz, tol.edges_rel);
    rel("f_hi_hz", a.f_hi_hz, b.f_hi_hz, tol.edges_rel);
    abs("fbw", a.fbw, b.fbw, tol.fbw_abs);
    abs("pb_il_db", a.pb_il_db, b.pb_il_db, tol.pb_il_db_abs);
    abs("sb_rl_db", a.sb_rl_db, b.sb_rl_db, tol.sb_rl_db_abs);
    return report;
}

} // namespace notchlab
