#include "notchlab/tuning.hpp"

#include "notchlab/engine.hpp"
#include "notchlab/errors.hpp"
#include "notchlab/simplex.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

namespace notchlab {

namespace {

constexpr double kNoStopbandPenalty = 1e9;
constexpr int kSweepPoints = 801;

// The scalar target is blind to notch depth, and exact-bandwidth solutions
// exist where the two modes merge into a shallow, mismatch-limited dip
// whose depth then grows with added loss. A quadratic penalty below this
// rejection keeps the search on deep, true-notch solutions.
constexpr double kRejectionFloorDb = 65.0;

/// Objective-side sweep: starts at [0.4, 1.6] x f_center and widens when
/// the stopband edges fall off the grid.
StopbandMetrics metrics_for(const SynthesizedDesign& design, TopologyId topology,
                            const LossModel& loss, double ca_f, double cb_f,
                            double f_center_hz) {
    SynthesizedDesign probe = design;
    probe.practical.ca_f = ca_f;
    probe.practical.cb_f = cb_f;
    const Netlist nl = build_practical(probe, topology, loss);

    double half_span = 0.6;
    int points = kSweepPoints;
    for (int attempt = 0;; ++attempt) {
        const double fmin = std::max((1.0 - half_span) * f_center_hz, kMinFrequencyHz);
        const double fmax = (1.0 + half_span) * f_center_hz;
        try {
            return analyze(sweep(nl, fmin, fmax, points));
        } catch (const sweep_too_narrow_error&) {
            if (attempt >= 2)
                throw;
            half_span += 0.3;
            points += 400;
        }
    }
}

struct ProbeState {
    bool any_stopband = false;
};

double objective_value(const SynthesizedDesign& design, TopologyId topology,
                       const LossModel& loss, const CalibrationTarget& target,
                       double ca_f, double cb_f, ProbeState& state,
                       StopbandMetrics* out = nullptr) {
    try {
        const StopbandMetrics m =
            metrics_for(design, topology, loss, ca_f, cb_f, target.f0_target_hz);
        state.any_stopband = true;
        if (out)
            *out = m;
        const double df = (m.f_notch_hz - target.f0_target_hz) / target.f0_target_hz;
        const double dbw = (m.fbw - target.fbw_target) / target.fbw_target;
        const double shallow =
            std::max(0.0, (kRejectionFloorDb - m.rejection_db) / kRejectionFloorDb);
        return df * df + target.weight_fbw * dbw * dbw + shallow * shallow;
    } catch (const no_stopband_error&) {
        return kNoStopbandPenalty;
    } catch (const sweep_too_narrow_error&) {
        return kNoStopbandPenalty;
    }
}

} // namespace

CapBounds CapBounds::around(double ca_f, double cb_f, double down, double up) {
    return {ca_f * down, ca_f * up, cb_f * down, cb_f * up};
}

CalibrationResult calibrate(const SynthesizedDesign& design, TopologyId topology,
                            const CalibrationTarget& target, const CapBounds& bounds,
                            const LossModel& loss) {
    if (!(target.f0_target_hz > 0.0))
        throw invalid_spec_error("calibration target frequency must be positive");
    if (!(target.fbw_target > 0.0 && target.fbw_target < 1.0))
        throw invalid_spec_error("calibration target bandwidth must be in (0, 1)");
    if (!(bounds.ca_min_f > 0.0) || !(bounds.cb_min_f > 0.0) ||
        bounds.ca_min_f > bounds.ca_max_f || bounds.cb_min_f > bounds.cb_max_f)
        throw invalid_spec_error("calibration bounds must be positive, non-empty ranges");

    // Deep solutions cluster along cb ~ ca * dk / (1 - dk), the line where
    // the two mode resonances coincide. Searching in (ca, ratio-to-that-
    // line) coordinates turns the narrow curved valley into an axis-aligned
    // one the simplex can follow. cb stays clamped to its bounds.
    const double kappa = design.core.dk > 1e-9
                             ? design.core.dk / (1.0 - design.core.dk)
                             : design.practical.cb_f / design.practical.ca_f;

    auto cb_of = [&](const Eigen::VectorXd& x) {
        return std::clamp(x(1) * kappa * x(0), bounds.cb_min_f, bounds.cb_max_f);
    };

    ProbeState state;
    auto objective = [&](const Eigen::VectorXd& x) {
        return objective_value(design, topology, loss, target, x(0), cb_of(x), state);
    };

    Eigen::VectorXd x0(2), lo(2), hi(2);
    const double r0 = design.practical.cb_f / (kappa * design.practical.ca_f);
    const bool cb_pinned = bounds.cb_min_f == bounds.cb_max_f;
    x0 << design.practical.ca_f, r0;
    lo << bounds.ca_min_f, cb_pinned ? r0 : std::min(r0, 0.02);
    hi << bounds.ca_max_f, cb_pinned ? r0 : std::max(1.5 * r0, 8.0);

    // The notch-frequency term jumps whenever the identity of the deepest
    // dip changes, which can strand a single simplex in a shallow basin.
    // Restart from the best point with alternating wide and tight initial
    // simplices until the evaluation budget is spent.
    constexpr int kBudget = 500;
    static constexpr double kRestartSteps[] = {0.10, 0.35, 0.05, 0.20, 0.025};

    SimplexResult best;
    best.x = x0;
    best.fx = std::numeric_limits<double>::infinity();
    int used = 0;
    bool converged = false;
    for (double step : kRestartSteps) {
        if (used >= kBudget)
            break;
        SimplexOptions opts;
        opts.max_evals = kBudget - used;
        opts.init_step_frac = step;
        const SimplexResult run = nelder_mead_bounded(objective, best.x, lo, hi, opts);
        used += run.evals;
        if (run.fx < best.fx) {
            best = run;
            converged = run.converged;
        }
    }

    if (!state.any_stopband)
        throw calibration_infeasible_error(
            "no probed (ca, cb) point inside the bounds produced a stopband");

    CalibrationResult result;
    result.ca_f = best.x(0);
    result.cb_f = cb_of(best.x);
    result.evals = used;
    result.converged = converged;
    result.objective =
        objective_value(design, topology, loss, target, result.ca_f, result.cb_f, state,
                        &result.metrics);
    return result;
}

TuningCurve tuning_curve_caps(const SynthesizedDesign& design, TopologyId topology,
                              std::span<const double> ca_grid_f, CbRule rule,
                              const LossModel& loss) {
    if (ca_grid_f.empty())
        throw invalid_spec_error("tuning grid is empty");
    for (size_t i = 0; i + 1 < ca_grid_f.size(); ++i) {
        const bool up = ca_grid_f[1] > ca_grid_f[0];
        if ((up && !(ca_grid_f[i + 1] > ca_grid_f[i])) ||
            (!up && !(ca_grid_f[i + 1] < ca_grid_f[i])))
            throw invalid_spec_error("tuning grid must be strictly monotone");
    }

    const double fbw_target = design.spec.delta;
    TuningCurve curve;
    double cb = design.practical.cb_f;

    for (const double ca : ca_grid_f) {
        TuningRow row;
        row.control = ca;
        row.ca_f = ca;

        if (rule == CbRule::recalibrated) {
            // One-dimensional fit of cb against the bandwidth target. A
            // coarse geometric scan seeds the simplex; the carried-over cb
            // from the previous point competes as a candidate, which keeps
            // the fit in the same basin along the curve.
            ProbeState state;
            auto objective = [&](const Eigen::VectorXd& x) {
                try {
                    const StopbandMetrics m =
                        metrics_for(design, topology, loss, ca, x(0), design.spec.f0_hz);
                    state.any_stopband = true;
                    const double dbw = (m.fbw - fbw_target) / fbw_target;
                    return dbw * dbw;
                } catch (const no_stopband_error&) {
                    return kNoStopbandPenalty;
                } catch (const sweep_too_narrow_error&) {
                    return kNoStopbandPenalty;
                }
            };
            const double cb_lo = design.practical.cb_f * 0.05;
            const double cb_hi = design.practical.cb_f * 10.0;

            Eigen::VectorXd probe(1);
            probe << cb;
            double seed = cb;
            double seed_value = objective(probe);
            for (int s = 0; s <= 12; ++s) {
                probe(0) = cb_lo * std::pow(cb_hi / cb_lo, s / 12.0);
                const double value = objective(probe);
                if (value < seed_value) {
                    seed_value = value;
                    seed = probe(0);
                }
            }

            Eigen::VectorXd x0(1), lo(1), hi(1);
            x0 << seed;
            lo << cb_lo;
            hi << cb_hi;
            SimplexOptions opts;
            opts.max_evals = 100;
            opts.init_step_frac = 0.02;
            const SimplexResult fit = nelder_mead_bounded(objective, x0, lo, hi, opts);
            if (state.any_stopband)
                cb = fit.fx <= seed_value ? fit.x(0) : seed;
        }
        row.cb_f = cb;

        try {
            row.metrics = metrics_for(design, topology, loss, ca, cb, design.spec.f0_hz);
        } catch (const no_stopband_error& e) {
            row.note = e.what();
        } catch (const sweep_too_narrow_error& e) {
            row.note = e.what();
        }
        curve.rows.push_back(std::move(row));
    }
    return curve;
}

void write_tuning_csv(const TuningCurve& curve, std::ostream& out) {
    auto cell = [&](double v) {
        char buf[32];
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
        out.write(buf, ptr - buf);
    };
    out << kTuningCsvHeader << "\n";
    for (const TuningRow& row : curve.rows) {
        cell(row.control);
        out << ',';
        cell(row.ca_f);
        out << ',';
        cell(row.cb_f);
        for (int field = 0; field < 5; ++field) {
            out << ',';
            if (!row.metrics) {
                out << "nan";
                continue;
            }
            switch (field) {
            case 0: cell(row.metrics->f_notch_hz); break;
            case 1: cell(row.metrics->rejection_db); break;
            case 2: cell(row.metrics->fbw); break;
            case 3: cell(row.metrics->pb_il_db); break;
            case 4: cell(row.metrics->sb_rl_db); break;
            }
        }
        out << "\n";
    }
}

TuningCurve tuning_curve_bias(const SynthesizedDesign& design, TopologyId topology,
                              const VaractorModel& model, std::span<const BiasPoint> bias_grid) {
    if (bias_grid.empty())
        throw invalid_spec_error("bias grid is empty");

    LossModel loss;
    loss.varactor_rs_ohm = model.rs_ohm;

    TuningCurve curve;
    for (size_t i = 0; i < bias_grid.size(); ++i) {
        const BiasPoint& bias = bias_grid[i];
        TuningRow row;
        row.control = bias.v1_v;
        try {
            row.ca_f = capacitance(model, bias.v1_v);
            row.cb_f = anti_series(model, bias.v2_v).c_eff_f;
        } catch (const bias_range_error& e) {
            throw bias_range_error("row " + std::to_string(i) + ": " + e.what());
        }

        try {
            row.metrics = metrics_for(design, topology, loss, row.ca_f, row.cb_f,
                                      design.spec.f0_hz);
        } catch (const no_stopband_error& e) {
            row.note = e.what();
        } catch (const sweep_too_narrow_error& e) {
            row.note = e.what();
        }
        curve.rows.push_back(std::move(row));
    }
    return curve;
}

} // namespace notchlab
