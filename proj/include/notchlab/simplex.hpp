#pragma once

#include <Eigen/Core>

#include <functional>

namespace notchlab {

/// Bounded derivative-free simplex search (reflection / expansion /
/// contraction / shrink with clamping to the box). Deterministic: fixed
/// initialization, no randomness. Dimensions with lo == hi are pinned.
struct SimplexOptions {
    int max_evals = 500;
    double rel_tol = 1e-4;        ///< simplex size relative to the box width
    double init_step_frac = 0.10; ///< first simplex edge as a box fraction
};

struct SimplexResult {
    Eigen::VectorXd x;
    double fx = 0.0;
    int evals = 0;
    bool converged = false;
};

SimplexResult nelder_mead_bounded(const std::function<double(const Eigen::VectorXd&)>& objective,
                                  Eigen::VectorXd x0, Eigen::VectorXd lo, Eigen::VectorXd hi,
                                  const SimplexOptions& options = {});

} // namespace notchlab
