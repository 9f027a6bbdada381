#include "notchlab/simplex.hpp"

#include "notchlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace notchlab {

namespace {

struct Vertex {
    Eigen::VectorXd x;
    double f;
};

} // namespace

SimplexResult nelder_mead_bounded(const std::function<double(const Eigen::VectorXd&)>& objective,
                                  Eigen::VectorXd x0, Eigen::VectorXd lo, Eigen::VectorXd hi,
                                  const SimplexOptions& options) {
    const Eigen::Index dim = x0.size();
    if (lo.size() != dim || hi.size() != dim)
        throw error("simplex bounds must match the dimension of the start point");
    for (Eigen::Index d = 0; d < dim; ++d)
        if (!(lo(d) <= hi(d)))
            throw error("simplex bounds must satisfy lo <= hi");

    auto clamp_box = [&](Eigen::VectorXd v) {
        for (Eigen::Index d = 0; d < dim; ++d)
            v(d) = std::clamp(v(d), lo(d), hi(d));
        return v;
    };
    x0 = clamp_box(std::move(x0));

    std::vector<Eigen::Index> free_dims;
    for (Eigen::Index d = 0; d < dim; ++d)
        if (hi(d) > lo(d))
            free_dims.push_back(d);

    SimplexResult result;
    result.x = x0;

    if (free_dims.empty()) {
        result.fx = objective(x0);
        result.evals = 1;
        result.converged = true;
        return result;
    }

    // Initial simplex: x0 plus one displaced vertex per free dimension.
    std::vector<Vertex> simplex;
    simplex.push_back({x0, objective(x0)});
    int evals = 1;
    for (Eigen::Index d : free_dims) {
        Eigen::VectorXd v = x0;
        double step = options.init_step_frac * (hi(d) - lo(d));
        if (v(d) + step > hi(d))
            step = -step;
        v(d) = std::clamp(v(d) + step, lo(d), hi(d));
        simplex.push_back({v, objective(v)});
        ++evals;
    }

    auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
    std::sort(simplex.begin(), simplex.end(), by_value);

    const size_t nv = simplex.size();
    constexpr double alpha = 1.0; // reflection
    constexpr double gamma = 2.0; // expansion
    constexpr double rho = 0.5;   // contraction
    constexpr double sigma = 0.5; // shrink

    auto simplex_size = [&]() {
        double worst = 0.0;
        for (size_t i = 1; i < nv; ++i)
            for (Eigen::Index d : free_dims)
                worst = std::max(worst,
                                 std::fabs(simplex[i].x(d) - simplex[0].x(d)) / (hi(d) - lo(d)));
        return worst;
    };

    bool converged = false;
    while (evals < options.max_evals) {
        if (simplex_size() < options.rel_tol) {
            converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
        for (size_t i = 0; i + 1 < nv; ++i)
            centroid += simplex[i].x;
        centroid /= static_cast<double>(nv - 1);

        const Vertex& worst = simplex.back();
        const Eigen::VectorXd reflected = clamp_box(centroid + alpha * (centroid - worst.x));
        const double f_reflected = objective(reflected);
        ++evals;

        if (f_reflected < simplex[0].f) {
            const Eigen::VectorXd expanded = clamp_box(centroid + gamma * (reflected - centroid));
            if (evals < options.max_evals) {
                const double f_expanded = objective(expanded);
                ++evals;
                simplex.back() =
                    f_expanded < f_reflected ? Vertex{expanded, f_expanded} : Vertex{reflected, f_reflected};
            } else {
                simplex.back() = {reflected, f_reflected};
            }
        } else if (f_reflected < simplex[nv - 2].f) {
            simplex.back() = {reflected, f_reflected};
        } else {
            const Eigen::VectorXd contracted = clamp_box(centroid + rho * (worst.x - centroid));
            double f_contracted = std::numeric_limits<double>::infinity();
            if (evals < options.max_evals) {
                f_contracted = objective(contracted);
                ++evals;
            }
            if (f_contracted < worst.f) {
                simplex.back() = {contracted, f_contracted};
            } else {
                // Shrink towards the best vertex.
                for (size_t i = 1; i < nv && evals < options.max_evals; ++i) {
                    simplex[i].x = clamp_box(simplex[0].x + sigma * (simplex[i].x - simplex[0].x));
                    simplex[i].f = objective(simplex[i].x);
                    ++evals;
                }
            }
        }

        std::sort(simplex.begin(), simplex.end(), by_value);
    }

    result.x = simplex[0].x;
    result.fx = simplex[0].f;
    result.evals = evals;
    result.converged = converged;
    return result;
}

} // namespace notchlab
