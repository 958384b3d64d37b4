#include "rfladder/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace rfladder {

namespace {

void project(Eigen::VectorXd& x, const NelderMeadOptions& o) {
    if (o.lower_bounds.size() == x.size()) {
        x = x.cwiseMax(o.lower_bounds);
    }
    if (o.upper_bounds.size() == x.size()) {
        x = x.cwiseMin(o.upper_bounds);
    }
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                             const Eigen::VectorXd& x0, const NelderMeadOptions& options) {
    const Eigen::Index dim = x0.size();
    const int n_vertices = static_cast<int>(dim) + 1;

    // Standard coefficients: reflection, expansion, contraction, shrink.
    constexpr double rho = 1.0;
    constexpr double chi = 2.0;
    constexpr double gamma = 0.5;
    constexpr double sigma = 0.5;

    std::vector<Eigen::VectorXd> verts(n_vertices, x0);
    std::vector<double> fvals(n_vertices);
    for (int i = 1; i < n_vertices; ++i) {
        double step = 1e-3;
        if (options.initial_step.size() == dim) {
            step = options.initial_step[i - 1];
        }
        if (step == 0.0) {
            step = 1e-8;
        }
        verts[i][i - 1] += step;
        project(verts[i], options);
    }
    project(verts[0], options);
    for (int i = 0; i < n_vertices; ++i) {
        fvals[i] = objective(verts[i]);
    }

    // Index order with stable ties keeps the search deterministic.
    std::vector<int> order(n_vertices);
    std::iota(order.begin(), order.end(), 0);
    auto sort_order = [&] {
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return fvals[a] < fvals[b]; });
    };

    NelderMeadResult result;
    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        sort_order();
        const int best = order[0];
        const int worst = order[n_vertices - 1];
        const int second_worst = order[n_vertices - 2];

        const double f_best = fvals[best];
        const double f_worst = fvals[worst];
        if (std::isfinite(f_worst)) {  // infinite vertices mark infeasible points
            const double spread = std::abs(f_worst - f_best);
            if (spread <= options.f_tol_rel * (std::abs(f_best) + std::abs(f_worst)) ||
                (f_best == 0.0 && f_worst == 0.0)) {
                result.converged = true;
                break;
            }
        }
        if (options.x_tol.size() == dim) {
            bool small = true;
            for (Eigen::Index k = 0; k < dim && small; ++k) {
                double lo = verts[0][k];
                double hi = verts[0][k];
                for (int i = 1; i < n_vertices; ++i) {
                    lo = std::min(lo, verts[i][k]);
                    hi = std::max(hi, verts[i][k]);
                }
                small = (hi - lo) <= options.x_tol[k];
            }
            if (small) {
                result.converged = true;
                break;
            }
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
        for (int i = 0; i < n_vertices; ++i) {
            if (i != worst) {
                centroid += verts[i];
            }
        }
        centroid /= static_cast<double>(dim);

        Eigen::VectorXd reflect = centroid + rho * (centroid - verts[worst]);
        project(reflect, options);
        const double f_reflect = objective(reflect);

        if (f_reflect < fvals[best]) {
            Eigen::VectorXd expand = centroid + chi * (reflect - centroid);
            project(expand, options);
            const double f_expand = objective(expand);
            if (f_expand < f_reflect) {
                verts[worst] = expand;
                fvals[worst] = f_expand;
            } else {
                verts[worst] = reflect;
                fvals[worst] = f_reflect;
            }
        } else if (f_reflect < fvals[second_worst]) {
            verts[worst] = reflect;
            fvals[worst] = f_reflect;
        } else {
            const bool outside = f_reflect < fvals[worst];
            Eigen::VectorXd contract =
                outside ? Eigen::VectorXd(centroid + gamma * (reflect - centroid))
                        : Eigen::VectorXd(centroid - gamma * (centroid - verts[worst]));
            project(contract, options);
            const double f_contract = objective(contract);
            if (f_contract < std::min(f_reflect, fvals[worst])) {
                verts[worst] = contract;
                fvals[worst] = f_contract;
            } else {
                for (int i = 0; i < n_vertices; ++i) {
                    if (i == best) {
                        continue;
                    }
                    verts[i] = verts[best] + sigma * (verts[i] - verts[best]);
                    project(verts[i], options);
                    fvals[i] = objective(verts[i]);
                }
            }
        }
    }

    sort_order();
    result.x = verts[order[0]];
    result.f = fvals[order[0]];
    result.iterations = iter;
    return result;
}

}  // namespace rfladder
