#pragma once

#include <Eigen/Dense>
#include <functional>

namespace liftkin {

struct ScalarMinimum {
    double x = 0.0;
    double fx = 0.0;
    bool flat = false;          ///< objective indistinguishable from constant
    bool non_unimodal = false;  ///< grid pre-scan found multiple local minima
};

/// Golden-section minimization on [lo, hi] to relative tolerance rel_tol.
/// A coarse pre-scan (n_scan points) guards against multimodality: if several
/// separated local minima are found, the search brackets the global one and
/// the non_unimodal flag is set. A flat objective returns the midpoint.
ScalarMinimum golden_section_minimize(const std::function<double(double)>& f,
                                      double lo, double hi,
                                      double rel_tol = 1e-8, int n_scan = 65);

struct SimplexMinimum {
    Eigen::VectorXd x;
    double fx = 0.0;
    int iterations = 0;
};

/// Nelder-Mead simplex minimization (standard reflection/expansion/contraction
/// coefficients). Tolerances are on simplex diameter and function spread.
SimplexMinimum nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                           const Eigen::VectorXd& x0, double initial_step = 0.5,
                           double x_tol = 1e-9, double f_tol = 1e-12,
                           int max_iter = 5000);

} // namespace liftkin
