#include "liftkin/optimize.hpp"

#include "liftkin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace liftkin {

ScalarMinimum golden_section_minimize(const std::function<double(double)>& f,
                                      double lo, double hi, double rel_tol,
                                      int n_scan) {
    if (!(hi >= lo))
        throw InvalidParameter("golden_section_minimize: empty interval");
    ScalarMinimum out;
    if (hi == lo) {
        out.x = lo;
        out.fx = f(lo);
        return out;
    }

    // Pre-scan: locate the global grid minimum and detect extra local minima.
    std::vector<double> xs(static_cast<std::size_t>(n_scan)), fs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_scan - 1);
        fs[i] = f(xs[i]);
    }
    const double fmin = *std::min_element(fs.begin(), fs.end());
    const double fmax = *std::max_element(fs.begin(), fs.end());
    if (fmax - fmin <= 1e-14 * std::max(1.0, std::abs(fmax))) {
        out.x = 0.5 * (lo + hi);
        out.fx = f(out.x);
        out.flat = true;
        return out;
    }
    std::size_t ibest = 0;
    int n_local = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (fs[i] < fs[ibest])
            ibest = i;
        const bool left_up = (i == 0) || fs[i] < fs[i - 1];
        const bool right_up = (i + 1 == xs.size()) || fs[i] <= fs[i + 1];
        if (i > 0 && i + 1 < xs.size() && left_up && right_up)
            ++n_local;
    }
    out.non_unimodal = n_local > 1;

    double a = (ibest == 0) ? xs[0] : xs[ibest - 1];
    double b = (ibest + 1 == xs.size()) ? xs.back() : xs[ibest + 1];

    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > rel_tol * std::max(1.0, std::abs(a) + std::abs(b))) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    out.x = 0.5 * (a + b);
    out.fx = f(out.x);
    return out;
}

SimplexMinimum nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                           const Eigen::VectorXd& x0, double initial_step,
                           double x_tol, double f_tol, int max_iter) {
    using Eigen::VectorXd;
    const int n = static_cast<int>(x0.size());
    std::vector<VectorXd> simplex(static_cast<std::size_t>(n + 1), x0);
    std::vector<double> fv(static_cast<std::size_t>(n + 1));
    for (int i = 0; i < n; ++i)
        simplex[static_cast<std::size_t>(i + 1)](i) += initial_step;
    for (std::size_t i = 0; i < simplex.size(); ++i)
        fv[i] = f(simplex[i]);

    auto order = [&] {
        std::vector<std::size_t> idx(simplex.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        std::vector<VectorXd> s2;
        std::vector<double> f2;
        for (auto i : idx) {
            s2.push_back(simplex[i]);
            f2.push_back(fv[i]);
        }
        simplex = std::move(s2);
        fv = std::move(f2);
    };

    SimplexMinimum out;
    int it = 0;
    for (; it < max_iter; ++it) {
        order();
        double diam = 0.0;
        for (std::size_t i = 1; i < simplex.size(); ++i)
            diam = std::max(diam, (simplex[i] - simplex[0]).norm());
        if (diam < x_tol && std::abs(fv.back() - fv.front()) < f_tol)
            break;

        VectorXd centroid = VectorXd::Zero(n);
        for (std::size_t i = 0; i + 1 < simplex.size(); ++i)
            centroid += simplex[i];
        centroid /= static_cast<double>(n);

        const VectorXd xr = centroid + (centroid - simplex.back());
        const double fr = f(xr);
        if (fr < fv[0]) {
            const VectorXd xe = centroid + 2.0 * (centroid - simplex.back());
            const double fe = f(xe);
            if (fe < fr) {
                simplex.back() = xe;
                fv.back() = fe;
            } else {
                simplex.back() = xr;
                fv.back() = fr;
            }
        } else if (fr < fv[fv.size() - 2]) {
            simplex.back() = xr;
            fv.back() = fr;
        } else {
            const VectorXd xc = centroid + 0.5 * (simplex.back() - centroid);
            const double fc = f(xc);
            if (fc < fv.back()) {
                simplex.back() = xc;
                fv.back() = fc;
            } else {
                for (std::size_t i = 1; i < simplex.size(); ++i) {
                    simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0]);
                    fv[i] = f(simplex[i]);
                }
            }
        }
    }
    order();
    out.x = simplex[0];
    out.fx = fv[0];
    out.iterations = it;
    return out;
}

} // namespace liftkin
