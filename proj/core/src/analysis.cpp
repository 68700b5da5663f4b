#include "liftkin/analysis.hpp"

#include "liftkin/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace liftkin {

void GaussianLaw::validate() const {
    if (cov.rows() != cov.cols() || mean.size() != cov.rows())
        throw InvalidParameter("GaussianLaw: shape mismatch");
    const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw InvalidParameter("GaussianLaw: covariance not symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix> es(cov, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-12 * scale)
        throw InvalidParameter("GaussianLaw: covariance not PSD");
}

GaussianLaw stationary_law(const DriftSystem& sys) {
    GaussianLaw law;
    law.mean = Vector::Zero(sys.A.rows());
    law.cov = stationary_covariance(sys);
    return law;
}

GaussianLaw propagate_law(const DriftSystem& sys, const GaussianLaw& law0, double t) {
    if (t < 0.0)
        throw InvalidParameter("propagate_law: t must be >= 0");
    const Matrix E = expm(t * sys.A);
    GaussianLaw law;
    law.mean = E * law0.mean;
    law.cov = E * law0.cov * E.transpose() +
              ou_covariance(sys.A, sys.Sigma * sys.Sigma.transpose(), t);
    law.cov = 0.5 * (law.cov + law.cov.transpose());
    return law;
}

double chi_square_norm(const GaussianLaw& law, const GaussianLaw& target) {
    const auto n = law.mean.size();
    if (target.mean.size() != n)
        throw InvalidParameter("chi_square_norm: dimension mismatch");

    Eigen::LLT<Matrix> llt_cov(law.cov);
    Eigen::LLT<Matrix> llt_tgt(target.cov);
    if (llt_cov.info() != Eigen::Success || llt_tgt.info() != Eigen::Success)
        throw NotSquareIntegrable("chi_square_norm: covariance not positive definite");

    // integrability of the squared ratio: 2 cov^{-1} - target_cov^{-1} > 0,
    // equivalently 2 target_cov - cov > 0
    Eigen::LLT<Matrix> llt_g(2.0 * target.cov - law.cov);
    if (llt_g.info() != Eigen::Success)
        throw NotSquareIntegrable("chi_square_norm: squared density ratio not integrable");

    const Matrix I = Matrix::Identity(n, n);
    const Matrix P1 = llt_cov.solve(I);  // cov^{-1}
    const Matrix P0 = llt_tgt.solve(I);  // target_cov^{-1}
    const Matrix Mmat = 2.0 * P1 - P0;

    // |target|^{1/2} |cov|^{-1} |M|^{-1/2} = det(I - D^2)^{-1/2} with
    // D = target_cov^{-1} (target_cov - cov). Forming the difference first
    // keeps full absolute precision deep in the decay where both covariances
    // coincide to machine accuracy and the three log-dets would cancel.
    const Matrix D = llt_tgt.solve(target.cov - law.cov);
    const double det = (I - D * D).partialPivLu().determinant();
    const double log_pref = -0.5 * std::log1p(det - 1.0);

    // int p^2/q = pref * exp(b^T M^{-1} b / 2 - c)
    const Vector b = 2.0 * (P1 * law.mean) - P0 * target.mean;
    const double c = law.mean.dot(P1 * law.mean) - 0.5 * target.mean.dot(P0 * target.mean);
    const double expo = 0.5 * b.dot(Mmat.llt().solve(b)) - c;
    // expm1 keeps full precision where the density ratio is ~1
    return std::expm1(log_pref + expo);
}

void fit_exponential(DecayCurve& curve, std::optional<std::pair<double, double>> window) {
    if (curve.times.size() < 2)
        throw InvalidParameter("fit_exponential: need at least two samples");
    double lo, hi;
    if (window) {
        lo = window->first;
        hi = window->second;
    } else {
        hi = curve.times.back();
        lo = 0.5 * (curve.times.front() + hi);
    }

    double sw = 0, st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        const double t = curve.times[i];
        if (t < lo - 1e-12 || t > hi + 1e-12)
            continue;
        const double v = curve.values[i];
        if (!(v > 0.0))
            continue;
        const double y = std::log(v);
        sw += 1;
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
    }
    if (sw < 2)
        throw InsufficientData("fit_exponential: fewer than two usable points in window");
    const double denom = sw * stt - st * st;
    const double slope = (sw * sty - st * sy) / denom;
    const double intercept = (sy - slope * st) / sw;
    curve.fitted_rate = -slope;
    curve.fitted_prefactor = std::exp(intercept);
    curve.fit_window_lo = lo;
    curve.fit_window_hi = hi;
}

DecayCurve decay_curve(const DriftSystem& sys, const GaussianLaw& law0,
                       const GaussianLaw& target, const std::vector<double>& times,
                       std::optional<std::pair<double, double>> fit_window) {
    DecayCurve curve;
    curve.times = times;
    curve.values.reserve(times.size());
    for (double t : times)
        curve.values.push_back(std::sqrt(std::max(0.0, chi_square_norm(propagate_law(sys, law0, t), target))));
    fit_exponential(curve, fit_window);
    return curve;
}

DecayCurve time_averaged_energy(const DecayCurve& curve, double T) {
    if (!(T > 0.0))
        throw InvalidParameter("time_averaged_energy: T must be positive");
    const auto& ts = curve.times;
    if (ts.size() < 2 || ts.back() - ts.front() < T)
        throw WindowOutOfRange("time_averaged_energy: window longer than the grid");

    // squared values, linearly interpolated between grid points
    std::vector<double> sq(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i)
        sq[i] = curve.values[i] * curve.values[i];
    auto sq_at = [&](double t) {
        auto it = std::upper_bound(ts.begin(), ts.end(), t);
        std::size_t j = static_cast<std::size_t>(std::distance(ts.begin(), it));
        if (j == 0)
            return sq.front();
        if (j >= ts.size())
            return sq.back();
        const double w = (t - ts[j - 1]) / (ts[j] - ts[j - 1]);
        return (1.0 - w) * sq[j - 1] + w * sq[j];
    };
    // exact integral of the piecewise-linear interpolant over [a, a+T]
    auto window_integral = [&](double a) {
        const double b = a + T;
        double acc = 0.0;
        double t_prev = a, f_prev = sq_at(a);
        for (std::size_t j = 0; j < ts.size(); ++j) {
            if (ts[j] <= a)
                continue;
            if (ts[j] >= b)
                break;
            acc += 0.5 * (f_prev + sq[j]) * (ts[j] - t_prev);
            t_prev = ts[j];
            f_prev = sq[j];
        }
        acc += 0.5 * (f_prev + sq_at(b)) * (b - t_prev);
        return acc;
    };

    DecayCurve out;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts[i] + T > ts.back() + 1e-12)
            break;
        out.times.push_back(ts[i]);
        out.values.push_back(window_integral(ts[i]) / T);
    }
    if (out.times.empty())
        throw WindowOutOfRange("time_averaged_energy: no admissible window start");
    if (out.times.size() >= 2)
        fit_exponential(out);
    return out;
}

DecayCurve empirical_autocov(const Ensemble& ens, const Observable& g,
                             const std::vector<int>& lags) {
    const auto n_times = ens.times.size();
    if (n_times < 2)
        throw InsufficientData("empirical_autocov: need at least two time points");
    const double dt = ens.times[1] - ens.times[0];
    for (std::size_t i = 1; i < n_times; ++i)
        if (std::abs(ens.times[i] - ens.times[i - 1] - dt) > 1e-9 * std::max(1.0, dt))
            throw InvalidParameter("empirical_autocov: time grid must be uniform");

    const int max_lag = *std::max_element(lags.begin(), lags.end());
    if (max_lag >= static_cast<int>(n_times))
        throw InvalidParameter("empirical_autocov: lag exceeds grid");
    const long n_origins = static_cast<long>(n_times) - max_lag;
    if (static_cast<long>(ens.n_traj) * n_origins < 100)
        throw InsufficientData("empirical_autocov: fewer than 100 trajectory-origin pairs");

    // observable values, then per-trajectory lagged products
    std::vector<double> gv(static_cast<std::size_t>(ens.n_traj) * n_times);
    for (int i = 0; i < ens.n_traj; ++i)
        for (std::size_t k = 0; k < n_times; ++k)
            gv[static_cast<std::size_t>(i) * n_times + k] = g(ens.state(i, static_cast<int>(k)));

    double grand_mean = 0.0;
    for (double v : gv)
        grand_mean += v;
    grand_mean /= static_cast<double>(gv.size());

    DecayCurve out;
    std::vector<double> per_traj(static_cast<std::size_t>(ens.n_traj));
    for (int lag : lags) {
        for (int i = 0; i < ens.n_traj; ++i) {
            double s = 0.0;
            const double* row = gv.data() + static_cast<std::size_t>(i) * n_times;
            for (long k = 0; k + lag < static_cast<long>(n_times); ++k)
                s += (row[k] - grand_mean) * (row[k + lag] - grand_mean);
            per_traj[static_cast<std::size_t>(i)] =
                s / static_cast<double>(static_cast<long>(n_times) - lag);
        }
        double mean = 0.0;
        for (double v : per_traj)
            mean += v;
        mean /= static_cast<double>(ens.n_traj);
        double var = 0.0;
        for (double v : per_traj)
            var += (v - mean) * (v - mean);
        // jackknife-over-trajectories standard error (equals the standard
        // error of the trajectory mean for this linear statistic)
        const double se = std::sqrt(var / (static_cast<double>(ens.n_traj) *
                                           std::max(1.0, static_cast<double>(ens.n_traj - 1))));
        out.times.push_back(lag * dt);
        out.values.push_back(mean);
        out.std_errors.push_back(se);
    }
    if (out.times.size() >= 2) {
        DecayCurve positive;
        positive.times = out.times;
        positive.values = out.values;
        try {
            fit_exponential(positive);
            out.fitted_rate = positive.fitted_rate;
            out.fitted_prefactor = positive.fitted_prefactor;
            out.fit_window_lo = positive.fit_window_lo;
            out.fit_window_hi = positive.fit_window_hi;
        } catch (const InsufficientData&) {
            // autocovariances can go negative; leave the fit fields at zero
        }
    }
    return out;
}

} // namespace liftkin
