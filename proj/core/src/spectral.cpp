#include "liftkin/spectral.hpp"

#include "liftkin/errors.hpp"
#include "liftkin/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace liftkin {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

/// Greedy multiset distance between two eigenvalue triples.
double multiset_distance(std::array<std::complex<double>, 3> a,
                         std::vector<std::complex<double>> b) {
    double worst = 0.0;
    for (const auto& x : a) {
        std::size_t jbest = 0;
        double dbest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < b.size(); ++j) {
            const double d = std::abs(x - b[j]);
            if (d < dbest) {
                dbest = d;
                jbest = j;
            }
        }
        worst = std::max(worst, dbest);
        b.erase(b.begin() + static_cast<std::ptrdiff_t>(jbest));
    }
    return worst;
}

bool is_gle_block(const DriftSystem& sys) {
    return sys.blocks.size() == 3 && sys.blocks[0] == 'x' && sys.blocks[1] == 'v' &&
           sys.blocks[2] == 'z';
}

} // namespace

GleCubic gle_alpha_beta(double a, double b) {
    GleCubic c;
    c.alpha = b / 2.0 + b * b * b / 27.0 - b * (a * a + 1.0) / 6.0;
    c.beta = a * a / 3.0 - b * b / 9.0 + 1.0 / 3.0;
    return c;
}

GleEigenvalues gle_eigenvalues_closed_form(double m, double a, double b) {
    if (!(m > 0.0))
        throw InvalidParameter("gle_eigenvalues_closed_form: m must be positive");
    if (!(a > 0.0) || b < 0.0)
        throw InvalidParameter("gle_eigenvalues_closed_form: need a > 0, b >= 0");

    const auto [alpha, beta] = gle_alpha_beta(a, b);
    const double sqm = std::sqrt(m);
    const double scale = std::max(1.0, b / 3.0 + a);

    GleEigenvalues out;

    // Roots of y^3 + 3 beta y + 2 alpha are bounded by ~cbrt(2|alpha|) +
    // sqrt(3|beta|). When that bound is at floating-noise level, the
    // coefficients are indistinguishable from the triple-root configuration
    // alpha = beta = 0, where the radical formula is 0/0; report the
    // defective triple root exactly.
    const double split_bound =
        std::cbrt(2.0 * std::abs(alpha)) + std::sqrt(3.0 * std::abs(beta));
    if (split_bound <= 5e-5 * scale) {
        const std::complex<double> mu{-sqm * b / 3.0, 0.0};
        out.roots = {mu, mu, mu};
        out.branch_ambiguity = true;
        return out;
    }

    const double disc = alpha * alpha + beta * beta * beta;
    std::complex<double> w;
    if (std::abs(beta) <= 1e-14 * scale * scale) {
        // beta ~ 0: the radical collapses (w -> 0 for alpha > 0); solve
        // y^3 = -2 alpha directly.
        const double y1 = std::cbrt(-2.0 * alpha);
        const std::complex<double> om{-0.5, std::sqrt(3.0) / 2.0};
        out.roots = {sqm * (std::complex<double>(-b / 3.0 + y1)),
                     sqm * (-b / 3.0 + y1 * om),
                     sqm * (-b / 3.0 + y1 * std::conj(om))};
        out.branch_ambiguity = true;
    } else {
        if (disc >= 0.0) {
            // real branch; rationalized for alpha > 0 where sqrt(disc) - alpha
            // would cancel
            const double w3 = (alpha > 0.0)
                                  ? beta * beta * beta / (std::sqrt(disc) + alpha)
                                  : std::sqrt(disc) - alpha;
            w = std::cbrt(w3);
        } else {
            const std::complex<double> rad = kI * std::sqrt(-disc) - alpha;
            w = std::pow(rad, 1.0 / 3.0); // principal branch
        }
        const std::complex<double> y1 = w - beta / w;
        const std::complex<double> y2 =
            (1.0 - kI * std::sqrt(3.0)) * beta / (2.0 * w) -
            (1.0 + kI * std::sqrt(3.0)) * w / 2.0;
        const std::complex<double> y3 =
            (1.0 + kI * std::sqrt(3.0)) * beta / (2.0 * w) -
            (1.0 - kI * std::sqrt(3.0)) * w / 2.0;
        out.roots = {sqm * (-b / 3.0 + y1), sqm * (-b / 3.0 + y2), sqm * (-b / 3.0 + y3)};
    }

    // Cross-check against the dense eigensolver. Near-defective spectra are
    // only determined up to the cube root of the coefficient noise, so the
    // comparison widens accordingly.
    Matrix A{{0.0, 1.0, 0.0}, {-m, 0.0, a * sqm}, {0.0, -a * sqm, -b * sqm}};
    const auto numeric = eigenvalues(A);
    const double tol = std::max(1e-6 * sqm * scale, 10.0 * sqm * split_bound);
    if (multiset_distance(out.roots, numeric) > tol) {
        out.roots = {numeric[0], numeric[1], numeric[2]};
        out.numeric_fallback = true;
    }
    return out;
}

double spectral_gap(const DriftSystem& sys) {
    double gap;
    if (is_gle_block(sys)) {
        const double sqm = std::sqrt(sys.m);
        const double a = sys.A(1, 2) / sqm;
        const double b = -sys.A(2, 2) / sqm;
        const auto ev = gle_eigenvalues_closed_form(sys.m, a, b);
        gap = std::numeric_limits<double>::infinity();
        for (const auto& mu : ev.roots)
            gap = std::min(gap, -mu.real());
    } else {
        gap = std::numeric_limits<double>::infinity();
        for (const auto& mu : eigenvalues(sys.A))
            gap = std::min(gap, -mu.real());
    }
    const double scale = std::max(1.0, sys.A.cwiseAbs().maxCoeff());
    if (std::abs(gap) <= 1e-10 * scale)
        return 0.0; // marginally stable
    return gap;
}

NormalizedDrift normalize_drift(const DriftSystem& sys, double m) {
    if (!(m > 0.0))
        throw InvalidParameter("normalize_drift: m must be positive");
    const auto n = sys.A.rows();
    Vector d = Vector::Ones(n);
    for (Eigen::Index i = 0; i < n; ++i)
        if (sys.blocks[static_cast<std::size_t>(i)] == 'x')
            d(i) = std::sqrt(m);
    NormalizedDrift nd;
    nd.A_tilde = d.asDiagonal() * sys.A * d.cwiseInverse().asDiagonal();
    return nd;
}

double semigroup_norm(const NormalizedDrift& nd, double t) {
    if (t < 0.0)
        throw InvalidParameter("semigroup_norm: t must be >= 0");
    return spectral_norm(expm(t * nd.A_tilde));
}

double p_closed_form(double s) {
    if (s < 0.0)
        throw InvalidParameter("p_closed_form: s must be >= 0");
    const double s2 = s * s;
    return 1.0 + s2 + s2 * s2 / 8.0 +
           (2.0 * s + s * s2 / 2.0) * std::sqrt(s2 / 16.0 + 0.5);
}

double gle_optimal_modal_norm(double m, double t) {
    const double sqm = std::sqrt(m);
    return std::exp(-std::sqrt(3.0 * m) * t) * std::sqrt(p_closed_form(sqm * t));
}

double relaxation_time(const std::function<double(double)>& norm_fn,
                       const RelaxationOptions& opts) {
    const double thr = opts.threshold;
    if (norm_fn(0.0) < thr)
        throw InvalidParameter("relaxation_time: curve already below threshold at t = 0");

    // coarse forward scan
    double prev = 0.0, t = opts.initial_step;
    while (norm_fn(t) >= thr) {
        prev = t;
        t += opts.initial_step;
        if (t > opts.horizon)
            throw NoCrossing("relaxation_time: no crossing within horizon");
    }
    // refine within the bracketing cell to catch an earlier dip
    const double fine = (t - prev) / 10.0;
    double lo = prev, hi = t;
    for (double s = prev + fine; s < t; s += fine) {
        if (norm_fn(s) < thr) {
            hi = s;
            lo = s - fine;
            break;
        }
        lo = s;
    }
    // bisection; keeps norm(lo) >= thr > norm(hi)
    while (hi - lo > opts.tolerance * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        if (norm_fn(mid) >= thr)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

GleParams optimal_gle_params(double m) {
    if (!(m > 0.0))
        throw InvalidParameter("optimal_gle_params: m must be positive");
    return {2.0 * std::sqrt(2.0 * m), 3.0 * std::sqrt(3.0 * m), std::sqrt(3.0 * m)};
}

GleParams maximize_gle_gap_numeric(double m) {
    if (!(m > 0.0))
        throw InvalidParameter("maximize_gle_gap_numeric: m must be positive");
    // work at unit precision in (a,b); eigenvalues scale by sqrt(m)
    auto neg_gap = [](const Eigen::VectorXd& ab) {
        const double a = ab(0), b = ab(1);
        if (a <= 0.0 || b <= 0.0)
            return 1e3;
        DriftSystem sys;
        sys.m = 1.0;
        sys.A = Matrix{{0.0, 1.0, 0.0}, {-1.0, 0.0, a}, {0.0, -a, -b}};
        sys.Sigma = Matrix::Zero(3, 1);
        sys.blocks = {'x', 'v', 'z'};
        return -spectral_gap(sys);
    };
    Eigen::VectorXd x0(2);
    x0 << 1.0, 1.0;
    const auto res = nelder_mead(neg_gap, x0, 0.5, 1e-9, 1e-12, 5000);
    const double sqm = std::sqrt(m);
    return {res.x(0) * sqm, res.x(1) * sqm, -res.fx * sqm};
}

namespace {

double kinetic_relaxation_time(double m, double gamma) {
    DriftSystem sys;
    sys.m = m;
    sys.A = Matrix{{0.0, 1.0}, {-m, -gamma}};
    sys.Sigma = Matrix::Zero(2, 1);
    sys.Sigma(1, 0) = std::sqrt(2.0 * std::max(gamma, 0.0));
    sys.blocks = {'x', 'v'};
    const double gap = spectral_gap(sys);
    const auto nd = normalize_drift(sys, m);
    RelaxationOptions opts;
    opts.initial_step = 0.01 / std::max(gap, 1e-3);
    return relaxation_time([&](double t) { return semigroup_norm(nd, t); }, opts);
}

} // namespace

FrictionChoice optimal_langevin_friction(double m) {
    if (!(m > 0.0))
        throw InvalidParameter("optimal_langevin_friction: m must be positive");
    const double sqm = std::sqrt(m);
    auto neg_gap = [m](double gamma) {
        DriftSystem sys;
        sys.m = m;
        sys.A = Matrix{{0.0, 1.0}, {-m, -gamma}};
        sys.Sigma = Matrix::Zero(2, 1);
        sys.blocks = {'x', 'v'};
        return -spectral_gap(sys);
    };
    const auto res = golden_section_minimize(neg_gap, 0.05 * sqm, 8.0 * sqm, 1e-10);
    return {res.x, kinetic_relaxation_time(m, res.x)};
}

FrictionChoice minimize_langevin_relaxation_time(double m) {
    if (!(m > 0.0))
        throw InvalidParameter("minimize_langevin_relaxation_time: m must be positive");
    const double sqm = std::sqrt(m);
    const auto res = golden_section_minimize(
        [m](double g) { return kinetic_relaxation_time(m, g); }, 0.2 * sqm, 6.0 * sqm,
        1e-9, 129);
    return {res.x, res.fx};
}

double lift_lower_bound_remark(double P_x) {
    if (!(P_x > 0.0))
        throw InvalidParameter("lift_lower_bound_remark: P_x must be positive");
    return 1.0 / (std::sqrt(2.0) * std::sqrt(P_x));
}

double gle_lower_bound_corollary(double P_x) {
    if (!(P_x > 0.0))
        throw InvalidParameter("gle_lower_bound_corollary: P_x must be positive");
    return 0.5 / std::sqrt(P_x);
}

double decay_rate_upper_bound(double C, double P_x) {
    if (!(C > 1.0))
        throw InvalidParameter("decay_rate_upper_bound: C must be > 1");
    if (!(P_x > 0.0))
        throw InvalidParameter("decay_rate_upper_bound: P_x must be positive");
    return (1.0 + std::log(C)) * std::sqrt(P_x);
}

SpectralReport spectral_report(const DynamicsKind& kind, const GaussianTarget& target,
                               const std::vector<double>& curve_times) {
    const DriftSystem sys = build_drift_system(kind, target);
    const NormalizedDrift nd = normalize_drift(sys, target.m);

    SpectralReport rep;
    if (is_gle_block(sys)) {
        const double sqm = std::sqrt(sys.m);
        const auto ev =
            gle_eigenvalues_closed_form(sys.m, sys.A(1, 2) / sqm, -sys.A(2, 2) / sqm);
        rep.eigenvalues.assign(ev.roots.begin(), ev.roots.end());
    } else {
        rep.eigenvalues = eigenvalues(sys.A);
    }
    rep.gap = spectral_gap(sys);

    RelaxationOptions opts;
    opts.initial_step = 0.01 / std::max(rep.gap, 1e-3);
    try {
        rep.t_rel =
            relaxation_time([&](double t) { return semigroup_norm(nd, t); }, opts);
    } catch (const NoCrossing&) {
        rep.t_rel = std::numeric_limits<double>::infinity();
    }

    if (const auto* gle = std::get_if<GeneralizedLangevin>(&kind)) {
        const auto opt = optimal_gle_params(target.m);
        const double rel = std::abs(gle->lambda_c - opt.lambda_c) +
                           std::abs(gle->gamma - opt.gamma);
        if (rel <= 1e-6 * std::sqrt(target.m)) {
            const double m = target.m;
            rep.t_rel_modal = relaxation_time(
                [m](double t) { return gle_optimal_modal_norm(m, t); }, opts);
        }
    }

    rep.lower_bound_remark = lift_lower_bound_remark(target.m);
    rep.lower_bound_corollary = gle_lower_bound_corollary(target.m);

    for (double t : curve_times) {
        rep.norm_times.push_back(t);
        rep.norm_values.push_back(semigroup_norm(nd, t));
    }
    return rep;
}

SpectralReport spectral_report_anisotropic(const DynamicsKind& kind,
                                           const std::vector<double>& precisions) {
    if (precisions.empty())
        throw InvalidParameter("spectral_report_anisotropic: no precisions given");
    SpectralReport agg;
    agg.gap = std::numeric_limits<double>::infinity();
    agg.t_rel = 0.0;
    double min_m = std::numeric_limits<double>::infinity();
    for (double m : precisions) {
        const auto rep = spectral_report(kind, GaussianTarget(m, 1));
        agg.eigenvalues.insert(agg.eigenvalues.end(), rep.eigenvalues.begin(),
                               rep.eigenvalues.end());
        agg.gap = std::min(agg.gap, rep.gap);
        agg.t_rel = std::max(agg.t_rel, rep.t_rel);
        if (rep.t_rel_modal)
            agg.t_rel_modal = std::max(agg.t_rel_modal.value_or(0.0), *rep.t_rel_modal);
        min_m = std::min(min_m, m);
    }
    agg.lower_bound_remark = lift_lower_bound_remark(min_m);
    agg.lower_bound_corollary = gle_lower_bound_corollary(min_m);
    return agg;
}

} // namespace liftkin
