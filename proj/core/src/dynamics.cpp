#include "liftkin/dynamics.hpp"

#include "liftkin/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

namespace liftkin {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Vector potential_gradient(const Potential& U, const Vector& x) {
    if (const auto* q = std::get_if<QuadraticPotential>(&U))
        return q->m * x;
    return std::get<GeneralPotential>(U).gradient(x);
}

std::string scheme_name(Scheme s) {
    switch (s) {
    case Scheme::ExactOU: return "exact-ou";
    case Scheme::EulerMaruyama: return "euler-maruyama";
    case Scheme::SplittingBAOAB: return "baoab";
    case Scheme::SplittingALD: return "splitting-ald";
    case Scheme::SplittingGLE: return "splitting-gle";
    case Scheme::EventRHMC: return "event-rhmc";
    case Scheme::EventZigZag: return "event-zigzag";
    }
    return "?";
}

Scheme scheme_from_name(const std::string& name) {
    for (Scheme s : {Scheme::ExactOU, Scheme::EulerMaruyama, Scheme::SplittingBAOAB,
                     Scheme::SplittingALD, Scheme::SplittingGLE, Scheme::EventRHMC,
                     Scheme::EventZigZag})
        if (scheme_name(s) == name)
            return s;
    throw InvalidParameter("unknown scheme: " + name);
}

Scheme default_scheme(const DynamicsKind& kind) {
    return std::visit(
        [](const auto& k) -> Scheme {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, AdaptiveLangevin>) return Scheme::SplittingALD;
            else if constexpr (std::is_same_v<T, RandomizedHMC>) return Scheme::EventRHMC;
            else if constexpr (std::is_same_v<T, ZigZag>) return Scheme::EventZigZag;
            else return Scheme::ExactOU;
        },
        kind);
}

// --- single steps -----------------------------------------------------------

Vector exact_ou_step(const OUTransition& tr, const Vector& state, RngStream& rng) {
    if (state.size() != tr.E.rows())
        throw InvalidParameter("exact_ou_step: state dimension mismatch");
    Vector xi(state.size());
    for (Eigen::Index i = 0; i < xi.size(); ++i)
        xi(i) = rng.normal();
    return tr.E * state + tr.noise_chol * xi;
}

Vector exact_ou_step(const DriftSystem& sys, double h, const Vector& state, RngStream& rng) {
    return exact_ou_step(make_ou_transition(sys.A, sys.Sigma, h), state, rng);
}

namespace {
/// exp(-gamma h) and the matching stationary-variance-1 noise amplitude;
/// robust for gamma h near 0 and for negative total friction (adaptive case).
inline void ou_coefficients(double friction, double noise_gamma, double h, double& decay,
                            double& noise_sd) {
    decay = std::exp(-friction * h);
    const double u = 2.0 * friction * h;
    double var;
    if (std::abs(u) < 1e-8)
        var = 2.0 * noise_gamma * h; // limit of the formula below
    else
        var = noise_gamma * (-std::expm1(-u)) / friction;
    noise_sd = std::sqrt(std::max(var, 0.0));
}
} // namespace

void step_baoab(const Potential& U, double gamma, double h, Eigen::Ref<Vector> x,
                Eigen::Ref<Vector> v, RngStream& rng) {
    v -= 0.5 * h * potential_gradient(U, x);
    x += 0.5 * h * v;
    double decay, sd;
    ou_coefficients(gamma, gamma, h, decay, sd);
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) = decay * v(i) + sd * rng.normal();
    x += 0.5 * h * v;
    v -= 0.5 * h * potential_gradient(U, x);
}

void step_ald(const Potential& U, double epsilon, double gamma, double h,
              Eigen::Ref<Vector> q, Eigen::Ref<Vector> v, double& z, RngStream& rng) {
    const double d = static_cast<double>(v.size());
    v -= 0.5 * h * potential_gradient(U, q);
    q += 0.5 * h * v;
    z += 0.5 * h * (v.squaredNorm() - d) / epsilon;
    // O-part with the total friction gamma + z/epsilon frozen over the step
    const double k = gamma + z / epsilon;
    double decay, sd;
    ou_coefficients(k, gamma, h, decay, sd);
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) = decay * v(i) + sd * rng.normal();
    z += 0.5 * h * (v.squaredNorm() - d) / epsilon;
    q += 0.5 * h * v;
    v -= 0.5 * h * potential_gradient(U, q);
}

GleSplitting::GleSplitting(double lambda_c, double gamma, double h) : h_(h) {
    if (!(h > 0.0))
        throw InvalidParameter("GleSplitting: h must be positive");
    // free linear block: dx = v, dv = lambda z, dz = -lambda v - gamma z + noise
    Matrix A{{0.0, 1.0, 0.0}, {0.0, 0.0, lambda_c}, {0.0, -lambda_c, -gamma}};
    Matrix Sigma = Matrix::Zero(3, 1);
    Sigma(2, 0) = std::sqrt(2.0 * std::max(gamma, 0.0));
    linear_ = make_ou_transition(A, Sigma, h);
}

void GleSplitting::step(const Potential& U, Eigen::Ref<Vector> x, Eigen::Ref<Vector> v,
                        Eigen::Ref<Vector> z, RngStream& rng) const {
    v -= 0.5 * h_ * potential_gradient(U, x);
    Vector s(3);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        s << x(i), v(i), z(i);
        Vector xi(3);
        xi << rng.normal(), rng.normal(), rng.normal();
        s = linear_.E * s + linear_.noise_chol * xi;
        x(i) = s(0);
        v(i) = s(1);
        z(i) = s(2);
    }
    v -= 0.5 * h_ * potential_gradient(U, x);
}

void step_gle_splitting(const Potential& U, double lambda_c, double gamma, double h,
                        Eigen::Ref<Vector> x, Eigen::Ref<Vector> v,
                        Eigen::Ref<Vector> z, RngStream& rng) {
    GleSplitting(lambda_c, gamma, h).step(U, x, v, z, rng);
}

// --- Hamiltonian flow helpers -------------------------------------------------

namespace {

void hamiltonian_flow(const Potential& U, double tau, Eigen::Ref<Vector> x,
                      Eigen::Ref<Vector> v, double leapfrog_h) {
    if (tau <= 0.0)
        return;
    if (const auto* q = std::get_if<QuadraticPotential>(&U)) {
        const double omega = std::sqrt(q->m);
        const double c = std::cos(omega * tau), s = std::sin(omega * tau);
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            const double xi = x(i), vi = v(i);
            x(i) = xi * c + vi * s / omega;
            v(i) = -xi * omega * s + vi * c;
        }
        return;
    }
    const long n = std::max(1L, static_cast<long>(std::ceil(tau / leapfrog_h - 1e-12)));
    const double dt = tau / static_cast<double>(n);
    Vector g = potential_gradient(U, x);
    for (long k = 0; k < n; ++k) {
        v -= 0.5 * dt * g;
        x += dt * v;
        g = potential_gradient(U, x);
        v -= 0.5 * dt * g;
    }
}

} // namespace

Trajectory simulate_rhmc(const Potential& U, double gamma, double t_end, const Vector& x0,
                         const Vector& v0, RngStream& rng, double leapfrog_h) {
    if (!(gamma > 0.0))
        throw InvalidParameter("simulate_rhmc: gamma must be positive");
    Trajectory out;
    Vector x = x0, v = v0;
    double t = 0.0;
    auto record = [&] {
        Vector s(2 * x.size());
        s << x, v;
        out.times.push_back(t);
        out.states.push_back(s);
    };
    record();
    while (t < t_end) {
        const double wait = rng.exponential() / gamma;
        if (wait < t_end - t) {
            hamiltonian_flow(U, wait, x, v, leapfrog_h);
            t += wait;
            for (Eigen::Index i = 0; i < v.size(); ++i)
                v(i) = rng.normal();
            ++out.n_events;
            record();
        } else {
            hamiltonian_flow(U, t_end - t, x, v, leapfrog_h);
            t = t_end;
        }
    }
    record();
    return out;
}

// --- zig-zag ------------------------------------------------------------------

namespace {

/// First arrival time of an inhomogeneous Poisson clock with linear rate
/// (a + b s)_+ given a unit exponential E. Closed-form inversion.
double linear_rate_arrival(double a, double b, double E) {
    if (b > 0.0) {
        if (a >= 0.0)
            return (-a + std::sqrt(a * a + 2.0 * b * E)) / b;
        // zero rate until s = -a/b, then quadratic growth
        return -a / b + std::sqrt(2.0 * E / b);
    }
    if (b == 0.0)
        return (a > 0.0) ? E / a : kInf;
    // decreasing rate: finite total mass a^2/(2|b|)
    if (a <= 0.0)
        return kInf;
    const double total = a * a / (2.0 * -b);
    if (E >= total)
        return kInf;
    return (a - std::sqrt(a * a + 2.0 * b * E)) / (-b);
}

struct ZigZagState {
    Vector x;
    Vector v;
};

/// Core event loop shared by the trajectory, stepper and moment paths.
/// on_segment(x_before, v, tau) is called for every straight segment and
/// on_event() after every applied flip or refresh.
template <typename SegmentFn, typename EventFn>
long zigzag_run(const Potential& U, double gamma_refresh, double duration,
                ZigZagState& st, RngStream& rng,
                const std::optional<ZigZagEnvelope>& envelope, SegmentFn&& on_segment,
                EventFn&& on_event) {
    const auto d = st.x.size();
    for (Eigen::Index k = 0; k < d; ++k)
        if (std::abs(std::abs(st.v(k)) - 1.0) > 1e-12)
            throw InvalidParameter("zig-zag velocities must be +-1");

    const auto* quad = std::get_if<QuadraticPotential>(&U);
    const bool constant_potential = [&] {
        if (quad)
            return quad->m == 0.0;
        return false;
    }();
    if (!quad && !envelope)
        throw InvalidParameter("zig-zag with a general potential requires an envelope");

    long events = 0;
    double remaining = duration;
    while (remaining > 0.0) {
        // candidate flip times per coordinate
        Vector taus(d);
        double env_slope = 0.0;
        Vector env_rate0;
        if (quad) {
            const double m = quad->m;
            for (Eigen::Index k = 0; k < d; ++k) {
                if (constant_potential) {
                    taus(k) = kInf;
                    continue;
                }
                const double c = st.v(k) * st.x(k);
                const double E = rng.exponential();
                taus(k) = -c + std::sqrt(std::max(c, 0.0) * std::max(c, 0.0) + 2.0 * E / m);
            }
        } else {
            std::tie(env_rate0, env_slope) = envelope->bounds(st.x, st.v);
            for (Eigen::Index k = 0; k < d; ++k)
                taus(k) = linear_rate_arrival(env_rate0(k), env_slope, rng.exponential());
        }
        double tau_refresh = kInf;
        if (gamma_refresh > 0.0)
            tau_refresh = rng.exponential() / gamma_refresh;

        Eigen::Index kmin = 0;
        for (Eigen::Index k = 1; k < d; ++k)
            if (taus(k) < taus(kmin))
                kmin = k;
        double tau = std::min(taus(kmin), tau_refresh);
        const bool is_refresh = tau_refresh < taus(kmin);
        const bool event_inside = tau < remaining;
        if (!event_inside)
            tau = remaining;

        on_segment(st.x, st.v, tau);
        st.x += tau * st.v;
        remaining -= tau;
        if (!event_inside)
            break;

        if (is_refresh) {
            for (Eigen::Index k = 0; k < d; ++k)
                st.v(k) = rng.sign();
            ++events;
            on_event();
        } else if (quad) {
            st.v(kmin) = -st.v(kmin);
            ++events;
            on_event();
        } else {
            // thinning: accept with true rate over envelope at the proposal
            const Vector g = potential_gradient(U, st.x);
            const double rate = std::max(st.v(kmin) * g(kmin), 0.0);
            const double env_val = env_rate0(kmin) + env_slope * tau;
            if (rate > env_val * (1.0 + 1e-9) + 1e-12)
                throw EnvelopeViolation("zig-zag flip rate exceeds its envelope");
            if (rng.uniform() * env_val < rate) {
                st.v(kmin) = -st.v(kmin);
                ++events;
                on_event();
            }
        }
        // remaining per-coordinate candidates are discarded; the clocks are
        // memoryless so redrawing after each event is unbiased
    }
    return events;
}

} // namespace

ZigZagEnvelope make_hessian_envelope(const Potential& U, double hessian_norm_bound) {
    if (!(hessian_norm_bound >= 0.0))
        throw InvalidParameter("make_hessian_envelope: bound must be >= 0");
    return ZigZagEnvelope{[U, hessian_norm_bound](const Vector& x, const Vector& v) {
        const Vector g = potential_gradient(U, x);
        Vector rate0(x.size());
        for (Eigen::Index k = 0; k < x.size(); ++k)
            rate0(k) = std::max(v(k) * g(k), 0.0);
        const double slope = hessian_norm_bound * std::sqrt(static_cast<double>(x.size()));
        return std::make_pair(rate0, slope);
    }};
}

Trajectory simulate_zigzag(const Potential& U, double gamma_refresh, double t_end,
                           const Vector& x0, const Vector& v0, RngStream& rng,
                           const std::optional<ZigZagEnvelope>& envelope) {
    Trajectory out;
    ZigZagState st{x0, v0};
    double t = 0.0;
    auto record = [&] {
        Vector s(2 * st.x.size());
        s << st.x, st.v;
        out.times.push_back(t);
        out.states.push_back(s);
    };
    record();
    out.n_events = zigzag_run(
        U, gamma_refresh, t_end, st, rng, envelope,
        [&](const Vector&, const Vector&, double tau) { t += tau; }, [&] { record(); });
    record();
    return out;
}

ZigZagPathMoments zigzag_path_moments(const Potential& U, double gamma_refresh,
                                      double t_total, const Vector& x0, const Vector& v0,
                                      RngStream& rng) {
    ZigZagPathMoments out;
    out.mean_x = Vector::Zero(x0.size());
    out.mean_x_sq = Vector::Zero(x0.size());
    ZigZagState st{x0, v0};
    out.n_events = zigzag_run(
        U, gamma_refresh, t_total, st, rng, std::nullopt,
        [&](const Vector& x, const Vector& v, double tau) {
            // segment-exact integrals of x and x^2 along x + v s, s in [0,tau]
            for (Eigen::Index k = 0; k < x.size(); ++k) {
                out.mean_x(k) += x(k) * tau + 0.5 * v(k) * tau * tau;
                out.mean_x_sq(k) += x(k) * x(k) * tau + x(k) * v(k) * tau * tau +
                                    v(k) * v(k) * tau * tau * tau / 3.0;
            }
        },
        [] {});
    out.mean_x /= t_total;
    out.mean_x_sq /= t_total;
    return out;
}

// --- grid steppers -------------------------------------------------------------

namespace {

long subcycle_count(double dt, double h) {
    return std::max(1L, static_cast<long>(std::ceil(dt / h - 1e-9)));
}

class ExactOUStepper final : public Stepper {
public:
    ExactOUStepper(DriftSystem sys, int d) : sys_(std::move(sys)), d_(d) {}

    void advance(double dt, Eigen::Ref<Vector> state, RngStream& rng) override {
        const auto& tr = transition(dt);
        const auto nb = sys_.A.rows();
        Vector s(nb), xi(nb);
        for (int j = 0; j < d_; ++j) {
            for (Eigen::Index r = 0; r < nb; ++r) {
                s(r) = state(r * d_ + j);
                xi(r) = rng.normal();
            }
            s = tr.E * s + tr.noise_chol * xi;
            for (Eigen::Index r = 0; r < nb; ++r)
                state(r * d_ + j) = s(r);
        }
    }

    int dim() const override { return static_cast<int>(sys_.A.rows()) * d_; }

private:
    const OUTransition& transition(double dt) {
        auto it = cache_.find(dt);
        if (it == cache_.end())
            it = cache_.emplace(dt, make_ou_transition(sys_.A, sys_.Sigma, dt)).first;
        return it->second;
    }

    DriftSystem sys_;
    int d_;
    std::map<double, OUTransition> cache_;
};

class BAOABStepper final : public Stepper {
public:
    BAOABStepper(Potential U, double gamma, double h, int d)
        : U_(std::move(U)), gamma_(gamma), h_(h), d_(d) {}

    void advance(double dt, Eigen::Ref<Vector> state, RngStream& rng) override {
        const long n = subcycle_count(dt, h_);
        const double hh = dt / static_cast<double>(n);
        auto x = state.head(d_);
        auto v = state.segment(d_, d_);
        for (long k = 0; k < n; ++k)
            step_baoab(U_, gamma_, hh, x, v, rng);
    }

    int dim() const override { return 2 * d_; }

private:
    Potential U_;
    double gamma_, h_;
    int d_;
};

class ALDStepper final : public Stepper {
public:
    ALDStepper(Potential U, double epsilon, double gamma, double h, int d)
        : U_(std::move(U)), eps_(epsilon), gamma_(gamma), h_(h), d_(d) {}

    void advance(double dt, Eigen::Ref<Vector> state, RngStream& rng) override {
        const long n = subcycle_count(dt, h_);
        const double hh = dt / static_cast<double>(n);
        auto q = state.head(d_);
        auto v = state.segment(d_, d_);
        double z = state(2 * d_);
        for (long k = 0; k < n; ++k)
            step_ald(U_, eps_, gamma_, hh, q, v, z, rng);
        state(2 * d_) = z;
    }

    int dim() const override { return 2 * d_ + 1; }

private:
    Potential U_;
    double eps_, gamma_, h_;
    int d_;
};

class GleSplitStepper final : public Stepper {
public:
    GleSplitStepper(Potential U, double lambda_c, double gamma, double h, int d)
        : U_(std::move(U)), lambda_(lambda_c), gamma_(gamma), h_(h), d_(d) {}

    void advance(double dt, Eigen::Ref<Vector> state, RngStream& rng) override {
        const long n = subcycle_count(dt, h_);
        const double hh = dt / static_cast<double>(n);
        auto it = cache_.find(hh);
        if (it == cache_.end())
            it = cache_.emplace(hh, GleSplitting(lambda_, gamma_, hh)).first;
        auto x = state.head(d_);
        auto v = state.segment(d_, d_);
        auto z = state.segment(2 * d_, d_);
        for (long k = 0; k < n; ++k)
            it->second.step(U_, x, v, z, rng);
    }

    int dim() const override { return 3 * d_; }

private:
    Potential U_;
    double lambda_, gamma_, h_;
    int d_;
    std::map<double, GleSplitting> cache_;
};

class EulerMaruyamaStepper final : public Stepper {
public:
    EulerMaruyamaStepper(const DynamicsKind& kind, Potential U, double h, int d)
        : kind_(kind), U_(std::move(U)), h_(h), d_(d) {
        if (std::holds_alternative<RandomizedHMC>(kind) || std::holds_alternative<ZigZag>(kind))
            throw UnsupportedDynamics("Euler-Maruyama is for the diffusion dynamics");
    }

    void advance(double dt, Eigen::Ref<Vector> state, RngStream& rng) override {
        const long n = subcycle_count(dt, h_);
        const double hh = dt / static_cast<double>(n);
        for (long k = 0; k < n; ++k)
            em_step(hh, state, rng);
    }

    int dim() const override { return state_dimension(kind_, d_); }

private:
    void em_step(double h, Eigen::Ref<Vector> s, RngStream& rng) {
        const double sqh = std::sqrt(h);
        if (std::holds_alternative<Overdamped>(kind_)) {
            const Vector g = potential_gradient(U_, s.head(d_));
            for (int i = 0; i < d_; ++i)
                s(i) += -g(i) * h + std::sqrt(2.0) * sqh * rng.normal();
            return;
        }
        if (const auto* kl = std::get_if<KineticLangevin>(&kind_)) {
            const Vector g = potential_gradient(U_, s.head(d_));
            const double amp = std::sqrt(2.0 * kl->gamma) * sqh;
            for (int i = 0; i < d_; ++i) {
                const double xdot = s(d_ + i);
                s(d_ + i) += (-g(i) - kl->gamma * s(d_ + i)) * h + amp * rng.normal();
                s(i) += xdot * h;
            }
            return;
        }
        if (const auto* al = std::get_if<AdaptiveLangevin>(&kind_)) {
            const Vector g = potential_gradient(U_, s.head(d_));
            const double z = s(2 * d_);
            const double amp = std::sqrt(2.0 * al->gamma) * sqh;
            double vsq = 0.0;
            for (int i = 0; i < d_; ++i) {
                const double v = s(d_ + i);
                vsq += v * v;
                s(i) += v * h;
                s(d_ + i) += (-g(i) - (z / al->epsilon) * v - al->gamma * v) * h +
                             amp * rng.normal();
            }
            s(2 * d_) += (vsq - static_cast<double>(d_)) / al->epsilon * h;
            return;
        }
        const auto& gle = std::get<GeneralizedLangevin>(kind_);
        const Vector g = potential_gradient(U_, s.head(d_));
        const double amp = std::sqrt(2.0 * gle.gamma) * sqh;
        for (int i = 0; i < d_; ++i) {
            const double v = s(d_ + i), z = s(2 * d_ + i);
            s(i) += v * h;
            s(d_ + i) += (-g(i) + gle.lambda_c * z) * h;
            s(2 * d_ + i) += (-gle.lambda_c * v - gle.gamma * z) * h + amp * rng.normal();
        }
    }

    DynamicsKind kind_;
    Potential U_;
    double h_;
    int d_;
};

class RHMCStepper final : public Stepper {
public:
    RHMCStepper(Potential U, double gamma, double h, int d)
        : U_(std::move(U)), gamma_(gamma), h_(h), d_(d) {}

    void advance(double dt, Eigen::Ref<Vector> state, RngStream& rng) override {
        auto x = state.head(d_);
        auto v = state.segment(d_, d_);
        double remaining = dt;
        while (remaining > 0.0) {
            if (wait_ < 0.0)
                wait_ = rng.exponential() / gamma_;
            const double tau = std::min(wait_, remaining);
            hamiltonian_flow(U_, tau, x, v, h_);
            wait_ -= tau;
            remaining -= tau;
            if (wait_ <= 0.0) {
                for (int i = 0; i < d_; ++i)
                    v(i) = rng.normal();
                wait_ = -1.0;
            }
        }
    }

    int dim() const override { return 2 * d_; }

private:
    Potential U_;
    double gamma_, h_;
    int d_;
    double wait_ = -1.0; ///< time to next refresh; < 0 means not yet drawn
};

class ZigZagStepper final : public Stepper {
public:
    ZigZagStepper(Potential U, double gamma_refresh, int d,
                  std::optional<ZigZagEnvelope> env)
        : U_(std::move(U)), gamma_(gamma_refresh), d_(d), env_(std::move(env)) {}

    void advance(double dt, Eigen::Ref<Vector> state, RngStream& rng) override {
        ZigZagState st{state.head(d_), state.segment(d_, d_)};
        zigzag_run(
            U_, gamma_, dt, st, rng, env_, [](const Vector&, const Vector&, double) {},
            [] {});
        state.head(d_) = st.x;
        state.segment(d_, d_) = st.v;
    }

    int dim() const override { return 2 * d_; }

private:
    Potential U_;
    double gamma_;
    int d_;
    std::optional<ZigZagEnvelope> env_;
};

} // namespace

std::unique_ptr<Stepper> make_stepper(const DynamicsKind& kind, const SchemeSpec& spec,
                                      const Potential& U, int d) {
    validate_kind(kind);
    if (d < 1)
        throw InvalidParameter("make_stepper: d must be >= 1");
    if (spec.scheme != Scheme::EventRHMC && spec.scheme != Scheme::EventZigZag &&
        spec.scheme != Scheme::ExactOU && !(spec.h > 0.0))
        throw InvalidParameter("make_stepper: step size h must be positive");

    switch (spec.scheme) {
    case Scheme::ExactOU: {
        const auto* quad = std::get_if<QuadraticPotential>(&U);
        if (!quad)
            throw UnsupportedDynamics("exact OU transitions require a quadratic target");
        return std::make_unique<ExactOUStepper>(
            build_drift_system(kind, GaussianTarget(quad->m, d)), d);
    }
    case Scheme::EulerMaruyama:
        return std::make_unique<EulerMaruyamaStepper>(kind, U, spec.h, d);
    case Scheme::SplittingBAOAB: {
        const auto* kl = std::get_if<KineticLangevin>(&kind);
        if (!kl)
            throw UnsupportedDynamics("BAOAB applies to kinetic Langevin");
        return std::make_unique<BAOABStepper>(U, kl->gamma, spec.h, d);
    }
    case Scheme::SplittingALD: {
        const auto* al = std::get_if<AdaptiveLangevin>(&kind);
        if (!al)
            throw UnsupportedDynamics("splitting-ald applies to adaptive Langevin");
        return std::make_unique<ALDStepper>(U, al->epsilon, al->gamma, spec.h, d);
    }
    case Scheme::SplittingGLE: {
        const auto* gle = std::get_if<GeneralizedLangevin>(&kind);
        if (!gle)
            throw UnsupportedDynamics("splitting-gle applies to the GLE");
        return std::make_unique<GleSplitStepper>(U, gle->lambda_c, gle->gamma, spec.h, d);
    }
    case Scheme::EventRHMC: {
        const auto* rh = std::get_if<RandomizedHMC>(&kind);
        if (!rh)
            throw UnsupportedDynamics("event-rhmc applies to randomized HMC");
        return std::make_unique<RHMCStepper>(U, rh->gamma, spec.h, d);
    }
    case Scheme::EventZigZag: {
        const auto* zz = std::get_if<ZigZag>(&kind);
        if (!zz)
            throw UnsupportedDynamics("event-zigzag applies to the zig-zag process");
        std::optional<ZigZagEnvelope> env;
        if (const auto* gp = std::get_if<GeneralPotential>(&U)) {
            if (!gp->hessian_norm_bound)
                throw InvalidParameter(
                    "zig-zag with a general potential needs hessian_norm_bound");
            env = make_hessian_envelope(U, *gp->hessian_norm_bound);
        }
        return std::make_unique<ZigZagStepper>(U, zz->gamma, d, std::move(env));
    }
    }
    throw InvalidParameter("make_stepper: unknown scheme");
}

Vector draw_stationary_state(const DynamicsKind& kind, double m, int d, RngStream& rng) {
    const int n = state_dimension(kind, d);
    Vector s(n);
    const double sd_x = 1.0 / std::sqrt(m);
    for (int i = 0; i < d; ++i)
        s(i) = sd_x * rng.normal();
    const bool signs = std::holds_alternative<ZigZag>(kind);
    for (int i = d; i < (std::holds_alternative<Overdamped>(kind) ? d : 2 * d); ++i)
        s(i) = signs ? rng.sign() : rng.normal();
    for (int i = 2 * d; i < n; ++i)
        s(i) = rng.normal();
    return s;
}

Ensemble run_ensemble(const DynamicsKind& kind, const SchemeSpec& spec, const Potential& U,
                      int d, int n_traj, std::vector<double> times,
                      std::uint64_t master_seed, InitialCondition init, int n_threads) {
    if (n_traj < 1)
        throw InvalidParameter("run_ensemble: n_traj must be >= 1");
    if (times.empty() || times.front() != 0.0)
        throw InvalidParameter("run_ensemble: time grid must start at 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw InvalidParameter("run_ensemble: time grid must be strictly increasing");
    if (init == InitialCondition::Stationary && !std::holds_alternative<QuadraticPotential>(U))
        throw InvalidParameter("run_ensemble: stationary initialization needs a quadratic target");

    Ensemble ens;
    ens.kind = kind_name(kind);
    ens.scheme = scheme_name(spec.scheme);
    ens.h = spec.h;
    ens.master_seed = master_seed;
    ens.n_traj = n_traj;
    ens.n_coords = state_dimension(kind, d);
    ens.times = std::move(times);
    ens.states.assign(static_cast<std::size_t>(n_traj) * ens.times.size() *
                          static_cast<std::size_t>(ens.n_coords),
                      0.0);

    const double m_quad =
        std::holds_alternative<QuadraticPotential>(U) ? std::get<QuadraticPotential>(U).m : 1.0;

    const int workers = std::max(1, n_threads);
    std::atomic<int> next{0};
    auto work = [&] {
        auto stepper = make_stepper(kind, spec, U, d); // per-thread instance
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n_traj)
                return;
            RngStream rng(master_seed, static_cast<std::uint64_t>(i));
            Vector state = (init == InitialCondition::Stationary)
                               ? draw_stationary_state(kind, m_quad, d, rng)
                               : Vector::Zero(ens.n_coords);
            if (init == InitialCondition::Zero && std::holds_alternative<ZigZag>(kind))
                state.segment(d, d).setOnes();
            // fresh per-trajectory stepper state for the event-driven schemes
            if (spec.scheme == Scheme::EventRHMC || spec.scheme == Scheme::EventZigZag)
                stepper = make_stepper(kind, spec, U, d);
            auto write = [&](std::size_t it) {
                double* dst = ens.states.data() +
                              (static_cast<std::size_t>(i) * ens.times.size() + it) *
                                  static_cast<std::size_t>(ens.n_coords);
                Eigen::Map<Vector>(dst, state.size()) = state;
            };
            write(0);
            for (std::size_t it = 1; it < ens.times.size(); ++it) {
                stepper->advance(ens.times[it] - ens.times[it - 1], state, rng);
                write(it);
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto& th : pool)
            th.join();
    }
    return ens;
}

// --- Gaussian moments -----------------------------------------------------------

const std::array<const char*, 7> kappa_moment_names = {
    "E[v1^2]",          "E[v1^4]",          "E[v1^6]",         "E[v1^8]",
    "E[(|v|^2-d)^2]",   "E[(|v|^2-d)^3]",   "E[(|v|^2-d)^4]"};

std::array<double, 7> kappa_moment_exact(int d) {
    const double dd = static_cast<double>(d);
    return {1.0, 3.0, 15.0, 105.0, 2.0 * dd, 8.0 * dd, 12.0 * dd * dd + 48.0 * dd};
}

std::array<MomentEstimate, 7> kappa_moment_mc(int d, long n_samples, std::uint64_t seed) {
    if (d < 1 || n_samples < 2)
        throw InvalidParameter("kappa_moment_mc: need d >= 1 and n_samples >= 2");
    RngStream rng(seed, 0);
    std::array<double, 7> sum{}, sum_sq{};
    for (long s = 0; s < n_samples; ++s) {
        double v1 = 0.0, vsq = 0.0;
        for (int i = 0; i < d; ++i) {
            const double vi = rng.normal();
            if (i == 0)
                v1 = vi;
            vsq += vi * vi;
        }
        const double r = vsq - static_cast<double>(d);
        const double v1_2 = v1 * v1;
        const std::array<double, 7> obs = {v1_2,  v1_2 * v1_2, v1_2 * v1_2 * v1_2,
                                           v1_2 * v1_2 * v1_2 * v1_2, r * r, r * r * r,
                                           r * r * r * r};
        for (std::size_t j = 0; j < 7; ++j) {
            sum[j] += obs[j];
            sum_sq[j] += obs[j] * obs[j];
        }
    }
    std::array<MomentEstimate, 7> out{};
    const double n = static_cast<double>(n_samples);
    for (std::size_t j = 0; j < 7; ++j) {
        const double mean = sum[j] / n;
        const double var = std::max(0.0, sum_sq[j] / n - mean * mean);
        out[j] = {mean, std::sqrt(var / n)};
    }
    return out;
}

} // namespace liftkin
