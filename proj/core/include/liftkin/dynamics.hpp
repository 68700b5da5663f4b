#pragma once

#include "liftkin/linalg.hpp"
#include "liftkin/model.hpp"
#include "liftkin/rng.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace liftkin {

/// U(x) = m |x|^2 / 2 (isotropic quadratic; enables exact flows/rates).
struct QuadraticPotential {
    double m = 1.0;
};

using Potential = std::variant<QuadraticPotential, GeneralPotential>;

Vector potential_gradient(const Potential& U, const Vector& x);

enum class Scheme {
    ExactOU,
    EulerMaruyama,
    SplittingBAOAB,
    SplittingALD,
    SplittingGLE,
    EventRHMC,
    EventZigZag,
};

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

/// Default scheme for a dynamics kind (exact transitions where they exist).
Scheme default_scheme(const DynamicsKind& kind);

struct SchemeSpec {
    Scheme scheme = Scheme::ExactOU;
    double h = 0.01; ///< substep for discretized schemes; ignored by event schemes
};

// --- single steps -----------------------------------------------------------

/// Sample X_{t+h} ~ N(E X_t, Q_h) for one linear-drift block.
Vector exact_ou_step(const OUTransition& tr, const Vector& state, RngStream& rng);

/// Convenience overload building the transition on the fly (per-(sys,h)
/// caching lives in the grid steppers).
Vector exact_ou_step(const DriftSystem& sys, double h, const Vector& state, RngStream& rng);

/// One BAOAB step of kinetic Langevin: velocity kick / drift / exact OU on v /
/// drift / kick. gamma = 0 reduces to velocity Verlet.
void step_baoab(const Potential& U, double gamma, double h, Eigen::Ref<Vector> x,
                Eigen::Ref<Vector> v, RngStream& rng);

/// One step of adaptive Langevin: the BAOAB skeleton with the feedback
/// variable updated in half-steps around the O-part, which integrates the
/// full frozen friction gamma + z/epsilon exactly. Reduces to step_baoab as
/// epsilon -> infinity (same noise stream).
void step_ald(const Potential& U, double epsilon, double gamma, double h,
              Eigen::Ref<Vector> q, Eigen::Ref<Vector> v, double& z, RngStream& rng);

/// Strang splitting for the GLE: half force kick, exact flow of the linear
/// (x,v,z) block (rotation in (v,z) plus OU on z), half force kick. Caches
/// the block transition for its (lambda_c, gamma, h).
class GleSplitting {
public:
    GleSplitting(double lambda_c, double gamma, double h);
    void step(const Potential& U, Eigen::Ref<Vector> x, Eigen::Ref<Vector> v,
              Eigen::Ref<Vector> z, RngStream& rng) const;
    double h() const { return h_; }

private:
    OUTransition linear_;
    double h_;
};

/// Convenience wrapper (rebuilds the cached transition each call).
void step_gle_splitting(const Potential& U, double lambda_c, double gamma, double h,
                        Eigen::Ref<Vector> x, Eigen::Ref<Vector> v,
                        Eigen::Ref<Vector> z, RngStream& rng);

// --- event-driven simulation -------------------------------------------------

struct Trajectory {
    std::vector<double> times;
    std::vector<Vector> states;
    long n_events = 0;
};

/// Randomized HMC: Hamiltonian flow between complete velocity refreshments at
/// rate gamma. Quadratic targets use the exact rotation; general potentials
/// use leapfrog substeps of size leapfrog_h. States recorded at each event
/// and at t_end.
Trajectory simulate_rhmc(const Potential& U, double gamma, double t_end,
                         const Vector& x0, const Vector& v0, RngStream& rng,
                         double leapfrog_h = 1e-3);

/// Linear-in-s envelope for thinning: rate_k(s) <= rate0(k) + slope * s along
/// the ray x + v s, re-anchored after every proposal.
struct ZigZagEnvelope {
    std::function<std::pair<Vector, double>(const Vector& x, const Vector& v)> bounds;
};

/// Envelope from a bound H on the Hessian operator norm.
ZigZagEnvelope make_hessian_envelope(const Potential& U, double hessian_norm_bound);

/// Zig-zag process: straight-line motion with per-coordinate velocity flips at
/// rate (v_k d_k U)_+ and full refreshments (v uniform on {+-1}^d) at rate
/// gamma_refresh. Quadratic targets invert the linear rate exactly; general
/// potentials require an envelope and use Poisson thinning (EnvelopeViolation
/// if a true rate exceeds its envelope).
Trajectory simulate_zigzag(const Potential& U, double gamma_refresh, double t_end,
                           const Vector& x0, const Vector& v0, RngStream& rng,
                           const std::optional<ZigZagEnvelope>& envelope = std::nullopt);

/// Time averages of x and x^2 along the piecewise-linear zig-zag path,
/// integrated segment-exactly (no storage of the path).
struct ZigZagPathMoments {
    Vector mean_x;
    Vector mean_x_sq;
    long n_events = 0;
};
ZigZagPathMoments zigzag_path_moments(const Potential& U, double gamma_refresh,
                                      double t_total, const Vector& x0,
                                      const Vector& v0, RngStream& rng);

// --- grid steppers and ensembles ---------------------------------------------

/// Advances a full state vector (layout x | v | z) across caller time steps,
/// sub-cycling internally so grid points are hit exactly.
class Stepper {
public:
    virtual ~Stepper() = default;
    virtual void advance(double dt, Eigen::Ref<Vector> state, RngStream& rng) = 0;
    virtual int dim() const = 0;
};

std::unique_ptr<Stepper> make_stepper(const DynamicsKind& kind, const SchemeSpec& scheme,
                                      const Potential& U, int d);

struct Ensemble {
    std::string kind;
    std::string scheme;
    double h = 0.0;
    std::uint64_t master_seed = 0;
    int n_traj = 0;
    int n_coords = 0;
    std::vector<double> times;
    std::vector<double> states; ///< [traj][time][coord], row-major

    std::span<const double> state(int traj, int time_index) const {
        const auto nt = static_cast<std::size_t>(times.size());
        const auto nc = static_cast<std::size_t>(n_coords);
        return {states.data() + (static_cast<std::size_t>(traj) * nt +
                                 static_cast<std::size_t>(time_index)) * nc,
                nc};
    }
};

enum class InitialCondition { Zero, Stationary };

/// Draw from the invariant measure of the quadratic-target dynamics
/// (x ~ N(0, 1/m), v ~ N(0,1) or uniform signs for zig-zag, z ~ N(0,1)).
Vector draw_stationary_state(const DynamicsKind& kind, double m, int d, RngStream& rng);

/// n_traj independent trajectories sampled on the given grid. Trajectory i
/// uses the counter-based stream (master_seed, i), so results are
/// bit-identical for a fixed seed regardless of n_threads.
Ensemble run_ensemble(const DynamicsKind& kind, const SchemeSpec& scheme,
                      const Potential& U, int d, int n_traj, std::vector<double> times,
                      std::uint64_t master_seed,
                      InitialCondition init = InitialCondition::Stationary,
                      int n_threads = 1);

// --- Gaussian moment identities ----------------------------------------------

/// Exact values of the seven kappa-moments used by the rate estimates:
/// E v1^2, E v1^4, E v1^6, E v1^8, E(|v|^2-d)^2, E(|v|^2-d)^3, E(|v|^2-d)^4
/// = 1, 3, 15, 105, 2d, 8d, 12d^2+48d.
std::array<double, 7> kappa_moment_exact(int d);

extern const std::array<const char*, 7> kappa_moment_names;

struct MomentEstimate {
    double value;
    double std_error;
};

std::array<MomentEstimate, 7> kappa_moment_mc(int d, long n_samples, std::uint64_t seed);

} // namespace liftkin
