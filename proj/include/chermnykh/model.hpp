#pragma once

// Force/potential field of the generalized photogravitational Chermnykh
// problem: radiating bigger primary (mass-reduction factor q1, P-R drag
// coefficient w1), oblate smaller primary (a2), and a flat belt of mass mb
// with width parameter t. Canonical rotating barycentric units, primaries
// at (-mu, 0) and (1-mu, 0), mean motion n.
//
// The static parts of the field derive from the effective potential; the
// drag brackets are force components taken as such (they are not partial
// derivatives of a single-valued potential, and the angular term makes the
// potential multivalued; its branch cut is placed along y = 0, x < -mu).

#include <cmath>

#include <Eigen/Core>

#include "chermnykh/types.hpp"

namespace chermnykh {

/// Validates raw inputs; throws DomainError naming the offending field.
void validate(const ModelInputs& in);

/// Populates w1, rc, n from validated inputs. Deterministic.
ModelParams derive_params(const ModelInputs& in);

/// q1 = 1 - 5.6e-5 chi / (a rho); throws DomainError if outside [0, 1].
double q1_from_radiation(const RadiationInputs& r);

namespace detail {

// Squared distances to the primaries with the singularity guard applied.
template <typename Scalar>
void primary_distances(const ModelParamsT<Scalar>& p, Scalar x, Scalar y,
                       Scalar& r1s, Scalar& r2s) {
    const Scalar dx1 = x + p.mu;
    const Scalar dx2 = x + p.mu - Scalar(1);
    r1s = dx1 * dx1 + y * y;
    r2s = dx2 * dx2 + y * y;
    const Scalar guard2 = Scalar(kPrimaryGuard) * Scalar(kPrimaryGuard);
    if (r1s < guard2) {
        throw SingularityError(1, double(x), double(y),
                               p.w1 > Scalar(0)
                                   ? "state inside guard radius of the radiating primary "
                                     "(pole of the angular drag term)"
                                   : "state inside guard radius of the bigger primary");
    }
    if (r2s < guard2) {
        throw SingularityError(2, double(x), double(y),
                               "state inside guard radius of the smaller primary");
    }
}

}  // namespace detail

/// Effective potential Omega(x, y, vx, vy). Velocity-independent when w1 = 0.
/// The angular drag term uses the two-argument principal angle of
/// (y, x+mu) in (-pi, pi], so Omega jumps by 2 pi n w1 across y=0, x<-mu.
template <typename Scalar>
Scalar effective_potential(const ModelParamsT<Scalar>& p, const PhaseStateT<Scalar>& s) {
    using std::atan2;
    using std::sqrt;
    Scalar r1s, r2s;
    detail::primary_distances(p, s.x, s.y, r1s, r2s);
    const Scalar r1 = sqrt(r1s);
    const Scalar r2 = sqrt(r2s);
    const Scalar rs = s.x * s.x + s.y * s.y;
    Scalar om = p.n2 * rs / Scalar(2) + (Scalar(1) - p.mu) * p.q1 / r1 + p.mu / r2
              + p.mu * p.a2 / (Scalar(2) * r2 * r2s)
              + p.mb / sqrt(rs + p.t * p.t);
    if (p.w1 != Scalar(0)) {
        const Scalar radial = (s.x + p.mu) * s.vx + s.y * s.vy;
        om += p.w1 * (radial / (Scalar(2) * r1s) - p.n * atan2(s.y, s.x + p.mu));
    }
    return om;
}

/// Left-hand sides of the equilibrium conditions (zero-velocity field).
/// Zeros of this map are the equilibrium points.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> static_gradient(const ModelParamsT<Scalar>& p, Scalar x, Scalar y) {
    using std::pow;
    using std::sqrt;
    Scalar r1s, r2s;
    detail::primary_distances(p, x, y, r1s, r2s);
    const Scalar r1 = sqrt(r1s);
    const Scalar r2 = sqrt(r2s);
    const Scalar inv_r13 = Scalar(1) / (r1s * r1);
    const Scalar inv_r23 = Scalar(1) / (r2s * r2);
    const Scalar inv_r25 = inv_r23 / r2s;
    const Scalar rs = x * x + y * y;
    const Scalar bs = rs + p.t * p.t;
    const Scalar inv_belt = Scalar(1) / (bs * sqrt(bs));
    const Scalar one_mu_q1 = (Scalar(1) - p.mu) * p.q1;

    Eigen::Matrix<Scalar, 2, 1> g;
    g[0] = p.n2 * x - one_mu_q1 * (x + p.mu) * inv_r13 - p.mu * (x + p.mu - Scalar(1)) * inv_r23
         - Scalar(1.5) * p.mu * p.a2 * (x + p.mu - Scalar(1)) * inv_r25
         - p.mb * x * inv_belt
         + p.w1 * p.n * y / r1s;
    g[1] = p.n2 * y - one_mu_q1 * y * inv_r13 - p.mu * y * inv_r23
         - Scalar(1.5) * p.mu * p.a2 * y * inv_r25
         - p.mb * y * inv_belt
         - p.w1 * p.n * (x + p.mu) / r1s;
    return g;
}

/// Full first-order vector field (xdot, ydot, xddot, yddot), Coriolis terms
/// and the velocity-dependent P-R drag brackets included.
template <typename Scalar>
Eigen::Matrix<Scalar, 4, 1> rhs(const ModelParamsT<Scalar>& p, const PhaseStateT<Scalar>& s) {
    using std::sqrt;
    Scalar r1s, r2s;
    detail::primary_distances(p, s.x, s.y, r1s, r2s);
    const Scalar r1 = sqrt(r1s);
    const Scalar r2 = sqrt(r2s);
    const Scalar inv_r13 = Scalar(1) / (r1s * r1);
    const Scalar inv_r23 = Scalar(1) / (r2s * r2);
    const Scalar inv_r25 = inv_r23 / r2s;
    const Scalar rs = s.x * s.x + s.y * s.y;
    const Scalar bs = rs + p.t * p.t;
    const Scalar inv_belt = Scalar(1) / (bs * sqrt(bs));
    const Scalar one_mu_q1 = (Scalar(1) - p.mu) * p.q1;
    const Scalar xi = s.x + p.mu;

    Scalar ox = p.n2 * s.x - one_mu_q1 * xi * inv_r13 - p.mu * (xi - Scalar(1)) * inv_r23
              - Scalar(1.5) * p.mu * p.a2 * (xi - Scalar(1)) * inv_r25
              - p.mb * s.x * inv_belt;
    Scalar oy = p.n2 * s.y - one_mu_q1 * s.y * inv_r13 - p.mu * s.y * inv_r23
              - Scalar(1.5) * p.mu * p.a2 * s.y * inv_r25
              - p.mb * s.y * inv_belt;
    if (p.w1 != Scalar(0)) {
        const Scalar radial = xi * s.vx + s.y * s.vy;
        ox -= p.w1 / r1s * (xi * radial / r1s + s.vx - p.n * s.y);
        oy -= p.w1 / r1s * (s.y * radial / r1s + s.vy + p.n * xi);
    }

    Eigen::Matrix<Scalar, 4, 1> d;
    d[0] = s.vx;
    d[1] = s.vy;
    d[2] = Scalar(2) * p.n * s.vy + ox;
    d[3] = -Scalar(2) * p.n * s.vx + oy;
    return d;
}

/// Jacobi function C = 2 Omega - vx^2 - vy^2. Conserved only when w1 = 0.
template <typename Scalar>
Scalar jacobi_constant(const ModelParamsT<Scalar>& p, const PhaseStateT<Scalar>& s) {
    return Scalar(2) * effective_potential(p, s) - s.vx * s.vx - s.vy * s.vy;
}

/// Analytic dC/dt along the flow: the chain rule applied to the Jacobi
/// function with the true partials of Omega (the drag brackets in the
/// equations of motion are not those partials, so dC/dt != 0 when w1 > 0).
template <typename Scalar>
Scalar jacobi_rate(const ModelParamsT<Scalar>& p, const PhaseStateT<Scalar>& s) {
    using std::sqrt;
    Scalar r1s, r2s;
    detail::primary_distances(p, s.x, s.y, r1s, r2s);
    const auto d = rhs(p, s);
    if (p.w1 == Scalar(0)) {
        // conservative: the force components are exact partials, dC/dt = 0
        return Scalar(0);
    }
    const Scalar r1 = sqrt(r1s);
    const Scalar r2 = sqrt(r2s);
    const Scalar inv_r13 = Scalar(1) / (r1s * r1);
    const Scalar inv_r23 = Scalar(1) / (r2s * r2);
    const Scalar inv_r25 = inv_r23 / r2s;
    const Scalar rs = s.x * s.x + s.y * s.y;
    const Scalar bs = rs + p.t * p.t;
    const Scalar inv_belt = Scalar(1) / (bs * sqrt(bs));
    const Scalar one_mu_q1 = (Scalar(1) - p.mu) * p.q1;
    const Scalar xi = s.x + p.mu;
    const Scalar radial = xi * s.vx + s.y * s.vy;

    // true partials of the Omega expression, drag terms included
    const Scalar om_x = p.n2 * s.x - one_mu_q1 * xi * inv_r13 - p.mu * (xi - Scalar(1)) * inv_r23
                      - Scalar(1.5) * p.mu * p.a2 * (xi - Scalar(1)) * inv_r25
                      - p.mb * s.x * inv_belt
                      + p.w1 * (s.vx / (Scalar(2) * r1s) - radial * xi / (r1s * r1s)
                                + p.n * s.y / r1s);
    const Scalar om_y = p.n2 * s.y - one_mu_q1 * s.y * inv_r13 - p.mu * s.y * inv_r23
                      - Scalar(1.5) * p.mu * p.a2 * s.y * inv_r25
                      - p.mb * s.y * inv_belt
                      + p.w1 * (s.vy / (Scalar(2) * r1s) - radial * s.y / (r1s * r1s)
                                - p.n * xi / r1s);
    const Scalar om_vx = p.w1 * xi / (Scalar(2) * r1s);
    const Scalar om_vy = p.w1 * s.y / (Scalar(2) * r1s);

    return Scalar(2) * (om_x * d[0] + om_y * d[1] + om_vx * d[2] + om_vy * d[3])
         - Scalar(2) * (s.vx * d[2] + s.vy * d[3]);
}

}  // namespace chermnykh
