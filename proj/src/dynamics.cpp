#include "chermnykh/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Core>

namespace chermnykh {

namespace {

using Vec4 = Eigen::Vector4d;

// Dormand-Prince 5(4) tableau (RK5(4)7M).
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Stepper {
    const ModelParams& p;
    long evaluations = 0;

    Vec4 eval(double t, const Vec4& y) {
        ++evaluations;
        return rhs(p, PhaseState::from_vec(y, t));
    }

    // One step from (t, y) with derivative k1 already available (FSAL).
    // Returns the 5th order result and the embedded error estimate vector.
    void step(double t, const Vec4& y, const Vec4& k1, double h, Vec4& y5, Vec4& err,
              Vec4& k_last) {
        const Vec4 k2 = eval(t + c2 * h, y + h * (a21 * k1));
        const Vec4 k3 = eval(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
        const Vec4 k4 = eval(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const Vec4 k5 = eval(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Vec4 k6 =
            eval(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Vec4 k7 = eval(t + h, y5);
        err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        k_last = k7;
    }
};

double error_norm(const Vec4& err, const Vec4& y0, const Vec4& y1, double tol) {
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double sc = tol + tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double q = err[i] / sc;
        sum += q * q;
    }
    return std::sqrt(sum / 4.0);
}

double initial_step(Stepper& st, double t0, const Vec4& y0, const Vec4& f0, double tol,
                    double dir, double span) {
    double d0 = 0.0, d1 = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double sc = tol + tol * std::abs(y0[i]);
        d0 += (y0[i] / sc) * (y0[i] / sc);
        d1 += (f0[i] / sc) * (f0[i] / sc);
    }
    d0 = std::sqrt(d0 / 4.0);
    d1 = std::sqrt(d1 / 4.0);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, span);
    Vec4 y1 = y0 + dir * h0 * f0;
    Vec4 f1;
    try {
        f1 = st.eval(t0 + dir * h0, y1);
    } catch (const SingularityError&) {
        return dir * std::min(1e-6, span);
    }
    double d2 = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double sc = tol + tol * std::abs(y0[i]);
        const double q = (f1[i] - f0[i]) / sc;
        d2 += q * q;
    }
    d2 = std::sqrt(d2 / 4.0) / h0;
    const double dmax = std::max(d1, d2);
    const double h1 = (dmax <= 1e-15) ? std::max(1e-6, h0 * 1e-3)
                                      : std::pow(0.01 / dmax, 0.2);
    return dir * std::min({100.0 * h0, h1, span});
}

bool inside_guard(const ModelParams& p, const Vec4& y) {
    const double g2 = kPrimaryGuard * kPrimaryGuard;
    const double r1s = (y[0] + p.mu) * (y[0] + p.mu) + y[1] * y[1];
    const double r2s = (y[0] + p.mu - 1.0) * (y[0] + p.mu - 1.0) + y[1] * y[1];
    return r1s < g2 || r2s < g2;
}

void record(Trajectory& traj, const ModelParams& p, double t, const Vec4& y) {
    const PhaseState s = PhaseState::from_vec(y, t);
    traj.samples.push_back(s);
    traj.jacobi.push_back(jacobi_constant(p, s));
    traj.jacobi_rate.push_back(jacobi_rate(p, s));
}

}  // namespace

Trajectory integrate(const ModelParams& p, const PhaseState& init, double t_end,
                     const IntegratorOptions& opt) {
    if (!(opt.tol >= 1e-14 && opt.tol <= 1e-3))
        throw DomainError("tol", "tolerance must lie in [1e-14, 1e-3]");
    if (opt.stride < 1) throw DomainError("stride", "stride must be >= 1");
    if (inside_guard(p, init.vec()))
        throw DomainError("init", "initial state inside a primary guard radius");

    Trajectory traj;
    traj.meta.tol = opt.tol;

    const double t0 = init.t;
    const double dir = (t_end >= t0) ? 1.0 : -1.0;
    const double span = std::abs(t_end - t0);

    Stepper st{p};
    double t = t0;
    Vec4 y = init.vec();
    record(traj, p, t, y);
    if (span == 0.0) return traj;

    Vec4 k1 = st.eval(t, y);
    double h = (opt.h0 > 0.0) ? dir * std::min(opt.h0, span)
                              : initial_step(st, t, y, k1, opt.tol, dir, span);
    if (opt.max_dt > 0.0) h = dir * std::min(std::abs(h), opt.max_dt);

    // PI controller, Hairer's dopri5 constants
    constexpr double beta = 0.04, expo1 = 0.2 - beta * 0.75, safe = 0.9;
    constexpr double fac1 = 0.2, fac2 = 10.0;
    double facold = 1e-4;
    bool rejected = false;
    long accepted_since_sample = 0;

    auto abort_with = [&](AbortReason why) {
        traj.meta.abort = why;
        traj.meta.abort_state = PhaseState::from_vec(y, t);
        traj.meta.evaluations = st.evaluations;
    };

    while (dir * (t_end - t) > 0.0) {
        if (traj.meta.accepted + traj.meta.rejected >= opt.max_steps) {
            abort_with(AbortReason::StepLimit);
            return traj;
        }
        if (std::abs(h) < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
            abort_with(AbortReason::StepUnderflow);
            return traj;
        }
        bool last = false;
        if (dir * (t + h - t_end) > 0.0) {
            h = t_end - t;
            last = true;
        }

        Vec4 y5, err, k7;
        try {
            st.step(t, y, k1, h, y5, err, k7);
        } catch (const SingularityError&) {
            abort_with(AbortReason::PrimaryCollision);
            return traj;
        }
        const double en = error_norm(err, y, y5, opt.tol);
        const double fac11 = std::pow(std::max(en, 1e-30), expo1);
        if (en <= 1.0) {
            // accept
            facold = std::max(en, 1e-4);
            t = last ? t_end : t + h;
            y = y5;
            k1 = k7;  // FSAL
            ++traj.meta.accepted;
            ++accepted_since_sample;
            if (inside_guard(p, y)) {
                abort_with(AbortReason::PrimaryCollision);
                return traj;
            }
            const bool done = !(dir * (t_end - t) > 0.0);
            if (done || accepted_since_sample >= opt.stride) {
                record(traj, p, t, y);
                accepted_since_sample = 0;
            }
            double fac = fac11 / std::pow(facold, beta);
            fac = std::max(1.0 / fac2, std::min(1.0 / fac1, fac / safe));
            double hnew = h / fac;
            if (rejected) hnew = dir * std::min(std::abs(hnew), std::abs(h));
            rejected = false;
            h = hnew;
        } else {
            ++traj.meta.rejected;
            rejected = true;
            h = h / std::min(1.0 / fac1, fac11 / safe);
        }
        if (opt.max_dt > 0.0 && std::abs(h) > opt.max_dt) h = dir * opt.max_dt;
    }
    traj.meta.evaluations = st.evaluations;
    return traj;
}

Trajectory integrate_fixed(const ModelParams& p, const PhaseState& init, double t_end,
                           double h, int stride) {
    if (!(h > 0.0)) throw DomainError("h", "fixed step must be > 0");
    if (stride < 1) throw DomainError("stride", "stride must be >= 1");
    if (inside_guard(p, init.vec()))
        throw DomainError("init", "initial state inside a primary guard radius");

    Trajectory traj;
    const double t0 = init.t;
    const double dir = (t_end >= t0) ? 1.0 : -1.0;

    Stepper st{p};
    double t = t0;
    Vec4 y = init.vec();
    record(traj, p, t, y);
    Vec4 k1 = st.eval(t, y);
    long accepted_since_sample = 0;
    while (dir * (t_end - t) > 1e-14 * std::max(1.0, std::abs(t_end))) {
        double hs = dir * h;
        bool last = false;
        if (dir * (t + hs - t_end) >= 0.0) {
            hs = t_end - t;
            last = true;
        }
        Vec4 y5, err, k7;
        try {
            st.step(t, y, k1, hs, y5, err, k7);
        } catch (const SingularityError&) {
            traj.meta.abort = AbortReason::PrimaryCollision;
            traj.meta.abort_state = PhaseState::from_vec(y, t);
            return traj;
        }
        t = last ? t_end : t + hs;
        y = y5;
        k1 = k7;
        ++traj.meta.accepted;
        ++accepted_since_sample;
        if (last || accepted_since_sample >= stride) {
            record(traj, p, t, y);
            accepted_since_sample = 0;
        }
    }
    traj.meta.evaluations = st.evaluations;
    return traj;
}

DriftReport drift_report(const Trajectory& traj) {
    const auto n = traj.samples.size();
    if (n < 2) throw std::invalid_argument("drift_report needs at least two samples");

    DriftReport rep;
    const double c0 = traj.jacobi.front();
    for (double c : traj.jacobi)
        rep.max_jacobi_drift = std::max(rep.max_jacobi_drift, std::abs(c - c0));

    if (n == 2) {
        const double dt = traj.samples[1].t - traj.samples[0].t;
        const double num = (traj.jacobi[1] - traj.jacobi[0]) / dt;
        const double ana = 0.5 * (traj.jacobi_rate[0] + traj.jacobi_rate[1]);
        rep.max_rate_residual = std::abs(num - ana);
        return rep;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h1 = traj.samples[i].t - traj.samples[i - 1].t;
        const double h2 = traj.samples[i + 1].t - traj.samples[i].t;
        const double num = -h2 / (h1 * (h1 + h2)) * traj.jacobi[i - 1]
                         + (h2 - h1) / (h1 * h2) * traj.jacobi[i]
                         + h1 / (h2 * (h1 + h2)) * traj.jacobi[i + 1];
        rep.max_rate_residual =
            std::max(rep.max_rate_residual, std::abs(num - traj.jacobi_rate[i]));
    }
    return rep;
}

}  // namespace chermnykh
