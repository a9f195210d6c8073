#pragma once

// Trajectory integration of the full equations of motion with an embedded
// Dormand-Prince 5(4) pair and PI step-size control. The Jacobi function
// and its analytic rate are monitored along the trajectory so drift can be
// validated against the drag dissipation without re-deriving parameters.

#include <vector>

#include "chermnykh/model.hpp"
#include "chermnykh/types.hpp"

namespace chermnykh {

struct IntegratorOptions {
    double tol = 1e-10;   // local error tolerance (absolute and relative), [1e-14, 1e-3]
    double max_dt = 0.0;  // cap on the step size; 0 = uncapped
    double h0 = 0.0;      // initial step; 0 = automatic
    int stride = 1;       // record every stride-th accepted step
    long max_steps = 20'000'000;
};

enum class AbortReason { None, PrimaryCollision, StepUnderflow, StepLimit };

struct Trajectory {
    std::vector<PhaseState> samples;   // time tags strictly increasing
    std::vector<double> jacobi;        // C per sample
    std::vector<double> jacobi_rate;   // analytic dC/dt per sample

    struct Meta {
        double tol = 0.0;
        long accepted = 0;
        long rejected = 0;
        long evaluations = 0;
        AbortReason abort = AbortReason::None;
        PhaseState abort_state;  // last state before the abort
    } meta;

    bool ok() const { return meta.abort == AbortReason::None; }
};

/// Adaptive integration from init.t to t_end (either direction).
/// Validation failures throw DomainError; collisions with a primary guard
/// radius and step underflow end the run early with the reason and the
/// offending state recorded in meta.
Trajectory integrate(const ModelParams& p, const PhaseState& init, double t_end,
                     const IntegratorOptions& opt = {});

/// Fixed-step variant of the same Runge-Kutta pair (no error control);
/// used for convergence-order studies.
Trajectory integrate_fixed(const ModelParams& p, const PhaseState& init, double t_end,
                           double h, int stride = 1);

struct DriftReport {
    double max_jacobi_drift = 0.0;   // max |C(t) - C(0)|
    double max_rate_residual = 0.0;  // max |numerical dC/dt - analytic dC/dt|
};

/// Jacobi drift diagnostics over a recorded trajectory; the numerical
/// dC/dt uses a three-point quadratic fit on the (nonuniform) sample times.
/// Throws std::invalid_argument for fewer than two samples.
DriftReport drift_report(const Trajectory& traj);

}  // namespace chermnykh
