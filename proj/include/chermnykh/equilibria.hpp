#pragma once

// Equilibrium points of the static field: seeded from the classical Lagrange
// geometry corrected by the paper-series brackets, refined by damped Newton
// iteration on static_gradient. Families keep the L1..L5 naming even when
// drag pushes the formerly collinear points off the x-axis; points are
// labeled by the nearest classical Lagrange point.

#include <array>
#include <string>

#include <Eigen/Core>

#include "chermnykh/model.hpp"
#include "chermnykh/types.hpp"

namespace chermnykh {

enum class Family { L1 = 0, L2, L3, L4, L5 };

const char* family_name(Family f);

enum class SeedKind { Classical, PaperSeries };

struct Seed {
    Family family{};
    SeedKind kind{};
    Eigen::Vector2d pos{0.0, 0.0};
};

struct EquilibriumPoint {
    Eigen::Vector2d pos{0.0, 0.0};
    Family family{};
    double residual = 0.0;  // max-norm of static_gradient at pos
    SeedKind seed_kind{};
    int iterations = 0;
};

/// Classical Lagrange points (q1 = 1, a2 = mb = 0, n = 1) for this mu:
/// bisection on the collinear axis equation, analytic triangular pair.
/// L1 lies between the primaries, L2 beyond the smaller, L3 beyond the bigger.
std::array<Eigen::Vector2d, 5> classical_points(double mu);

/// Family label of a position by nearest classical Lagrange point.
Family nearest_family(double mu, const Eigen::Vector2d& pos);

/// Five approximate positions, one per family. Collinear seeds scale the
/// classical geometry by the paper-series correction brackets (with the
/// drag y-correction dropped when w1 = 0); triangular seeds evaluate the
/// series directly with y0 = sqrt(3)/2 q1^(1/3) refreshed once. Falls back
/// to the classical position whenever a series term is undefined.
std::array<Seed, 5> seed_points(const ModelParams& p);

/// Damped Newton iteration on static_gradient with a central finite
/// difference Jacobian. Converges to residual < 1e-11 or throws
/// ConvergenceError; iterates that enter a primary guard radius or leave
/// the solve region are rejected. The result is labeled by nearest
/// classical family, which may differ from the seed's family.
EquilibriumPoint refine(const ModelParams& p, const Seed& seed);

enum class SeedMode { Paper, Classical };

/// All five equilibrium points, deduplicated and ordered L1..L5.
/// Missing or duplicated families are retried from classical seeds; when a
/// family still cannot be produced, throws ConvergenceError naming it.
std::array<EquilibriumPoint, 5> find_all(const ModelParams& p, SeedMode mode = SeedMode::Paper);

}  // namespace chermnykh
