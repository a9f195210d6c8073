#include "chermnykh/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace chermnykh {

namespace {

constexpr double kResidualTol = 1e-12;     // Newton target
constexpr double kResidualAccept = 1e-11;  // contract for converged points
constexpr int kMaxIterations = 100;
constexpr int kMaxHalvings = 20;
constexpr double kSolveRegion = 10.0;  // reject iterates beyond this radius

// Collinear axis equation of the classical problem (q1 = 1, a2 = mb = 0).
double classical_axis(double mu, double x) {
    const double d1 = x + mu;
    const double d2 = x + mu - 1.0;
    return x - (1.0 - mu) * d1 / std::pow(std::abs(d1), 3)
             - mu * d2 / std::pow(std::abs(d2), 3);
}

double bisect_axis(double mu, double lo, double hi) {
    double flo = classical_axis(mu, lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = classical_axis(mu, mid);
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::L1: return "L1";
        case Family::L2: return "L2";
        case Family::L3: return "L3";
        case Family::L4: return "L4";
        case Family::L5: return "L5";
    }
    return "?";
}

std::array<Eigen::Vector2d, 5> classical_points(double mu) {
    const double eps = 1e-7;
    std::array<Eigen::Vector2d, 5> pts;
    pts[0] = {bisect_axis(mu, -mu + eps, 1.0 - mu - eps), 0.0};
    pts[1] = {bisect_axis(mu, 1.0 - mu + eps, 3.0), 0.0};
    pts[2] = {bisect_axis(mu, -3.0, -mu - eps), 0.0};
    pts[3] = {0.5 - mu, std::sqrt(3.0) / 2.0};
    pts[4] = {0.5 - mu, -std::sqrt(3.0) / 2.0};
    return pts;
}

Family nearest_family(double mu, const Eigen::Vector2d& pos) {
    const auto cls = classical_points(mu);
    int best = 0;
    double best_d = (pos - cls[0]).squaredNorm();
    for (int i = 1; i < 5; ++i) {
        const double d = (pos - cls[i]).squaredNorm();
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return static_cast<Family>(best);
}

namespace {

// Small-|y| estimate for the off-axis shift of a formerly collinear point:
// the w1 term of the y equilibrium condition balanced against the linear
// part of the remaining field at the on-axis position x.
std::optional<double> offaxis_y_estimate(const ModelParams& p, double x) {
    if (p.w1 == 0.0) return 0.0;
    const double r1 = std::abs(x + p.mu);
    const double r2 = std::abs(x + p.mu - 1.0);
    if (r1 < 1e-6 || r2 < 1e-6) return std::nullopt;
    const double bs = x * x + p.t * p.t;
    const double denom = p.n2 - (1.0 - p.mu) * p.q1 / std::pow(r1, 3) - p.mu / std::pow(r2, 3)
                       - 1.5 * p.mu * p.a2 / std::pow(r2, 5) - p.mb / (bs * std::sqrt(bs));
    if (std::abs(denom) < 1e-8) return std::nullopt;
    return p.w1 * p.n * (x + p.mu) / (r1 * r1 * denom);
}

struct SeriesContext {
    double belt32;  // (rc^2 + t^2)^(3/2)
    double q23;     // q1^(2/3)
};

SeriesContext series_context(const ModelParams& p) {
    const double b = p.rc * p.rc + p.t * p.t;
    return {b * std::sqrt(b), std::pow(p.q1, 2.0 / 3.0)};
}

std::optional<Eigen::Vector2d> collinear_series_seed(const ModelParams& p, Family fam,
                                                     const Eigen::Vector2d& classical) {
    const auto ctx = series_context(p);
    const auto y0_opt = offaxis_y_estimate(p, classical.x());
    if (!y0_opt) return std::nullopt;
    const double y0 = *y0_opt;

    double r_seed;
    double sign;
    if (fam == Family::L3) {
        // distance from the radiating primary, Eq.-series bracket with the
        // (q1/n^2)^(1/3) photogravitational contraction
        if (p.q1 <= 0.0) return std::nullopt;
        double br = 1.0 + 1.5 * p.a2
                  - (1.0 - 2.0 * p.rc) * p.mb * (1.0 - 1.5 * p.mu * p.a2 / (1.0 - p.mu)) / ctx.belt32;
        if (p.w1 > 0.0 && y0 != 0.0) br += p.n * p.w1 / (2.0 * (1.0 - p.mu) * y0);
        if (!(br > 0.0)) return std::nullopt;
        const double r1_classical = std::abs(classical.x() + p.mu);
        r_seed = r1_classical * std::cbrt(p.q1 / p.n2) / std::cbrt(br);
        sign = -1.0;
        const double arg = r_seed * r_seed - y0 * y0;
        if (!(arg > 0.0)) return std::nullopt;
        return Eigen::Vector2d(-p.mu + sign * std::sqrt(arg), y0);
    }
    // L1 / L2: distance from the smaller primary
    double br = 1.0 - p.mu * (1.0 - 2.0 * p.rc) * p.mb / ctx.belt32;
    if (p.w1 > 0.0 && y0 != 0.0) br -= p.n * p.w1 * (1.0 - 2.5 * p.a2) / (p.mu * y0);
    if (!(br > 0.0)) return std::nullopt;
    const double r2_classical = std::abs(classical.x() + p.mu - 1.0);
    r_seed = r2_classical / std::cbrt(br);
    sign = (fam == Family::L2) ? 1.0 : -1.0;
    const double arg = r_seed * r_seed - y0 * y0;
    if (!(arg > 0.0)) return std::nullopt;
    return Eigen::Vector2d(1.0 - p.mu + sign * std::sqrt(arg), y0);
}

std::optional<Eigen::Vector2d> triangular_series_seed(const ModelParams& p, double ysign) {
    if (p.q1 <= 0.0) return std::nullopt;
    const auto ctx = series_context(p);
    const double q23 = ctx.q23;
    double y0 = ysign * std::sqrt(3.0) / 2.0 * std::cbrt(p.q1);
    double x = 0.0, y = 0.0;
    for (int pass = 0; pass < 2; ++pass) {
        if (y0 == 0.0) return std::nullopt;
        x = -p.mu + 0.5 * q23 * (1.0 - p.a2)
          - p.n * p.w1 * (p.mu * q23 - 2.0 * (1.0 - p.mu)) / (6.0 * p.mu * (1.0 - p.mu) * y0)
          + (1.0 - 2.0 * p.rc) * p.mb
                * ((1.0 - 3.0 * p.mu * p.a2 / (1.0 - p.mu)) * q23 - 1.0) / (3.0 * ctx.belt32);
        const double br = 4.0 - q23 + 2.0 * (q23 - 2.0) * p.a2
                        - 2.0 * p.n * p.w1 * (q23 - 2.0) / (3.0 * p.mu * (1.0 - p.mu) * y0)
                        - 4.0 * (2.0 * p.rc - 1.0) * p.mb
                              * ((q23 - 3.0) * (1.0 - 1.5 * p.mu * p.a2 / (1.0 - p.mu)))
                              / (3.0 * ctx.belt32);
        const double y2 = q23 * br;
        if (!(y2 > 0.0) || !std::isfinite(y2)) return std::nullopt;
        y = ysign * 0.5 * std::sqrt(y2);
        y0 = y;
    }
    if (!std::isfinite(x) || !std::isfinite(y)) return std::nullopt;
    return Eigen::Vector2d(x, y);
}

}  // namespace

std::array<Seed, 5> seed_points(const ModelParams& p) {
    const auto cls = classical_points(p.mu);
    std::array<Seed, 5> seeds;
    for (int i = 0; i < 5; ++i) {
        const Family fam = static_cast<Family>(i);
        std::optional<Eigen::Vector2d> series;
        if (fam == Family::L4 || fam == Family::L5) {
            series = triangular_series_seed(p, fam == Family::L4 ? 1.0 : -1.0);
        } else {
            series = collinear_series_seed(p, fam, cls[i]);
        }
        if (series) {
            seeds[i] = {fam, SeedKind::PaperSeries, *series};
        } else {
            seeds[i] = {fam, SeedKind::Classical, cls[i]};
        }
    }
    return seeds;
}

EquilibriumPoint refine(const ModelParams& p, const Seed& seed) {
    Eigen::Vector2d z = seed.pos;
    {
        const double g2 = kPrimaryGuard * kPrimaryGuard;
        const double r1s = (z.x() + p.mu) * (z.x() + p.mu) + z.y() * z.y();
        const double r2s = (z.x() + p.mu - 1.0) * (z.x() + p.mu - 1.0) + z.y() * z.y();
        if (r1s < g2 || r2s < g2)
            throw ConvergenceError(family_name(seed.family), "seed inside a primary guard radius");
    }

    const double h = 1e-7;
    Eigen::Vector2d g = static_gradient(p, z.x(), z.y());
    double res = g.cwiseAbs().maxCoeff();
    int it = 0;
    for (; it < kMaxIterations && res >= kResidualTol; ++it) {
        Eigen::Matrix2d jac;
        for (int j = 0; j < 2; ++j) {
            Eigen::Vector2d zp = z, zm = z;
            zp[j] += h;
            zm[j] -= h;
            jac.col(j) = (static_gradient(p, zp.x(), zp.y()) - static_gradient(p, zm.x(), zm.y()))
                         / (2.0 * h);
        }
        const Eigen::Vector2d step = jac.fullPivLu().solve(-g);
        if (!step.allFinite())
            throw ConvergenceError(family_name(seed.family), "singular Jacobian in Newton step");

        // step halving until the residual norm decreases
        double lambda = 1.0;
        const double gnorm = g.norm();
        Eigen::Vector2d best_z = z;
        Eigen::Vector2d best_g = g;
        double best_norm = gnorm;
        bool improved = false;
        for (int k = 0; k <= kMaxHalvings; ++k, lambda *= 0.5) {
            const Eigen::Vector2d zn = z + lambda * step;
            if (zn.norm() > kSolveRegion) continue;
            Eigen::Vector2d gn;
            try {
                gn = static_gradient(p, zn.x(), zn.y());
            } catch (const SingularityError&) {
                continue;
            }
            const double nn = gn.norm();
            if (nn < best_norm) {
                best_z = zn;
                best_g = gn;
                best_norm = nn;
                improved = true;
                break;
            }
        }
        if (!improved)
            throw ConvergenceError(family_name(seed.family),
                                   std::string("Newton stalled for seed family ")
                                       + family_name(seed.family));
        z = best_z;
        g = best_g;
        res = g.cwiseAbs().maxCoeff();
    }

    if (res >= kResidualAccept)
        throw ConvergenceError(family_name(seed.family),
                               std::string("no convergence after ") + std::to_string(it)
                                   + " iterations for seed family " + family_name(seed.family));
    {
        const double guard = 1e-6;  // a converged point this close to a primary is spurious
        const double r1 = std::hypot(z.x() + p.mu, z.y());
        const double r2 = std::hypot(z.x() + p.mu - 1.0, z.y());
        if (r1 < guard || r2 < guard)
            throw ConvergenceError(family_name(seed.family), "converged to a primary");
    }

    EquilibriumPoint e;
    e.pos = z;
    e.family = nearest_family(p.mu, z);
    e.residual = res;
    e.seed_kind = seed.kind;
    e.iterations = it;
    return e;
}

std::array<EquilibriumPoint, 5> find_all(const ModelParams& p, SeedMode mode) {
    const auto cls = classical_points(p.mu);
    std::array<Seed, 5> seeds;
    if (mode == SeedMode::Paper) {
        seeds = seed_points(p);
    } else {
        for (int i = 0; i < 5; ++i)
            seeds[i] = {static_cast<Family>(i), SeedKind::Classical, cls[i]};
    }

    std::array<std::optional<EquilibriumPoint>, 5> byfam;
    std::vector<std::string> failures;

    auto place = [&](const EquilibriumPoint& e) -> bool {
        const int slot = static_cast<int>(e.family);
        if (byfam[slot]) return (byfam[slot]->pos - e.pos).norm() < 1e-8;  // duplicate of same point
        byfam[slot] = e;
        return true;
    };

    for (int i = 0; i < 5; ++i) {
        try {
            place(refine(p, seeds[i]));
        } catch (const ConvergenceError&) {
            // retried from the classical position below if the family is still open
        }
    }
    for (int i = 0; i < 5; ++i) {
        if (byfam[i]) continue;
        const Family fam = static_cast<Family>(i);
        try {
            const EquilibriumPoint e = refine(p, Seed{fam, SeedKind::Classical, cls[i]});
            if (static_cast<int>(e.family) == i) {
                place(e);
            } else {
                failures.push_back(std::string(family_name(fam)) + " (converged into family "
                                   + family_name(e.family) + ")");
            }
        } catch (const ConvergenceError& err) {
            failures.push_back(std::string(family_name(fam)) + " (" + err.what() + ")");
        }
    }

    for (int i = 0; i < 5; ++i) {
        if (!byfam[i]) {
            std::string msg = "could not locate equilibrium families:";
            for (const auto& f : failures) msg += " " + f;
            if (failures.empty()) msg += std::string(" ") + family_name(static_cast<Family>(i));
            throw ConvergenceError(family_name(static_cast<Family>(i)), msg);
        }
    }

    std::array<EquilibriumPoint, 5> out;
    for (int i = 0; i < 5; ++i) out[i] = *byfam[i];
    return out;
}

}  // namespace chermnykh
