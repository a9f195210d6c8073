#include "chermnykh/stability.hpp"

#include <algorithm>
#include <cmath>

namespace chermnykh {

VariationalMatrix linearize(const ModelParams& p, const EquilibriumPoint& eq) {
    const double h = 1e-6;
    VariationalMatrix m = VariationalMatrix::Zero();
    m(0, 2) = 1.0;
    m(1, 3) = 1.0;
    const Eigen::Vector4d base(eq.pos.x(), eq.pos.y(), 0.0, 0.0);
    for (int j = 0; j < 4; ++j) {
        Eigen::Vector4d sp = base, sm = base;
        sp[j] += h;
        sm[j] -= h;
        const Eigen::Vector4d fp = rhs(p, PhaseState::from_vec(sp));
        const Eigen::Vector4d fm = rhs(p, PhaseState::from_vec(sm));
        m(2, j) = (fp[2] - fm[2]) / (2.0 * h);
        m(3, j) = (fp[3] - fm[3]) / (2.0 * h);
    }
    return m;
}

QuarticCoeffs matrix_coefficients(const VariationalMatrix& m) {
    // Faddeev-LeVerrier: p(lambda) = lambda^4 + c1 lambda^3 + ... + c4
    QuarticCoeffs q;
    q.source = CoeffSource::Matrix;
    Eigen::Matrix4d mk = m;
    const double c1 = -mk.trace();
    mk = m * (mk + c1 * Eigen::Matrix4d::Identity());
    const double c2 = -mk.trace() / 2.0;
    mk = m * (mk + c2 * Eigen::Matrix4d::Identity());
    const double c3 = -mk.trace() / 3.0;
    mk = m * (mk + c3 * Eigen::Matrix4d::Identity());
    const double c4 = -mk.trace() / 4.0;
    q.a = c1;
    q.b = c2;
    q.c = c3;
    q.d = c4;
    return q;
}

QuarticCoeffs paper_coefficients(const ModelParams& p, const EquilibriumPoint& eq) {
    const double x = eq.pos.x();
    const double y = eq.pos.y();
    const double r1s = (x + p.mu) * (x + p.mu) + y * y;
    const double r2s = (x + p.mu - 1.0) * (x + p.mu - 1.0) + y * y;
    const double g2 = kPrimaryGuard * kPrimaryGuard;
    if (r1s < g2 || r2s < g2)
        throw DomainError("eq", "equilibrium point coincides with a primary");
    if (p.w1 > 0.0 && y == 0.0)
        throw DomainError("eq", "printed coefficient block needs y* != 0 when w1 > 0");

    const double r1 = std::sqrt(r1s);
    const double r2 = std::sqrt(r2s);
    const double r13 = r1s * r1;
    const double r15 = r13 * r1s;
    const double r23 = r2s * r2;
    const double r25 = r23 * r2s;
    const double rs = x * x + y * y;
    const double belt = rs + p.t * p.t;
    const double belt52 = belt * belt * std::sqrt(belt);
    const double ys = y * y;

    QuarticCoeffs q;
    q.source = CoeffSource::Paper;
    q.fstar = (1.0 - p.mu) * p.q1 / r13 + p.mu / r23 * (1.0 + 1.5 * p.a2 / r2s)
            + 3.0 * p.mb / belt52;
    q.a = 3.0 * p.w1 / r1s;
    q.b = 2.0 * p.n2 - q.fstar - 3.0 * p.mu * p.a2 / r25 + 3.0 * p.mb * p.t * p.t / belt52
        + 2.0 * p.w1 * p.w1 / (r1s * r1s);
    q.e = p.mu * p.a2 / r25 + p.mu / (r1s * r25) * (1.0 + 2.5 * p.a2 / r2s) * ys
        + 3.0 * p.mb * (p.mu * p.mu * ys / rs - p.t * p.t) / belt52;
    q.c = -q.a * (1.0 + q.e);
    q.d = (p.n2 - q.fstar)
              * (p.n2 + 2.0 * q.fstar - 3.0 * p.mu * p.a2 / r25
                 + 3.0 * p.mb * p.t * p.t / belt52)
        + 9.0 * p.mu * (1.0 - p.mu) * ys
              * (p.q1 / (r15 * r25)
                 + 3.0 * p.mb / belt52
                       * (p.mu * p.q1 / r15
                          + (1.0 - p.mu) * (1.0 + 2.5 * p.a2 / r2s) / r25))
        - 6.0 * p.mu * p.n * p.w1 * y / (r1s * r1s)
              * (((x + p.mu) * (x + p.mu - 1.0) + ys) / r25
                 + 3.0 * p.mb * (x * (x + p.mu) + ys) / belt52);
    return q;
}

const char* stability_class_name(StabilityClass c) {
    switch (c) {
        case StabilityClass::Stable: return "stable";
        case StabilityClass::Marginal: return "marginal";
        case StabilityClass::Unstable: return "unstable";
    }
    return "?";
}

StabilityClass classify(const std::array<std::complex<double>, 4>& roots, double eps) {
    bool any_pos = false;
    bool all_neg = true;
    for (const auto& z : roots) {
        if (z.real() > eps) any_pos = true;
        if (!(z.real() < -eps)) all_neg = false;
    }
    if (any_pos) return StabilityClass::Unstable;
    if (all_neg) return StabilityClass::Stable;
    return StabilityClass::Marginal;
}

StabilityReport stability_report(const ModelParams& p, const EquilibriumPoint& eq) {
    StabilityReport rep;
    rep.point = eq;
    rep.coeffs_matrix = matrix_coefficients(linearize(p, eq));
    rep.coeffs_paper = paper_coefficients(p, eq);
    rep.roots = solve_quartic(rep.coeffs_matrix);
    rep.max_re = rep.roots[0].real();
    for (const auto& z : rep.roots) rep.max_re = std::max(rep.max_re, z.real());
    rep.cls = classify(rep.roots);
    rep.coeff_discrepancy =
        std::max({std::abs(rep.coeffs_paper.a - rep.coeffs_matrix.a),
                  std::abs(rep.coeffs_paper.b - rep.coeffs_matrix.b),
                  std::abs(rep.coeffs_paper.c - rep.coeffs_matrix.c),
                  std::abs(rep.coeffs_paper.d - rep.coeffs_matrix.d)});
    return rep;
}

namespace {

StabilityClass l4_class(double mu) {
    ModelInputs in;
    in.mu = mu;
    in.q1 = 1.0;
    in.a2 = 0.0;
    in.mb = 0.0;
    const ModelParams p = derive_params(in);
    const Seed seed{Family::L4, SeedKind::Classical,
                    Eigen::Vector2d(0.5 - mu, std::sqrt(3.0) / 2.0)};
    return stability_report(p, refine(p, seed)).cls;
}

}  // namespace

double routh_boundary(double tol) {
    double lo = 0.02;   // marginal side
    double hi = 0.05;   // unstable side
    if (l4_class(lo) == StabilityClass::Unstable || l4_class(hi) != StabilityClass::Unstable)
        throw ConvergenceError("L4", "unexpected classification at the bisection endpoints");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (l4_class(mid) == StabilityClass::Unstable)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace chermnykh
