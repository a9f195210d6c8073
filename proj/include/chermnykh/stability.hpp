#pragma once

// Linear (Lyapunov) stability of the equilibrium points: the variational
// matrix of the flow, the characteristic quartic from two routes (the
// matrix's characteristic polynomial and the coefficient formulas printed
// in the source analysis), Ferrari roots, and classification. The
// matrix-derived coefficients are authoritative for classification; the
// printed formulas are evaluated verbatim and diffed, never corrected.

#include <array>
#include <complex>

#include <Eigen/Core>

#include "chermnykh/equilibria.hpp"
#include "chermnykh/model.hpp"
#include "chermnykh/quartic.hpp"
#include "chermnykh/types.hpp"

namespace chermnykh {

/// d/dt (alpha, beta, alpha', beta') = M (alpha, beta, alpha', beta');
/// upper blocks are exactly [0 | I], the acceleration rows hold the field
/// partials plus the Coriolis entries +-2n.
using VariationalMatrix = Eigen::Matrix4d;

/// Assembles M from central finite differences of rhs (step 1e-6) at the
/// equilibrium with zero velocity; the structural blocks are imposed, not
/// differentiated.
VariationalMatrix linearize(const ModelParams& p, const EquilibriumPoint& eq);

enum class CoeffSource { Matrix, Paper };

/// Monic characteristic quartic lambda^4 + a lambda^3 + b lambda^2
/// + c lambda + d, with the printed-formula auxiliaries e and f* carried
/// along when source == Paper.
struct QuarticCoeffs {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
    double e = 0.0, fstar = 0.0;
    CoeffSource source = CoeffSource::Matrix;
};

/// Characteristic polynomial of M by the Faddeev-LeVerrier recurrence.
QuarticCoeffs matrix_coefficients(const VariationalMatrix& m);

/// The printed coefficient block evaluated literally at the equilibrium,
/// including f* and the identity c = -a(1+e).
QuarticCoeffs paper_coefficients(const ModelParams& p, const EquilibriumPoint& eq);

inline std::array<std::complex<double>, 4> solve_quartic(const QuarticCoeffs& q) {
    return solve_quartic(q.a, q.b, q.c, q.d);
}

enum class StabilityClass { Stable, Marginal, Unstable };

const char* stability_class_name(StabilityClass c);

inline constexpr double kMarginalEps = 1e-9;

/// Unstable if any root has Re > eps; stable if all have Re < -eps;
/// marginal otherwise. Invariant under root reordering.
StabilityClass classify(const std::array<std::complex<double>, 4>& roots,
                        double eps = kMarginalEps);

struct StabilityReport {
    EquilibriumPoint point;
    std::array<std::complex<double>, 4> roots{};  // of the matrix quartic, sorted
    double max_re = 0.0;
    StabilityClass cls = StabilityClass::Marginal;
    QuarticCoeffs coeffs_matrix;
    QuarticCoeffs coeffs_paper;
    double coeff_discrepancy = 0.0;  // max |paper - matrix| over (a, b, c, d)
};

StabilityReport stability_report(const ModelParams& p, const EquilibriumPoint& eq);

/// Critical mass ratio of the classical triangular points (q1 = 1,
/// a2 = mb = 0), located by bisection on the marginal/unstable transition
/// of the L4 report. tol is the bisection interval width.
double routh_boundary(double tol = 1e-10);

}  // namespace chermnykh
