#pragma once

// Closed-form roots of a real monic quartic via Ferrari's method: depress,
// solve the resolvent cubic, split into two real quadratics. A companion
// matrix eigen-decomposition backs the solver up when the closed form loses
// too much precision (near-degenerate resolvent).

#include <array>
#include <complex>

namespace chermnykh {

/// Roots of lambda^4 + a lambda^3 + b lambda^2 + c lambda + d = 0,
/// sorted by (Re, Im). Finite inputs never fail.
std::array<std::complex<double>, 4> solve_quartic(double a, double b, double c, double d);

/// Largest real root of m^3 + a m^2 + b m + c = 0 (always exists).
double cubic_largest_real_root(double a, double b, double c);

}  // namespace chermnykh
