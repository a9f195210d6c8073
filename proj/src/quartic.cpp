#include "chermnykh/quartic.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace chermnykh {

namespace {

using Complex = std::complex<double>;
using Roots = std::array<Complex, 4>;

void sort_roots(Roots& r) {
    std::sort(r.begin(), r.end(), [](const Complex& u, const Complex& v) {
        if (u.real() != v.real()) return u.real() < v.real();
        return u.imag() < v.imag();
    });
}

// Roots of t^2 + b t + c with real coefficients, cancellation-safe.
std::array<Complex, 2> quadratic(double b, double c) {
    const double disc = b * b - 4.0 * c;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        const double q = -0.5 * (b + std::copysign(s, b));
        double r0, r1;
        if (q != 0.0) {
            r0 = q;
            r1 = c / q;
        } else {
            r0 = -0.5 * b + 0.5 * s;
            r1 = -0.5 * b - 0.5 * s;
        }
        return {Complex(r0, 0.0), Complex(r1, 0.0)};
    }
    const double im = 0.5 * std::sqrt(-disc);
    return {Complex(-0.5 * b, im), Complex(-0.5 * b, -im)};
}

double poly_residual(const Roots& roots, double a, double b, double c, double d) {
    double worst = 0.0;
    for (const Complex& z : roots) {
        const Complex v = (((z + a) * z + b) * z + c) * z + d;
        const double az = std::abs(z);
        const double scale = ((az + std::abs(a)) * az + std::abs(b)) * az + std::abs(c)
                           + std::abs(d) + 1.0;
        worst = std::max(worst, std::abs(v) / scale);
    }
    return worst;
}

Roots companion_roots(double a, double b, double c, double d) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 3) = -d;
    m(1, 3) = -c;
    m(2, 3) = -b;
    m(3, 3) = -a;
    m(1, 0) = m(2, 1) = m(3, 2) = 1.0;
    Eigen::EigenSolver<Eigen::Matrix4d> es(m, /*computeEigenvectors=*/false);
    Roots r;
    for (int i = 0; i < 4; ++i) r[i] = es.eigenvalues()[i];
    sort_roots(r);
    return r;
}

}  // namespace

double cubic_largest_real_root(double a, double b, double c) {
    // depress: m = z - a/3
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    double z;
    const double disc = -4.0 * p * p * p - 27.0 * q * q;
    if (disc >= 0.0 && p < 0.0) {
        // three real roots; the k = 0 branch is the largest
        const double rad = std::sqrt(-p / 3.0);
        double arg = 3.0 * q / (2.0 * p * rad);
        arg = std::clamp(arg, -1.0, 1.0);
        z = 2.0 * rad * std::cos(std::acos(arg) / 3.0);
    } else {
        // one real root, Cardano with the cancellation-safe pairing
        const double s = std::sqrt(std::max(q * q / 4.0 + p * p * p / 27.0, 0.0));
        const double u = std::cbrt(-q / 2.0 - std::copysign(s, q));
        z = (u != 0.0) ? u - p / (3.0 * u) : 0.0;
    }
    // polish on the original cubic
    double m = z - a / 3.0;
    for (int i = 0; i < 3; ++i) {
        const double f = ((m + a) * m + b) * m + c;
        const double df = (3.0 * m + 2.0 * a) * m + b;
        if (df == 0.0) break;
        const double step = f / df;
        m -= step;
        if (std::abs(step) < 1e-16 * (1.0 + std::abs(m))) break;
    }
    return m;
}

std::array<std::complex<double>, 4> solve_quartic(double a, double b, double c, double d) {
    // depress: lambda = t - a/4, t^4 + p t^2 + q t + r
    const double a2 = a * a;
    const double p = b - 3.0 * a2 / 8.0;
    const double q = c - a * b / 2.0 + a2 * a / 8.0;
    const double r = d - a * c / 4.0 + a2 * b / 16.0 - 3.0 * a2 * a2 / 256.0;

    Roots roots;
    bool done = false;
    if (q == 0.0) {
        // biquadratic: t^2 solves z^2 + p z + r
        const auto z = quadratic(p, r);
        const Complex s0 = std::sqrt(z[0]);
        const Complex s1 = std::sqrt(z[1]);
        roots = {s0, -s0, s1, -s1};
        done = true;
    }
    if (!done) {
        // resolvent cubic 8 m^3 + 8 p m^2 + (2 p^2 - 8 r) m - q^2 = 0; its
        // largest real root is positive when q != 0
        const double m = cubic_largest_real_root(p, (p * p - 4.0 * r) / 4.0, -q * q / 8.0);
        if (m > 0.0) {
            const double s = std::sqrt(2.0 * m);
            const double u = p / 2.0 + m - q / (2.0 * s);
            const double v = p / 2.0 + m + q / (2.0 * s);
            const auto t1 = quadratic(s, u);
            const auto t2 = quadratic(-s, v);
            roots = {t1[0], t1[1], t2[0], t2[1]};
            done = true;
        }
    }
    if (done) {
        for (Complex& z : roots) z -= a / 4.0;
        sort_roots(roots);
        if (poly_residual(roots, a, b, c, d) <= 1e-6) return roots;
    }
    return companion_roots(a, b, c, d);
}

}  // namespace chermnykh
