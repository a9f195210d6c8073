#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace chermnykh {

/// Evaluations closer than this to either primary raise SingularityError.
inline constexpr double kPrimaryGuard = 1e-9;

/// Input validation failure; carries the name of the offending field.
class DomainError : public std::invalid_argument {
public:
    DomainError(std::string field, const std::string& msg)
        : std::invalid_argument(msg), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Field evaluation requested inside the guard radius of a primary.
/// When W1 > 0 the first primary is also the pole of the angular drag term.
class SingularityError : public std::runtime_error {
public:
    SingularityError(int primary, double x, double y, const std::string& msg)
        : std::runtime_error(msg), primary_(primary), x_(x), y_(y) {}
    int primary() const noexcept { return primary_; }
    double x() const noexcept { return x_; }
    double y() const noexcept { return y_; }

private:
    int primary_;
    double x_, y_;
};

/// Root solve did not converge; carries the equilibrium family it was after.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(std::string family, const std::string& msg)
        : std::runtime_error(msg), family_(std::move(family)) {}
    const std::string& family() const noexcept { return family_; }

private:
    std::string family_;
};

/// Raw problem parameters, as read from a preset or the command line.
struct ModelInputs {
    double mu = 0.025;  // mass ratio m2/(m1+m2), 0 < mu <= 1/2
    double q1 = 1.0;    // mass-reduction factor, 0 <= q1 <= 1
    double a2 = 0.0;    // oblateness coefficient of the smaller primary, >= 0
    double mb = 0.0;    // belt mass, >= 0
    double t = 0.01;    // belt width parameter (flatness + core), >= 0
    double cd = 1e4;    // dimensionless speed of light, > 0
};

/// Physical dust-grain properties (C.G.S.) that determine q1.
struct RadiationInputs {
    double radius_cm = 1.0;  // particle radius a, cm
    double density = 1.0;    // rho, g/cm^3
    double chi = 1.0;        // radiation pressure efficiency factor
};

/// Validated parameters plus derived quantities. Immutable after derivation;
/// all field evaluations are pure, so sharing across threads is safe.
template <typename Scalar>
struct ModelParamsT {
    Scalar mu{}, q1{}, a2{}, mb{}, t{}, cd{};
    Scalar w1{};  // P-R drag coefficient (1-mu)(1-q1)/cd
    Scalar rc{};  // reference radius, rc^2 = (1-mu) q1^(2/3) + mu^2
    Scalar n{};   // perturbed mean motion
    Scalar n2{};  // n^2 = 1 + 3 a2/2 + 2 mb rc / (rc^2+t^2)^(3/2)

    template <typename S2>
    ModelParamsT<S2> cast() const {
        ModelParamsT<S2> p;
        p.mu = S2(mu); p.q1 = S2(q1); p.a2 = S2(a2);
        p.mb = S2(mb); p.t = S2(t); p.cd = S2(cd);
        p.w1 = S2(w1); p.rc = S2(rc); p.n = S2(n); p.n2 = S2(n2);
        return p;
    }
};

using ModelParams = ModelParamsT<double>;

/// Planar state in the rotating barycentric frame.
template <typename Scalar>
struct PhaseStateT {
    Scalar x{}, y{}, vx{}, vy{};
    Scalar t{};  // time tag, optional (defaults to 0)

    PhaseStateT() = default;
    PhaseStateT(Scalar x_, Scalar y_, Scalar vx_, Scalar vy_, Scalar t_ = Scalar(0))
        : x(x_), y(y_), vx(vx_), vy(vy_), t(t_) {}

    Eigen::Matrix<Scalar, 4, 1> vec() const {
        return Eigen::Matrix<Scalar, 4, 1>(x, y, vx, vy);
    }
    static PhaseStateT from_vec(const Eigen::Matrix<Scalar, 4, 1>& v, Scalar time = Scalar(0)) {
        return PhaseStateT(v[0], v[1], v[2], v[3], time);
    }
};

using PhaseState = PhaseStateT<double>;

}  // namespace chermnykh
