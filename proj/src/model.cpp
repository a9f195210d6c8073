#include "chermnykh/model.hpp"

#include <cmath>
#include <string>

namespace chermnykh {

namespace {

void require(bool ok, const char* field, const std::string& msg) {
    if (!ok) throw DomainError(field, msg);
}

}  // namespace

void validate(const ModelInputs& in) {
    require(std::isfinite(in.mu) && in.mu > 0.0 && in.mu <= 0.5, "mu",
            "mu must satisfy 0 < mu <= 0.5, got " + std::to_string(in.mu));
    require(std::isfinite(in.q1) && in.q1 >= 0.0 && in.q1 <= 1.0, "q1",
            "q1 must satisfy 0 <= q1 <= 1, got " + std::to_string(in.q1));
    require(std::isfinite(in.a2) && in.a2 >= 0.0, "a2",
            "a2 must be >= 0, got " + std::to_string(in.a2));
    require(std::isfinite(in.mb) && in.mb >= 0.0, "mb",
            "mb must be >= 0, got " + std::to_string(in.mb));
    require(std::isfinite(in.t) && in.t >= 0.0, "t",
            "t must be >= 0, got " + std::to_string(in.t));
    require(std::isfinite(in.cd) && in.cd > 0.0, "cd",
            "cd must be > 0, got " + std::to_string(in.cd));
}

ModelParams derive_params(const ModelInputs& in) {
    validate(in);
    ModelParams p;
    p.mu = in.mu;
    p.q1 = in.q1;
    p.a2 = in.a2;
    p.mb = in.mb;
    p.t = in.t;
    p.cd = in.cd;
    p.w1 = (1.0 - in.mu) * (1.0 - in.q1) / in.cd;
    p.rc = std::sqrt((1.0 - in.mu) * std::pow(in.q1, 2.0 / 3.0) + in.mu * in.mu);
    const double belt = p.rc * p.rc + in.t * in.t;
    p.n2 = 1.0 + 1.5 * in.a2 + 2.0 * in.mb * p.rc / (belt * std::sqrt(belt));
    p.n = std::sqrt(p.n2);
    return p;
}

double q1_from_radiation(const RadiationInputs& r) {
    if (!(std::isfinite(r.radius_cm) && r.radius_cm > 0.0))
        throw DomainError("radius_cm", "particle radius must be > 0");
    if (!(std::isfinite(r.density) && r.density > 0.0))
        throw DomainError("density", "particle density must be > 0");
    if (!(std::isfinite(r.chi) && r.chi >= 0.0))
        throw DomainError("chi", "radiation efficiency must be >= 0");
    const double q1 = 1.0 - 5.6e-5 * r.chi / (r.radius_cm * r.density);
    if (q1 < 0.0 || q1 > 1.0)
        throw DomainError("q1", "derived q1 = " + std::to_string(q1) + " outside [0, 1]");
    return q1;
}

}  // namespace chermnykh
