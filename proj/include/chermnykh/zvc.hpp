#pragma once

// Zero-velocity curves: 2*Omega sampled at zero velocity on a rectangular
// grid, level sets extracted by marching squares with linear interpolation
// and center-value saddle disambiguation, and the qualitative oval
// classification around the triangular points.

#include <vector>

#include <Eigen/Core>

#include "chermnykh/equilibria.hpp"
#include "chermnykh/model.hpp"
#include "chermnykh/types.hpp"

namespace chermnykh {

struct GridSpec {
    double xmin = -1.6, xmax = 1.6;
    double ymin = -1.6, ymax = 1.6;
    int nx = 400, ny = 400;
};

struct FieldGrid {
    GridSpec spec;
    Eigen::ArrayXXd values;  // nx x ny, 2*Omega at zero velocity
    // cells (nx-1) x (ny-1) skipped by the contour extractor: a corner inside
    // a primary guard radius / non-finite, or straddling the w1 > 0 branch
    // cut along y = 0, x < -mu
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> cell_masked;

    double dx() const { return (spec.xmax - spec.xmin) / (spec.nx - 1); }
    double dy() const { return (spec.ymax - spec.ymin) / (spec.ny - 1); }
    double x(int i) const { return spec.xmin + i * dx(); }
    double y(int j) const { return spec.ymin + j * dy(); }
};

/// Samples the zero-velocity field (angular drag term included). Rows are
/// sampled concurrently; CHERMNYKH_THREADS caps the worker count.
/// Requires nx, ny >= 16 and a nondegenerate bbox.
FieldGrid sample_grid(const ModelParams& p, const GridSpec& spec);

struct ContourComponent {
    std::vector<Eigen::Vector2d> points;  // closed components repeat the first point last
    bool closed = false;

    Eigen::AlignedBox2d bbox() const;
    double area() const;                            // shoelace; 0 for open polylines
    bool contains(const Eigen::Vector2d& q) const;  // ray cast; false for open polylines
    Eigen::Vector2d centroid() const;               // polygon centroid (closed only)
};

struct ContourSet {
    double level = 0.0;
    std::vector<ContourComponent> components;
};

/// Marching squares at the given level. A level outside the field range
/// yields an empty set.
ContourSet extract_contours(const FieldGrid& g, double level);

enum class OvalClass { Yes, VerySmall, No };

const char* oval_class_name(OvalClass c);

struct OvalOptions {
    double dc = 1e-4;      // base level offset from the triangular point's C
    double area_hi = 0.3;  // yes / very-small separation (canonical area)
    int ladder_max = 10;   // offsets dc * 2^k, k = 0..ladder_max
    int bisect_iters = 12; // refinement of the level where the oval breaks
    GridSpec grid;
};

struct OvalReport {
    Family family{};
    OvalClass cls = OvalClass::No;
    bool point_found = false;
    Eigen::Vector2d point{0.0, 0.0};   // triangular-family equilibrium, if found
    double level_base = 0.0;           // C at that point
    double max_area = 0.0;             // largest closed oval found around it
    double band = 0.0;                 // level offset at which the oval still exists
    Eigen::Vector2d oval_centroid{0.0, 0.0};
};

/// Qualitative Table-1 style classification of each requested triangular
/// family: "yes" when a closed contour component enclosing the family's
/// point (and neither primary nor the mirror point) reaches area > area_hi
/// over a ladder of levels C + dc*2^k with a bisected break level,
/// "very-small" when such components exist but stay smaller, "no" when the
/// family has no triangular-type point or no enclosing component at all.
std::vector<OvalReport> oval_classification(const ModelParams& p,
                                            const std::vector<Family>& families,
                                            const OvalOptions& opt = {});

}  // namespace chermnykh
