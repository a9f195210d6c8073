#include "chermnykh/zvc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <thread>
#include <vector>

namespace chermnykh {

namespace {

int worker_count(int rows) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("CHERMNYKH_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return static_cast<int>(std::min<unsigned>(n, static_cast<unsigned>(rows)));
}

}  // namespace

FieldGrid sample_grid(const ModelParams& p, const GridSpec& spec) {
    if (spec.nx < 16 || spec.ny < 16)
        throw DomainError("grid", "grid resolution must be at least 16 x 16");
    if (!(spec.xmax > spec.xmin) || !(spec.ymax > spec.ymin))
        throw DomainError("bbox", "bounding box is degenerate");

    FieldGrid g;
    g.spec = spec;
    g.values.resize(spec.nx, spec.ny);
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> node_bad(spec.nx, spec.ny);

    auto sample_rows = [&](int j0, int j1) {
        for (int j = j0; j < j1; ++j) {
            const double y = g.y(j);
            for (int i = 0; i < spec.nx; ++i) {
                const double x = g.x(i);
                double v;
                bool bad = false;
                try {
                    v = 2.0 * effective_potential(p, PhaseState(x, y, 0.0, 0.0));
                    bad = !std::isfinite(v);
                } catch (const SingularityError&) {
                    v = std::numeric_limits<double>::quiet_NaN();
                    bad = true;
                }
                g.values(i, j) = v;
                node_bad(i, j) = bad;
            }
        }
    };

    const int nw = worker_count(spec.ny);
    if (nw <= 1) {
        sample_rows(0, spec.ny);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (spec.ny + nw - 1) / nw;
        for (int w = 0; w < nw; ++w) {
            const int j0 = w * chunk;
            const int j1 = std::min(spec.ny, j0 + chunk);
            if (j0 < j1) pool.emplace_back(sample_rows, j0, j1);
        }
        for (auto& th : pool) th.join();
    }

    g.cell_masked.resize(spec.nx - 1, spec.ny - 1);
    const bool cut = p.w1 > 0.0;
    for (int i = 0; i + 1 < spec.nx; ++i) {
        for (int j = 0; j + 1 < spec.ny; ++j) {
            bool masked = node_bad(i, j) || node_bad(i + 1, j) || node_bad(i, j + 1)
                       || node_bad(i + 1, j + 1);
            if (!masked && cut) {
                // branch cut of the angular drag term: y = 0, x < -mu
                const double ylo = g.y(j), yhi = g.y(j + 1);
                if (ylo <= 0.0 && yhi >= 0.0 && g.x(i) < -p.mu) masked = true;
            }
            g.cell_masked(i, j) = masked;
        }
    }
    return g;
}

Eigen::AlignedBox2d ContourComponent::bbox() const {
    Eigen::AlignedBox2d box;
    for (const auto& q : points) box.extend(q);
    return box;
}

double ContourComponent::area() const {
    if (!closed || points.size() < 4) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        s += points[i].x() * points[i + 1].y() - points[i + 1].x() * points[i].y();
    return 0.5 * std::abs(s);
}

bool ContourComponent::contains(const Eigen::Vector2d& q) const {
    if (!closed || points.size() < 4) return false;
    bool inside = false;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const auto& a = points[i];
        const auto& b = points[i + 1];
        if ((a.y() > q.y()) != (b.y() > q.y())) {
            const double xc = a.x() + (q.y() - a.y()) / (b.y() - a.y()) * (b.x() - a.x());
            if (q.x() < xc) inside = !inside;
        }
    }
    return inside;
}

Eigen::Vector2d ContourComponent::centroid() const {
    if (!closed || points.size() < 4) return points.empty() ? Eigen::Vector2d::Zero().eval()
                                                            : points.front();
    double a = 0.0, cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const double cross = points[i].x() * points[i + 1].y()
                           - points[i + 1].x() * points[i].y();
        a += cross;
        cx += (points[i].x() + points[i + 1].x()) * cross;
        cy += (points[i].y() + points[i + 1].y()) * cross;
    }
    if (a == 0.0) return points.front();
    return {cx / (3.0 * a), cy / (3.0 * a)};
}

namespace {

// A contour vertex lives on a unique grid edge: (i, j, horizontal?).
struct EdgeId {
    int i, j;
    bool horizontal;
    auto operator<=>(const EdgeId&) const = default;
};

struct Segment {
    EdgeId a, b;
};

}  // namespace

ContourSet extract_contours(const FieldGrid& g, double level) {
    ContourSet out;
    out.level = level;
    if (!std::isfinite(level)) throw DomainError("level", "contour level must be finite");

    const int nx = g.spec.nx, ny = g.spec.ny;
    auto inside = [&](int i, int j) { return g.values(i, j) >= level; };

    std::vector<Segment> segments;
    for (int i = 0; i + 1 < nx; ++i) {
        for (int j = 0; j + 1 < ny; ++j) {
            if (g.cell_masked(i, j)) continue;
            const int mask = (inside(i, j) ? 1 : 0) | (inside(i + 1, j) ? 2 : 0)
                           | (inside(i + 1, j + 1) ? 4 : 0) | (inside(i, j + 1) ? 8 : 0);
            if (mask == 0 || mask == 15) continue;
            const EdgeId B{i, j, true};       // bottom
            const EdgeId T{i, j + 1, true};   // top
            const EdgeId L{i, j, false};      // left
            const EdgeId R{i + 1, j, false};  // right
            switch (mask) {
                case 1:  case 14: segments.push_back({L, B}); break;
                case 2:  case 13: segments.push_back({B, R}); break;
                case 3:  case 12: segments.push_back({L, R}); break;
                case 4:  case 11: segments.push_back({R, T}); break;
                case 6:  case 9:  segments.push_back({B, T}); break;
                case 7:  case 8:  segments.push_back({L, T}); break;
                case 5: case 10: {
                    // saddle cell: split by the center value
                    const double center = 0.25 * (g.values(i, j) + g.values(i + 1, j)
                                                  + g.values(i, j + 1) + g.values(i + 1, j + 1));
                    const bool center_in = center >= level;
                    const bool diag00 = (mask == 5);  // inside corners on the 00-11 diagonal
                    if (diag00 == center_in) {
                        segments.push_back({B, R});
                        segments.push_back({L, T});
                    } else {
                        segments.push_back({L, B});
                        segments.push_back({R, T});
                    }
                    break;
                }
                default: break;
            }
        }
    }

    // interpolated vertex of each crossed edge
    auto vertex = [&](const EdgeId& e) -> Eigen::Vector2d {
        const double va = g.values(e.i, e.j);
        const double vb = e.horizontal ? g.values(e.i + 1, e.j) : g.values(e.i, e.j + 1);
        double t = (level - va) / (vb - va);
        t = std::clamp(t, 0.0, 1.0);
        if (e.horizontal) return {g.x(e.i) + t * g.dx(), g.y(e.j)};
        return {g.x(e.i), g.y(e.j) + t * g.dy()};
    };

    // stitch: every edge vertex touches at most two segments
    std::map<EdgeId, std::vector<int>> touching;
    for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
        touching[segments[s].a].push_back(s);
        touching[segments[s].b].push_back(s);
    }

    std::vector<bool> used(segments.size(), false);
    auto walk = [&](int start_seg, const EdgeId& start_vertex) {
        ContourComponent comp;
        EdgeId v = start_vertex;
        int s = start_seg;
        comp.points.push_back(vertex(v));
        while (true) {
            used[s] = true;
            const EdgeId w = (segments[s].a == v) ? segments[s].b : segments[s].a;
            comp.points.push_back(vertex(w));
            v = w;
            int next = -1;
            for (int cand : touching[v])
                if (!used[cand]) { next = cand; break; }
            if (next < 0) break;
            s = next;
        }
        comp.closed = (v == start_vertex) && comp.points.size() > 3;
        return comp;
    };

    // open chains first (start at vertices of degree 1), then loops
    for (const auto& [v, segs] : touching) {
        if (segs.size() != 1) continue;
        const int s = segs.front();
        if (!used[s]) out.components.push_back(walk(s, v));
    }
    for (int s = 0; s < static_cast<int>(segments.size()); ++s)
        if (!used[s]) out.components.push_back(walk(s, segments[s].a));

    return out;
}

const char* oval_class_name(OvalClass c) {
    switch (c) {
        case OvalClass::Yes: return "yes";
        case OvalClass::VerySmall: return "very-small";
        case OvalClass::No: return "no";
    }
    return "?";
}

namespace {

std::optional<EquilibriumPoint> triangular_candidate(const ModelParams& p, Family fam) {
    if (fam != Family::L4 && fam != Family::L5) return std::nullopt;
    const auto seeds = seed_points(p);
    const auto& seed = seeds[static_cast<int>(fam)];
    EquilibriumPoint e;
    try {
        e = refine(p, seed);
    } catch (const ConvergenceError&) {
        try {
            const auto cls = classical_points(p.mu);
            e = refine(p, Seed{fam, SeedKind::Classical, cls[static_cast<int>(fam)]});
        } catch (const ConvergenceError&) {
            return std::nullopt;
        }
    }
    // the family degenerates when the solve lands outside the triangular region
    if (e.family != fam) return std::nullopt;
    return e;
}

// Largest closed component enclosing pt while excluding every point in excl.
std::optional<ContourComponent> enclosing_lobe(const FieldGrid& g, double level,
                                               const Eigen::Vector2d& pt,
                                               const std::vector<Eigen::Vector2d>& excl) {
    const ContourSet cs = extract_contours(g, level);
    const ContourComponent* best = nullptr;
    for (const auto& comp : cs.components) {
        if (!comp.closed || !comp.contains(pt)) continue;
        bool excluded = false;
        for (const auto& q : excl)
            if (comp.contains(q)) { excluded = true; break; }
        if (excluded) continue;
        if (!best || comp.area() > best->area()) best = &comp;
    }
    if (!best) return std::nullopt;
    return *best;
}

}  // namespace

std::vector<OvalReport> oval_classification(const ModelParams& p,
                                            const std::vector<Family>& families,
                                            const OvalOptions& opt) {
    std::vector<OvalReport> out;
    std::optional<FieldGrid> grid;  // sampled lazily, shared across families

    const auto cand4 = triangular_candidate(p, Family::L4);
    const auto cand5 = triangular_candidate(p, Family::L5);

    for (Family fam : families) {
        OvalReport rep;
        rep.family = fam;
        const auto& cand = (fam == Family::L5) ? cand5 : cand4;
        if (fam != Family::L4 && fam != Family::L5) {
            out.push_back(rep);  // only triangular families carry ovals
            continue;
        }
        if (!cand) {
            out.push_back(rep);
            continue;
        }
        rep.point_found = true;
        rep.point = cand->pos;
        rep.level_base = jacobi_constant(p, PhaseState(rep.point.x(), rep.point.y(), 0.0, 0.0));

        if (!grid) grid = sample_grid(p, opt.grid);
        std::vector<Eigen::Vector2d> excl{{-p.mu, 0.0}, {1.0 - p.mu, 0.0}};
        const auto& mirror = (fam == Family::L5) ? cand4 : cand5;
        if (mirror) excl.push_back(mirror->pos);

        double best_area = -1.0;
        double last_good = 0.0;
        double first_bad_above = 0.0;
        Eigen::Vector2d best_centroid{0.0, 0.0};
        for (int k = 0; k <= opt.ladder_max; ++k) {
            const double offset = opt.dc * std::pow(2.0, k);
            const auto lobe = enclosing_lobe(*grid, rep.level_base + offset, rep.point, excl);
            if (lobe) {
                last_good = offset;
                first_bad_above = 0.0;
                if (lobe->area() > best_area) {
                    best_area = lobe->area();
                    best_centroid = lobe->centroid();
                }
            } else if (last_good > 0.0 && first_bad_above == 0.0) {
                first_bad_above = offset;
            }
        }
        if (best_area < 0.0) {
            out.push_back(rep);  // no enclosing oval at any probed level
            continue;
        }
        if (first_bad_above > 0.0) {
            // refine the break level; the lobe is largest just below it
            double lo = last_good, hi = first_bad_above;
            for (int it = 0; it < opt.bisect_iters; ++it) {
                const double mid = 0.5 * (lo + hi);
                const auto lobe = enclosing_lobe(*grid, rep.level_base + mid, rep.point, excl);
                if (lobe) {
                    lo = mid;
                    if (lobe->area() > best_area) {
                        best_area = lobe->area();
                        best_centroid = lobe->centroid();
                    }
                } else {
                    hi = mid;
                }
            }
            last_good = lo;
        }
        rep.max_area = best_area;
        rep.band = last_good;
        rep.oval_centroid = best_centroid;
        rep.cls = (best_area > opt.area_hi) ? OvalClass::Yes : OvalClass::VerySmall;
        out.push_back(rep);
    }
    return out;
}

}  // namespace chermnykh
