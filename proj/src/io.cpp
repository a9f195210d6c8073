#include "chermnykh/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace chermnykh {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

ModelInputs parse_preset_text(const std::string& text) {
    ModelInputs in;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw DomainError("preset", "preset line " + std::to_string(lineno)
                                            + " is not key=value: '" + stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string val = trim(stripped.substr(eq + 1));
        char* end = nullptr;
        const double x = std::strtod(val.c_str(), &end);
        if (end == val.c_str() || *end != '\0')
            throw DomainError(key, "preset value for '" + key + "' is not a number: '" + val + "'");
        if (key == "mu") in.mu = x;
        else if (key == "q1") in.q1 = x;
        else if (key == "a2") in.a2 = x;
        else if (key == "mb") in.mb = x;
        else if (key == "t") in.t = x;
        else if (key == "cd") in.cd = x;
        else throw DomainError(key, "unknown preset key '" + key + "'");
    }
    return in;
}

ModelInputs load_preset_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw DomainError("preset", "cannot open preset file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_preset_text(ss.str());
}

ModelInputs sun_earth_inputs() {
    ModelInputs in;
    in.mu = 3.00348e-6;
    in.q1 = 1.0;
    in.a2 = 0.0;
    in.mb = 0.0;
    in.t = 0.01;
    in.cd = 1.0066e4;
    return in;
}

ModelInputs resolve_preset(const std::string& name_or_path) {
    if (std::ifstream probe(name_or_path); probe) return load_preset_file(name_or_path);
    if (name_or_path == "sun-earth") return sun_earth_inputs();
    throw DomainError("preset", "unknown preset '" + name_or_path
                                    + "' (not a built-in name or a readable file)");
}

std::string format_params_comment(const ModelParams& p) {
    std::ostringstream os;
    os << "mu=" << fmt(p.mu) << " q1=" << fmt(p.q1) << " a2=" << fmt(p.a2)
       << " mb=" << fmt(p.mb) << " t=" << fmt(p.t) << " cd=" << fmt(p.cd)
       << " w1=" << fmt(p.w1) << " rc=" << fmt(p.rc) << " n=" << fmt(p.n);
    return os.str();
}

std::string equilibria_csv(const std::vector<EquilibriumRow>& rows,
                           const std::string& meta_comment) {
    std::ostringstream os;
    if (!meta_comment.empty()) os << "# " << meta_comment << "\n";
    os << "family,x,y,residual,iterations,seed,class,max_re\n";
    for (const auto& r : rows) {
        os << family_name(r.point.family) << ',' << fmt(r.point.pos.x()) << ','
           << fmt(r.point.pos.y()) << ',' << fmt(r.point.residual) << ','
           << r.point.iterations << ','
           << (r.point.seed_kind == SeedKind::PaperSeries ? "paper-series" : "classical");
        if (r.stability)
            os << ',' << stability_class_name(r.stability->cls) << ','
               << fmt(r.stability->max_re);
        else
            os << ",,";
        os << '\n';
    }
    return os.str();
}

namespace {

nlohmann::json coeffs_json(const QuarticCoeffs& q) {
    nlohmann::json j{{"a", q.a}, {"b", q.b}, {"c", q.c}, {"d", q.d}};
    if (q.source == CoeffSource::Paper) {
        j["e"] = q.e;
        j["fstar"] = q.fstar;
    }
    j["source"] = (q.source == CoeffSource::Paper) ? "paper" : "matrix";
    return j;
}

nlohmann::json report_json(const StabilityReport& rep) {
    nlohmann::json roots = nlohmann::json::array();
    for (const auto& z : rep.roots) roots.push_back({{"re", z.real()}, {"im", z.imag()}});
    return nlohmann::json{
        {"family", family_name(rep.point.family)},
        {"x", rep.point.pos.x()},
        {"y", rep.point.pos.y()},
        {"residual", rep.point.residual},
        {"roots", roots},
        {"max_re", rep.max_re},
        {"class", stability_class_name(rep.cls)},
        {"coeffs_matrix", coeffs_json(rep.coeffs_matrix)},
        {"coeffs_paper", coeffs_json(rep.coeffs_paper)},
        {"coeff_discrepancy", rep.coeff_discrepancy},
    };
}

}  // namespace

std::string equilibria_json(const std::vector<EquilibriumRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json j{
            {"family", family_name(r.point.family)},
            {"x", r.point.pos.x()},
            {"y", r.point.pos.y()},
            {"residual", r.point.residual},
            {"iterations", r.point.iterations},
            {"seed", r.point.seed_kind == SeedKind::PaperSeries ? "paper-series" : "classical"},
        };
        if (r.stability) j["stability"] = report_json(*r.stability);
        arr.push_back(j);
    }
    return arr.dump(2) + "\n";
}

std::string stability_json(const std::vector<StabilityReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& rep : reports) arr.push_back(report_json(rep));
    return arr.dump(2) + "\n";
}

std::string stability_csv(const std::vector<StabilityReport>& reports,
                          const std::string& meta_comment) {
    std::ostringstream os;
    if (!meta_comment.empty()) os << "# " << meta_comment << "\n";
    os << "family,x,y,class,max_re,a,b,c,d,coeff_discrepancy\n";
    for (const auto& rep : reports) {
        os << family_name(rep.point.family) << ',' << fmt(rep.point.pos.x()) << ','
           << fmt(rep.point.pos.y()) << ',' << stability_class_name(rep.cls) << ','
           << fmt(rep.max_re) << ',' << fmt(rep.coeffs_matrix.a) << ','
           << fmt(rep.coeffs_matrix.b) << ',' << fmt(rep.coeffs_matrix.c) << ','
           << fmt(rep.coeffs_matrix.d) << ',' << fmt(rep.coeff_discrepancy) << '\n';
    }
    return os.str();
}

std::string trajectory_csv(const Trajectory& traj, const std::string& meta_comment) {
    std::ostringstream os;
    if (!meta_comment.empty()) os << "# " << meta_comment << "\n";
    os << "t,x,y,vx,vy,C\n";
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const auto& s = traj.samples[i];
        os << fmt(s.t) << ',' << fmt(s.x) << ',' << fmt(s.y) << ',' << fmt(s.vx) << ','
           << fmt(s.vy) << ',' << fmt(traj.jacobi[i]) << '\n';
    }
    return os.str();
}

std::string contours_csv(const std::vector<ContourSet>& sets, const std::string& meta_comment) {
    std::ostringstream os;
    if (!meta_comment.empty()) os << "# " << meta_comment << "\n";
    os << "level,component,closed,x,y\n";
    for (const auto& cs : sets) {
        for (std::size_t c = 0; c < cs.components.size(); ++c) {
            const auto& comp = cs.components[c];
            for (const auto& q : comp.points)
                os << fmt(cs.level) << ',' << c << ',' << (comp.closed ? 1 : 0) << ','
                   << fmt(q.x()) << ',' << fmt(q.y()) << '\n';
        }
    }
    return os.str();
}

std::string contours_svg(const GridSpec& spec, const std::vector<ContourSet>& sets,
                         double mu, const std::vector<EquilibriumPoint>& points) {
    const double w = 800.0;
    const double h = w * (spec.ymax - spec.ymin) / (spec.xmax - spec.xmin);
    const auto X = [&](double x) { return (x - spec.xmin) / (spec.xmax - spec.xmin) * w; };
    const auto Y = [&](double y) { return h - (y - spec.ymin) / (spec.ymax - spec.ymin) * h; };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf"};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t k = 0; k < sets.size(); ++k) {
        const char* color = palette[k % (sizeof(palette) / sizeof(palette[0]))];
        for (const auto& comp : sets[k].components) {
            os << "<polyline fill=\"none\" stroke=\"" << color
               << "\" stroke-width=\"1\" points=\"";
            for (const auto& q : comp.points) {
                char buf[64];
                std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", X(q.x()), Y(q.y()));
                os << buf;
            }
            os << "\"/>\n";
        }
    }
    os << "<circle cx=\"" << X(-mu) << "\" cy=\"" << Y(0) << "\" r=\"6\" fill=\"#f4a300\"/>\n";
    os << "<circle cx=\"" << X(1.0 - mu) << "\" cy=\"" << Y(0) << "\" r=\"3\" fill=\"#444\"/>\n";
    for (const auto& e : points) {
        os << "<g stroke=\"black\" stroke-width=\"1\">"
           << "<line x1=\"" << X(e.pos.x()) - 4 << "\" y1=\"" << Y(e.pos.y()) << "\" x2=\""
           << X(e.pos.x()) + 4 << "\" y2=\"" << Y(e.pos.y()) << "\"/>"
           << "<line x1=\"" << X(e.pos.x()) << "\" y1=\"" << Y(e.pos.y()) - 4 << "\" x2=\""
           << X(e.pos.x()) << "\" y2=\"" << Y(e.pos.y()) + 4 << "\"/>"
           << "</g>\n"
           << "<text x=\"" << X(e.pos.x()) + 5 << "\" y=\"" << Y(e.pos.y()) - 5
           << "\" font-size=\"12\">" << family_name(e.family) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string oval_reports_csv(const std::vector<std::pair<std::string, OvalReport>>& rows,
                             const std::string& meta_comment) {
    std::ostringstream os;
    if (!meta_comment.empty()) os << "# " << meta_comment << "\n";
    os << "frame,family,classification,point_x,point_y,level,max_area,band,centroid_x,centroid_y\n";
    for (const auto& [frame, rep] : rows) {
        os << frame << ',' << family_name(rep.family) << ',' << oval_class_name(rep.cls) << ',';
        if (rep.point_found)
            os << fmt(rep.point.x()) << ',' << fmt(rep.point.y()) << ','
               << fmt(rep.level_base) << ',' << fmt(rep.max_area) << ',' << fmt(rep.band) << ','
               << fmt(rep.oval_centroid.x()) << ',' << fmt(rep.oval_centroid.y());
        else
            os << ",,,,,,";
        os << '\n';
    }
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file '" + path + "'");
    f << content;
    if (!f) throw std::runtime_error("failed writing output file '" + path + "'");
}

}  // namespace chermnykh
