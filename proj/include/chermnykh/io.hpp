#pragma once

// Presets and result serialization. All writers are deterministic: no
// wall-clock content, fixed formatting, stable ordering. The optional
// metadata comment line carries only the tool name and the parameters.

#include <optional>
#include <string>
#include <vector>

#include "chermnykh/dynamics.hpp"
#include "chermnykh/equilibria.hpp"
#include "chermnykh/stability.hpp"
#include "chermnykh/zvc.hpp"

namespace chermnykh {

/// key=value preset text (keys mu, q1, a2, mb, t, cd; '#' comments).
/// Unknown keys or malformed values raise DomainError; missing keys keep
/// the ModelInputs defaults.
ModelInputs parse_preset_text(const std::string& text);

ModelInputs load_preset_file(const std::string& path);

/// Sun-Earth preset: mu = 3.00348e-6, cd = 1.0066e4.
ModelInputs sun_earth_inputs();

/// Resolves a --preset argument: an existing file path is loaded, the
/// built-in name "sun-earth" maps to sun_earth_inputs(), anything else
/// raises DomainError.
ModelInputs resolve_preset(const std::string& name_or_path);

std::string format_params_comment(const ModelParams& p);

struct EquilibriumRow {
    EquilibriumPoint point;
    std::optional<StabilityReport> stability;
};

std::string equilibria_csv(const std::vector<EquilibriumRow>& rows,
                           const std::string& meta_comment = {});
std::string equilibria_json(const std::vector<EquilibriumRow>& rows);

std::string stability_json(const std::vector<StabilityReport>& reports);
std::string stability_csv(const std::vector<StabilityReport>& reports,
                          const std::string& meta_comment = {});

std::string trajectory_csv(const Trajectory& traj, const std::string& meta_comment = {});

std::string contours_csv(const std::vector<ContourSet>& sets,
                         const std::string& meta_comment = {});

/// Standalone SVG rendering of contour sets with the primaries and any
/// supplied equilibrium points marked.
std::string contours_svg(const GridSpec& spec, const std::vector<ContourSet>& sets,
                         double mu, const std::vector<EquilibriumPoint>& points);

std::string oval_reports_csv(const std::vector<std::pair<std::string, OvalReport>>& rows,
                             const std::string& meta_comment = {});

void write_file(const std::string& path, const std::string& content);

}  // namespace chermnykh
