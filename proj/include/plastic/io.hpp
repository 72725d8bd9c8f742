#pragma once

#include <string>
#include <vector>

#include "plastic/cocycle.hpp"
#include "plastic/finite.hpp"
#include "plastic/windows.hpp"

#include "json.hpp"

namespace plastic::io {

/// Doubles are rendered with %.17g: round-trip exact and byte-stable.
std::string format_double(double x);

std::string patch_csv(const std::vector<ControlPoint>& points);
std::string peaks_csv(const std::vector<PeakRecord>& peaks);
nlohmann::json peaks_json(const std::vector<PeakRecord>& peaks);
std::string cloud_csv(const std::array<WindowCloud, 3>& clouds, bool only_letter = false,
                      Letter letter = Letter::a);
std::string scan_csv(const FiniteScan& scan);
std::string grid_csv(const FtGrid& grid);

/// Binary 8-bit PGM (P5, maxval 255), values clamped to [lo, hi] and
/// scaled linearly. Rows run top to bottom with increasing grid y.
std::string grid_pgm(const Eigen::MatrixXd& layer, double lo, double hi);

Eigen::MatrixXd grid_magnitude(const FtGrid& grid);
Eigen::MatrixXd grid_argument(const FtGrid& grid);

/// Constants block shared by every metadata sidecar.
nlohmann::json constants_json();

/// Sidecar: {"command":..., "parameters":..., "constants":..., "version":...}.
nlohmann::json metadata(const std::string& command, const nlohmann::json& parameters);

void write_file(const std::string& path, const std::string& contents);

}  // namespace plastic::io
