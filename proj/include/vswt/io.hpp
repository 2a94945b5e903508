#pragma once

#include "vswt/curves.hpp"
#include "vswt/engine.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vswt::io {

inline constexpr std::string_view kGenerator = "vswt 1.0.0";

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// 9 significant digits, '.' decimal, negative zero printed as 0.
std::string format_value(double v);

/// `#`-prefixed metadata lines, header row, one row per abscissa value, LF endings.
void write_csv(const curves::CurveTable& table, std::ostream& out, const Metadata& extra = {});
void write_csv(const engine::Trajectory& traj, std::ostream& out, const Metadata& extra = {});

/// Writes `content` to `path` in one go. Throws IoError.
void write_file(const std::string& path, std::string_view content);

struct ParsedCsv {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Reads the format produced by write_csv.
ParsedCsv parse_csv(std::string_view text);

enum class PlotKind { cp_vw, cp_lambda, pmech_omega, trajectory };

PlotKind parse_plot_kind(std::string_view s);

/// gnuplot script drawing every non-abscissa column of the CSV against the
/// first one (trajectory: a 3x2 panel of the main signals) into <csv>.png.
std::string emit_plot_script(const std::string& csv_path, PlotKind kind, const std::vector<std::string>& columns);

}  // namespace vswt::io
