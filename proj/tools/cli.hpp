#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "entroscope/scaling.hpp"

namespace entroscope::cli {

enum class OutputFormat { csv, json };

// 17-significant-digit scientific rendering; the one float format used in
// every output file so identical runs produce identical bytes.
std::string fmt17(double v);

// CSV: "param,value" header, one row per point, then "# meta: key=value"
// lines (sorted) and "# fit: key=value" lines when a fit is attached.
// JSON: {"param_name", "points", "meta", "fit"|null} on one line.
void emit_series(const scaling::EntropySeries& series,
                 const std::optional<scaling::DivergenceFit>& fit,
                 OutputFormat format, std::ostream& out);

// Inverse of the CSV emitter (fit lines are not part of series identity).
scaling::EntropySeries parse_csv_series(std::istream& in);

// Runs one fully-formed command line (argv without the program name).
// Returns the process exit code: 0 success, 2 domain/validation error,
// 3 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entroscope::cli
