#pragma once

#include <string>
#include <utility>
#include <vector>

#include "becgw/errors.hpp"

namespace becgw {

/// Numeric CSV document: '#'-prefixed metadata lines, one header row, then
/// homogeneous rows of doubles.
struct CsvDocument {
    std::vector<std::string> metadata;  ///< emitted as "# <line>", in order
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Shortest text that parses back to exactly the same double (17 significant digits).
std::string format_full_precision(double x);

/// Writes the document as RFC-4180-style CSV with '.' decimal separator.
/// Metadata lines go first when include_metadata is set; the body (header +
/// rows) is byte-deterministic for fixed input.
void emit_csv(const CsvDocument& doc, const std::string& path, bool include_metadata = true);

/// Serializes to a string; emit_csv writes exactly this.
std::string render_csv(const CsvDocument& doc, bool include_metadata = true);

/// Reads a document produced by emit_csv (or any numeric CSV with '#' comments).
CsvDocument parse_csv(const std::string& path);
CsvDocument parse_csv_text(const std::string& text);

/// Static reference curve, e.g. an interferometer design sensitivity,
/// loaded from a data file and never computed here.
struct ComparisonCurve {
    std::string label;
    std::vector<std::pair<double, double>> rows;  ///< (f in Hz, value in Hz^{-1/2}), f ascending

    /// Log-log linear interpolation; NaN outside the tabulated range.
    double interpolate(double f) const;
};

ComparisonCurve load_comparison_curve(const std::string& path);

}  // namespace becgw
