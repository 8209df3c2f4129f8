#pragma once

// Locale-independent text formats: CSV with 17 significant digits and the
// plain/raw PGM readers.

#include "rcpkit/types.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rcpkit {

inline constexpr std::string_view missing_value = "NA";

/// %.17g formatting with a '.' decimal point regardless of locale.
std::string format_double(double v);
std::string format_optional(const std::optional<double>& v);

/// Parses a decimal float; the whole token must be consumed.
double parse_double(std::string_view token);

/// Headerless CSV, one matrix row per line.
std::string matrix_to_csv(const Matrix& m);
Matrix matrix_from_csv(std::string_view text);

/// P2 (ASCII) or P5 (binary, 8 or 16 bit) grey image; rows are image rows.
Matrix parse_pgm(std::string_view bytes);

std::string read_file(const std::string& path);

/// PGM when the file starts with "P2"/"P5", headerless CSV otherwise.
Matrix load_image(const std::string& path);

}  // namespace rcpkit
