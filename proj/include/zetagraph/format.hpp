#pragma once

#include <complex>
#include <string>

namespace zetagraph {

/// Shortest "%.15g" rendering; negative zero prints as 0.
std::string format_real(double value);

/// Cells joined by commas.
std::string csv_row(std::initializer_list<std::string> cells);

}  // namespace zetagraph
