#include "zetagraph/format.hpp"

#include <cstdio>

namespace zetagraph {

std::string format_real(double value) {
    if (value == 0.0) value = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", value);
    return buf;
}

std::string csv_row(std::initializer_list<std::string> cells) {
    std::string row;
    for (const auto& cell : cells) {
        if (!row.empty()) row += ',';
        row += cell;
    }
    return row;
}

}  // namespace zetagraph
