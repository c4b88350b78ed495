#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tscal/grid.hpp"

namespace tscal {

// Shortest decimal form that round-trips the exact double.
std::string format_double(double x);

std::uint64_t fnv1a64(std::string_view s);

// Header "t,v1,...,vd", one node per row.
void write_grid_function_csv(std::ostream& out, const GridFunction& u);

// Inverse of the writer; nodes must be strictly increasing members of
// the scale and include every segment endpoint of the spanned window.
GridFunction read_grid_function_csv(std::istream& in, const TimeScale& scale);

// "key=value" lines.
void write_kv(std::ostream& out,
              const std::vector<std::pair<std::string, std::string>>& kv);

// Whitespace-separated columns "t v1 ... vd" preceded by '#' comment
// lines, ready for plotting tools.
void emit_plot_data(std::ostream& out, const GridFunction& u,
                    const std::vector<std::string>& comments);

}  // namespace tscal
