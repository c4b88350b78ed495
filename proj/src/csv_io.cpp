#include "tscal/csv_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tscal {

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void write_grid_function_csv(std::ostream& out, const GridFunction& u) {
  out << "t";
  for (Eigen::Index c = 0; c < u.dim(); ++c) out << ",v" << (c + 1);
  out << "\n";
  for (std::size_t i = 0; i < u.grid->size(); ++i) {
    out << format_double(u.t(i));
    for (Eigen::Index c = 0; c < u.dim(); ++c)
      out << "," << format_double(u.values(static_cast<Eigen::Index>(i), c));
    out << "\n";
  }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

double parse_num(const std::string& s) {
  double x = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  while (first != last && (*first == ' ' || *first == '\t')) ++first;
  const auto res = std::from_chars(first, last, x);
  if (res.ec != std::errc{} || res.ptr != last)
    throw std::invalid_argument("bad number in csv: '" + s + "'");
  return x;
}

}  // namespace

GridFunction read_grid_function_csv(std::istream& in,
                                    const TimeScale& scale) {
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("empty csv input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv(line);
  if (header.empty() || header[0] != "t")
    throw std::invalid_argument("csv header must start with column t");
  const std::size_t d = header.size() - 1;
  if (d == 0) throw std::invalid_argument("csv needs value columns");

  std::vector<double> nodes;
  std::vector<double> flat;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size())
      throw std::invalid_argument("csv row width mismatch");
    nodes.push_back(parse_num(cells[0]));
    for (std::size_t c = 1; c < cells.size(); ++c)
      flat.push_back(parse_num(cells[c]));
  }
  if (nodes.size() < 1) throw std::invalid_argument("csv has no data rows");

  for (double& t : nodes) t = scale.snap(t);
  TsInterval iv(scale, nodes.front(), nodes.back());

  double dense_step = 0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    if (iv.sigma(nodes[i]) == nodes[i])  // right-dense: same segment
      dense_step = std::max(dense_step, nodes[i + 1] - nodes[i]);
  if (dense_step == 0) dense_step = nodes.back() - nodes.front() + 1;

  Eigen::MatrixXd values(static_cast<Eigen::Index>(nodes.size()),
                         static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t c = 0; c < d; ++c)
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          flat[i * d + c];

  auto grid = std::make_shared<const Grid>(std::move(iv), std::move(nodes),
                                           dense_step);
  return GridFunction{grid, std::move(values)};
}

void write_kv(std::ostream& out,
              const std::vector<std::pair<std::string, std::string>>& kv) {
  for (const auto& [k, v] : kv) out << k << "=" << v << "\n";
}

void emit_plot_data(std::ostream& out, const GridFunction& u,
                    const std::vector<std::string>& comments) {
  for (const std::string& c : comments) out << "# " << c << "\n";
  for (std::size_t i = 0; i < u.grid->size(); ++i) {
    out << format_double(u.t(i));
    for (Eigen::Index c = 0; c < u.dim(); ++c)
      out << " " << format_double(u.values(static_cast<Eigen::Index>(i), c));
    out << "\n";
  }
}

}  // namespace tscal
