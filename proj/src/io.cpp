#include "circleflow/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "circleflow/errors.hpp"

namespace circleflow {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string csv_text(std::string_view meta, const std::vector<std::string>& names,
                     const std::vector<std::vector<double>>& columns) {
  if (names.size() != columns.size()) throw InvalidArgument("csv: names/columns mismatch");
  std::ostringstream os;
  os << "# " << meta << '\n';
  for (std::size_t i = 0; i < names.size(); ++i) os << (i ? "," : "") << names[i];
  os << '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != rows) throw InvalidArgument("csv: ragged columns");
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      os << (i ? "," : "") << format_double(columns[i][r]);
    }
    os << '\n';
  }
  return os.str();
}

void write_csv(const std::filesystem::path& path, std::string_view meta,
               const std::vector<std::string>& names,
               const std::vector<std::vector<double>>& columns) {
  write_atomic(path, csv_text(meta, names, columns));
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  write_atomic(path, j.dump(2) + "\n");
}

void write_plot_data(const std::filesystem::path& path, const std::vector<double>& x,
                     const std::vector<double>& y) {
  if (x.size() != y.size()) throw InvalidArgument("plot data: length mismatch");
  std::ostringstream os;
  for (std::size_t i = 0; i < x.size(); ++i) {
    os << format_double(x[i]) << ' ' << format_double(y[i]) << '\n';
  }
  write_atomic(path, os.str());
}

std::vector<std::pair<double, double>> read_two_column_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::vector<std::pair<double, double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw InvalidArgument("csv row without comma: " + line);
    try {
      std::size_t p1 = 0, p2 = 0;
      const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
      const double x = std::stod(a, &p1);
      const double y = std::stod(b, &p2);
      rows.emplace_back(x, y);
    } catch (const std::exception&) {
      if (first) {
        first = false;
        continue;  // header row
      }
      throw InvalidArgument("malformed csv row: " + line);
    }
    first = false;
  }
  return rows;
}

}  // namespace circleflow
