#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace circleflow {

/// Shortest round-trip decimal form of x.
std::string format_double(double x);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// One "# meta" line, a header row, then the columns (equal lengths).
std::string csv_text(std::string_view meta, const std::vector<std::string>& names,
                     const std::vector<std::vector<double>>& columns);

void write_csv(const std::filesystem::path& path, std::string_view meta,
               const std::vector<std::string>& names,
               const std::vector<std::vector<double>>& columns);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// Whitespace-separated two-column text for gnuplot.
void write_plot_data(const std::filesystem::path& path, const std::vector<double>& x,
                     const std::vector<double>& y);

/// Rows of a two-column CSV; '#' lines and a non-numeric header are skipped.
std::vector<std::pair<double, double>> read_two_column_csv(const std::filesystem::path& path);

}  // namespace circleflow
