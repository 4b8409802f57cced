#include "circleflow/factor_spec.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "circleflow/errors.hpp"
#include "circleflow/extremals.hpp"
#include "circleflow/io.hpp"

namespace circleflow {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

[[noreturn]] void bad(std::string_view spec, std::string_view why) {
  throw InvalidArgument("factor spec '" + std::string(spec) + "': " + std::string(why));
}

double to_number(std::string_view spec, const std::string& s) {
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used != s.size()) bad(spec, "trailing characters in number '" + s + "'");
    return x;
  } catch (const std::logic_error&) {
    bad(spec, "expected a number, got '" + s + "'");
  }
}

std::vector<double> number_list(std::string_view spec, std::string_view body) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= body.size()) {
    const auto comma = body.find(',', start);
    const auto item = trim(body.substr(start, comma == std::string_view::npos
                                                  ? std::string_view::npos
                                                  : comma - start));
    if (item.empty()) bad(spec, "empty coefficient");
    out.push_back(to_number(spec, item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

PeriodicFunction trig_from_coeffs(const std::vector<double>& c, int n) {
  return PeriodicFunction::sample(n, [&](double t) {
    double s = c[0];
    for (std::size_t i = 1; i < c.size(); ++i) {
      const int k = static_cast<int>((i + 1) / 2);
      s += (i % 2 == 1) ? c[i] * std::cos(k * t) : c[i] * std::sin(k * t);
    }
    return s;
  });
}

// Parses the "sum" production; returns false if the text is not of that shape.
bool parse_sum(std::string_view spec, const std::string& text, int n, PeriodicFunction& out) {
  std::string s;
  bool gap = false;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      gap = !s.empty();
      continue;
    }
    // "1 2" must not silently read as 12
    if (gap && (std::isdigit(c) || ch == '.') && (std::isdigit(static_cast<unsigned char>(s.back())) ||
                                                  s.back() == '.')) {
      bad(spec, "numbers separated only by whitespace");
    }
    gap = false;
    s += ch;
  }
  if (s.empty()) return false;
  std::vector<double> c0(1, 0.0);
  std::vector<std::pair<int, std::pair<bool, double>>> terms;  // k, (is_cos, coef)
  std::size_t i = 0;
  while (i < s.size()) {
    double sign = 1.0;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1.0 : 1.0;
      ++i;
    } else if (i != 0) {
      return false;
    }
    // optional coefficient
    std::size_t j = i;
    while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.' ||
                            s[j] == 'e' || s[j] == 'E' ||
                            ((s[j] == '-' || s[j] == '+') && j > i &&
                             (s[j - 1] == 'e' || s[j - 1] == 'E')))) {
      if ((s[j] == 'e' || s[j] == 'E') && !(j > i)) break;
      ++j;
    }
    double coef = 1.0;
    bool has_coef = false;
    if (j > i) {
      coef = to_number(spec, s.substr(i, j - i));
      has_coef = true;
      i = j;
    }
    if (i < s.size() && s[i] == '*') {
      if (!has_coef) return false;
      ++i;
    }
    if (s.compare(i, 3, "cos") == 0 || s.compare(i, 3, "sin") == 0) {
      const bool is_cos = s[i] == 'c';
      i += 3;
      std::size_t k0 = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      const int k = k0 == i ? 1 : std::stoi(s.substr(k0, i - k0));
      terms.push_back({k, {is_cos, sign * coef}});
    } else if (has_coef) {
      c0[0] += sign * coef;
    } else {
      return false;
    }
  }
  out = PeriodicFunction::sample(n, [&](double t) {
    double v = c0[0];
    for (const auto& [k, tc] : terms) {
      v += tc.second * (tc.first ? std::cos(k * t) : std::sin(k * t));
    }
    return v;
  });
  return true;
}

PeriodicFunction parse_family(std::string_view spec, const std::string& text, int n) {
  const auto paren = text.find('(');
  const Family fam = family_from_string(trim(text.substr(0, paren)));
  ExtremalParams p{1.0, 1.0, 0.0, fam};
  if (paren != std::string::npos) {
    const auto close = text.rfind(')');
    if (close == std::string::npos || close < paren) bad(spec, "unbalanced parentheses");
    const std::string body = text.substr(paren + 1, close - paren - 1);
    std::size_t start = 0;
    while (start < body.size()) {
      const auto comma = body.find(',', start);
      const auto item = trim(std::string_view(body).substr(
          start, comma == std::string::npos ? std::string::npos : comma - start));
      const auto eq = item.find('=');
      if (eq == std::string::npos) bad(spec, "expected key=value");
      const auto key = trim(std::string_view(item).substr(0, eq));
      const double val = to_number(spec, trim(std::string_view(item).substr(eq + 1)));
      if (key == "c") p.c = val;
      else if (key == "lambda") p.lambda = val;
      else if (key == "alpha") p.alpha = val;
      else bad(spec, "unknown family parameter '" + key + "'");
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return sample(p, n);
}

PeriodicFunction parse_csv(std::string_view spec, const std::string& path, int n) {
  const auto rows = read_two_column_csv(path);
  const int m = static_cast<int>(rows.size());
  if (m < 16 || m % 2 != 0) bad(spec, "csv needs an even number (>= 16) of rows");
  std::vector<double> values;
  for (int j = 0; j < m; ++j) {
    if (std::abs(rows[j].first - PeriodicFunction::node(m, j)) > 1e-9) {
      bad(spec, "csv theta column is not the uniform grid 2 pi j / m");
    }
    values.push_back(rows[j].second);
  }
  const PeriodicFunction f(std::move(values));
  return m == n ? f : resample(f, n);
}

}  // namespace

PeriodicFunction parse_factor(std::string_view spec, int n) {
  require_grid_size(n);
  const std::string text = trim(spec);
  if (text.empty()) bad(spec, "empty");
  if (starts_with(text, "coeffs:")) {
    return trig_from_coeffs(number_list(spec, std::string_view(text).substr(7)), n);
  }
  if (starts_with(text, "expcoeffs:")) {
    return trig_from_coeffs(number_list(spec, std::string_view(text).substr(10)), n)
        .map([](double x) { return std::exp(x); });
  }
  if (starts_with(text, "csv:")) return parse_csv(spec, trim(text.substr(4)), n);
  for (const char* fam : {"BS", "YAM", "QEXT", "SYMQ_CONJ"}) {
    const std::string f(fam);
    if (text == f || starts_with(text, f + "(") || starts_with(text, f + " (")) {
      return parse_family(spec, text, n);
    }
  }
  PeriodicFunction out = PeriodicFunction::constant(n, 0.0);
  if (parse_sum(spec, text, n, out)) return out;
  bad(spec, "unrecognized syntax");
}

}  // namespace circleflow
