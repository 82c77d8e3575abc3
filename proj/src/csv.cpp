#include "diknn/csv.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace diknn {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}

std::string trim(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.pop_back();
  }
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  return s.substr(b);
}

}  // namespace

SeriesPair read_series_csv(std::istream& in, const std::string& name) {
  SeriesPair pair;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();  // CRLF
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (line.back() == ',') fields.push_back("");
    if (fields.size() != 2) {
      throw UsageError(name + ":" + std::to_string(line_no) +
                       ": expected 2 columns, got " +
                       std::to_string(fields.size()));
    }
    double x, y;
    if (!parse_double(fields[0], x) || !parse_double(fields[1], y)) {
      if (first) {  // optional header row
        first = false;
        continue;
      }
      throw UsageError(name + ":" + std::to_string(line_no) +
                       ": non-numeric value");
    }
    first = false;
    pair.x.push_back(x);
    pair.y.push_back(y);
  }
  if (pair.x.empty()) {
    throw UsageError(name + ": no data rows");
  }
  return pair;
}

SeriesPair read_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path.string());
  return read_series_csv(in, path.string());
}

void write_series_csv(std::ostream& out, const SeriesPair& pair) {
  out << "x,y\n";
  for (std::size_t i = 0; i < pair.size(); ++i) {
    out << format_double(pair.x[i]) << ',' << format_double(pair.y[i]) << '\n';
  }
}

void write_series_csv(const std::filesystem::path& path,
                      const SeriesPair& pair) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  write_series_csv(out, pair);
}

}  // namespace diknn
