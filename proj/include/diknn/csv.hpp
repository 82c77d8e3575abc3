#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "diknn/embedding.hpp"

namespace diknn {

// 17-significant-digit decimal form of a double (round-trip exact),
// identical across runs.
std::string format_double(double v);

// Two numeric columns x,y; optional header; LF or CRLF line endings.
// Malformed rows raise UsageError naming the offending line.
SeriesPair read_series_csv(std::istream& in, const std::string& name = "<stream>");
SeriesPair read_series_csv(const std::filesystem::path& path);

void write_series_csv(std::ostream& out, const SeriesPair& pair);
void write_series_csv(const std::filesystem::path& path, const SeriesPair& pair);

}  // namespace diknn
