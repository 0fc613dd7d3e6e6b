#include "tracelab/io.hpp"

#include <cstdio>

#include "tracelab/errors.hpp"

namespace tracelab {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(std::ostream& os, const std::string& manifest_hash,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows) {
  os << "# manifest " << manifest_hash << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i)
    os << (i ? "," : "") << columns[i];
  os << "\n";
  for (const auto& row : rows) {
    if (row.size() != columns.size())
      throw InvalidArgument("CSV row width does not match the header");
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << row[i];
    os << "\n";
  }
}

void write_measure_csv(std::ostream& os, const std::string& manifest_hash,
                       const SpectralMeasure& m) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    rows.push_back({format_g12(m.atoms()[i]), format_g12(m.weights()[i])});
  write_csv(os, manifest_hash, {"atom", "weight"}, rows);
}

void write_intervals_csv(std::ostream& os, const std::string& manifest_hash,
                         const IntervalSet& s) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(s.size());
  for (const Interval& iv : s.parts())
    rows.push_back({format_g12(iv.lo), format_g12(iv.hi)});
  write_csv(os, manifest_hash, {"lo", "hi"}, rows);
}

void write_pgm16(std::ostream& os, const std::string& manifest_hash,
                 std::size_t width, std::size_t height,
                 const std::vector<std::uint16_t>& pixels) {
  if (width == 0 || height == 0 || pixels.size() != width * height)
    throw InvalidArgument("PGM dimensions do not match the pixel count");
  os << "P5\n# manifest " << manifest_hash << "\n"
     << width << " " << height << "\n65535\n";
  for (std::uint16_t p : pixels) {
    char hi = char(p >> 8), lo = char(p & 0xff);
    os.put(hi);
    os.put(lo);
  }
}

}  // namespace tracelab
