#include "cntpf/io/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "cntpf/errors.hpp"

namespace cntpf::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string provenance_line(const std::string& config_hash) {
  return std::string("# cntpf ") + kVersion + " config_hash=" + config_hash;
}

void CsvWriter::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size())
    throw std::invalid_argument("CsvWriter: row has " + std::to_string(cells.size()) +
                                " cells, header has " + std::to_string(header_.size()));
  rows_.push_back(std::move(cells));
}

void CsvWriter::write(std::ostream& os, const std::string& provenance) const {
  if (!provenance.empty()) os << provenance << '\n';
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
}

void CsvWriter::write_file(const std::string& path, const std::string& provenance) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  write(f, provenance);
  if (!f) throw IoError("write failed for '" + path + "'");
}

CsvWriter load_curve_table(const std::vector<fem::LoadPoint>& curve) {
  CsvWriter w({"step", "applied_displacement_mm", "reaction_kN"});
  for (const auto& p : curve)
    w.add_row({std::to_string(p.step), format_double(p.displacement), format_double(p.reaction)});
  return w;
}

}  // namespace cntpf::io
