#pragma once

// CSV output: comma separated, header row, LF line ends, doubles with 17
// significant digits. An optional first comment line carries provenance.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "cntpf/fem/phase_field.hpp"

namespace cntpf::io {

inline constexpr const char* kVersion = "0.1.0";

std::string format_double(double v);

/// 64-bit FNV-1a of `text` as 16 lower-case hex digits.
std::string fnv1a_hex(const std::string& text);

/// "# cntpf <version> config_hash=<hash>"
std::string provenance_line(const std::string& config_hash);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

  /// Cells are written verbatim; use format_double for numbers.
  void add_row(std::vector<std::string> cells);
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  void write(std::ostream& os, const std::string& provenance = "") const;
  /// Throws IoError when the file cannot be written.
  void write_file(const std::string& path, const std::string& provenance = "") const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// step,applied_displacement_mm,reaction_kN
CsvWriter load_curve_table(const std::vector<fem::LoadPoint>& curve);

}  // namespace cntpf::io
