#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tradenet::csv {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

double parse_double(std::string_view text);
std::int64_t parse_int(std::string_view text);

std::vector<std::string> split_line(std::string_view line);

/// Header-indexed table read from a comma-separated file. Rows keep their
/// 1-based line number for error messages.
class Table {
 public:
  static Table read(const std::string& path);
  static Table parse(std::string_view text, std::string source);

  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }
  bool has_column(const std::string& name) const { return columns_.count(name) != 0; }
  std::size_t line_of(std::size_t row) const { return lines_[row]; }
  const std::string& source() const { return source_; }

  /// Throws DomainError naming the file if any column is absent.
  void require_columns(const std::vector<std::string>& names) const;

  const std::string& cell(std::size_t row, const std::string& column) const;
  const std::vector<std::string>& row(std::size_t r) const { return rows_[r]; }
  double number(std::size_t row, const std::string& column) const;
  std::int64_t integer(std::size_t row, const std::string& column) const;

 private:
  std::string source_;
  std::vector<std::string> header_;
  std::unordered_map<std::string, std::size_t> columns_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::size_t> lines_;
};

/// Writes `content` to `path` through a temporary file and rename.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace tradenet::csv
