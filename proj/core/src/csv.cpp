#include "tradenet/csv.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tradenet/domain.hpp"

namespace tradenet::csv {

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || text.empty()) {
    throw DomainError("not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::int64_t parse_int(std::string_view text) {
  std::int64_t v = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || text.empty()) {
    throw DomainError("not an integer: '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Table Table::read(const std::string& path) { return parse(read_file(path), path); }

Table Table::parse(std::string_view text, std::string source) {
  Table t;
  t.source_ = std::move(source);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() : end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    auto fields = split_line(line);
    if (!have_header) {
      if (!fields.empty() && fields[0].rfind("\xEF\xBB\xBF", 0) == 0) fields[0].erase(0, 3);
      t.header_ = fields;
      for (std::size_t i = 0; i < fields.size(); ++i) t.columns_.emplace(fields[i], i);
      have_header = true;
      continue;
    }
    if (fields.size() != t.header_.size()) {
      throw DomainError(t.source_ + ":" + std::to_string(line_no) + ": expected " + std::to_string(t.header_.size()) +
                    " fields, found " + std::to_string(fields.size()));
    }
    t.rows_.push_back(std::move(fields));
    t.lines_.push_back(line_no);
  }
  if (!have_header) throw DomainError(t.source_ + ": empty file, header expected");
  return t;
}

void Table::require_columns(const std::vector<std::string>& names) const {
  for (const auto& n : names) {
    if (!has_column(n)) throw DomainError(source_ + ": missing column '" + n + "'");
  }
}

const std::string& Table::cell(std::size_t row, const std::string& column) const {
  auto it = columns_.find(column);
  if (it == columns_.end()) throw DomainError(source_ + ": missing column '" + column + "'");
  return rows_[row][it->second];
}

double Table::number(std::size_t row, const std::string& column) const {
  try {
    return parse_double(cell(row, column));
  } catch (const DomainError& e) {
    throw DomainError(source_ + ":" + std::to_string(lines_[row]) + ": column '" + column + "': " + e.what());
  }
}

std::int64_t Table::integer(std::size_t row, const std::string& column) const {
  try {
    return parse_int(cell(row, column));
  } catch (const DomainError& e) {
    throw DomainError(source_ + ":" + std::to_string(lines_[row]) + ": column '" + column + "': " + e.what());
  }
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + path);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

}  // namespace tradenet::csv
