#include "vise/csv.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace vise::csv {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

Table::Table(std::vector<std::string> header) : header_(std::move(header)) {}

Table::Row Table::row() {
  rows_.emplace_back();
  rows_.back().reserve(header_.size());
  return Row(rows_.back());
}

Table::Row& Table::Row::add(double v) {
  cells_.push_back(format_real(v));
  return *this;
}

Table::Row& Table::Row::add(std::optional<double> v) {
  cells_.push_back(v ? format_real(*v) : std::string());
  return *this;
}

Table::Row& Table::Row::add(std::int64_t v) {
  cells_.push_back(std::to_string(v));
  return *this;
}

Table::Row& Table::Row::add(std::string_view v) {
  cells_.emplace_back(v);
  return *this;
}

Table::Row& Table::Row::add(bool v) {
  cells_.emplace_back(v ? "1" : "0");
  return *this;
}

namespace {

void write_line(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i != 0) os << ',';
    os << cells[i];
  }
  os << '\n';
}

}  // namespace

void Table::write(std::ostream& os) const {
  write_line(os, header_);
  for (const auto& r : rows_) {
    if (r.size() != header_.size()) {
      throw std::logic_error("csv::Table: row width " + std::to_string(r.size()) +
                             " does not match header width " + std::to_string(header_.size()));
    }
    write_line(os, r);
  }
}

std::string Table::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

}  // namespace vise::csv
