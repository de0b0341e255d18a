#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vise::csv {

/// Real number with 10 significant digits, '.' as decimal point.
std::string format_real(double v);

/// Comma-separated table whose first emitted line is the header.
class Table {
 public:
  explicit Table(std::vector<std::string> header);

  class Row {
   public:
    Row& add(double v);
    Row& add(std::optional<double> v);  // empty field when absent
    Row& add(std::int64_t v);
    Row& add(int v) { return add(static_cast<std::int64_t>(v)); }
    Row& add(std::string_view v);
    Row& add(const char* v) { return add(std::string_view(v)); }
    Row& add(bool v);

   private:
    friend class Table;
    explicit Row(std::vector<std::string>& cells) : cells_(cells) {}
    std::vector<std::string>& cells_;
  };

  /// Appends an empty row and returns a builder for its cells.
  Row row();

  const std::vector<std::string>& header() const noexcept { return header_; }
  std::size_t size() const noexcept { return rows_.size(); }
  const std::vector<std::string>& at(std::size_t i) const { return rows_.at(i); }

  /// Throws std::logic_error if some row's width differs from the header.
  void write(std::ostream& os) const;
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace vise::csv
