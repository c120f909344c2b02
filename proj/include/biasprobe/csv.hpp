#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace biasprobe::csv {

/// Streaming RFC-4180 reader: quoted fields, doubled quotes, embedded
/// newlines, LF or CRLF line endings.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  /// Reads the next record into `fields`. Returns false at end of input.
  bool next(std::vector<std::string>& fields);

  /// 1-based physical line on which the last returned record started.
  std::size_t line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
};

std::string quote_field(std::string_view field);

void write_row(std::ostream& out, std::span<const std::string> fields);
void write_row(std::ostream& out, std::initializer_list<std::string_view> fields);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Strict full-string parses; throw InputError naming `what` on failure.
double parse_double(std::string_view text, std::string_view what);
long long parse_int(std::string_view text, std::string_view what);

std::string_view trim(std::string_view text);

}  // namespace biasprobe::csv
