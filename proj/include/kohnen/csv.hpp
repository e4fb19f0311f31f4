#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace kohnen::csv {

/// RFC 4180 rows with CRLF line ends. Doubles are written with %.17g so a
/// value reads back to the same bits.
class Writer {
 public:
  Writer(std::ostream& out, std::vector<std::string> header);

  Writer& field(std::string_view text);
  Writer& field(const char* text) { return field(std::string_view(text)); }
  Writer& field(double value);
  Writer& field(std::int64_t value);
  Writer& field(std::uint64_t value);
  Writer& field(int value) { return field(static_cast<std::int64_t>(value)); }
  Writer& field(unsigned value) { return field(static_cast<std::uint64_t>(value)); }
  Writer& field(bool value) { return field(std::string_view(value ? "true" : "false")); }
  /// Ends the current row; throws ValidationError if its width differs from the header.
  void end_row();

  std::size_t rows() const noexcept { return rows_; }

 private:
  void raw(std::string_view text);
  std::ostream& out_;
  std::size_t columns_;
  std::size_t current_ = 0;
  std::size_t rows_ = 0;
};

std::string quote(std::string_view text);
std::string format_double(double value);

}  // namespace kohnen::csv
