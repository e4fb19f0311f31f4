#include "kohnen/csv.hpp"

#include <cstdio>

#include "kohnen/error.hpp"

namespace kohnen::csv {

std::string quote(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

Writer::Writer(std::ostream& out, std::vector<std::string> header) : out_(out), columns_(header.size()) {
  for (const auto& h : header) field(std::string_view(h));
  end_row();
  rows_ = 0;
}

void Writer::raw(std::string_view text) {
  if (current_ > 0) out_ << ',';
  out_ << text;
  ++current_;
}

Writer& Writer::field(std::string_view text) {
  raw(quote(text));
  return *this;
}

Writer& Writer::field(double value) {
  raw(format_double(value));
  return *this;
}

Writer& Writer::field(std::int64_t value) {
  raw(std::to_string(value));
  return *this;
}

Writer& Writer::field(std::uint64_t value) {
  raw(std::to_string(value));
  return *this;
}

void Writer::end_row() {
  if (current_ != columns_) {
    throw ValidationError("CSV row has " + std::to_string(current_) + " fields, header has " + std::to_string(columns_));
  }
  out_ << "\r\n";
  current_ = 0;
  ++rows_;
}

}  // namespace kohnen::csv
