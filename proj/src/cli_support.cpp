#include "kohnen/cli_support.hpp"

#include <charconv>
#include <cmath>

#include "kohnen/error.hpp"

namespace kohnen::cli {

namespace {

double parse_plain(std::string_view text, std::string_view whole) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ValidationError("cannot parse number '" + std::string(whole) + "'");
  }
  return value;
}

double parse_power(std::string_view text, std::string_view whole) {
  const auto caret = text.find('^');
  if (caret == std::string_view::npos) return parse_plain(text, whole);
  return std::pow(parse_plain(text.substr(0, caret), whole), parse_plain(text.substr(caret + 1), whole));
}

}  // namespace

double parse_number(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  const auto star = text.find('*');
  const double value = star == std::string_view::npos
                           ? parse_power(text, text)
                           : parse_power(text.substr(0, star), text) * parse_power(text.substr(star + 1), text);
  if (!std::isfinite(value)) throw ValidationError("number '" + std::string(text) + "' is not finite");
  return value;
}

std::uint64_t parse_count(std::string_view text) {
  const double value = parse_number(text);
  if (value < 0 || value != std::floor(value) || value >= 9.2e18) {
    throw ValidationError("expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return static_cast<std::uint64_t>(value);
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_number(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::between(std::uint64_t lo, std::uint64_t hi) {
  if (hi < lo) throw ValidationError("empty random range");
  const std::uint64_t span = hi - lo + 1;
  if (span == 0) return engine_();
  // rejection keeps the draw unbiased
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return lo + x % span;
}

}  // namespace kohnen::cli
