#include "affect/month.hpp"

#include <charconv>
#include <cstdio>

#include "affect/errors.hpp"

namespace affect {
namespace {

bool parse_digits(std::string_view text, std::size_t pos, std::size_t count, int& out) {
  if (pos + count > text.size()) return false;
  int value = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  out = value;
  return true;
}

}  // namespace

Month Month::parse(std::string_view text) {
  int year = 0;
  int month = 0;
  if (text.size() != 7 || text[4] != '-' || !parse_digits(text, 0, 4, year) ||
      !parse_digits(text, 5, 2, month) || month < 1 || month > 12) {
    throw InputError("invalid month '" + std::string(text) + "' (expected YYYY-MM)");
  }
  return Month(year, static_cast<unsigned>(month));
}

Month Month::of(Instant instant) {
  const auto days = std::chrono::floor<std::chrono::days>(instant);
  const std::chrono::year_month_day ymd{days};
  return Month(static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()));
}

std::string Month::str() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u", year(), month());
  return buf;
}

Instant parse_utc_timestamp(std::string_view text) {
  auto fail = [&]() -> InputError {
    return InputError("invalid UTC timestamp '" + std::string(text) +
                      "' (expected YYYY-MM-DDTHH:MM:SS[.fff]Z)");
  };
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  if (text.size() < 20 || text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != 't') ||
      text[13] != ':' || text[16] != ':' || !parse_digits(text, 0, 4, y) ||
      !parse_digits(text, 5, 2, mo) || !parse_digits(text, 8, 2, d) ||
      !parse_digits(text, 11, 2, h) || !parse_digits(text, 14, 2, mi) ||
      !parse_digits(text, 17, 2, s)) {
    throw fail();
  }
  std::size_t pos = 19;
  int millis = 0;
  if (text[pos] == '.') {
    ++pos;
    const std::size_t start = pos;
    int scale = 100;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      millis += (text[pos] - '0') * scale;
      scale /= 10;
      ++pos;
    }
    if (pos == start) throw fail();
  }
  if (pos + 1 != text.size() || (text[pos] != 'Z' && text[pos] != 'z')) throw fail();

  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(mo)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 60) throw fail();

  using namespace std::chrono;
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{s} + milliseconds{millis};
}

}  // namespace affect
