#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace affect {

/// A calendar month (proleptic Gregorian, UTC). Ordered and usable as a
/// discrete time index: `m + 1` is the following month.
class Month {
 public:
  constexpr Month() = default;
  constexpr Month(int year, unsigned month) : index_(year * 12 + static_cast<int>(month) - 1) {}

  static constexpr Month from_index(std::int32_t index) {
    Month m;
    m.index_ = index;
    return m;
  }

  /// Parses `YYYY-MM`. Throws InputError on anything else.
  static Month parse(std::string_view text);

  static Month of(std::chrono::sys_time<std::chrono::milliseconds> instant);

  constexpr int year() const { return floor_div(index_, 12); }
  constexpr unsigned month() const { return static_cast<unsigned>(index_ - year() * 12 + 1); }
  constexpr std::int32_t index() const { return index_; }

  std::string str() const;

  constexpr Month operator+(std::int32_t n) const { return from_index(index_ + n); }
  constexpr Month operator-(std::int32_t n) const { return from_index(index_ - n); }
  constexpr std::int32_t operator-(Month other) const { return index_ - other.index_; }
  constexpr Month& operator++() {
    ++index_;
    return *this;
  }

  constexpr auto operator<=>(const Month&) const = default;

 private:
  static constexpr int floor_div(int a, int b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }

  std::int32_t index_ = 0;
};

/// Inclusive month interval [first, last].
struct MonthRange {
  Month first;
  Month last;

  constexpr std::size_t size() const { return static_cast<std::size_t>(last - first + 1); }
  constexpr bool contains(Month m) const { return first <= m && m <= last; }
  constexpr bool operator==(const MonthRange&) const = default;
};

using Instant = std::chrono::sys_time<std::chrono::milliseconds>;

/// Parses an ISO-8601 UTC timestamp of the form `YYYY-MM-DDTHH:MM:SS[.fff]Z`.
/// Throws InputError when malformed or out of range.
Instant parse_utc_timestamp(std::string_view text);

}  // namespace affect
