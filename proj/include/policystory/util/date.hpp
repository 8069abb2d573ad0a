#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace policystory {

// Proleptic Gregorian calendar date, serialized as YYYY-MM-DD.
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  // Accepts YYYY-MM-DD optionally followed by a time part ("T..." or " ...").
  // Throws ValidationError on anything else.
  static Date parse(std::string_view s);
  static bool valid(int year, int month, int day);

  std::string iso() const;

  auto operator<=>(const Date&) const = default;
};

struct DateRange {
  Date start;
  Date end;

  bool contains(const Date& d) const { return start <= d && d <= end; }
  auto operator<=>(const DateRange&) const = default;
};

int days_in_month(int year, int month);

// Basic shape check for YYYY-MM-DDTHH:MM:SSZ timestamps.
bool is_iso_timestamp(std::string_view s);
std::string utc_now_iso();

}  // namespace policystory
