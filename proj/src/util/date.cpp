#include "policystory/util/date.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>
#include <ctime>

#include "policystory/util/errors.hpp"

namespace policystory {
namespace {

bool all_digits(std::string_view s) {
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return !s.empty();
}

int to_int(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

}  // namespace

int days_in_month(int year, int month) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2) {
    bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return leap ? 29 : 28;
  }
  return kDays[month - 1];
}

bool Date::valid(int year, int month, int day) {
  return year >= 1 && year <= 9999 && month >= 1 && month <= 12 && day >= 1 &&
         day <= days_in_month(year, month);
}

Date Date::parse(std::string_view s) {
  if (s.size() < 10 || s[4] != '-' || s[7] != '-' || !all_digits(s.substr(0, 4)) ||
      !all_digits(s.substr(5, 2)) || !all_digits(s.substr(8, 2)) ||
      (s.size() > 10 && s[10] != 'T' && s[10] != ' ')) {
    throw ValidationError("invalid date '" + std::string(s) + "', expected YYYY-MM-DD");
  }
  Date d{to_int(s.substr(0, 4)), to_int(s.substr(5, 2)), to_int(s.substr(8, 2))};
  if (!valid(d.year, d.month, d.day)) {
    throw ValidationError("invalid calendar date '" + std::string(s) + "'");
  }
  return d;
}

std::string Date::iso() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

bool is_iso_timestamp(std::string_view s) {
  // YYYY-MM-DDTHH:MM:SSZ
  if (s.size() != 20 || s[10] != 'T' || s[13] != ':' || s[16] != ':' || s[19] != 'Z') {
    return false;
  }
  try {
    Date::parse(s.substr(0, 10));
  } catch (const ValidationError&) {
    return false;
  }
  return all_digits(s.substr(11, 2)) && all_digits(s.substr(14, 2)) &&
         all_digits(s.substr(17, 2)) && to_int(s.substr(11, 2)) < 24 &&
         to_int(s.substr(14, 2)) < 60 && to_int(s.substr(17, 2)) < 61;
}

std::string utc_now_iso() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace policystory
