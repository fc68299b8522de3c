/*
 * Copyright 2026 The costbound Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "costbound/timestamp.h"

#include <cctype>
#include <cstdio>

#include "costbound/common.h"

namespace costbound {
namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  int digits(std::size_t n) {
    if (pos_ + n > s_.size()) fail();
    int v = 0;
    for (std::size_t i = 0; i < n; ++i) {
      char c = s_[pos_ + i];
      if (!std::isdigit(static_cast<unsigned char>(c))) fail();
      v = v * 10 + (c - '0');
    }
    pos_ += n;
    return v;
  }
  void expect(char c) {
    if (!accept(c)) fail();
  }
  bool accept(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool done() const { return pos_ == s_.size(); }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  [[noreturn]] void fail() const {
    throw DataError("invalid ISO-8601 timestamp \"" + std::string(s_) + "\"");
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Timestamp parse_timestamp(std::string_view text) {
  using namespace std::chrono;
  Cursor c(text);
  const int y = c.digits(4);
  c.expect('-');
  const int mo = c.digits(2);
  c.expect('-');
  const int d = c.digits(2);
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) c.fail();
  int hh = 0, mm = 0, ss = 0, offset_minutes = 0;
  if (c.accept('T') || c.accept(' ')) {
    hh = c.digits(2);
    c.expect(':');
    mm = c.digits(2);
    if (c.accept(':')) {
      ss = c.digits(2);
      if (c.accept('.')) {
        if (!std::isdigit(static_cast<unsigned char>(c.peek()))) c.fail();
        while (std::isdigit(static_cast<unsigned char>(c.peek()))) c.digits(1);
      }
    }
    if (hh > 23 || mm > 59 || ss > 60) c.fail();
    if (!c.accept('Z')) {
      const char sign = c.peek();
      if (sign == '+' || sign == '-') {
        c.accept(sign);
        const int oh = c.digits(2);
        c.accept(':');
        const int om = c.digits(2);
        offset_minutes = (oh * 60 + om) * (sign == '+' ? 1 : -1);
      }
    }
  }
  if (!c.done()) c.fail();
  return sys_days{ymd} + hours{hh} + minutes{mm} + seconds{ss} -
         minutes{offset_minutes};
}

std::string format_timestamp(Timestamp t) {
  using namespace std::chrono;
  const auto day_point = floor<days>(t);
  const year_month_day ymd{day_point};
  const hh_mm_ss hms{t - day_point};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()),
                static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

}  // namespace costbound
